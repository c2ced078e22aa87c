"""
relucert/domain/network/__init__.py - Network evaluation and interval analysis

Pure functions over the immutable Network model.

Functions:
    - evaluate(net, x) → output vector
    - forward_trace(net, x) → per-layer (pre, post) values
    - confidence(net, x, label) → output value of one label
    - classify(net, x) → label with strictly maximal confidence, or None
    - interval_evaluate(net, box) → per-layer pre/post bounds
    - phase_of(lo, hi) → PhaseStatus
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from relucert.core.errors import InputError
from relucert.core.network import Activation, Box, Label, Network, PhaseStatus


# ─────────────────────────────────────────────────────────────────────
# Concrete evaluation
# ─────────────────────────────────────────────────────────────────────

def _as_input(net: Network, x: Sequence[float]) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != net.input_dim:
        raise InputError(f"input has shape {x.shape}, network expects ({net.input_dim},)")
    if not np.all(np.isfinite(x)):
        raise InputError("input must be finite")
    return x


def relu(v: np.ndarray) -> np.ndarray:
    return np.maximum(v, 0.0)


def forward_trace(net: Network, x: Sequence[float]) -> List[Tuple[np.ndarray, np.ndarray]]:
    """
    Evaluate layer by layer.

    Returns:
        List of (pre-activation, post-activation) per layer; for the output
        layer both entries are the outputs.
    """
    value = _as_input(net, x)
    trace = []
    for layer in net.layers:
        pre = layer.weights @ value + layer.biases
        post = relu(pre) if layer.activation == Activation.RELU else pre
        trace.append((pre, post))
        value = post
    return trace


def evaluate(net: Network, x: Sequence[float]) -> np.ndarray:
    return forward_trace(net, x)[-1][1]


def confidence(net: Network, x: Sequence[float], label: Label) -> float:
    """Confidence of the network that x carries label."""
    index = net.label_index(label)
    return float(evaluate(net, x)[index])


def classify(net: Network, x: Sequence[float]) -> Optional[Label]:
    """
    Label whose confidence is strictly greater than every other label's.

    Returns:
        The label, or None when the maximum is shared (no unique label).
    """
    out = evaluate(net, x)
    best = int(np.argmax(out))
    if np.count_nonzero(out == out[best]) > 1:
        return None
    return net.labels[best]


# ─────────────────────────────────────────────────────────────────────
# Interval analysis
# ─────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class LayerBounds:
    """Bounds of one layer. For the output layer post equals pre."""

    pre_lower: np.ndarray
    pre_upper: np.ndarray
    post_lower: np.ndarray
    post_upper: np.ndarray

    def phases(self) -> List[PhaseStatus]:
        return [phase_of(lo, hi) for lo, hi in zip(self.pre_lower, self.pre_upper)]


def affine_bounds(weights: np.ndarray, biases: np.ndarray,
                  lower: np.ndarray, upper: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Interval image of W·x + b for x in [lower, upper], via the sign split of W.

    Zero weights never touch infinite bounds, so 0·∞ does not arise.
    """
    pos = np.maximum(weights, 0.0)
    neg = np.minimum(weights, 0.0)
    with np.errstate(invalid='ignore'):
        lo_terms = np.where(pos != 0, pos * lower, 0.0) + np.where(neg != 0, neg * upper, 0.0)
        hi_terms = np.where(pos != 0, pos * upper, 0.0) + np.where(neg != 0, neg * lower, 0.0)
    return lo_terms.sum(axis=1) + biases, hi_terms.sum(axis=1) + biases


def interval_evaluate(net: Network, box: Box) -> List[LayerBounds]:
    """
    Sound layer-by-layer interval propagation.

    Every concrete x in box yields node values inside the returned intervals.
    """
    if box.dim != net.input_dim:
        raise InputError(f"box has dimension {box.dim}, network expects {net.input_dim}")
    lower, upper = box.lower, box.upper
    bounds = []
    for layer in net.layers:
        pre_lo, pre_hi = affine_bounds(layer.weights, layer.biases, lower, upper)
        if layer.activation == Activation.RELU:
            post_lo, post_hi = relu(pre_lo), relu(pre_hi)
        else:
            post_lo, post_hi = pre_lo, pre_hi
        bounds.append(LayerBounds(pre_lo, pre_hi, post_lo, post_hi))
        lower, upper = post_lo, post_hi
    return bounds


def output_bounds(net: Network, box: Box) -> Box:
    last = interval_evaluate(net, box)[-1]
    return Box(last.post_lower, last.post_upper)


def phase_of(lo: float, hi: float) -> PhaseStatus:
    """Active if lo ≥ 0; Inactive if hi ≤ 0; Undetermined otherwise."""
    if lo > hi:
        raise InputError(f"inverted interval [{lo}, {hi}]")
    if lo >= 0:
        return PhaseStatus.ACTIVE
    if hi <= 0:
        return PhaseStatus.INACTIVE
    return PhaseStatus.UNDETERMINED


def evaluate_many(net: Network, X: np.ndarray) -> np.ndarray:
    """Evaluate a batch of inputs given as rows of X."""
    values = np.atleast_2d(np.asarray(X, dtype=float))
    if values.shape[1] != net.input_dim:
        raise InputError(f"batch has {values.shape[1]} columns, network expects {net.input_dim}")
    for layer in net.layers:
        values = values @ layer.weights.T + layer.biases
        if layer.activation == Activation.RELU:
            values = relu(values)
    return values
