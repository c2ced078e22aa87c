"""
relucert/core/network.py - Immutable feedforward ReLU classifier model

Layer, Network and Box are frozen; their arrays are made read-only so the
objects can be shared freely between worker threads.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Sequence, Tuple

import numpy as np

from relucert.core.errors import InputError


Label = Hashable


class Activation(str, Enum):
    RELU = "relu"
    IDENTITY = "identity"


class PhaseStatus(str, Enum):
    """State of a ReLU given bounds on its pre-activation."""
    ACTIVE = "active"
    INACTIVE = "inactive"
    UNDETERMINED = "undetermined"


def _frozen_array(values, ndim: int, what: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != ndim:
        raise InputError(f"{what} must be {ndim}-dimensional, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Layer:
    """Affine map followed by an activation. weights has shape (out, in)."""

    weights: np.ndarray
    biases: np.ndarray
    activation: Activation = Activation.RELU

    def __post_init__(self):
        object.__setattr__(self, 'weights', _frozen_array(self.weights, 2, "weights"))
        object.__setattr__(self, 'biases', _frozen_array(self.biases, 1, "biases"))
        object.__setattr__(self, 'activation', Activation(self.activation))
        if self.biases.shape[0] != self.weights.shape[0]:
            raise InputError(
                f"bias length {self.biases.shape[0]} != weight rows {self.weights.shape[0]}")
        if not (np.all(np.isfinite(self.weights)) and np.all(np.isfinite(self.biases))):
            raise InputError("weights and biases must be finite")

    @property
    def in_size(self) -> int:
        return self.weights.shape[1]

    @property
    def out_size(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class Network:
    """
    Layered ReLU classifier.

    Every layer but the last is ReLU; the last is identity so the outputs are
    raw confidences, one per label.
    """

    layers: Tuple[Layer, ...]
    input_dim: int
    labels: Tuple[Label, ...] = ()

    def __post_init__(self):
        layers = tuple(self.layers)
        object.__setattr__(self, 'layers', layers)
        if not layers:
            raise InputError("network needs at least one layer")
        if self.input_dim < 1:
            raise InputError(f"input_dim must be positive, got {self.input_dim}")

        expected_in = self.input_dim
        for k, layer in enumerate(layers):
            if layer.in_size != expected_in:
                raise InputError(
                    f"layer {k} expects {layer.in_size} inputs, previous size is {expected_in}")
            last = k == len(layers) - 1
            wanted = Activation.IDENTITY if last else Activation.RELU
            if layer.activation != wanted:
                raise InputError(f"layer {k} must use {wanted.value} activation")
            expected_in = layer.out_size

        labels = tuple(self.labels) if self.labels else tuple(range(expected_in))
        if len(labels) != expected_in:
            raise InputError(f"{len(labels)} labels for {expected_in} output nodes")
        if len(set(labels)) != len(labels):
            raise InputError("labels must be unique")
        object.__setattr__(self, 'labels', labels)

    @classmethod
    def from_weights(cls, weights: Sequence, biases: Sequence, labels: Sequence = ()) -> 'Network':
        """Build a network from per-layer weight matrices and bias vectors."""
        if len(weights) != len(biases):
            raise InputError("one bias vector per weight matrix required")
        layers = []
        for k, (w, b) in enumerate(zip(weights, biases)):
            act = Activation.IDENTITY if k == len(weights) - 1 else Activation.RELU
            layers.append(Layer(np.atleast_2d(np.array(w, dtype=float)), b, act))
        return cls(tuple(layers), layers[0].in_size, tuple(labels))

    @property
    def output_dim(self) -> int:
        return self.layers[-1].out_size

    @property
    def hidden_sizes(self) -> Tuple[int, ...]:
        return tuple(layer.out_size for layer in self.layers[:-1])

    @property
    def relu_count(self) -> int:
        return sum(self.hidden_sizes)

    def label_index(self, label: Label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown label {label!r}") from None


@dataclass(frozen=True)
class Box:
    """Axis-aligned box; entries may be infinite."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = _frozen_array(self.lower, 1, "box lower")
        upper = _frozen_array(self.upper, 1, "box upper")
        if lower.shape != upper.shape:
            raise InputError(f"box bounds differ in length: {lower.shape[0]} vs {upper.shape[0]}")
        if np.any(np.isnan(lower)) or np.any(np.isnan(upper)):
            raise InputError("box bounds must not be NaN")
        if np.any(lower > upper):
            raise InputError("box lower bound exceeds upper bound")
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)

    @classmethod
    def around(cls, center: Sequence[float], radius: float) -> 'Box':
        c = np.asarray(center, dtype=float)
        return cls(c - radius, c + radius)

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    @property
    def widths(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, other: 'Box') -> bool:
        """True if other lies inside this box."""
        return (other.dim == self.dim
                and bool(np.all(self.lower <= other.lower))
                and bool(np.all(other.upper <= self.upper)))

    def contains_point(self, x: Sequence[float], tol: float = 0.0) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower - tol) and np.all(x <= self.upper + tol))

    def inflate(self, radius: float) -> 'Box':
        return Box(self.lower - radius, self.upper + radius)

    def intersect(self, other: 'Box') -> 'Box':
        return Box(np.maximum(self.lower, other.lower), np.minimum(self.upper, other.upper))

    def to_dict(self) -> dict:
        return {'lower': self.lower.tolist(), 'upper': self.upper.tolist()}
