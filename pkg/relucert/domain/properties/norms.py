"""
relucert/domain/properties/norms.py - Distance constraints

L∞ and L1 balls are both expressible with linear rows and bounds:
L∞ through per-coordinate bounds, L1 through auxiliary tᵢ ≥ |dᵢ| with Σtᵢ ≤ δ.
"""
from typing import Optional, Sequence

import numpy as np

from relucert.core.errors import InputError
from relucert.core.spec import Norm
from relucert.domain.lincore import VarId
from relucert.domain.reluverify import DistanceCheck, EncodedQuery


def norm_constraint(query: EncodedQuery, x_vars: Sequence[VarId], delta: float, norm: Norm,
                    center: Optional[Sequence[float]] = None,
                    other_vars: Optional[Sequence[VarId]] = None) -> None:
    """
    Constrain ||x - center|| ≤ delta, or ||x - other|| ≤ delta for a second vector.

    Args:
        query: Query to extend
        x_vars: Variables of the constrained vector
        delta: Radius
        norm: Linf or L1
        center: Fixed center point (exclusive with other_vars)
        other_vars: Variables of the second vector
    """
    norm = Norm(norm)
    if (center is None) == (other_vars is None):
        raise InputError("give exactly one of center and other_vars")
    system = query.system
    diffs = []

    if center is not None:
        center = np.asarray(center, dtype=float)
        if center.shape[0] != len(x_vars):
            raise InputError("center dimension does not match the variables")
        for var, c in zip(x_vars, center):
            system.restrict(var, c - delta, c + delta)
        if norm == Norm.L1:
            for var, c in zip(x_vars, center):
                d = system.add_var(-delta, delta)
                system.add_equality({var: 1.0, d: -1.0}, float(c))
                diffs.append(d)
    else:
        if len(other_vars) != len(x_vars):
            raise InputError("vectors differ in dimension")
        for v1, v2 in zip(x_vars, other_vars):
            d = system.add_var(-delta, delta)
            system.add_equality({v1: 1.0, v2: -1.0, d: -1.0}, 0.0)
            diffs.append(d)

    if norm == Norm.L1:
        magnitudes = []
        for d in diffs:
            t = system.add_var(0.0, delta)
            system.add_inequality({t: 1.0, d: -1.0}, lo=0.0)
            system.add_inequality({t: 1.0, d: 1.0}, lo=0.0)
            magnitudes.append(t)
        system.add_inequality({t: 1.0 for t in magnitudes}, hi=delta)

    ref = query.node_map.get(x_vars[0])
    if ref is not None:
        other_copy = None
        if other_vars is not None and other_vars[0] in query.node_map:
            other_copy = query.node_map[other_vars[0]].copy
        query.distances.append(DistanceCheck(
            copy=ref.copy, delta=delta, norm=norm,
            center=None if center is None else center, other_copy=other_copy))
