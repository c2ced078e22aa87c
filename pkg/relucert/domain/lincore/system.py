"""
relucert/domain/lincore/system.py - Linear equality system over bounded variables

A LinearSystem is owned by one solver at a time and mutated in place;
clone() produces an independent copy for case-splitting.
"""
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple
import math

import numpy as np

from relucert.core.errors import InputError


VarId = int
Row = Tuple[Tuple[Tuple[VarId, float], ...], float]


def _check_real(value: float, what: str) -> float:
    value = float(value)
    if math.isnan(value):
        raise InputError(f"{what} must not be NaN")
    return value


class LinearSystem:
    """Variables with [lower, upper] bounds plus equalities Σ cᵢ·xᵢ = rhs."""

    def __init__(self):
        self.lower: List[float] = []
        self.upper: List[float] = []
        self.equalities: List[Row] = []

    @property
    def var_count(self) -> int:
        return len(self.lower)

    # ─────────────────────────────────────────────────────────────
    # Construction
    # ─────────────────────────────────────────────────────────────

    def add_var(self, lo: float = -math.inf, hi: float = math.inf) -> VarId:
        lo = _check_real(lo, "lower bound")
        hi = _check_real(hi, "upper bound")
        if lo > hi:
            raise InputError(f"inverted bounds [{lo}, {hi}]")
        self.lower.append(lo)
        self.upper.append(hi)
        return len(self.lower) - 1

    def add_equality(self, coeffs: Mapping[VarId, float], rhs: float) -> None:
        """Record Σ coeffs[v]·x_v = rhs. Zero coefficients are dropped."""
        rhs = _check_real(rhs, "rhs")
        if math.isinf(rhs):
            raise InputError("rhs must be finite")
        row = []
        for var, c in sorted(coeffs.items()):
            if not isinstance(var, (int, np.integer)) or not 0 <= var < self.var_count:
                raise InputError(f"unknown variable {var!r}")
            c = _check_real(c, "coefficient")
            if math.isinf(c):
                raise InputError("coefficients must be finite")
            if c != 0.0:
                row.append((int(var), c))
        self.equalities.append((tuple(row), rhs))

    def add_inequality(self, coeffs: Mapping[VarId, float],
                       lo: float = -math.inf, hi: float = math.inf) -> VarId:
        """
        Record lo ≤ Σ coeffs[v]·x_v ≤ hi through a bounded slack variable.

        Returns:
            The slack variable's id
        """
        slack = self.add_var(lo, hi)
        row = dict(coeffs)
        row[slack] = row.get(slack, 0.0) - 1.0
        self.add_equality(row, 0.0)
        return slack

    def restrict(self, var: VarId, lo: float = -math.inf, hi: float = math.inf) -> bool:
        """
        Intersect var's bounds with [lo, hi].

        Returns:
            False if the bounds now cross
        """
        self.lower[var] = max(self.lower[var], lo)
        self.upper[var] = min(self.upper[var], hi)
        return self.lower[var] <= self.upper[var]

    def clone(self) -> 'LinearSystem':
        other = LinearSystem()
        other.lower = list(self.lower)
        other.upper = list(self.upper)
        other.equalities = list(self.equalities)  # rows are immutable tuples
        return other

    # ─────────────────────────────────────────────────────────────
    # Views
    # ─────────────────────────────────────────────────────────────

    def dense(self) -> Tuple[np.ndarray, np.ndarray]:
        """Equalities as a dense (A, b) pair."""
        A = np.zeros((len(self.equalities), self.var_count))
        b = np.zeros(len(self.equalities))
        for i, (row, rhs) in enumerate(self.equalities):
            for var, c in row:
                A[i, var] += c
            b[i] = rhs
        return A, b

    def bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.array(self.lower, dtype=float), np.array(self.upper, dtype=float)

    def max_residual(self, x: np.ndarray) -> float:
        if not self.equalities:
            return 0.0
        A, b = self.dense()
        return float(np.max(np.abs(A @ x - b)))

    def satisfies(self, x: np.ndarray, eq_tol: float, bound_tol: float) -> bool:
        lower, upper = self.bounds()
        return (bool(np.all(x >= lower - bound_tol) and np.all(x <= upper + bound_tol))
                and self.max_residual(x) <= eq_tol)

    def dump(self) -> str:
        """Debug text: one variable or equality per line."""
        lines = [f"var x{i} [{lo!r}, {hi!r}]" for i, (lo, hi) in enumerate(zip(self.lower, self.upper))]
        for row, rhs in self.equalities:
            lhs = " + ".join(f"{c!r}*x{v}" for v, c in row) or "0"
            lines.append(f"eq {lhs} = {rhs!r}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"LinearSystem(vars={self.var_count}, equalities={len(self.equalities)})"


@dataclass(frozen=True)
class FeasResult:
    """Feasible with a witness assignment, or Infeasible."""

    feasible: bool
    assignment: Optional[np.ndarray] = None
    pivots: int = 0

    @classmethod
    def infeasible(cls, pivots: int = 0) -> 'FeasResult':
        return cls(False, None, pivots)


def parse_dump(text: str) -> LinearSystem:
    """Rebuild a system from dump() output (test fixtures)."""
    system = LinearSystem()
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("var "):
            _, _, span = line.split(" ", 2)
            lo, hi = span.strip("[]").split(",")
            system.add_var(float(lo), float(hi))
        elif line.startswith("eq "):
            lhs, rhs = line[3:].rsplit("=", 1)
            coeffs: Dict[int, float] = {}
            if lhs.strip() != "0":
                for term in lhs.split(" + "):
                    c, v = term.strip().split("*x")
                    coeffs[int(v)] = coeffs.get(int(v), 0.0) + float(c)
            system.add_equality(coeffs, float(rhs))
        else:
            raise InputError(f"unrecognized dump line: {line!r}")
    return system
