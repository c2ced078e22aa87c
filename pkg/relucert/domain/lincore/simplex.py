"""
relucert/domain/lincore/simplex.py - Bounded-variable primal simplex, phase one

check_feasible() decides {A·x = b, l ≤ x ≤ u} by minimising the sum of
artificial variables. Nonbasic variables rest at a finite bound (free ones at 0).
Dantzig pricing runs for a configurable number of pivots, then Bland's rule
takes over so degenerate cycling cannot occur.
"""
import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from relucert.config.options import SolverConfig
from relucert.core.errors import SolverLimitError
from relucert.domain.lincore.system import FeasResult, LinearSystem

logger = logging.getLogger(__name__)

DEFAULT_SOLVER = SolverConfig()


def _resting_values(lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    return np.where(np.isfinite(lower), lower, np.where(np.isfinite(upper), upper, 0.0))


class BoundedSimplex:
    """
    Dense-tableau phase-one solver.

    The tableau holds B⁻¹·[A | I·s | b]; basic values are recomputed from its
    last column and the nonbasic values on every iteration.
    """

    def __init__(self, A: np.ndarray, b: np.ndarray,
                 lower: np.ndarray, upper: np.ndarray, config: SolverConfig):
        self.config = config
        m, n = A.shape
        self.m, self.n = m, n

        x = _resting_values(lower, upper)
        residual = b - A @ x
        sign = np.where(residual >= 0, 1.0, -1.0)

        self.full = np.hstack([A, np.diag(sign), b[:, None]])
        self.lower = np.concatenate([lower, np.zeros(m)])
        self.upper = np.concatenate([upper, np.full(m, math.inf)])
        self.cost = np.concatenate([np.zeros(n), np.ones(m)])
        self.values = np.concatenate([x, np.abs(residual)])
        self.basis: List[int] = list(range(n, n + m))
        self.is_basic = np.zeros(n + m, dtype=bool)
        self.is_basic[self.basis] = True
        # B = diag(sign) is its own inverse
        self.tableau = sign[:, None] * self.full
        self.pivots = 0

    # ─────────────────────────────────────────────────────────────

    def _refresh_basics(self) -> None:
        nonbasic = np.where(self.is_basic, 0.0, self.values)
        width = self.n + self.m
        self.values[self.basis] = self.tableau[:, -1] - self.tableau[:, :width] @ nonbasic

    def _refactor(self) -> None:
        B = self.full[:, self.basis]
        try:
            self.tableau = np.linalg.solve(B, self.full)
        except np.linalg.LinAlgError:
            logger.debug("basis matrix singular at refactorisation; keeping tableau")

    def _entering(self, reduced: np.ndarray) -> Optional[Tuple[int, float]]:
        tol = self.config.pivot_tol
        bound_tol = self.config.bound_tol
        can_up = (reduced < -tol) & (self.values < self.upper - bound_tol)
        can_down = (reduced > tol) & (self.values > self.lower + bound_tol)
        eligible = (can_up | can_down) & ~self.is_basic
        candidates = np.flatnonzero(eligible)
        if candidates.size == 0:
            return None
        if self.pivots < self.config.dantzig_pivots:
            j = int(candidates[np.argmax(np.abs(reduced[candidates]))])
        else:
            j = int(candidates[0])
        return j, (1.0 if can_up[j] else -1.0)

    def _ratio_test(self, j: int, direction: float) -> Tuple[float, Optional[int]]:
        """Step length and leaving row (None means the entering variable flips bound)."""
        tol = self.config.pivot_tol
        step = self.upper[j] - self.lower[j]  # bound flip, inf if one side open
        leaving: Optional[int] = None
        column = direction * self.tableau[:, j]
        bland = self.pivots >= self.config.dantzig_pivots

        for i, alpha in enumerate(column):
            k = self.basis[i]
            if alpha > tol and math.isfinite(self.lower[k]):
                ratio = (self.values[k] - self.lower[k]) / alpha
            elif alpha < -tol and math.isfinite(self.upper[k]):
                ratio = (self.upper[k] - self.values[k]) / -alpha
            else:
                continue
            ratio = max(ratio, 0.0)
            if ratio < step - 1e-12:
                step, leaving = ratio, i
            elif leaving is not None and abs(ratio - step) <= 1e-12:
                if bland:
                    if k < self.basis[leaving]:
                        leaving = i
                elif abs(alpha) > abs(column[leaving]):
                    leaving = i
        return step, leaving

    def _pivot(self, row: int, j: int) -> None:
        T = self.tableau
        T[row, :] /= T[row, j]
        factors = T[:, j].copy()
        factors[row] = 0.0
        T -= np.outer(factors, T[row, :])
        leaving = self.basis[row]
        self.is_basic[leaving] = False
        self.is_basic[j] = True
        self.basis[row] = j

    def run(self) -> np.ndarray:
        """Drive the artificial sum to its minimum; returns the structural values."""
        width = self.n + self.m
        while True:
            if self.pivots >= self.config.max_pivots:
                raise SolverLimitError(f"no decision after {self.pivots} pivots")
            if self.pivots and self.pivots % self.config.refactor_every == 0:
                self._refactor()
            self._refresh_basics()

            cb = self.cost[self.basis]
            reduced = self.cost - cb @ self.tableau[:, :width]
            choice = self._entering(reduced)
            if choice is None:
                break
            j, direction = choice
            step, row = self._ratio_test(j, direction)
            if math.isinf(step):
                raise SolverLimitError("unbounded ray in phase one")

            if row is None:
                self.values[j] = self.upper[j] if direction > 0 else self.lower[j]
            else:
                k = self.basis[row]
                alpha = direction * self.tableau[row, j]
                self.values[j] += direction * step
                self.values[k] = self.lower[k] if alpha > 0 else self.upper[k]
                self._pivot(row, j)
            self.pivots += 1

        self._refactor()
        self._refresh_basics()
        return self.values[:self.n].copy()


def check_feasible(system: LinearSystem, config: SolverConfig = DEFAULT_SOLVER) -> FeasResult:
    """
    Complete feasibility decision.

    Returns:
        FeasResult with a witness satisfying every equality within eq_tol and
        every bound within bound_tol, or an infeasible result.

    Raises:
        SolverLimitError: pivot budget exhausted
    """
    lower, upper = system.bounds()
    if np.any(lower > upper + config.bound_tol):
        return FeasResult.infeasible()
    lower = np.minimum(lower, upper)

    if not system.equalities:
        return FeasResult(True, _resting_values(lower, upper))

    A, b = system.dense()
    solver = BoundedSimplex(A, b, lower, upper, config)
    x = np.clip(solver.run(), lower, upper)
    residual = float(np.max(np.abs(A @ x - b)))
    if residual <= config.eq_tol:
        return FeasResult(True, x, solver.pivots)
    logger.debug("phase one ended with residual %.3g after %d pivots", residual, solver.pivots)
    return FeasResult.infeasible(solver.pivots)
