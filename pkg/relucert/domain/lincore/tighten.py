"""
relucert/domain/lincore/tighten.py - Interval bound tightening

For every equality and every variable in it, the remaining terms give an
interval for that variable. Derived bounds are loosened by a relative slack
so rounding never cuts off a true solution.
"""
from dataclasses import dataclass
import logging
import math

from relucert.config.options import SolverConfig
from relucert.domain.lincore.system import LinearSystem

logger = logging.getLogger(__name__)

DEFAULT_SOLVER = SolverConfig()


@dataclass(frozen=True)
class TightenResult:
    changed: int
    infeasible: bool = False
    rounds: int = 0


def _term_range(c: float, lo: float, hi: float):
    return (c * lo, c * hi) if c > 0 else (c * hi, c * lo)


def _tighten_row(system: LinearSystem, row, rhs: float, config: SolverConfig) -> int:
    """One pass over a single equality. Returns the number of bounds improved, -1 on crossing."""
    min_sum = max_sum = 0.0
    min_inf = max_inf = 0
    ranges = []
    for var, c in row:
        tmin, tmax = _term_range(c, system.lower[var], system.upper[var])
        ranges.append((tmin, tmax))
        if math.isinf(tmin):
            min_inf += 1
        else:
            min_sum += tmin
        if math.isinf(tmax):
            max_inf += 1
        else:
            max_sum += tmax

    changed = 0
    for (var, c), (tmin, tmax) in zip(row, ranges):
        # interval of the other terms, unbounded sides skipped
        if min_inf == 0:
            rest_min = min_sum - tmin
        elif min_inf == 1 and math.isinf(tmin):
            rest_min = min_sum
        else:
            rest_min = -math.inf
        if max_inf == 0:
            rest_max = max_sum - tmax
        elif max_inf == 1 and math.isinf(tmax):
            rest_max = max_sum
        else:
            rest_max = math.inf

        # c·x = rhs - rest
        a, b = rhs - rest_max, rhs - rest_min
        new_lo, new_hi = (a / c, b / c) if c > 0 else (b / c, a / c)

        slack = config.tighten_slack
        gain = config.tighten_min_gain
        lo, hi = system.lower[var], system.upper[var]
        if math.isfinite(new_lo):
            new_lo -= slack * (1.0 + abs(new_lo))
            if not math.isfinite(lo) or new_lo > lo + gain * (1.0 + abs(lo)):
                system.lower[var] = new_lo
                changed += 1
        if math.isfinite(new_hi):
            new_hi += slack * (1.0 + abs(new_hi))
            if not math.isfinite(hi) or new_hi < hi - gain * (1.0 + abs(hi)):
                system.upper[var] = new_hi
                changed += 1

        lo, hi = system.lower[var], system.upper[var]
        if lo > hi:
            if lo - hi > config.bound_tol:
                return -1
            mid = 0.5 * (lo + hi)
            system.lower[var] = system.upper[var] = mid
    return changed


def tighten(system: LinearSystem, max_rounds: int = DEFAULT_SOLVER.tighten_rounds,
            config: SolverConfig = DEFAULT_SOLVER) -> TightenResult:
    """
    Derive implied bounds in place, up to max_rounds passes or a fixpoint.

    Returns:
        TightenResult; infeasible=True when some variable's bounds cross
    """
    for lo, hi in zip(system.lower, system.upper):
        if lo - hi > config.bound_tol:
            return TightenResult(0, True, 0)

    total = 0
    for round_no in range(1, max_rounds + 1):
        changed = 0
        for row, rhs in system.equalities:
            if not row:
                if abs(rhs) > config.eq_tol:
                    return TightenResult(total, True, round_no)
                continue
            result = _tighten_row(system, row, rhs, config)
            if result < 0:
                logger.debug("bounds crossed in tightening round %d", round_no)
                return TightenResult(total, True, round_no)
            changed += result
        total += changed
        if changed == 0:
            return TightenResult(total, False, round_no)
    return TightenResult(total, False, max_rounds)
