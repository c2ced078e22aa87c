"""
relucert/domain/properties/search.py - Largest robust δ by bisection

Robustness is monotone in δ, so bisection between a robust lower end and a
non-robust upper end converges on the boundary. A timed-out trial counts as
non-robust and is flagged.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union
import logging

import numpy as np

from relucert.config.options import VerifyOptions
from relucert.config.settings import PropertyParams
from relucert.core.errors import InputError
from relucert.core.network import Network
from relucert.core.spec import Norm, PropertyKind, RobustnessSpec
from relucert.core.verdict import Budget, PropertyStatus
from relucert.domain.parallel import PhaseCache
from relucert.domain.properties.verify import verify_property

logger = logging.getLogger(__name__)

KIND_ALIASES = {
    'label': PropertyKind.LOCAL_LABEL,
    'conf': PropertyKind.LOCAL_CONFIDENCE,
}


@dataclass
class MaxDeltaResult:
    """
    Attributes:
        delta: Largest tried δ found Robust (0 if none)
        robust_found: Whether any trial at δ ≥ precision was Robust
        timeout_trials: Trials that timed out and were counted as non-robust
        trials: (δ, status) in trial order
    """

    delta: float
    robust_found: bool
    timeout_trials: int = 0
    trials: List[Tuple[float, PropertyStatus]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            'delta': self.delta,
            'robust_found': self.robust_found,
            'timeout_trials': self.timeout_trials,
            'trials': [(d, s.value) for d, s in self.trials],
        }


def _resolve_kind(kind: Union[PropertyKind, str]) -> PropertyKind:
    if isinstance(kind, str) and kind in KIND_ALIASES:
        return KIND_ALIASES[kind]
    kind = PropertyKind(kind)
    if kind == PropertyKind.GLOBAL_CONFIDENCE:
        raise InputError("max-delta search applies to local properties")
    return kind


def max_delta_search(net: Network, x0, kind: Union[PropertyKind, str] = PropertyKind.LOCAL_LABEL,
                     epsilon: Optional[float] = None, norm: Union[Norm, str] = Norm.LINF,
                     precision: float = PropertyParams.MAX_DELTA_PRECISION,
                     delta_hi: float = 1.0, workers: int = 1, budget: Budget = Budget(),
                     options: VerifyOptions = VerifyOptions()) -> MaxDeltaResult:
    """
    Find δ* with the property Robust at δ* and not Robust at δ* + precision.

    Args:
        net: Network
        x0: Center point
        kind: Local property kind ('label' and 'conf' accepted)
        epsilon: Confidence bound for the confidence kind
        norm: Distance norm
        precision: Bisection stops once the bracket is this narrow
        delta_hi: Upper end of the search; returned as is when Robust
        workers: Threads per trial
        budget: Per-trial budget

    Returns:
        MaxDeltaResult with the trial log
    """
    if not np.isfinite(precision) or precision <= 0:
        raise InputError(f"precision must be positive, got {precision}")
    if not np.isfinite(delta_hi) or delta_hi <= 0:
        raise InputError(f"delta_hi must be positive, got {delta_hi}")
    base = RobustnessSpec(_resolve_kind(kind), delta_hi, norm, x0=x0, epsilon=epsilon)
    base.check_against(net)
    cache = PhaseCache(net)
    result = MaxDeltaResult(0.0, False)

    def robust_at(delta: float) -> bool:
        verdict = verify_property(net, base.with_delta(delta), workers, budget, options, cache)
        result.trials.append((delta, verdict.status))
        if verdict.status == PropertyStatus.TIMEOUT:
            result.timeout_trials += 1
            logger.warning("trial delta=%.6g timed out: %s", delta, verdict.diagnostic)
        logger.info("trial delta=%.6g: %s", delta, verdict.status.value)
        return verdict.is_robust

    if robust_at(delta_hi):
        result.delta, result.robust_found = delta_hi, True
        return result

    lo, hi = 0.0, delta_hi
    while hi - lo > precision:
        mid = 0.5 * (lo + hi)
        if robust_at(mid):
            lo = mid
        else:
            hi = mid
    result.delta = lo
    result.robust_found = lo >= precision
    return result
