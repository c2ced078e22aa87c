"""
relucert/domain/properties/verify.py - End-to-end property verification

Encodes a property, schedules its disjuncts with early stopping and turns
the first validated Sat disjunct into a counterexample.
"""
from typing import Dict, List, Optional, Sequence, Tuple
import logging
import time

from relucert.config.options import VerifyOptions
from relucert.core.errors import InputError, ValidationFailure
from relucert.core.network import Network
from relucert.core.spec import PropertyKind, RobustnessSpec
from relucert.core.verdict import (
    Budget, CancelFlag, PropertyStatus, PropertyVerdict, SearchStats, SolveStatus, Verdict,
)
from relucert.domain.parallel import (
    Disjunct, PhaseCache, PointQuery, SubDomain, WorkItem, partition_domain, prioritize, run_batch,
)
from relucert.domain.properties.base import PropertyEncoder
from relucert.domain.properties.registry import PropertyRegistry
from relucert.domain.reluverify import extract_counterexample

logger = logging.getLogger(__name__)


def _encoder_for(spec: RobustnessSpec) -> PropertyEncoder:
    encoder = PropertyRegistry.get(spec.kind)
    if encoder is None:
        raise InputError(f"no encoder registered for {spec.kind.value}")
    return encoder


def _finish(verdict: PropertyVerdict, spec: RobustnessSpec, start: float) -> PropertyVerdict:
    verdict.stats.wall_time = time.monotonic() - start
    logger.info("%s: %s (%d splits, %.3fs)", spec.describe(), verdict.status.value,
                verdict.stats.splits, verdict.stats.wall_time)
    return verdict


def verify_property(net: Network, spec: RobustnessSpec, workers: int = 1,
                    budget: Budget = Budget(), options: VerifyOptions = VerifyOptions(),
                    phase_cache: Optional[PhaseCache] = None,
                    cancel: Optional[CancelFlag] = None,
                    deadline: Optional[float] = None) -> PropertyVerdict:
    """
    Decide one robustness property.

    Args:
        net: Network under test
        spec: Property
        workers: Threads solving disjuncts concurrently
        budget: Timeout for the whole property and split limit per disjunct
        options: Verification options
        phase_cache: Shared fixed-phase store for this network
        cancel: Parent cancellation flag
        deadline: Absolute deadline overriding budget.timeout

    Returns:
        Robust, Violated with a validated counterexample, or Timeout
    """
    start = time.monotonic()
    if deadline is None:
        deadline = budget.deadline(start)
    queries = _encoder_for(spec).encode(net, spec, options, phase_cache)

    stats = SearchStats()
    outcomes: Dict[int, Verdict] = {}
    rejected: List[Tuple[int, ValidationFailure]] = []
    pending = list(range(len(queries)))
    while pending:
        items = [WorkItem(i, Disjunct(queries[i]), group=spec.kind.value) for i in pending]
        batch = run_batch(items, workers, budget, options, cancel, deadline)
        for i in pending:
            outcomes[i] = batch.verdicts[i]
            stats.merge(outcomes[i].stats)

        sat = sorted(i for i in pending if outcomes[i].found_violation)
        for i in sat:
            try:
                example = extract_counterexample(queries[i], outcomes[i].witness,
                                                 options.search.validation_tol)
            except ValidationFailure as exc:
                rejected.append((i, exc))
                continue
            return _finish(PropertyVerdict(PropertyStatus.VIOLATED, example, stats), spec, start)

        if not sat or (cancel is not None and cancel.is_set()):
            break
        # every Sat witness was spurious; rerun the disjuncts early stopping cut short
        pending = [i for i in pending if outcomes[i].status == SolveStatus.CANCELLED]

    if rejected:
        diagnostic = "validation failure: " + "; ".join(f"disjunct {i}: {exc}" for i, exc in rejected)
        verdict = PropertyVerdict(PropertyStatus.TIMEOUT, None, stats, diagnostic, rejected)
        return _finish(verdict, spec, start)
    unfinished = [outcomes[i] for i in sorted(outcomes) if not outcomes[i].is_unsat]
    if unfinished:
        diagnostic = unfinished[0].diagnostic or unfinished[0].status.value
        return _finish(PropertyVerdict(PropertyStatus.TIMEOUT, None, stats, diagnostic), spec, start)
    return _finish(PropertyVerdict(PropertyStatus.ROBUST, None, stats), spec, start)


def _aggregate(verdicts: Sequence[Optional[PropertyVerdict]]) -> PropertyVerdict:
    """Lowest-id Violated wins, then any unfinished item makes the result Timeout."""
    stats = SearchStats()
    for verdict in verdicts:
        if verdict is not None:
            stats.merge(verdict.stats)
    for verdict in verdicts:
        if verdict is not None and verdict.found_violation:
            return PropertyVerdict(PropertyStatus.VIOLATED, verdict.counterexample, stats)
    for verdict in verdicts:
        if verdict is None or not verdict.is_robust:
            if verdict is None:
                return PropertyVerdict(PropertyStatus.TIMEOUT, None, stats, "not run")
            return PropertyVerdict(PropertyStatus.TIMEOUT, None, stats, verdict.diagnostic, verdict.rejected)
    return PropertyVerdict(PropertyStatus.ROBUST, None, stats)


def verify_global_partitioned(net: Network, spec: RobustnessSpec, parts: int, workers: int = 1,
                              budget: Budget = Budget(), options: VerifyOptions = VerifyOptions(),
                              phase_cache: Optional[PhaseCache] = None,
                              cancel: Optional[CancelFlag] = None) -> PropertyVerdict:
    """
    Decide a global property by splitting its domain into `parts` sub-boxes.

    The first copy ranges over a sub-box, the second over that sub-box
    inflated by delta and clipped to the domain, so pairs straddling a cut
    are still covered.
    """
    if spec.kind != PropertyKind.GLOBAL_CONFIDENCE:
        raise InputError("domain partitioning applies to global properties only")
    _encoder_for(spec).check(net, spec)
    start = time.monotonic()
    items = []
    for i, sub in enumerate(partition_domain(spec.domain, parts)):
        partner = sub.inflate(spec.delta).intersect(spec.domain)
        items.append(WorkItem(i, SubDomain(net, spec.restricted_to(sub, partner)), group="global"))
    if options.prioritize:
        items = prioritize(items, net, options.fluctuation_samples)

    batch = run_batch(items, workers, budget, options, cancel, budget.deadline(start), phase_cache)
    verdict = _aggregate(batch.in_order(range(len(items))))
    return _finish(verdict, spec, start)


def verify_points(net: Network, specs: Sequence[RobustnessSpec], workers: int = 1,
                  budget: Budget = Budget(), options: VerifyOptions = VerifyOptions(),
                  phase_cache: Optional[PhaseCache] = None,
                  cancel: Optional[CancelFlag] = None) -> List[PropertyVerdict]:
    """
    Decide several independent properties, one work item each.

    A single property spends all workers on its disjuncts instead.

    Returns:
        One verdict per spec, in input order
    """
    for spec in specs:
        _encoder_for(spec).check(net, spec)
    if len(specs) == 1:
        return [verify_property(net, specs[0], workers, budget, options, phase_cache, cancel)]
    items = [WorkItem(i, PointQuery(net, spec)) for i, spec in enumerate(specs)]
    if options.prioritize:
        items = prioritize(items, net, options.fluctuation_samples)
    batch = run_batch(items, workers, budget, options, cancel, None, phase_cache)
    return [batch.verdicts[i] for i in range(len(specs))]
