"""
relucert/domain/parallel/scheduler.py - Work-item scheduling with early stopping

run_batch executes work items on a thread pool in priority order. Items that
share a group belong to one property: the first violation in a group cancels
the group's remaining items.
"""
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Union
import logging
import threading
import time

from relucert.config.options import VerifyOptions
from relucert.core.errors import InputError
from relucert.core.network import Network
from relucert.core.spec import RobustnessSpec
from relucert.core.verdict import (
    Budget, CancelFlag, PropertyStatus, PropertyVerdict, SolveStatus, Verdict,
)
from relucert.domain.reluverify import EncodedQuery, solve

logger = logging.getLogger(__name__)


# ─────────────────────────────────────────────────────────────────────
# Work items
# ─────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class PointQuery:
    """A whole property at one point (or domain)."""
    net: Network
    spec: RobustnessSpec


@dataclass(frozen=True)
class Disjunct:
    """One disjunct of a property's negation."""
    query: EncodedQuery


@dataclass(frozen=True)
class SubDomain:
    """A global property restricted to one sub-box of its domain."""
    net: Network
    spec: RobustnessSpec


Payload = Union[PointQuery, Disjunct, SubDomain]
Outcome = Union[Verdict, PropertyVerdict]


@dataclass(frozen=True)
class WorkItem:
    """
    Attributes:
        id: Unique within a batch
        payload: What to run
        priority: Higher runs earlier; ties keep submission order
        group: Items of one property; a violation cancels its siblings
    """

    id: Hashable
    payload: Payload
    priority: float = 0.0
    group: Optional[Hashable] = None


class CancelToken:
    """Cancellation flag that also reports a parent flag's state."""

    def __init__(self, parent: Optional[CancelFlag] = None):
        self._event = threading.Event()
        self._parent = parent

    def set(self) -> None:
        self._event.set()

    def is_set(self) -> bool:
        return self._event.is_set() or (self._parent is not None and self._parent.is_set())


@dataclass
class BatchResult:
    """
    Attributes:
        verdicts: Outcome per item id
        item_times: Wall time per executed item
        wall_time: Whole batch
        cancelled: Ids of items skipped or interrupted by early stopping
    """

    verdicts: Dict[Hashable, Outcome] = field(default_factory=dict)
    item_times: Dict[Hashable, float] = field(default_factory=dict)
    wall_time: float = 0.0
    cancelled: List[Hashable] = field(default_factory=list)

    def in_order(self, ids: Sequence[Hashable]) -> List[Optional[Outcome]]:
        return [self.verdicts.get(i) for i in ids]


# ─────────────────────────────────────────────────────────────────────
# Execution
# ─────────────────────────────────────────────────────────────────────

def _not_finished(payload: Payload, status: SolveStatus, diagnostic: str) -> Outcome:
    if isinstance(payload, Disjunct):
        return Verdict(status, diagnostic=diagnostic)
    return PropertyVerdict(PropertyStatus.TIMEOUT, diagnostic=diagnostic)


def execute_item(item: WorkItem, budget: Budget = Budget(),
                 options: VerifyOptions = VerifyOptions(),
                 cancel: Optional[CancelFlag] = None,
                 deadline: Optional[float] = None,
                 phase_cache=None) -> Outcome:
    """Run one work item on the calling thread."""
    payload = item.payload
    if isinstance(payload, Disjunct):
        return solve(payload.query, budget, options.search, cancel, deadline)

    # properties builds on this module
    from relucert.domain.properties.verify import verify_property
    if isinstance(payload, (PointQuery, SubDomain)):
        return verify_property(payload.net, payload.spec, workers=1, budget=budget,
                               options=options, phase_cache=phase_cache,
                               cancel=cancel, deadline=deadline)
    raise InputError(f"unknown payload type {type(payload).__name__}")


def run_batch(items: Sequence[WorkItem], workers: int = 1, budget: Budget = Budget(),
              options: VerifyOptions = VerifyOptions(),
              cancel: Optional[CancelFlag] = None,
              deadline: Optional[float] = None,
              phase_cache=None) -> BatchResult:
    """
    Execute items on `workers` threads.

    Args:
        items: Work items with unique ids
        workers: Pool size (1 runs inline on the calling thread)
        budget: Per-property budget handed to each item
        options: Verification options
        cancel: Parent cancellation flag
        deadline: Absolute deadline shared by every item
        phase_cache: Shared PhaseCache for property items

    Returns:
        BatchResult; per-item outcomes do not depend on `workers`
    """
    if isinstance(workers, bool) or not isinstance(workers, int) or workers < 1:
        raise InputError(f"workers must be a positive integer, got {workers!r}")
    ids = [item.id for item in items]
    if len(set(ids)) != len(ids):
        raise InputError("work item ids must be unique within a batch")

    start = time.monotonic()
    ordered = sorted(items, key=lambda it: -it.priority)
    tokens: Dict[Hashable, CancelToken] = {}
    for item in ordered:
        key = item.group if item.group is not None else ('item', item.id)
        if key not in tokens:
            tokens[key] = CancelToken(cancel)
    result = BatchResult()
    lock = threading.Lock()

    def token_of(item: WorkItem) -> CancelToken:
        return tokens[item.group if item.group is not None else ('item', item.id)]

    def work(item: WorkItem) -> None:
        token = token_of(item)
        began = time.monotonic()
        if token.is_set():
            outcome = _not_finished(item.payload, SolveStatus.CANCELLED, "cancelled")
        else:
            try:
                outcome = execute_item(item, budget, options, token, deadline, phase_cache)
            except Exception as exc:  # a failing worker must still yield a verdict
                logger.warning("work item %s failed: %s", item.id, exc)
                outcome = _not_finished(item.payload, SolveStatus.TIMEOUT,
                                        f"worker failure: {type(exc).__name__}: {exc}")
        if outcome.found_violation and item.group is not None:
            token.set()
        with lock:
            result.verdicts[item.id] = outcome
            result.item_times[item.id] = time.monotonic() - began
            if outcome.diagnostic == "cancelled":
                result.cancelled.append(item.id)

    if workers == 1 or len(ordered) <= 1:
        for item in ordered:
            work(item)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(work, item) for item in ordered]
            for future in as_completed(futures):
                future.result()

    result.wall_time = time.monotonic() - start
    logger.info("batch of %d items on %d workers: %.3fs, %d cancelled",
                len(ordered), workers, result.wall_time, len(result.cancelled))
    return result
