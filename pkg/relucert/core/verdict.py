"""
relucert/core/verdict.py - Solver and property outcome models

Verdict is the outcome of one (disjunct) query; PropertyVerdict is the outcome
of a whole robustness property after aggregation and validation.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Hashable, List, Optional, Protocol, Tuple
import time

import numpy as np

from relucert.core.errors import ValidationFailure


class SolveStatus(str, Enum):
    UNSAT = "unsat"
    SAT = "sat"
    TIMEOUT = "timeout"
    CANCELLED = "cancelled"  # stopped because a sibling disjunct was Sat


class PropertyStatus(str, Enum):
    ROBUST = "robust"
    VIOLATED = "violated"
    TIMEOUT = "timeout"


class CancelFlag(Protocol):
    """Anything with is_set(): threading.Event or a scheduler CancelToken."""

    def is_set(self) -> bool: ...


@dataclass(frozen=True)
class Budget:
    """Resource limits for one property (timeout in seconds)."""

    timeout: Optional[float] = None
    max_splits: Optional[int] = None

    def deadline(self, start: Optional[float] = None) -> Optional[float]:
        """Absolute time.monotonic() deadline, or None for no limit."""
        if self.timeout is None:
            return None
        return (time.monotonic() if start is None else start) + self.timeout


@dataclass
class SearchStats:
    splits: int = 0
    lp_calls: int = 0
    phases_fixed: int = 0
    wall_time: float = 0.0

    def merge(self, other: 'SearchStats') -> None:
        """Accumulate counters; wall time is left to the caller."""
        self.splits += other.splits
        self.lp_calls += other.lp_calls
        self.phases_fixed += other.phases_fixed

    def to_dict(self) -> dict:
        return {
            'splits': self.splits,
            'lp_calls': self.lp_calls,
            'phases_fixed': self.phases_fixed,
            'wall_time': round(self.wall_time, 6),
        }


@dataclass
class Verdict:
    """
    Outcome of solving one encoded query.

    Attributes:
        status: Unsat, Sat, Timeout or Cancelled
        witness: Full LP assignment (Sat only)
        stats: Search statistics
        diagnostic: Reason for a Timeout-equivalent outcome
        disjunct: Which disjunct produced the witness
    """

    status: SolveStatus
    witness: Optional[np.ndarray] = None
    stats: SearchStats = field(default_factory=SearchStats)
    diagnostic: Optional[str] = None
    disjunct: Optional[int] = None  # index of the Sat disjunct after aggregation

    @property
    def found_violation(self) -> bool:
        return self.status == SolveStatus.SAT

    @property
    def is_unsat(self) -> bool:
        return self.status == SolveStatus.UNSAT


@dataclass(frozen=True)
class Counterexample:
    """
    Concrete input point(s) violating a property, validated by evaluation.

    Attributes:
        inputs: One input vector per network copy, ordered by copy id
        outputs: True network outputs at those inputs
        lp_outputs: Output values in the LP witness
        label: Label of the violated disjunct
        gap: Value of the violated quantity (confidence difference)
        threshold: Value the gap had to reach
    """

    inputs: Tuple[np.ndarray, ...]
    outputs: Tuple[np.ndarray, ...]
    lp_outputs: Tuple[np.ndarray, ...]
    label: Hashable
    gap: float
    threshold: float

    def to_dict(self) -> dict:
        return {
            'inputs': [x.tolist() for x in self.inputs],
            'outputs': [y.tolist() for y in self.outputs],
            'lp_outputs': [y.tolist() for y in self.lp_outputs],
            'label': self.label,
            'gap': round(self.gap, 9),
            'threshold': self.threshold,
        }


@dataclass
class PropertyVerdict:
    """
    Outcome of a whole property.

    Attributes:
        rejected: (disjunct, failure) for every Sat witness that did not
            survive concrete evaluation
    """

    status: PropertyStatus
    counterexample: Optional[Counterexample] = None
    stats: SearchStats = field(default_factory=SearchStats)
    diagnostic: Optional[str] = None
    rejected: List[Tuple[int, ValidationFailure]] = field(default_factory=list)

    @property
    def found_violation(self) -> bool:
        return self.status == PropertyStatus.VIOLATED

    @property
    def is_robust(self) -> bool:
        return self.status == PropertyStatus.ROBUST

    def to_dict(self) -> dict:
        d = {'status': self.status.value, 'stats': self.stats.to_dict()}
        if self.counterexample is not None:
            d['counterexample'] = self.counterexample.to_dict()
        if self.diagnostic:
            d['diagnostic'] = self.diagnostic
        if self.rejected:
            d['validation_failures'] = [dict(disjunct=i, **failure.to_dict()) for i, failure in self.rejected]
        return d
