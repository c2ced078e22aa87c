"""
relucert/domain/reluverify/query.py - Encoded query model

An EncodedQuery is a LinearSystem plus the ReLU pairs living in it and the
bookkeeping needed to map LP variables back to network nodes.
"""
from dataclasses import dataclass, field, replace
from typing import Dict, Hashable, List, Optional, Tuple

import numpy as np

from relucert.core.network import Box, Network, PhaseStatus
from relucert.core.spec import Norm
from relucert.domain.lincore import LinearSystem, VarId


@dataclass
class ReluPair:
    """
    post = relu(pre).

    Attributes:
        pre, post: LP variables
        phase: Current phase; Active/Inactive ones have their linear piece installed
        copy: Network copy the node belongs to
        index: ReLU index within its copy (hidden nodes in layer order)
    """

    pre: VarId
    post: VarId
    phase: PhaseStatus
    copy: int = 1
    index: int = 0


@dataclass(frozen=True)
class NodeRef:
    copy: int
    layer: int  # -1 for inputs
    node: int
    role: str   # 'input' | 'pre' | 'post' | 'output'


@dataclass(frozen=True)
class DistanceCheck:
    """||x_copy - center|| ≤ delta, center a point or another copy's input."""

    copy: int
    delta: float
    norm: Norm
    center: Optional[np.ndarray] = None
    other_copy: Optional[int] = None


@dataclass(frozen=True)
class OutputConstraint:
    """
    One disjunct: Σ coef·C(N_copy, x_copy, label_index) + offset ≥ threshold.

    The left-hand side is the confidence gap reported for a counterexample.
    """

    terms: Tuple[Tuple[int, int, float], ...]
    offset: float
    threshold: float
    label: Hashable
    description: str = ""

    def gap(self, outputs: Dict[int, np.ndarray]) -> float:
        return sum(coef * float(outputs[c][i]) for c, i, coef in self.terms) + self.offset


@dataclass
class EncodedQuery:
    system: LinearSystem = field(default_factory=LinearSystem)
    relus: List[ReluPair] = field(default_factory=list)
    copy_inputs: Dict[int, List[VarId]] = field(default_factory=dict)
    copy_outputs: Dict[int, List[VarId]] = field(default_factory=dict)
    node_map: Dict[VarId, NodeRef] = field(default_factory=dict)
    networks: Dict[int, Network] = field(default_factory=dict)
    boxes: Dict[int, Box] = field(default_factory=dict)
    distances: List[DistanceCheck] = field(default_factory=list)
    constraint: Optional[OutputConstraint] = None

    @property
    def input_vars(self) -> List[VarId]:
        return [v for c in sorted(self.copy_inputs) for v in self.copy_inputs[c]]

    @property
    def output_vars(self) -> List[VarId]:
        return [v for c in sorted(self.copy_outputs) for v in self.copy_outputs[c]]

    @property
    def copies(self) -> List[int]:
        return sorted(self.copy_inputs)

    def undetermined(self) -> List[int]:
        return [i for i, r in enumerate(self.relus) if r.phase == PhaseStatus.UNDETERMINED]

    def fixed_phases(self, copy: int) -> List[Tuple[int, PhaseStatus]]:
        return [(r.index, r.phase) for r in self.relus
                if r.copy == copy and r.phase != PhaseStatus.UNDETERMINED]

    def clone(self) -> 'EncodedQuery':
        return replace(
            self,
            system=self.system.clone(),
            relus=[replace(r) for r in self.relus],
            copy_inputs=dict(self.copy_inputs),
            copy_outputs=dict(self.copy_outputs),
            node_map=dict(self.node_map),
            boxes=dict(self.boxes),
            networks=dict(self.networks),
            distances=list(self.distances),
        )
