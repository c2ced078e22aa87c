"""
relucert/core/spec.py - Robustness property model

A RobustnessSpec names one of the three robustness definitions together with
its point or domain, distance bound and confidence bound.
"""
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from relucert.core.errors import InputError
from relucert.core.network import Box, Network


class Norm(str, Enum):
    LINF = "linf"
    L1 = "l1"


class PropertyKind(str, Enum):
    """
    LOCAL_LABEL: every x within delta of x0 gets x0's label.
    LOCAL_CONFIDENCE: every x within delta of x0 keeps each confidence within epsilon.
    GLOBAL_CONFIDENCE: any two points of the domain within delta keep each
    confidence gap below epsilon.
    """
    LOCAL_LABEL = "local-label"
    LOCAL_CONFIDENCE = "local-conf"
    GLOBAL_CONFIDENCE = "global"


@dataclass(frozen=True)
class RobustnessSpec:
    """
    Attributes:
        kind: Which robustness definition
        delta: Distance bound (0 allowed, negative rejected)
        norm: Distance norm
        x0: Center point (local kinds)
        domain: Input region (global kind)
        epsilon: Confidence bound (confidence kinds)
        partner_domain: Region of the second copy's input; defaults to domain.
            Set by sub-domain partitioning to the δ-inflated sub-box.
    """

    kind: PropertyKind
    delta: float
    norm: Norm = Norm.LINF
    x0: Optional[np.ndarray] = None
    domain: Optional[Box] = None
    epsilon: Optional[float] = None
    partner_domain: Optional[Box] = None

    def __post_init__(self):
        object.__setattr__(self, 'kind', PropertyKind(self.kind))
        object.__setattr__(self, 'norm', Norm(self.norm))
        if not np.isfinite(self.delta) or self.delta < 0:
            raise InputError(f"delta must be a non-negative real, got {self.delta}")

        if self.kind == PropertyKind.GLOBAL_CONFIDENCE:
            if self.domain is None:
                raise InputError("global property requires a domain")
        else:
            if self.x0 is None:
                raise InputError(f"{self.kind.value} property requires x0")
            x0 = np.array(self.x0, dtype=float)
            if x0.ndim != 1 or not np.all(np.isfinite(x0)):
                raise InputError("x0 must be a finite vector")
            x0.setflags(write=False)
            object.__setattr__(self, 'x0', x0)

        if self.kind != PropertyKind.LOCAL_LABEL:
            if self.epsilon is None or not np.isfinite(self.epsilon) or self.epsilon <= 0:
                raise InputError(f"{self.kind.value} property requires epsilon > 0")

    @property
    def is_local(self) -> bool:
        return self.kind != PropertyKind.GLOBAL_CONFIDENCE

    @property
    def input_dim(self) -> int:
        return self.x0.shape[0] if self.is_local else self.domain.dim

    @property
    def region(self) -> Box:
        """Box the (first) input ranges over."""
        if self.is_local:
            return Box.around(self.x0, self.delta)
        return self.domain

    def check_against(self, net: Network) -> None:
        if self.input_dim != net.input_dim:
            raise InputError(
                f"property has dimension {self.input_dim}, network input_dim is {net.input_dim}")
        if self.partner_domain is not None and self.partner_domain.dim != net.input_dim:
            raise InputError("partner domain dimension does not match the network")

    def with_delta(self, delta: float) -> 'RobustnessSpec':
        return replace(self, delta=delta)

    def restricted_to(self, sub_box: Box, partner: Box) -> 'RobustnessSpec':
        return replace(self, domain=sub_box, partner_domain=partner)

    def describe(self) -> str:
        parts = [self.kind.value]
        if self.is_local:
            parts.append("x0=" + ",".join(f"{v:g}" for v in self.x0))
        else:
            parts.append("lo=" + ",".join(f"{v:g}" for v in self.domain.lower))
            parts.append("hi=" + ",".join(f"{v:g}" for v in self.domain.upper))
        parts.append(f"delta={self.delta:g}")
        if self.epsilon is not None:
            parts.append(f"eps={self.epsilon:g}")
        parts.append(f"norm={self.norm.value}")
        return " ".join(parts)
