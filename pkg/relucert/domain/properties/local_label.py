"""
relucert/domain/properties/local_label.py - δ-local robustness

Negation: some label ℓ ≠ N(x0) reaches C(x, ℓ) ≥ C(x, N(x0)) + margin
for an x in the δ-ball around x0.
"""
from typing import List, Optional

from relucert.config.options import VerifyOptions
from relucert.core.errors import InputError
from relucert.core.network import Network
from relucert.core.spec import PropertyKind, RobustnessSpec
from relucert.domain.network import classify
from relucert.domain.parallel.phase_cache import PhaseCache
from relucert.domain.properties.base import PropertyEncoder
from relucert.domain.properties.norms import norm_constraint
from relucert.domain.reluverify import EncodedQuery, OutputConstraint


class LocalLabelEncoder(PropertyEncoder):
    """Every input within delta of x0 keeps x0's label."""

    kind = PropertyKind.LOCAL_LABEL
    name = "Local label robustness"
    description = "N(x) = N(x0) for all ||x - x0|| <= delta"

    def _validate(self, net: Network, spec: RobustnessSpec) -> None:
        if classify(net, spec.x0) is None:
            raise InputError("x0 has no unique label")

    def _encode_region(self, net: Network, spec: RobustnessSpec, options: VerifyOptions,
                       phase_cache: Optional[PhaseCache]) -> EncodedQuery:
        query = EncodedQuery()
        self._encode_copy(net, spec.region, 1, query, options, phase_cache)
        norm_constraint(query, query.copy_inputs[1], spec.delta, spec.norm, center=spec.x0)
        return query

    def _constraints(self, net: Network, spec: RobustnessSpec,
                     options: VerifyOptions) -> List[OutputConstraint]:
        label0 = classify(net, spec.x0)
        index0 = net.label_index(label0)
        return [
            OutputConstraint(
                terms=((1, i, 1.0), (1, index0, -1.0)),
                offset=0.0,
                threshold=options.margin,
                label=label,
                description=f"C({label}) - C({label0}) >= {options.margin:g}",
            )
            for i, label in enumerate(net.labels) if i != index0
        ]


def encode_local_label(net: Network, x0, delta: float, norm="linf",
                       options: VerifyOptions = VerifyOptions()) -> List[EncodedQuery]:
    spec = RobustnessSpec(PropertyKind.LOCAL_LABEL, delta, norm, x0=x0)
    return LocalLabelEncoder().encode(net, spec, options)
