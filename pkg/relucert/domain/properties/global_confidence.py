"""
relucert/domain/properties/global_confidence.py - (δ,ε)-global robustness

Two copies of the network share no variables except through the distance
rows between their inputs. Negation: |C(N1,x1,ℓ) − C(N2,x2,ℓ)| ≥ ε for some ℓ,
split into its two one-sided halves.
"""
from typing import List, Optional

from relucert.config.options import VerifyOptions
from relucert.core.network import Box, Network
from relucert.core.spec import PropertyKind, RobustnessSpec
from relucert.domain.parallel.phase_cache import PhaseCache
from relucert.domain.properties.base import PropertyEncoder
from relucert.domain.properties.norms import norm_constraint
from relucert.domain.reluverify import EncodedQuery, OutputConstraint


class GlobalConfidenceEncoder(PropertyEncoder):
    """Any two domain points within delta keep every confidence gap below epsilon."""

    kind = PropertyKind.GLOBAL_CONFIDENCE
    name = "Global robustness"
    description = "|C(x1,l) - C(x2,l)| < eps for all x1, x2 in D with ||x1 - x2|| <= delta"

    def _encode_region(self, net: Network, spec: RobustnessSpec, options: VerifyOptions,
                       phase_cache: Optional[PhaseCache]) -> EncodedQuery:
        query = EncodedQuery()
        partner = spec.partner_domain if spec.partner_domain is not None else spec.domain
        self._encode_copy(net, spec.domain, 1, query, options, phase_cache)
        self._encode_copy(net, partner, 2, query, options, phase_cache)
        norm_constraint(query, query.copy_inputs[1], spec.delta, spec.norm,
                        other_vars=query.copy_inputs[2])
        return query

    def _constraints(self, net: Network, spec: RobustnessSpec,
                     options: VerifyOptions) -> List[OutputConstraint]:
        eps = spec.epsilon
        constraints = []
        for i, label in enumerate(net.labels):
            constraints.append(OutputConstraint(
                ((1, i, 1.0), (2, i, -1.0)), 0.0, eps, label, f"C1({label}) - C2({label}) >= {eps:g}"))
            constraints.append(OutputConstraint(
                ((2, i, 1.0), (1, i, -1.0)), 0.0, eps, label, f"C2({label}) - C1({label}) >= {eps:g}"))
        return constraints


def encode_global(net: Network, domain: Box, delta: float, epsilon: float, norm="linf",
                  options: VerifyOptions = VerifyOptions()) -> List[EncodedQuery]:
    spec = RobustnessSpec(PropertyKind.GLOBAL_CONFIDENCE, delta, norm, domain=domain, epsilon=epsilon)
    return GlobalConfidenceEncoder().encode(net, spec, options)
