"""
relucert/domain/properties/local_confidence.py - (δ,ε)-local confidence robustness

Negation: for some label, C(x, ℓ) ≥ C(x0, ℓ) + ε or C(x, ℓ) ≤ C(x0, ℓ) − ε.
The reference confidences are constants from concrete evaluation at x0.
"""
from typing import List, Optional

from relucert.config.options import VerifyOptions
from relucert.core.network import Network
from relucert.core.spec import PropertyKind, RobustnessSpec
from relucert.domain.network import evaluate
from relucert.domain.parallel.phase_cache import PhaseCache
from relucert.domain.properties.base import PropertyEncoder
from relucert.domain.properties.norms import norm_constraint
from relucert.domain.reluverify import EncodedQuery, OutputConstraint


class LocalConfidenceEncoder(PropertyEncoder):
    """Every input within delta of x0 keeps every confidence within epsilon."""

    kind = PropertyKind.LOCAL_CONFIDENCE
    name = "Local confidence robustness"
    description = "|C(x,l) - C(x0,l)| < eps for all l and ||x - x0|| <= delta"

    def _encode_region(self, net: Network, spec: RobustnessSpec, options: VerifyOptions,
                       phase_cache: Optional[PhaseCache]) -> EncodedQuery:
        query = EncodedQuery()
        self._encode_copy(net, spec.region, 1, query, options, phase_cache)
        norm_constraint(query, query.copy_inputs[1], spec.delta, spec.norm, center=spec.x0)
        return query

    def _constraints(self, net: Network, spec: RobustnessSpec,
                     options: VerifyOptions) -> List[OutputConstraint]:
        reference = evaluate(net, spec.x0)
        eps = spec.epsilon
        constraints = []
        for i, label in enumerate(net.labels):
            c0 = float(reference[i])
            constraints.append(OutputConstraint(
                ((1, i, 1.0),), -c0, eps, label, f"C({label}) >= {c0:.6g} + {eps:g}"))
            constraints.append(OutputConstraint(
                ((1, i, -1.0),), c0, eps, label, f"C({label}) <= {c0:.6g} - {eps:g}"))
        return constraints


def encode_local_confidence(net: Network, x0, delta: float, epsilon: float, norm="linf",
                            options: VerifyOptions = VerifyOptions()) -> List[EncodedQuery]:
    spec = RobustnessSpec(PropertyKind.LOCAL_CONFIDENCE, delta, norm, x0=x0, epsilon=epsilon)
    return LocalConfidenceEncoder().encode(net, spec, options)
