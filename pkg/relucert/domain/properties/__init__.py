"""
relucert/domain/properties - Robustness properties

Encoders turn each robustness definition into the disjuncts of its negation;
every disjunct Unsat proves the property.

Functions:
    - norm_constraint(query, x_vars, delta, norm, center | other_vars)
    - encode_local_label(net, x0, delta, norm) → disjuncts
    - encode_local_confidence(net, x0, delta, epsilon, norm) → disjuncts
    - encode_global(net, domain, delta, epsilon, norm) → disjuncts
    - verify_property(net, spec, workers) → PropertyVerdict
    - verify_global_partitioned(net, spec, parts, workers) → PropertyVerdict
    - max_delta_search(net, x0, kind, ...) → MaxDeltaResult
"""
from relucert.domain.properties.norms import norm_constraint
from relucert.domain.properties.base import PropertyEncoder
from relucert.domain.properties.local_label import LocalLabelEncoder, encode_local_label
from relucert.domain.properties.local_confidence import LocalConfidenceEncoder, encode_local_confidence
from relucert.domain.properties.global_confidence import GlobalConfidenceEncoder, encode_global
from relucert.domain.properties.registry import PropertyRegistry
from relucert.domain.properties.verify import (
    verify_global_partitioned, verify_points, verify_property,
)
from relucert.domain.properties.search import MaxDeltaResult, max_delta_search

__all__ = [
    'norm_constraint', 'PropertyEncoder',
    'LocalLabelEncoder', 'encode_local_label',
    'LocalConfidenceEncoder', 'encode_local_confidence',
    'GlobalConfidenceEncoder', 'encode_global',
    'PropertyRegistry',
    'verify_global_partitioned', 'verify_points', 'verify_property',
    'MaxDeltaResult', 'max_delta_search',
]
