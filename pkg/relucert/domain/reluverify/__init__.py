"""
relucert/domain/reluverify - Encoding and solving ReLU queries

Functions:
    - encode_network(net, box, copy_id, into)
    - fix_phases(query) → PhaseFixResult
    - solve(query, budget) → Verdict
    - solve_disjunction(queries, budget) → Verdict
    - extract_counterexample(query, witness) → Counterexample
"""
from relucert.domain.reluverify.query import (
    DistanceCheck, EncodedQuery, NodeRef, OutputConstraint, ReluPair,
)
from relucert.domain.reluverify.encoder import constrain_outputs, encode_network, install_phase
from relucert.domain.reluverify.search import (
    PhaseFixResult, aggregate_verdicts, fix_phases, solve, solve_disjunction,
)
from relucert.domain.reluverify.counterexample import decode_inputs, extract_counterexample

__all__ = [
    'DistanceCheck', 'EncodedQuery', 'NodeRef', 'OutputConstraint', 'ReluPair',
    'constrain_outputs', 'encode_network', 'install_phase',
    'PhaseFixResult', 'aggregate_verdicts', 'fix_phases', 'solve', 'solve_disjunction',
    'decode_inputs', 'extract_counterexample',
]
