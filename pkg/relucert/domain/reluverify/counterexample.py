"""
relucert/domain/reluverify/counterexample.py - Witness decoding and validation

An LP witness only becomes a counterexample after the decoded inputs are run
through the real networks and still violate the disjunct.
"""
import logging

import numpy as np

from relucert.config.settings import SearchParams
from relucert.core.errors import InputError, ValidationFailure
from relucert.core.spec import Norm
from relucert.core.verdict import Counterexample
from relucert.domain.network import evaluate
from relucert.domain.reluverify.query import EncodedQuery

logger = logging.getLogger(__name__)


def decode_inputs(query: EncodedQuery, witness: np.ndarray):
    return {c: np.asarray(witness, dtype=float)[query.copy_inputs[c]] for c in query.copies}


def extract_counterexample(query: EncodedQuery, witness: np.ndarray,
                           tol: float = SearchParams.VALIDATION_TOL) -> Counterexample:
    """
    Decode and validate a Sat witness.

    Args:
        query: The disjunct the witness satisfies
        witness: Full LP assignment
        tol: Validation tolerance τ_val

    Returns:
        Counterexample with the true outputs

    Raises:
        ValidationFailure: the decoded point(s) leave the input region or do not
            violate the disjunct on true network semantics
    """
    if query.constraint is None:
        raise InputError("query carries no output constraint to validate")
    witness = np.asarray(witness, dtype=float)
    inputs = decode_inputs(query, witness)
    lp_outputs = {c: witness[query.copy_outputs[c]] for c in query.copies}
    outputs = {c: evaluate(query.networks[c], inputs[c]) for c in query.copies}

    def failure(reason: str) -> ValidationFailure:
        error = ValidationFailure(
            reason,
            [lp_outputs[c] for c in query.copies],
            [outputs[c] for c in query.copies],
        )
        logger.warning("counterexample rejected: %s (lp outputs %s, true outputs %s)",
                       reason, error.lp_outputs, error.true_outputs)
        return error

    for c in query.copies:
        if not query.boxes[c].contains_point(inputs[c], tol):
            raise failure(f"copy {c} input leaves its box")

    for check in query.distances:
        other = check.center if check.center is not None else inputs[check.other_copy]
        diff = inputs[check.copy] - other
        if check.norm == Norm.LINF:
            distance, slack = float(np.max(np.abs(diff))), tol
        else:
            distance, slack = float(np.sum(np.abs(diff))), tol * diff.shape[0]
        if distance > check.delta + slack:
            raise failure(f"distance {distance:.9g} exceeds delta {check.delta:.9g}")

    constraint = query.constraint
    gap = constraint.gap(outputs)
    if gap < constraint.threshold - tol:
        raise failure(f"gap {gap:.9g} below threshold {constraint.threshold:.9g} "
                      f"({constraint.description})")

    return Counterexample(
        inputs=tuple(inputs[c] for c in query.copies),
        outputs=tuple(outputs[c] for c in query.copies),
        lp_outputs=tuple(lp_outputs[c] for c in query.copies),
        label=constraint.label,
        gap=gap,
        threshold=constraint.threshold,
    )
