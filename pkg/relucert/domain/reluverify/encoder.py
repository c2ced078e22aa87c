"""
relucert/domain/reluverify/encoder.py - Network → linear system encoding

Each hidden node gets a pre variable tied to its layer's affine equality and a
post variable related to it by a ReluPair. Undetermined pairs carry only the
relaxation post ≥ 0, post ≥ pre (plus the triangle upper bound if enabled).
"""
from typing import Iterable, Mapping, Optional, Tuple
import logging

from relucert.core.errors import InputError
from relucert.core.network import Box, Network, PhaseStatus
from relucert.domain.network import interval_evaluate, phase_of
from relucert.domain.reluverify.query import EncodedQuery, NodeRef, OutputConstraint, ReluPair

logger = logging.getLogger(__name__)


def install_phase(query: EncodedQuery, index: int, phase: PhaseStatus) -> bool:
    """
    Commit relu `index` to a linear piece.

    Returns:
        False if the installed bounds cross (the branch is empty)
    """
    pair = query.relus[index]
    system = query.system
    pair.phase = phase
    if phase == PhaseStatus.ACTIVE:
        system.add_equality({pair.post: 1.0, pair.pre: -1.0}, 0.0)
        return system.restrict(pair.pre, lo=0.0)
    if phase == PhaseStatus.INACTIVE:
        ok = system.restrict(pair.post, hi=0.0)
        return system.restrict(pair.pre, hi=0.0) and ok
    raise ValueError("cannot install an undetermined phase")


def encode_network(net: Network, box: Box, copy_id: int, into: EncodedQuery,
                   seed_phases: Optional[Iterable[Tuple[int, PhaseStatus]]] = None,
                   interval_phases: bool = True, triangle: bool = False) -> None:
    """
    Append one copy of net over box to the query.

    Args:
        net: Network to encode
        box: Input region; input variables get exactly these bounds
        copy_id: Copy identifier (1 for local queries, 1 and 2 for global ones)
        into: Query to extend
        seed_phases: (relu index, phase) pairs known to hold on box
        interval_phases: Fix phases already decided by interval propagation
        triangle: Add the triangle upper bound to undetermined pairs
    """
    if box.dim != net.input_dim:
        raise InputError(f"box has dimension {box.dim}, network expects {net.input_dim}")
    if copy_id in into.copy_inputs:
        raise InputError(f"copy {copy_id} already encoded")

    system = into.system
    seeds: Mapping[int, PhaseStatus] = dict(seed_phases or ())
    layer_bounds = interval_evaluate(net, box)

    previous = []
    for j in range(net.input_dim):
        var = system.add_var(float(box.lower[j]), float(box.upper[j]))
        into.node_map[var] = NodeRef(copy_id, -1, j, 'input')
        previous.append(var)
    into.copy_inputs[copy_id] = list(previous)

    relu_index = 0
    last = len(net.layers) - 1
    for k, (layer, bounds) in enumerate(zip(net.layers, layer_bounds)):
        current = []
        for i in range(layer.out_size):
            pre = system.add_var(float(bounds.pre_lower[i]), float(bounds.pre_upper[i]))
            row = {prev: float(w) for prev, w in zip(previous, layer.weights[i]) if w != 0.0}
            row[pre] = -1.0
            system.add_equality(row, -float(layer.biases[i]))

            if k == last:
                into.node_map[pre] = NodeRef(copy_id, k, i, 'output')
                current.append(pre)
                continue

            into.node_map[pre] = NodeRef(copy_id, k, i, 'pre')
            post = system.add_var(float(bounds.post_lower[i]), float(bounds.post_upper[i]))
            into.node_map[post] = NodeRef(copy_id, k, i, 'post')
            system.add_inequality({post: 1.0, pre: -1.0}, lo=0.0)

            phase = PhaseStatus.UNDETERMINED
            if interval_phases:
                phase = phase_of(float(bounds.pre_lower[i]), float(bounds.pre_upper[i]))
            if phase == PhaseStatus.UNDETERMINED:
                phase = seeds.get(relu_index, PhaseStatus.UNDETERMINED)

            into.relus.append(ReluPair(pre, post, PhaseStatus.UNDETERMINED, copy_id, relu_index))
            if phase != PhaseStatus.UNDETERMINED:
                install_phase(into, len(into.relus) - 1, phase)
            elif triangle:
                lo, hi = float(bounds.pre_lower[i]), float(bounds.pre_upper[i])
                slope = hi / (hi - lo)
                system.add_inequality({post: 1.0, pre: -slope}, hi=-slope * lo)

            current.append(post)
            relu_index += 1
        previous = current

    into.copy_outputs[copy_id] = list(previous)
    into.networks[copy_id] = net
    into.boxes[copy_id] = box
    logger.debug("encoded copy %d: %d vars, %d relus (%d undetermined)",
                 copy_id, system.var_count, relu_index, len(into.undetermined()))


def constrain_outputs(query: EncodedQuery, constraint: OutputConstraint) -> None:
    """Add the disjunct Σ coef·output + offset ≥ threshold to the query."""
    coeffs = {}
    for copy, label_index, coef in constraint.terms:
        var = query.copy_outputs[copy][label_index]
        coeffs[var] = coeffs.get(var, 0.0) + coef
    query.system.add_inequality(coeffs, lo=constraint.threshold - constraint.offset)
    query.constraint = constraint
