"""
relucert/domain/reluverify/search.py - Lazy phase fixing and case splitting

solve() explores the ReLU phase tree depth-first. At every node it fixes what
the derived bounds decide, checks the linear relaxation, and splits only on
a ReLU the LP witness actually violates.
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
import logging
import time

import numpy as np

from relucert.config.options import SearchConfig
from relucert.core.errors import SolverLimitError
from relucert.core.network import PhaseStatus
from relucert.core.verdict import Budget, CancelFlag, SearchStats, SolveStatus, Verdict
from relucert.domain.lincore import check_feasible, tighten
from relucert.domain.network import phase_of
from relucert.domain.reluverify.encoder import install_phase
from relucert.domain.reluverify.query import EncodedQuery

logger = logging.getLogger(__name__)

DEFAULT_SEARCH = SearchConfig()


@dataclass(frozen=True)
class PhaseFixResult:
    fixed: int
    infeasible: bool = False


def fix_phases(query: EncodedQuery, config: SearchConfig = DEFAULT_SEARCH) -> PhaseFixResult:
    """
    Tighten bounds and commit every ReLU whose phase they decide, to a fixpoint.

    Returns:
        Number of newly fixed phases, infeasible=True if the bounds crossed
    """
    system = query.system
    total = 0
    while True:
        result = tighten(system, config.solver.tighten_rounds, config.solver)
        if result.infeasible:
            return PhaseFixResult(total, True)

        newly = 0
        for index, pair in enumerate(query.relus):
            if pair.phase != PhaseStatus.UNDETERMINED:
                continue
            phase = phase_of(system.lower[pair.pre], system.upper[pair.pre])
            if phase == PhaseStatus.UNDETERMINED:
                if system.upper[pair.post] <= 0.0:
                    phase = PhaseStatus.INACTIVE
                elif system.lower[pair.post] > 0.0:
                    phase = PhaseStatus.ACTIVE
                else:
                    continue
            if not install_phase(query, index, phase):
                return PhaseFixResult(total + newly, True)
            newly += 1

        total += newly
        if newly == 0:
            return PhaseFixResult(total, False)


def _branch_choice(query: EncodedQuery, witness: np.ndarray,
                   relu_tol: float) -> Optional[Tuple[int, bool]]:
    """
    Pick the undetermined pair with the largest ReLU violation.

    Ties go to the widest pre interval, then the lowest variable id.

    Returns:
        (relu index, explore Active first) or None if the witness respects every ReLU
    """
    best_key, best = None, None
    system = query.system
    for index in query.undetermined():
        pair = query.relus[index]
        pre, post = witness[pair.pre], witness[pair.post]
        violation = abs(post - max(0.0, pre))
        if violation <= relu_tol:
            continue
        width = system.upper[pair.pre] - system.lower[pair.pre]
        key = (-violation, -width, pair.pre)
        if best_key is None or key < best_key:
            best_key, best = key, (index, pre > 0.0)
    return best


def solve(query: EncodedQuery, budget: Budget = Budget(),
          config: SearchConfig = DEFAULT_SEARCH,
          cancel: Optional[CancelFlag] = None,
          deadline: Optional[float] = None) -> Verdict:
    """
    Decide the query by depth-first case splitting.

    Args:
        query: Encoded query; not modified (the search works on clones)
        budget: Timeout and split limits
        config: Search options
        cancel: Cooperative cancellation flag, checked between LP calls
        deadline: Absolute time.monotonic() deadline overriding budget.timeout

    Returns:
        Unsat, Sat with the LP witness, Timeout or Cancelled, with statistics
    """
    start = time.monotonic()
    if deadline is None:
        deadline = budget.deadline(start)
    stats = SearchStats()

    def finish(status: SolveStatus, witness=None, diagnostic=None) -> Verdict:
        stats.wall_time = time.monotonic() - start
        return Verdict(status, witness, stats, diagnostic)

    stack: List[EncodedQuery] = [query.clone()]
    while stack:
        if cancel is not None and cancel.is_set():
            return finish(SolveStatus.CANCELLED, diagnostic="cancelled")
        if deadline is not None and time.monotonic() > deadline:
            return finish(SolveStatus.TIMEOUT, diagnostic="timeout")

        node = stack.pop()
        if config.phase_fixing:
            fixed = fix_phases(node, config)
            stats.phases_fixed += fixed.fixed
            if fixed.infeasible:
                continue

        try:
            result = check_feasible(node.system, config.solver)
        except SolverLimitError as exc:
            logger.warning("solver limit reached: %s", exc)
            return finish(SolveStatus.TIMEOUT, diagnostic=f"solver limit: {exc}")
        stats.lp_calls += 1
        if not result.feasible:
            continue

        choice = _branch_choice(node, result.assignment, config.relu_tol)
        if choice is None:
            logger.debug("satisfying assignment after %d splits", stats.splits)
            return finish(SolveStatus.SAT, result.assignment)

        if budget.max_splits is not None and stats.splits >= budget.max_splits:
            return finish(SolveStatus.TIMEOUT, diagnostic="split limit")
        index, active_first = choice
        stats.splits += 1
        order = [PhaseStatus.ACTIVE, PhaseStatus.INACTIVE]
        if not active_first:
            order.reverse()
        logger.debug("split on relu %d (copy %d), %s first",
                     node.relus[index].index, node.relus[index].copy, order[0].value)
        # LIFO: push the second branch first
        for phase in reversed(order):
            child = node.clone()
            if install_phase(child, index, phase):
                stack.append(child)

    return finish(SolveStatus.UNSAT)


def aggregate_verdicts(verdicts: Sequence[Optional[Verdict]]) -> Verdict:
    """
    Combine disjunct verdicts: Sat if any is Sat (the lowest-index one),
    else Timeout if any did not finish, else Unsat.
    """
    stats = SearchStats()
    first_sat: Optional[int] = None
    unfinished: Optional[Verdict] = None
    for i, verdict in enumerate(verdicts):
        if verdict is None:
            continue
        stats.merge(verdict.stats)
        if verdict.status == SolveStatus.SAT and first_sat is None:
            first_sat = i
        elif verdict.status in (SolveStatus.TIMEOUT, SolveStatus.CANCELLED) and unfinished is None:
            unfinished = verdict
    if first_sat is not None:
        return Verdict(SolveStatus.SAT, verdicts[first_sat].witness, stats, disjunct=first_sat)
    if unfinished is not None or any(v is None for v in verdicts):
        diagnostic = unfinished.diagnostic if unfinished is not None else "not run"
        return Verdict(SolveStatus.TIMEOUT, None, stats, diagnostic)
    return Verdict(SolveStatus.UNSAT, None, stats)


def solve_disjunction(queries: Sequence[EncodedQuery], budget: Budget = Budget(),
                      config: SearchConfig = DEFAULT_SEARCH,
                      cancel: Optional[CancelFlag] = None) -> Verdict:
    """Solve disjuncts in order, stopping at the first Sat one."""
    if not queries:
        raise ValueError("at least one disjunct required")
    start = time.monotonic()
    deadline = budget.deadline(start)
    verdicts: List[Optional[Verdict]] = [None] * len(queries)
    for i, query in enumerate(queries):
        verdicts[i] = solve(query, budget, config, cancel, deadline)
        if verdicts[i].found_violation:
            break
    aggregate = aggregate_verdicts(verdicts)
    aggregate.stats.wall_time = time.monotonic() - start
    return aggregate
