"""
relucert/domain/lincore - Feasibility engine for bounded linear systems

Functions:
    - LinearSystem.add_var / add_equality / add_inequality
    - check_feasible(system, config) → FeasResult
    - tighten(system, max_rounds, config) → TightenResult
"""
from relucert.domain.lincore.system import FeasResult, LinearSystem, VarId, parse_dump
from relucert.domain.lincore.simplex import check_feasible
from relucert.domain.lincore.tighten import TightenResult, tighten


def add_var(system: LinearSystem, lo: float, hi: float) -> VarId:
    return system.add_var(lo, hi)


def add_equality(system: LinearSystem, coeffs, rhs: float) -> None:
    system.add_equality(coeffs, rhs)


__all__ = [
    'FeasResult', 'LinearSystem', 'VarId', 'TightenResult',
    'add_var', 'add_equality', 'check_feasible', 'tighten', 'parse_dump',
]
