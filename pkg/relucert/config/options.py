"""
relucert/config/options.py - Immutable option bundles

Each bundle takes its defaults from the parameter classes in settings.py.
Use dataclasses.replace() to derive variants.
"""
from dataclasses import dataclass, field

from relucert.config.settings import SolverParams, SearchParams, PropertyParams, ParallelParams


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and pivoting limits of the feasibility engine."""

    eq_tol: float = SolverParams.EQ_TOL
    bound_tol: float = SolverParams.BOUND_TOL
    pivot_tol: float = SolverParams.PIVOT_TOL
    dantzig_pivots: int = SolverParams.DANTZIG_PIVOTS
    max_pivots: int = SolverParams.MAX_PIVOTS
    refactor_every: int = SolverParams.REFACTOR_EVERY
    tighten_rounds: int = SolverParams.TIGHTEN_ROUNDS
    tighten_slack: float = SolverParams.TIGHTEN_SLACK
    tighten_min_gain: float = SolverParams.TIGHTEN_MIN_GAIN


@dataclass(frozen=True)
class SearchConfig:
    """Case-splitting search options."""

    relu_tol: float = SearchParams.RELU_TOL
    validation_tol: float = SearchParams.VALIDATION_TOL
    phase_fixing: bool = SearchParams.PHASE_FIXING
    triangle_relaxation: bool = SearchParams.TRIANGLE_RELAXATION
    solver: SolverConfig = field(default_factory=SolverConfig)


@dataclass(frozen=True)
class VerifyOptions:
    """Everything a property verification needs besides the network and spec."""

    margin: float = PropertyParams.MARGIN
    fluctuation_samples: int = ParallelParams.FLUCTUATION_SAMPLES
    prioritize: bool = False
    search: SearchConfig = field(default_factory=SearchConfig)
