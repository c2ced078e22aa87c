"""
relucert/config/settings.py - Application configuration

Centralized configuration for the verifier.
Environment-specific settings plus the numeric parameters of every solver layer.
"""
from enum import Enum
import os


class ReportFormat(str, Enum):
    """Report renderings."""
    TEXT = "text"
    CSV = "csv"
    JSON = "json"


class RunMode(str, Enum):
    """What the command line does with the property file."""
    VERIFY = "verify"
    MAX_DELTA = "max-delta"
    REPORT_TABLE = "report-table"


class Settings:
    """Main application settings."""

    # Execution
    DEFAULT_WORKERS: int = int(os.getenv("RELUCERT_WORKERS", "1"))
    DEFAULT_TIMEOUT: float = float(os.getenv("RELUCERT_TIMEOUT", "600"))  # seconds per property

    # Logging
    LOG_LEVEL: str = os.getenv("RELUCERT_LOG_LEVEL", "INFO")
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class SolverParams:
    """Linear feasibility engine parameters."""

    EQ_TOL: float = 1e-7          # absolute residual on equalities
    BOUND_TOL: float = 1e-8       # bound violation accepted in a witness
    PIVOT_TOL: float = 1e-9       # degeneracy / zero-pivot threshold
    DANTZIG_PIVOTS: int = 100     # then Bland's rule
    MAX_PIVOTS: int = 20000
    REFACTOR_EVERY: int = 50      # rebuild the tableau from the basis
    TIGHTEN_ROUNDS: int = 3
    TIGHTEN_SLACK: float = 1e-10  # relative loosening of derived bounds
    TIGHTEN_MIN_GAIN: float = 1e-9


class SearchParams:
    """Case-splitting search parameters."""

    RELU_TOL: float = 1e-7
    VALIDATION_TOL: float = 1e-6
    PHASE_FIXING: bool = True
    TRIANGLE_RELAXATION: bool = False


class PropertyParams:
    """Robustness property encoding parameters."""

    MARGIN: float = 1e-6  # strict-inequality margin
    DEFAULT_NORM: str = "linf"
    MAX_DELTA_PRECISION: float = 2 ** -10


class ParallelParams:
    """Scheduler parameters."""

    FLUCTUATION_SAMPLES: int = 64
    MAX_PARTITIONS: int = 1 << 20


class ReportParams:
    """Report rendering parameters."""

    TIME_DECIMALS: int = 3
    POINT_WIDTH: int = 6
    ROBUST_WIDTH: int = 8
    TIME_WIDTH: int = 10
