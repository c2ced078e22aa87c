"""
relucert/core/errors.py - Exception hierarchy

InputError maps to the command-line exit code 3; the solver-side errors are
turned into Timeout-equivalent verdicts by the components that catch them.
"""
from typing import Optional, Sequence


class VerificationError(Exception):
    """Base class for every error raised by relucert."""


class InputError(VerificationError):
    """Malformed user input: dimensions, bounds, labels, files."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        elif line is not None:
            location = f"line {line}: "
        super().__init__(f"{location}{message}")


class SolverLimitError(VerificationError):
    """The simplex engine exceeded its pivot budget without a decision."""


class ValidationFailure(VerificationError):
    """An LP witness that does not violate the property on true network semantics."""

    def __init__(self, message: str, lp_outputs: Sequence = (), true_outputs: Sequence = ()):
        self.lp_outputs = [list(map(float, o)) for o in lp_outputs]
        self.true_outputs = [list(map(float, o)) for o in true_outputs]
        super().__init__(message)

    def to_dict(self) -> dict:
        return {
            'error': str(self),
            'lp_outputs': self.lp_outputs,
            'true_outputs': self.true_outputs,
        }
