"""
Exception hierarchy for mu_lab.

Everything raised on purpose by the library derives from MuLabError so the
CLI can tell runtime failures (exit 2) apart from usage errors (exit 1).
"""
from typing import Optional


class MuLabError(Exception):
    """Base class for all mu_lab errors."""


class GroupSpecError(MuLabError, ValueError):
    """Malformed group spec, bad modulus, overflow, or element out of range."""


class GroupMismatchError(MuLabError, ValueError):
    """Operands live on different groups."""


class DenseCapError(MuLabError):
    """Group order exceeds the configured dense-vector cap."""


class ResidualError(MuLabError, ArithmeticError):
    """Floating-point residue above tolerance where an exact value is expected."""


class BudgetExceededError(MuLabError, RuntimeError):
    """The exhaustive search would exceed its work budget."""


class ConfigError(MuLabError, ValueError):
    """Invalid experiment configuration or size arguments."""


class SubsetFileError(MuLabError, ValueError):
    """A subset file could not be read or contains an invalid entry."""

    def __init__(self, path: str, message: str, line: Optional[int] = None):
        self.path = path
        self.line = line
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {message}")


class TrialError(MuLabError):
    """A Monte Carlo trial failed; carries the trial index."""

    def __init__(self, trial_index: int, cause: BaseException):
        self.trial_index = trial_index
        self.cause = cause
        super().__init__(f"trial {trial_index} failed: {cause}")
