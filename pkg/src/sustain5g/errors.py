class Sustain5GError(Exception):
    """Base class for every error raised by sustain5g."""


class NumericalError(Sustain5GError):
    """A numerical kernel could not produce a trustworthy value."""


class DomainError(NumericalError, ValueError):
    """Argument outside the domain of the function."""


class EiOverflowError(NumericalError, OverflowError):
    """|x| too large for a finite double result of Ei."""


class QuadratureNonConvergence(NumericalError):
    """Adaptive integration hit its evaluation budget."""


class InfeasibleConfigError(Sustain5GError, ValueError):
    """A configuration violates a model side condition.

    ``clause`` carries the text of the violated condition, e.g. ``"β − α > 0"``.
    """

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        message = f"infeasible configuration: {clause}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class NoSafeWindowError(Sustain5GError):
    """No fail-safe point exists, so keys cannot be operated at all."""


class IllegalTransitionError(Sustain5GError):
    """Session event not allowed in the current phase."""


class DuplicateLabelError(Sustain5GError):
    """A sibling with the same label already exists in the hierarchy."""


class KeyCollisionError(Sustain5GError):
    """Two distinct label paths derived identical key bytes."""


class ConfigFileError(Sustain5GError):
    """The configuration file is missing or lacks a required section."""
