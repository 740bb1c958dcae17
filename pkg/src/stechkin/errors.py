"""Exception hierarchy shared across the package.

Kept separate so the CLI can map error classes onto exit codes without
importing the numerical modules it reports on.
"""


class StechkinError(Exception):
    """Base class for all package errors."""


class ConfigError(StechkinError):
    """Invalid user-supplied configuration (bad descriptor, malformed file)."""


class AdmissibilityError(StechkinError):
    """A symbol/measure combination violates a required admissibility condition."""


class TargetOutOfRangeError(StechkinError):
    """A requested value lies outside the attainable parametric range.

    ``limit`` names the violated end ("small-tau" or "large-tau") and
    ``bound`` carries the attainable bound when it is known.
    """

    def __init__(self, message: str, limit: str, bound: float | None = None):
        super().__init__(message)
        self.limit = limit
        self.bound = bound


class NonConvergenceError(StechkinError):
    """A numerical routine exhausted its budget without meeting tolerance."""


class VerificationError(StechkinError):
    """A verification suite observed residuals above its threshold."""
