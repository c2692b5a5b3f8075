"""Exception hierarchy shared by every angleguard module."""


class AngleguardError(ValueError):
    """Base class; all library errors are value errors on bad input."""


class InputError(AngleguardError):
    """Malformed input: non-finite entries, shape mismatch, zero vector."""


class PreconditionError(AngleguardError):
    """Input is well formed but violates an operation's stated hypothesis."""


class DegenerateError(PreconditionError):
    """Vectors that must be linearly independent are (numerically) dependent."""


class ExcludedAngleError(PreconditionError):
    """The requested angle coincides with the angle the inputs already make."""


class NotPositiveError(AngleguardError):
    """A matrix expected to be positive semidefinite has a negative eigenvalue."""


class ZeroMapError(AngleguardError):
    """The map under test is identically zero."""
