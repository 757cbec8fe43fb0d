"""Exception types shared across the package."""


class ArborDynError(Exception):
    """Base class for all library-specific errors."""


class ZeroPolynomialError(ArborDynError, ValueError):
    """An operation received the zero polynomial where it is undefined."""


class DegenerateMapError(ArborDynError, ValueError):
    """Numerator and denominator share a projective root."""


class DegreeTooSmallError(ArborDynError, ValueError):
    """Rational maps must have degree at least 2."""


class GrowthCapError(ArborDynError, RuntimeError):
    """Projected coefficient size exceeds the configured growth cap."""


class CompositeModulusError(ArborDynError, ValueError):
    """A prime modulus was required."""


class BadReductionError(ArborDynError, ValueError):
    """The operation requires good reduction at the given prime."""


class NotDefinedOverQError(ArborDynError, ValueError):
    """A conjugated map was requested over Q but has irrational coefficients."""


class NotBicriticalError(ArborDynError, ValueError):
    """The map does not have exactly two critical points."""


class CriticalFieldError(ArborDynError, ValueError):
    """Critical points do not lie in Q or a single quadratic extension."""


class HypothesisError(ArborDynError, ValueError):
    """A structural hypothesis of the requested check fails.

    The message names the failed hypothesis.
    """


class InvariantViolationError(ArborDynError, AssertionError):
    """An invariant that should hold unconditionally was violated."""
