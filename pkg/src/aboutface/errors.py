"""Exception types raised by the toolkit."""


class AboutFaceError(Exception):
    """Base class for all toolkit errors."""


class OutsideBall(AboutFaceError):
    """Bloch vector lies outside the unit ball beyond the validity slack."""


class BadWeights(AboutFaceError):
    """Mixture weights are negative or do not form a convex combination."""


class NotCovariant(AboutFaceError):
    """Map does not commute with the about-face rotation."""


class NotCPTP(AboutFaceError):
    """Map is not completely positive (Choi matrix has a negative eigenvalue)."""


class NotRealizable(AboutFaceError):
    """Requested monotone values are not attained by any qubit state."""


class NotPure(AboutFaceError):
    """Operation requires a pure state (Bloch radius 1)."""


class PureInput(AboutFaceError):
    """Formula valid only away from the pure-state branch was given a pure input."""


class RangeViolation(AboutFaceError):
    """Arguments violate the documented admissible range."""


class DegenerateSample(AboutFaceError):
    """Sample is constant in a coordinate where a nontrivial spread is required."""


class Unreachable(AboutFaceError):
    """No chain element can produce the requested state (defensive; should not occur)."""
