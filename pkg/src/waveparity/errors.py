"""Exception taxonomy for contract violations.

Everything derives from WaveparityError, itself a ValueError, so callers that
do not care about the precise failure mode can still catch the stdlib type.
"""


class WaveparityError(ValueError):
    """Base class for all contract violations raised by this package."""


class InvalidLength(WaveparityError):
    """A length is not a positive power of two, or is otherwise unusable."""


class OverflowingValue(WaveparityError):
    """An integer does not fit in the requested bit capacity."""


class NonBinarySample(WaveparityError):
    """A sample is neither exactly 0.0 nor exactly 1.0."""


class OddLength(WaveparityError):
    """A transform step needs an even-length input."""


class LengthMismatch(WaveparityError):
    """Two sequences that must agree in length do not."""


class NonPowerOfTwo(WaveparityError):
    """Multi-level decomposition needs a power-of-two signal length."""


class TooManyLevels(WaveparityError):
    """2**num_levels exceeds the signal length."""


class EmptyVector(WaveparityError):
    """A statistic was requested for an empty coefficient vector."""


class InconsistentShapes(WaveparityError):
    """Decompositions disagree on level count or signal length."""


class TooFewPoints(WaveparityError):
    """Clustering needs at least two points."""


class ShapeMismatch(WaveparityError):
    """Arrays that must cover the same integers disagree on shape."""


class NonPositiveWeight(WaveparityError):
    """Level weights must all be strictly positive."""


class InvalidRange(WaveparityError):
    """Dataset range bounds are negative or out of order."""


class EmptyInput(WaveparityError):
    """An aggregate metric was requested for zero items."""


class InvalidBand(WaveparityError):
    """A boundary band must lie strictly between 0 and 0.5."""


class ConfigError(WaveparityError):
    """A run configuration or config file is invalid."""
