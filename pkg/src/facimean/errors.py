"""Exception types raised by facimean."""


class FaciError(ValueError):
    """Base class for every domain error raised by the package."""


class TooFewObservations(FaciError):
    pass


class DegenerateSample(FaciError):
    """All observations are equal (or all zero, where that matters)."""


class DegenerateWeights(FaciError):
    """The cumulative weight that every ratio is taken against is zero."""


class ZeroTimeIndex(FaciError):
    """The empirical time function vanished at the requested t0."""


class DegenerateWeightedCenter(FaciError):
    pass


class DomainError(FaciError):
    """An argument lies outside the domain of a distribution function."""


class UnsupportedDesign(FaciError):
    pass


class ConfigError(FaciError):
    """A simulation config violates its schema; ``field`` names the culprit."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
