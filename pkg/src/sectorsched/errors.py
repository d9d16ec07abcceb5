"""Exception types shared across the package."""


class SectorSchedError(Exception):
    """Base class for all sectorsched errors."""


class InvalidInputError(SectorSchedError, ValueError):
    """An argument violates a documented precondition."""


class InfeasibleScenarioError(SectorSchedError):
    """No valid assignment exists under the given resources and field of view."""


class LimitsExceededError(SectorSchedError):
    """Instance is larger than the configured exact-search limits allow."""


class InsufficientDataError(SectorSchedError):
    """A statistic was requested from a trace that is too short to support it."""


class ScenarioFormatError(InvalidInputError):
    """A scenario or partition file could not be parsed."""


class ScenarioValidationError(InvalidInputError):
    """A parsed or supplied scenario violates its invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
