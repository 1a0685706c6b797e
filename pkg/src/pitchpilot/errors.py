"""Exception types shared across the toolkit."""


class PitchPilotError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(PitchPilotError):
    """A parameter set or configuration file is invalid."""


class DomainError(ConfigError, ValueError):
    """A numeric input is outside the domain of a calculator."""


class SingularConfigurationError(ConfigError):
    """A sizing denominator vanished for the given geometry."""


class DivergedError(PitchPilotError):
    """A simulation produced a non-finite signal.

    Attributes:
        step: index of the step at which the signal went non-finite.
        leg: optional tag ("A" or "B") for paired runs.
    """

    def __init__(self, step, leg=None):
        self.step = step
        self.leg = leg
        tag = f" (leg {leg})" if leg else ""
        super().__init__(f"simulation diverged at step {step}{tag}")


class NoResponseError(PitchPilotError):
    """A trace never crossed the 10% rise threshold."""


class UntunableStartError(PitchPilotError):
    """Every vertex of the initial tuning simplex diverged."""
