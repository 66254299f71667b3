from __future__ import annotations

from collections.abc import Sequence


class CarbonOptError(Exception):
    """Base class for every error raised by the simulator and the optimizer."""

    exit_code = 2


class ValidationError(CarbonOptError):
    exit_code = 1


class ScenarioParseError(ValidationError):
    pass


class ScenarioValidationError(ValidationError):
    def __init__(self, violations: Sequence[str]) -> None:
        self.violations = list(violations)
        super().__init__("invalid scenario: " + "; ".join(self.violations))


class PolicySpecError(ValidationError):
    pass


class GenomeError(ValidationError):
    pass


class ManifestError(ValidationError):
    pass


class ParetoFileError(ValidationError):
    pass


class ConfigurationError(CarbonOptError):
    """The scenario lacks data the market needs at run time (e.g. a fuel price)."""


class FitnessEvaluationError(CarbonOptError):
    def __init__(self, genome: Sequence[float], reason: str) -> None:
        self.genome = list(genome)
        super().__init__(f"fitness evaluation failed for genome {self.genome}: {reason}")


class ThresholdExceededError(CarbonOptError):
    """A benchmark run finished farther from the analytic front than allowed."""

    exit_code = 1
