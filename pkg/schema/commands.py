from msgspec import Struct, field

from models import BenchmarkProblem, CommandName, PolicyKind
from schema.optimizer import GAConfig


class SimulateParams(Struct, frozen=True, forbid_unknown_fields=True, tag="simulate"):
    scenario: str
    policy: str
    seed: int = 0


class OptimizeParams(Struct, frozen=True, forbid_unknown_fields=True, tag="optimize"):
    scenario: str
    kind: PolicyKind
    ga: GAConfig
    replicates: int = 1


class BenchmarkParams(Struct, frozen=True, forbid_unknown_fields=True, tag="benchmark"):
    problem: BenchmarkProblem
    ga: GAConfig
    fail_above: float | None = None


class MixParams(Struct, frozen=True, forbid_unknown_fields=True, tag="mix"):
    scenario: str
    pareto: str
    kind: PolicyKind | None = None
    max_price: float | None = None
    runs: int = 20
    seed: int = 0


CommandParams = SimulateParams | OptimizeParams | BenchmarkParams | MixParams


class RunManifest(Struct, frozen=True, forbid_unknown_fields=True):
    """Everything needed to re-run a command; written next to its outputs."""

    command: CommandName
    params: CommandParams
    seed: int
    version: str
    scenario_checksum: str | None = None
    jobs: int = 1
    timings: dict[str, float] = field(default_factory=dict)
    outputs: tuple[str, ...] = ()
