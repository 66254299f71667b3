from msgspec import Struct, field

from config import (
    DEFAULT_CROSSOVER_PROBABILITY,
    DEFAULT_ETA_C,
    DEFAULT_ETA_M,
    DEFAULT_GENERATIONS,
    DEFAULT_MUTATION_PROBABILITY,
    DEFAULT_POPULATION,
)
from models import MutationKind, PolicyKind


class GAConfig(Struct, frozen=True, forbid_unknown_fields=True):
    population_size: int = DEFAULT_POPULATION
    generations: int = DEFAULT_GENERATIONS
    crossover_probability: float = DEFAULT_CROSSOVER_PROBABILITY
    mutation_probability: float = DEFAULT_MUTATION_PROBABILITY
    eta_c: float = DEFAULT_ETA_C
    eta_m: float = DEFAULT_ETA_M
    mutation_kind: MutationKind = MutationKind.PER_GENE
    seed: int = 0

    def __post_init__(self) -> None:
        if self.population_size < 4 or self.population_size % 2:
            raise ValueError(f"population_size must be even and >= 4, got {self.population_size}")
        if self.generations < 0:
            raise ValueError(f"generations must be >= 0, got {self.generations}")
        for name in ("crossover_probability", "mutation_probability"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if self.eta_c < 0 or self.eta_m < 0:
            raise ValueError("distribution indices must be non-negative")


class Individual(Struct):
    genome: tuple[float, ...]
    objectives: tuple[float, ...] | None = None
    rank: int = 0
    crowding: float = 0.0


class GenerationSnapshot(Struct, frozen=True):
    generation: int
    genomes: tuple[tuple[float, ...], ...]
    objectives: tuple[tuple[float, ...], ...]
    ranks: tuple[int, ...]
    crowding: tuple[float, ...]


class FrontArchive(Struct, frozen=True):
    snapshots: tuple[GenerationSnapshot, ...]
    pareto: tuple[Individual, ...] = field(default_factory=tuple)


class ParetoPoint(Struct, frozen=True):
    genome: tuple[float, ...]
    objectives: tuple[float, ...]
    crowding: float | None


class ParetoFile(Struct, frozen=True):
    objective_names: tuple[str, ...]
    points: tuple[ParetoPoint, ...]
    policy_kind: PolicyKind | None = None
