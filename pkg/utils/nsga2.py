"""NSGA-II: elitist non-dominated sorting genetic algorithm over a real-valued, box-bounded genome.

All random draws come from one ``numpy.random.Generator`` seeded from ``GAConfig.seed`` and are
consumed in a fixed order (tournaments, crossover, mutation, pair by pair), so fitness evaluations
may run in worker processes without changing the result.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import Executor, ProcessPoolExecutor

import numpy as np

from exceptions import FitnessEvaluationError
from models import MutationKind
from schema.optimizer import FrontArchive, GAConfig, GenerationSnapshot, Individual

logger = logging.getLogger(__name__)

Genome = tuple[float, ...]
Fitness = Callable[[Genome], Sequence[float]]
Bounds = Sequence[tuple[float, float]]

# parent genes closer than this are treated as identical by SBX
SBX_EPSILON = 1e-14
SBX_SWAP_PROBABILITY = 0.5


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    if len(a) != len(b):
        raise ValueError(f"objective vectors differ in length: {len(a)} vs {len(b)}")
    strictly_better = False
    for mine, theirs in zip(a, b, strict=True):
        if mine > theirs:
            return False
        if mine < theirs:
            strictly_better = True
    return strictly_better


def domination_matrix(objectives: np.ndarray) -> np.ndarray:
    """``[i, j]`` is true when row ``i`` dominates row ``j``."""
    no_worse = (objectives[:, None, :] <= objectives[None, :, :]).all(axis=2)
    better = (objectives[:, None, :] < objectives[None, :, :]).any(axis=2)
    return no_worse & better


def fast_non_dominated_sort(population: Sequence[Individual]) -> list[list[Individual]]:
    """Partition into fronts F1, F2, ... and set every individual's 1-based rank."""
    if not population:
        return []
    objectives = np.array([individual.objectives for individual in population], dtype=float)
    dominated_by = domination_matrix(objectives)
    counts = dominated_by.sum(axis=0)
    remaining = np.ones(len(population), dtype=bool)

    fronts = []
    rank = 1
    while remaining.any():
        current = np.flatnonzero(remaining & (counts == 0))
        remaining[current] = False
        counts = counts - dominated_by[current].sum(axis=0)
        front = [population[index] for index in current]
        for individual in front:
            individual.rank = rank
        fronts.append(front)
        rank += 1
    return fronts


def crowding_distance(front: Sequence[Individual]) -> list[float]:
    """Normalized cuboid perimeter around each member; boundary members get infinity."""
    size = len(front)
    if size <= 2:
        distances = [math.inf] * size
    else:
        objectives = np.array([individual.objectives for individual in front], dtype=float)
        distance = np.zeros(size)
        for column in range(objectives.shape[1]):
            values = objectives[:, column]
            order = np.argsort(values, kind="stable")
            distance[order[0]] = distance[order[-1]] = math.inf
            span = values[order[-1]] - values[order[0]]
            if span == 0:
                continue
            distance[order[1:-1]] += (values[order[2:]] - values[order[:-2]]) / span
        distances = distance.tolist()

    for individual, value in zip(front, distances, strict=True):
        individual.crowding = value
    return distances


def crowded_compare(a: Individual, b: Individual) -> int:
    """Negative when ``a`` is preferred, positive when ``b`` is, zero on a tie."""
    if a.rank != b.rank:
        return -1 if a.rank < b.rank else 1
    if a.crowding != b.crowding:
        return -1 if a.crowding > b.crowding else 1
    return 0


def crowded_sort_key(individual: Individual) -> tuple[int, float]:
    return (individual.rank, -individual.crowding)


def binary_tournament(population: Sequence[Individual], rng: np.random.Generator) -> Individual:
    first, second = (int(index) for index in rng.integers(len(population), size=2))
    order = crowded_compare(population[first], population[second])
    if order < 0 or (order == 0 and first <= second):
        return population[first]
    return population[second]


def _bounds_arrays(bounds: Bounds) -> tuple[np.ndarray, np.ndarray]:
    low = np.array([pair[0] for pair in bounds], dtype=float)
    high = np.array([pair[1] for pair in bounds], dtype=float)
    return low, high


def _spread_factor(u: np.ndarray, alpha: np.ndarray, exponent: float) -> np.ndarray:
    return np.where(
        u <= 1.0 / alpha,
        (u * alpha) ** (1.0 / exponent),
        (1.0 / (2.0 - u * alpha)) ** (1.0 / exponent),
    )


def crossover(
    p1: Sequence[float],
    p2: Sequence[float],
    rng: np.random.Generator,
    cfg: GAConfig,
    bounds: Bounds,
) -> tuple[Genome, Genome]:
    """Bounded simulated binary crossover. Draws: mating coin, one spread value per gene, one swap coin per gene.

    Each gene pair is handed to the children in random order, so genes mix between parents.
    """
    x1 = np.asarray(p1, dtype=float)
    x2 = np.asarray(p2, dtype=float)
    if x1.shape != x2.shape:
        raise ValueError("parents differ in length")
    low, high = _bounds_arrays(bounds)
    mate = rng.random() < cfg.crossover_probability
    u = rng.random(x1.size)
    swap = rng.random(x1.size) < SBX_SWAP_PROBABILITY
    if not mate:
        return tuple(x1.tolist()), tuple(x2.tolist())

    lesser = np.minimum(x1, x2)
    greater = np.maximum(x1, x2)
    gap = greater - lesser
    active = gap > SBX_EPSILON
    safe_gap = np.where(active, gap, 1.0)
    exponent = cfg.eta_c + 1.0

    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        beta = 1.0 + 2.0 * (lesser - low) / safe_gap
        alpha = 2.0 - beta ** (-exponent)
        child_low = 0.5 * ((lesser + greater) - _spread_factor(u, alpha, exponent) * gap)

        beta = 1.0 + 2.0 * (high - greater) / safe_gap
        alpha = 2.0 - beta ** (-exponent)
        child_high = 0.5 * ((lesser + greater) + _spread_factor(u, alpha, exponent) * gap)

    first_is_lower = x1 <= x2
    c1 = np.where(active, np.where(first_is_lower, child_low, child_high), x1)
    c2 = np.where(active, np.where(first_is_lower, child_high, child_low), x2)
    c1, c2 = np.where(swap, c2, c1), np.where(swap, c1, c2)
    c1 = np.clip(c1, low, high)
    c2 = np.clip(c2, low, high)
    return tuple(c1.tolist()), tuple(c2.tolist())


def _polynomial(x: np.ndarray, u: np.ndarray, low: np.ndarray, high: np.ndarray, eta: float) -> np.ndarray:
    span = np.where(high > low, high - low, 1.0)
    exponent = eta + 1.0
    power = 1.0 / exponent
    below = 1.0 - (x - low) / span
    above = 1.0 - (high - x) / span
    lower_branch = (2.0 * u + (1.0 - 2.0 * u) * below**exponent) ** power - 1.0
    upper_branch = 1.0 - (2.0 * (1.0 - u) + 2.0 * (u - 0.5) * above**exponent) ** power
    delta = np.where(u < 0.5, lower_branch, upper_branch)
    return x + delta * (high - low)


def mutate(genome: Sequence[float], rng: np.random.Generator, cfg: GAConfig, bounds: Bounds) -> Genome:
    x = np.asarray(genome, dtype=float).copy()
    low, high = _bounds_arrays(bounds)
    match cfg.mutation_kind:
        case MutationKind.PER_GENE:
            mask = rng.random(x.size) < cfg.mutation_probability
            fresh = rng.uniform(low, high)
            x = np.where(mask, fresh, x)
        case MutationKind.PER_CHILD:
            hit = rng.random() < cfg.mutation_probability
            gene = int(rng.integers(x.size))
            fresh = rng.uniform(low[gene], high[gene])
            if hit:
                x[gene] = fresh
        case MutationKind.POLYNOMIAL:
            mask = rng.random(x.size) < cfg.mutation_probability
            u = rng.random(x.size)
            x = np.where(mask, _polynomial(x, u, low, high, cfg.eta_m), x)
    return tuple(np.clip(x, low, high).tolist())


def _evaluate(individuals: Sequence[Individual], fitness: Fitness, executor: Executor | None) -> None:
    genomes = [individual.genome for individual in individuals]
    results: Iterable[Sequence[float]]
    if executor is None:
        results = map(fitness, genomes)
    else:
        results = executor.map(fitness, genomes, chunksize=max(1, len(genomes) // 32))
    iterator = iter(results)
    for individual in individuals:
        try:
            values = tuple(float(value) for value in next(iterator))
        except Exception as exc:
            raise FitnessEvaluationError(individual.genome, str(exc)) from exc
        if not all(math.isfinite(value) for value in values):
            raise FitnessEvaluationError(individual.genome, f"non-finite objectives {values}")
        individual.objectives = values


def _rank_and_crowd(population: Sequence[Individual]) -> list[list[Individual]]:
    fronts = fast_non_dominated_sort(population)
    for front in fronts:
        crowding_distance(front)
    return fronts


def environmental_selection(merged: Sequence[Individual], size: int) -> list[Individual]:
    """Fill front by front; the overflowing front is cut by descending crowding distance."""
    survivors: list[Individual] = []
    for front in _rank_and_crowd(merged):
        if len(survivors) + len(front) <= size:
            survivors.extend(front)
            continue
        ordered = sorted(front, key=lambda individual: -individual.crowding)
        survivors.extend(ordered[: size - len(survivors)])
        break
    return survivors


def make_children(
    population: Sequence[Individual],
    rng: np.random.Generator,
    cfg: GAConfig,
    bounds: Bounds,
) -> list[Individual]:
    children = []
    for _ in range(cfg.population_size // 2):
        first = binary_tournament(population, rng)
        second = binary_tournament(population, rng)
        c1, c2 = crossover(first.genome, second.genome, rng, cfg, bounds)
        children.append(Individual(genome=mutate(c1, rng, cfg, bounds)))
        children.append(Individual(genome=mutate(c2, rng, cfg, bounds)))
    return children


def _snapshot(generation: int, population: Sequence[Individual]) -> GenerationSnapshot:
    return GenerationSnapshot(
        generation=generation,
        genomes=tuple(individual.genome for individual in population),
        objectives=tuple(individual.objectives or () for individual in population),
        ranks=tuple(individual.rank for individual in population),
        crowding=tuple(individual.crowding for individual in population),
    )


def _log_generation(generation: int, population: Sequence[Individual]) -> None:
    objectives = np.array([individual.objectives for individual in population], dtype=float)
    front_size = sum(1 for individual in population if individual.rank == 1)
    logger.info(
        "generation %d: front %d/%d, median objectives %s",
        generation,
        front_size,
        len(population),
        np.array2string(np.median(objectives, axis=0), precision=4),
    )


def evolve(fitness: Fitness, cfg: GAConfig, bounds: Bounds, *, jobs: int = 1) -> FrontArchive:
    """Run ``cfg.generations`` NSGA-II generations; ``fitness`` must be picklable when ``jobs > 1``."""
    rng = np.random.default_rng(cfg.seed)
    low, high = _bounds_arrays(bounds)
    initial = rng.uniform(low, high, size=(cfg.population_size, low.size))
    population = [Individual(genome=tuple(row.tolist())) for row in initial]

    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        _evaluate(population, fitness, executor)
        _rank_and_crowd(population)
        snapshots = [_snapshot(0, population)]
        _log_generation(0, population)

        for generation in range(1, cfg.generations + 1):
            children = make_children(population, rng, cfg, bounds)
            _evaluate(children, fitness, executor)
            population = environmental_selection([*population, *children], cfg.population_size)
            snapshots.append(_snapshot(generation, population))
            _log_generation(generation, population)
    finally:
        if executor is not None:
            executor.shutdown()

    pareto = tuple(
        Individual(genome=individual.genome, objectives=individual.objectives, rank=1, crowding=individual.crowding)
        for individual in population
        if individual.rank == 1
    )
    return FrontArchive(snapshots=tuple(snapshots), pareto=pareto)
