"""Analytic test problems for checking the optimizer without the market simulator."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from typing import NamedTuple

import numpy as np

from models import BenchmarkProblem

REFERENCE_POINTS = 10_001
ZDT1_VARIABLES = 30


class Problem(NamedTuple):
    fitness: Callable[[tuple[float, ...]], tuple[float, float]]
    bounds: list[tuple[float, float]]
    reference_front: Callable[[int], np.ndarray]


def schaffer(genome: Sequence[float]) -> tuple[float, float]:
    x = float(genome[0])
    return x * x, (x - 2.0) ** 2


def schaffer_front(points: int = REFERENCE_POINTS) -> np.ndarray:
    x = np.linspace(0.0, 2.0, points)
    return np.column_stack([x**2, (x - 2.0) ** 2])


def zdt1(genome: Sequence[float]) -> tuple[float, float]:
    x = np.asarray(genome, dtype=float)
    f1 = float(x[0])
    g = 1.0 + 9.0 * float(x[1:].sum()) / (x.size - 1)
    return f1, g * (1.0 - np.sqrt(f1 / g))


def zdt1_front(points: int = REFERENCE_POINTS) -> np.ndarray:
    f1 = np.linspace(0.0, 1.0, points)
    return np.column_stack([f1, 1.0 - np.sqrt(f1)])


def get_problem(problem: BenchmarkProblem | str) -> Problem:
    match BenchmarkProblem(problem):
        case BenchmarkProblem.SCHAFFER:
            return Problem(schaffer, [(-10.0, 10.0)], schaffer_front)
        case BenchmarkProblem.ZDT1:
            return Problem(zdt1, [(0.0, 1.0)] * ZDT1_VARIABLES, zdt1_front)


def generational_distance(front: np.ndarray | Sequence[Sequence[float]], reference: np.ndarray) -> float:
    """sqrt(sum of squared nearest distances) / n, from each front point to the reference set."""
    points = np.asarray(front, dtype=float)
    if points.size == 0:
        raise ValueError("front is empty")
    squared = ((points[:, None, :] - reference[None, :, :]) ** 2).sum(axis=2)
    nearest = squared.min(axis=1)
    return float(np.sqrt(nearest.sum()) / len(points))
