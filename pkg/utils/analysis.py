"""Post-processing of an optimized front: price filtering, the three showcase policies and mix shares."""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
import pandas as pd

from config import DEFAULT_HORIZON
from models import PolicyKind
from schema.market import SimulationResult
from schema.optimizer import ParetoPoint
from utils.policy import decode, trajectory

HIGHEST = "highest"
LOWEST = "lowest"
FLAT = "flat"


def filter_front(points: Sequence[ParetoPoint], max_price: float | None) -> list[ParetoPoint]:
    """Points whose average electricity price objective is at most ``max_price``."""
    if max_price is None:
        return list(points)
    return [point for point in points if point.objectives[0] <= max_price]


def mean_tax(point: ParetoPoint, kind: PolicyKind | str, horizon: int = DEFAULT_HORIZON) -> float:
    prices = trajectory(decode(point.genome, kind, horizon=horizon, repair=True), horizon)
    return math.fsum(prices) / len(prices)


def flatness(point: ParetoPoint, kind: PolicyKind | str) -> float:
    if PolicyKind(kind) is PolicyKind.LINEAR:
        return abs(point.genome[0])
    return max(point.genome) - min(point.genome)


def highlight_policies(
    points: Sequence[ParetoPoint],
    kind: PolicyKind | str,
    horizon: int = DEFAULT_HORIZON,
) -> dict[str, ParetoPoint]:
    """Highest and lowest mean yearly tax, plus the flattest trajectory; first point wins ties."""
    if not points:
        return {}
    taxes = [mean_tax(point, kind, horizon) for point in points]
    spreads = [flatness(point, kind) for point in points]
    return {
        HIGHEST: points[int(np.argmax(taxes))],
        LOWEST: points[int(np.argmin(taxes))],
        FLAT: points[int(np.argmin(spreads))],
    }


def energy_shares(result: SimulationResult) -> pd.DataFrame:
    rows = []
    for year in result.per_year:
        total = math.fsum(year.energy_by_technology.values())
        for technology, energy in year.energy_by_technology.items():
            rows.append(
                {
                    "year": year.year,
                    "technology": technology,
                    "energy_mwh": energy,
                    "share": energy / total if total > 0 else 0.0,
                },
            )
    return pd.DataFrame(rows, columns=["year", "technology", "energy_mwh", "share"])


def mix_shares(results: Sequence[SimulationResult]) -> pd.DataFrame:
    """Mean energy and share per (year, technology) over several runs of one policy."""
    if not results:
        raise ValueError("no simulation results to average")
    frames = [energy_shares(result) for result in results]
    combined = pd.concat(frames, ignore_index=True)
    averaged = combined.groupby(["year", "technology"], sort=False, as_index=False)[["energy_mwh", "share"]].mean()
    return averaged.sort_values(["year"], kind="stable").reset_index(drop=True)
