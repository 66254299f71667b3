from __future__ import annotations

from typing import Any

import msgspec
import pytest

from config import SCENARIO_DIR
from schema.scenario import GenCo, PowerPlant, RepresentativeDay, Scenario, Segment, Technology
from utils.scenario import load_scenario


def make_tech(name: str, **overrides: Any) -> Technology:
    fields: dict[str, Any] = {
        "name": name,
        "capacity_mw": 100.0,
        "capital_cost": 1000.0,
        "fixed_om": 0.0,
        "variable_om": 0.0,
        "efficiency": 1.0,
        "emission_factor": 0.0,
        "lifetime_years": 40,
    }
    fields.update(overrides)
    return Technology(**fields)


def make_scenario(
    technologies: list[Technology],
    fleet: list[PowerPlant],
    segments: list[Segment] | None = None,
    *,
    weight_days: float = 365.0,
    horizon_years: int = 2,
    fuel_prices: dict[str, dict[int, float]] | None = None,
    gencos: list[GenCo] | None = None,
    **overrides: Any,
) -> Scenario:
    """One representative day; segments default to a single 24 h block of 100 MW."""
    days = (RepresentativeDay(weight_days=weight_days, segments=tuple(segments or [Segment(24.0, 100.0)])),)
    owners = sorted({plant.owner for plant in fleet}) or ["g1"]
    return Scenario(
        start_year=2018,
        technologies=tuple(technologies),
        initial_fleet=tuple(
            plant if plant.id else msgspec.structs.replace(plant, id=f"p{i}")
            for i, plant in enumerate(fleet)
        ),
        gencos=tuple(gencos or [GenCo(id=owner, budget=0.0) for owner in owners]),
        representative_days=days,
        fuel_prices=fuel_prices or {},
        horizon_years=horizon_years,
        **overrides,
    )


@pytest.fixture(scope="session")
def static_fossil() -> Scenario:
    return load_scenario(SCENARIO_DIR / "static_fossil.scenario")


@pytest.fixture(scope="session")
def uk_synthetic() -> Scenario:
    return load_scenario(SCENARIO_DIR / "uk_synthetic.scenario")
