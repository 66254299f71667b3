from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import msgspec
import numpy as np

from models import EventKind, PolicyKind
from schema.market import Event, SimulationResult, YearResult
from schema.policy import CarbonPolicy
from schema.scenario import GenCo, PowerPlant, Scenario
from utils.dispatch import active_fleet, dispatch_year, summarize
from utils.investment import invest
from utils.policy import decode, price_at
from utils.scenario import measure_base_intensity

logger = logging.getLogger(__name__)

# keeps a jittered year's demand strictly positive
MIN_DEMAND_FACTOR = 0.05


def _demand_factor(s: Scenario, rng: np.random.Generator) -> float:
    if s.demand_jitter <= 0:
        return 1.0
    return max(1.0 + s.demand_jitter * float(rng.standard_normal()), MIN_DEMAND_FACTOR)


def _retire(fleet: list[PowerPlant], year: int, s: Scenario) -> tuple[list[PowerPlant], list[Event]]:
    techs = s.technology_map()
    kept, events = [], []
    for plant in fleet:
        if plant.commission_year + techs[plant.technology].lifetime_years <= year:
            events.append(
                Event(
                    year=year,
                    kind=EventKind.RETIRE,
                    genco=plant.owner,
                    technology=plant.technology,
                    plant_id=plant.id,
                    unit_count=plant.unit_count,
                ),
            )
        else:
            kept.append(plant)
    return kept, events


def _credit_profits(
    gencos: dict[str, GenCo],
    profits: Sequence[float],
    plants: Sequence[PowerPlant],
    share: float,
) -> None:
    earned = dict.fromkeys(gencos, 0.0)
    for plant, profit in zip(plants, profits, strict=True):
        earned[plant.owner] += float(profit)
    for genco_id, amount in earned.items():
        if amount > 0:
            gencos[genco_id].budget += share * amount


def run_simulation(s: Scenario, policy: CarbonPolicy, seed: int = 0) -> SimulationResult:
    """Yearly loop: retire, invest, commission, then clear the market at the policy's carbon price."""
    rng = np.random.default_rng(seed)
    base = s.base_carbon_intensity if s.base_carbon_intensity is not None else measure_base_intensity(s)
    gencos = {genco.id: msgspec.structs.replace(genco) for genco in sorted(s.gencos, key=lambda genco: genco.id)}
    fleet = list(s.initial_fleet)
    history: list[tuple[float, float]] = []
    per_year: list[YearResult] = []
    events: list[Event] = []

    for year_index in range(1, s.horizon_years + 1):
        year = s.calendar_year(year_index)
        fleet, retired = _retire(fleet, year, s)
        events.extend(retired)

        carbon_price = price_at(policy, year_index, s.horizon_years)
        history.append((year, carbon_price))

        for genco in gencos.values():
            for decision in invest(genco, year, s, fleet, history):
                fleet.append(decision.plant)
                events.append(
                    Event(
                        year=year,
                        kind=EventKind.INVEST,
                        genco=decision.genco,
                        technology=decision.technology,
                        plant_id=decision.plant.id,
                        unit_count=decision.unit_count,
                        npv=decision.npv,
                        capital=decision.capital,
                    ),
                )

        events.extend(
            Event(
                year=year,
                kind=EventKind.COMMISSION,
                genco=plant.owner,
                technology=plant.technology,
                plant_id=plant.id,
                unit_count=plant.unit_count,
            )
            for plant in fleet
            if plant.commission_year == year
        )

        factor = _demand_factor(s, rng)
        outcome = dispatch_year(active_fleet(fleet, year, s), year, carbon_price, s, demand_factor=factor)
        per_year.append(summarize(outcome, s))
        if s.profit_retention > 0:
            _credit_profits(gencos, outcome.plant_operating_profit(), outcome.plants, s.profit_retention)

    final = per_year[-1]
    logger.debug("simulation done: price %.4g, intensity %.4g", final.average_price, final.carbon_intensity)
    return SimulationResult(
        per_year=tuple(per_year),
        objective_price=final.average_price,
        objective_rci=final.carbon_intensity / base,
        events=tuple(events),
    )


def evaluate_objectives(
    s: Scenario,
    genome: Sequence[float],
    policy_kind: PolicyKind | str,
    seed: int = 0,
    *,
    replicates: int = 1,
) -> tuple[float, float]:
    """Fitness for the optimizer: (final-year average price, relative carbon intensity), both minimized."""
    policy = decode(genome, policy_kind, horizon=s.horizon_years)
    results = [run_simulation(s, policy, seed + offset) for offset in range(max(replicates, 1))]
    price = math.fsum(result.objective_price for result in results) / len(results)
    rci = math.fsum(result.objective_rci for result in results) / len(results)
    return price, rci
