"""Merit-order spot market: every segment of every representative day is cleared at a uniform price
set by the short-run marginal cost of the last unit needed."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from models import Resource
from schema.market import Bid, SegmentClearing, YearResult
from schema.scenario import PowerPlant, Scenario, Segment, Technology

logger = logging.getLogger(__name__)

# shortfalls below this are rounding noise from the cumulative fill
UNSERVED_TOLERANCE_MW = 1e-9


def srmc(tech: Technology, fuel_price: float, carbon_price: float) -> float:
    fuel_term = fuel_price / tech.efficiency if tech.fuel_kind else 0.0
    return fuel_term + tech.variable_om + tech.emission_factor * carbon_price


def is_active(plant: PowerPlant, tech: Technology, year: int) -> bool:
    return plant.commission_year <= year < plant.commission_year + tech.lifetime_years


def active_fleet(fleet: Iterable[PowerPlant], year: int, s: Scenario) -> list[PowerPlant]:
    techs = s.technology_map()
    return [plant for plant in fleet if is_active(plant, techs[plant.technology], year)]


def capacity_factor(tech: Technology, segment: Segment) -> float:
    if not tech.is_intermittent:
        return 1.0
    if tech.resource is Resource.SOLAR:
        return segment.solar_capacity_factor
    return segment.wind_capacity_factor


def plant_srmc(
    plant: PowerPlant,
    tech: Technology,
    year: int,
    carbon_price: float,
    s: Scenario,
    *,
    extrapolate_fuel: bool = False,
) -> float:
    fuel_price = s.fuel_price(tech.fuel_kind, year, extrapolate=extrapolate_fuel) if tech.fuel_kind else 0.0
    return srmc(tech, fuel_price, carbon_price)


def build_bids(
    fleet: Sequence[PowerPlant],
    year: int,
    segment: Segment,
    carbon_price: float,
    s: Scenario,
) -> list[Bid]:
    techs = s.technology_map()
    bids = []
    for plant in fleet:
        tech = techs[plant.technology]
        bids.append(
            Bid(
                plant=plant,
                available_mw=tech.capacity_mw * plant.unit_count * capacity_factor(tech, segment),
                srmc=plant_srmc(plant, tech, year, carbon_price, s),
                emission_factor=tech.emission_factor,
            ),
        )
    return bids


def merit_key(srmc_value: float, emission_factor: float, plant: PowerPlant) -> tuple[float, float, str]:
    return (srmc_value, emission_factor, plant.id)


def merit_fill(demand: np.ndarray, available: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Greedy fill of ``demand`` (segments,) from ``available`` (segments, plants) in merit order.

    Returns the dispatched matrix and the unserved demand per segment.
    """
    if available.shape[1] == 0:
        return np.zeros_like(available), demand.copy()
    cumulative = np.cumsum(available, axis=1)
    before = np.zeros_like(cumulative)
    before[:, 1:] = cumulative[:, :-1]
    dispatched = np.clip(demand[:, None] - before, 0.0, available)
    unserved = np.maximum(demand - cumulative[:, -1], 0.0)
    unserved[unserved < UNSERVED_TOLERANCE_MW] = 0.0
    return dispatched, unserved


def clearing_prices(
    dispatched: np.ndarray,
    unserved: np.ndarray,
    offers: np.ndarray,
    loss_of_load_price: float,
) -> np.ndarray:
    prices = np.full(dispatched.shape[0], loss_of_load_price, dtype=float)
    used = dispatched > 0.0
    served = used.any(axis=1) & (unserved == 0.0)
    if served.any():
        marginal = dispatched.shape[1] - 1 - np.argmax(used[:, ::-1], axis=1)
        prices[served] = offers[marginal[served]]
    return prices


def clear_segment(demand_mw: float, bids: Sequence[Bid], loss_of_load_price: float) -> SegmentClearing:
    ordered = sorted(bids, key=lambda bid: merit_key(bid.srmc, bid.emission_factor, bid.plant))
    available = np.array([[bid.available_mw for bid in ordered]], dtype=float).reshape(1, len(ordered))
    offers = np.array([bid.srmc for bid in ordered], dtype=float)
    dispatched, unserved = merit_fill(np.array([demand_mw], dtype=float), available)
    price = clearing_prices(dispatched, unserved, offers, loss_of_load_price)[0]
    return SegmentClearing(
        dispatched=tuple(
            (bid.plant, float(mw)) for bid, mw in zip(ordered, dispatched[0], strict=True) if mw > 0.0
        ),
        clearing_price=float(price),
        unserved_mw=float(unserved[0]),
    )


@dataclass(frozen=True, slots=True)
class MarketOutcome:
    """Full clearing of one year, plants in merit order."""

    year: int
    carbon_price: float
    plants: tuple[PowerPlant, ...]
    technologies: tuple[Technology, ...]
    offers: np.ndarray
    demand: np.ndarray
    weighted_hours: np.ndarray
    dispatched: np.ndarray
    unserved: np.ndarray
    prices: np.ndarray

    def plant_energy(self) -> np.ndarray:
        return self.weighted_hours @ self.dispatched

    def plant_operating_profit(self) -> np.ndarray:
        margin = self.prices[:, None] - self.offers[None, :]
        revenue = self.weighted_hours @ (self.dispatched * margin)
        fixed = np.array([tech.fixed_om * tech.capacity_mw for tech in self.technologies], dtype=float)
        units = np.array([plant.unit_count for plant in self.plants], dtype=float)
        return revenue - fixed * units


def _segment_table(s: Scenario) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    segments = [(day.weight_days, segment) for day in s.representative_days for segment in day.segments]
    demand = np.array([segment.demand_mw for _, segment in segments], dtype=float)
    weighted_hours = np.array([weight * segment.duration_hours for weight, segment in segments], dtype=float)
    solar = np.array([segment.solar_capacity_factor for _, segment in segments], dtype=float)
    wind = np.array([segment.wind_capacity_factor for _, segment in segments], dtype=float)
    return demand, weighted_hours, solar, wind


def demand_scale(s: Scenario, year: int) -> float:
    return s.demand_growth ** (year - s.start_year)


def dispatch_year(
    fleet: Sequence[PowerPlant],
    year: int,
    carbon_price: float,
    s: Scenario,
    *,
    demand_factor: float = 1.0,
    extrapolate_fuel: bool = False,
) -> MarketOutcome:
    techs = s.technology_map()
    base_demand, weighted_hours, solar, wind = _segment_table(s)
    demand = base_demand * (demand_scale(s, year) * demand_factor)

    priced = []
    for plant in fleet:
        tech = techs[plant.technology]
        offer = plant_srmc(plant, tech, year, carbon_price, s, extrapolate_fuel=extrapolate_fuel)
        priced.append((merit_key(offer, tech.emission_factor, plant), plant, tech))
    priced.sort(key=lambda item: item[0])

    plants = tuple(plant for _, plant, _ in priced)
    ordered_techs = tuple(tech for _, _, tech in priced)
    offers = np.array([key[0] for key, _, _ in priced], dtype=float)

    available = np.empty((demand.size, len(plants)), dtype=float)
    for column, (plant, tech) in enumerate(zip(plants, ordered_techs, strict=True)):
        rated = tech.capacity_mw * plant.unit_count
        if not tech.is_intermittent:
            available[:, column] = rated
        elif tech.resource is Resource.SOLAR:
            available[:, column] = rated * solar
        else:
            available[:, column] = rated * wind

    dispatched, unserved = merit_fill(demand, available)
    prices = clearing_prices(dispatched, unserved, offers, s.loss_of_load_price)
    return MarketOutcome(
        year=year,
        carbon_price=carbon_price,
        plants=plants,
        technologies=ordered_techs,
        offers=offers,
        demand=demand,
        weighted_hours=weighted_hours,
        dispatched=dispatched,
        unserved=unserved,
        prices=prices,
    )


def summarize(outcome: MarketOutcome, s: Scenario) -> YearResult:
    energy = outcome.plant_energy()
    energy_by_technology = dict.fromkeys((tech.name for tech in s.technologies), 0.0)
    emissions = 0.0
    for tech, plant_energy in zip(outcome.technologies, energy, strict=True):
        energy_by_technology[tech.name] += float(plant_energy)
        emissions += float(plant_energy) * tech.emission_factor

    served = float(energy.sum())
    demand_energy = outcome.demand * outcome.weighted_hours
    average_price = float(demand_energy @ outcome.prices / demand_energy.sum())
    return YearResult(
        year=outcome.year,
        carbon_price=outcome.carbon_price,
        energy_by_technology=energy_by_technology,
        emissions_t=emissions,
        average_price=average_price,
        served_mwh=served,
        unserved_mwh=float(outcome.unserved @ outcome.weighted_hours),
        carbon_intensity=emissions / served if served > 0.0 else 0.0,
    )


def run_year(
    fleet: Sequence[PowerPlant],
    year: int,
    carbon_price: float,
    s: Scenario,
    *,
    demand_factor: float = 1.0,
) -> YearResult:
    return summarize(dispatch_year(fleet, year, carbon_price, s, demand_factor=demand_factor), s)
