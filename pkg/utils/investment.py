"""GenCo investment: net present value of every catalog technology against a simulated market
``investment_lookahead_years`` ahead, priced with a linear-regression carbon forecast."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np

from schema.market import CarbonForecast, InvestmentDecision
from schema.scenario import GenCo, PowerPlant, Scenario, Technology
from utils.dispatch import active_fleet, dispatch_year

logger = logging.getLogger(__name__)

CANDIDATE_OWNER = "~candidate"
# sorts after every real plant id, so ties in the merit order go against the candidate
CANDIDATE_ID = "~candidate"


class Appraisal(NamedTuple):
    technology: Technology
    npv: float
    capital: float


def fit_carbon_forecast(history: Sequence[tuple[float, float]]) -> CarbonForecast:
    """Ordinary least squares line through ``(year, price)`` points."""
    if not history:
        raise ValueError("carbon price history is empty")
    years = np.array([year for year, _ in history], dtype=float)
    prices = np.array([price for _, price in history], dtype=float)
    if np.ptp(years) == 0.0:
        return CarbonForecast(slope=0.0, intercept=float(prices.mean()))
    # fitted on centred years, intercept shifted back to year 0
    centre = float(years.mean())
    slope, level = np.polyfit(years - centre, prices, 1)
    return CarbonForecast(slope=float(slope), intercept=float(level - slope * centre))


def forecast_carbon_price(history: Sequence[tuple[float, float]], target_year: float) -> float:
    return fit_carbon_forecast(history).at(target_year)


def npv(cash_flows: Sequence[float], discount_rate: float) -> float:
    if not discount_rate > -1:
        raise ValueError(f"discount rate must be > -1, got {discount_rate}")
    return sum(cash_flow / (1.0 + discount_rate) ** t for t, cash_flow in enumerate(cash_flows))


def estimate_yearly_revenue(
    candidate: Technology,
    decision_year: int,
    s: Scenario,
    fleet: Sequence[PowerPlant],
    carbon_forecast: CarbonForecast,
) -> float:
    """Net cash flow of one candidate unit in the market ``investment_lookahead_years`` ahead."""
    target_year = decision_year + s.investment_lookahead_years
    candidate_unit = PowerPlant(
        technology=candidate.name,
        owner=CANDIDATE_OWNER,
        commission_year=target_year,
        unit_count=1,
        id=CANDIDATE_ID,
    )
    future_fleet = [*active_fleet(fleet, target_year, s), candidate_unit]
    outcome = dispatch_year(
        future_fleet,
        target_year,
        carbon_forecast.at(target_year),
        s,
        extrapolate_fuel=True,
    )
    column = outcome.plants.index(candidate_unit)
    margin = outcome.prices - outcome.offers[column]
    operating = float(outcome.weighted_hours @ (outcome.dispatched[:, column] * margin))
    return operating - candidate.fixed_om * candidate.capacity_mw


def candidate_cash_flows(candidate: Technology, yearly_revenue: float) -> list[float]:
    return [-candidate.capital_cost * candidate.capacity_mw] + [yearly_revenue] * candidate.lifetime_years


def appraise(
    genco: GenCo,
    decision_year: int,
    s: Scenario,
    fleet: Sequence[PowerPlant],
    carbon_forecast: CarbonForecast,
) -> list[Appraisal]:
    """NPV of one unit of every technology the GenCo can afford, in catalog order."""
    appraisals = []
    for tech in s.technologies:
        capital = tech.capital_cost * tech.capacity_mw
        if capital > genco.budget:
            continue
        revenue = estimate_yearly_revenue(tech, decision_year, s, fleet, carbon_forecast)
        appraisals.append(Appraisal(tech, npv(candidate_cash_flows(tech, revenue), s.discount_rate), capital))
    return appraisals


def invest(
    genco: GenCo,
    decision_year: int,
    s: Scenario,
    fleet: Sequence[PowerPlant],
    carbon_history: Sequence[tuple[float, float]],
) -> list[InvestmentDecision]:
    """Buy the highest-NPV affordable unit until none is worth buying; debits ``genco.budget``."""
    forecast = fit_carbon_forecast(carbon_history)
    working = list(fleet)
    decisions: list[InvestmentDecision] = []

    while len(decisions) < s.max_builds_per_year:
        options = [option for option in appraise(genco, decision_year, s, working, forecast) if option.npv > 0]
        if not options:
            break
        best = options[int(np.argmax([option.npv for option in options]))]
        tech = best.technology
        plant = PowerPlant(
            technology=tech.name,
            owner=genco.id,
            commission_year=decision_year + tech.construction_lag_years,
            unit_count=1,
            id=f"{genco.id}-{tech.name}-{decision_year}-{len(decisions) + 1}",
        )
        genco.budget -= best.capital
        working.append(plant)
        decisions.append(
            InvestmentDecision(
                genco=genco.id,
                technology=tech.name,
                unit_count=1,
                npv=best.npv,
                capital=best.capital,
                plant=plant,
            ),
        )
        logger.debug(
            "%s builds %s in %d (npv %.3g, budget left %.3g)",
            genco.id,
            tech.name,
            decision_year,
            best.npv,
            genco.budget,
        )

    return decisions
