from __future__ import annotations

import msgspec
import numpy as np
import pytest
from conftest import make_scenario, make_tech

from schema.market import CarbonForecast
from schema.scenario import GenCo, PowerPlant, Segment
from utils.investment import (
    appraise,
    estimate_yearly_revenue,
    fit_carbon_forecast,
    forecast_carbon_price,
    invest,
    npv,
)

FLAT_ZERO = CarbonForecast(slope=0.0, intercept=0.0)


@pytest.mark.parametrize(
    ("history", "target", "expected"),
    [
        ([(0, 10.0), (1, 20.0), (2, 30.0)], 12, 130.0),
        ([(0, 50.0), (1, 50.0)], 10, 50.0),
        ([(5, 80.0)], 15, 80.0),
    ],
)
def test_forecast_carbon_price(history, target, expected):
    assert forecast_carbon_price(history, target) == pytest.approx(expected)


def test_forecast_two_and_three_point_fits_are_exact():
    two = fit_carbon_forecast([(0, 37.5), (2, 66.5)])
    assert two.slope == pytest.approx(14.5, abs=1e-12)
    assert two.intercept == pytest.approx(37.5, abs=1e-12)

    three = fit_carbon_forecast([(0, 1.0), (1, 3.0), (2, 2.0)])
    assert three.slope == pytest.approx(0.5, abs=1e-12)
    assert three.intercept == pytest.approx(1.5, abs=1e-12)


def test_forecast_on_calendar_years():
    forecast = fit_carbon_forecast([(2018, 10.0), (2019, 24.0), (2020, 38.0), (2020, 38.0)])

    assert forecast.slope == pytest.approx(14.0, abs=1e-9)
    assert forecast.at(2030) == pytest.approx(178.0, abs=1e-9)


def test_repeated_year_gives_a_flat_forecast():
    assert fit_carbon_forecast([(2018, 10.0), (2018, 30.0)]) == CarbonForecast(slope=0.0, intercept=20.0)


def test_forecast_needs_history():
    with pytest.raises(ValueError, match="empty"):
        fit_carbon_forecast([])


@pytest.mark.parametrize(
    ("cash_flows", "rate", "expected"),
    [
        ([100.0, 100.0, 100.0], 0.0, 300.0),
        ([-1000.0, 600.0, 600.0], 0.1, -1000 + 600 / 1.1 + 600 / 1.21),
        ([42.0], 0.3, 42.0),
        ([42.0], 0.0, 42.0),
    ],
)
def test_npv_examples(cash_flows, rate, expected):
    assert npv(cash_flows, rate) == pytest.approx(expected)


@pytest.mark.parametrize("rate", [0.0, 0.05, 0.1, 0.2])
@pytest.mark.parametrize("years", [1, 10, 25, 40])
def test_npv_matches_geometric_series(rate, years):
    revenue = 1234.5
    flows = [revenue] * (years + 1)
    if rate == 0:
        closed = revenue * (years + 1)
    else:
        v = 1 / (1 + rate)
        closed = revenue * (1 - v ** (years + 1)) / (1 - v)

    assert npv(flows, rate) == pytest.approx(closed, rel=1e-9)


def test_npv_is_linear():
    rng = np.random.default_rng(0)
    r, s = rng.normal(size=20).tolist(), rng.normal(size=20).tolist()
    combined = [2.5 * a - 0.7 * b for a, b in zip(r, s, strict=True)]

    assert npv(combined, 0.08) == pytest.approx(2.5 * npv(r, 0.08) - 0.7 * npv(s, 0.08))


def test_npv_rejects_rate_at_minus_one():
    with pytest.raises(ValueError, match="discount rate"):
        npv([1.0, 2.0], -1.0)


def two_plant_market(*candidates, **overrides):
    """Two 60 MW plants at 5 and 10 GBP/MWh serving 100 MW; ``candidates`` join the catalog only."""
    return make_scenario(
        [
            make_tech("cheap", capacity_mw=60.0, variable_om=5.0),
            make_tech("dear", capacity_mw=60.0, variable_om=10.0),
            *candidates,
        ],
        [PowerPlant("cheap", "g1", 2010), PowerPlant("dear", "g1", 2010)],
        **overrides,
    )


def test_zero_cost_candidate_earns_the_clearing_price():
    candidate = make_tech("wind_like", capacity_mw=20.0)
    s = two_plant_market(candidate)

    revenue = estimate_yearly_revenue(candidate, 2018, s, s.initial_fleet, FLAT_ZERO)

    # merit order wind_like 20 MW, cheap 60 MW, dear 20 MW -> price 10
    assert revenue == pytest.approx(20 * 10 * 8760)
    assert revenue > 0


def test_never_dispatched_candidate_only_pays_fixed_costs():
    candidate = make_tech("peaker", capacity_mw=30.0, variable_om=100.0, fixed_om=2000.0)
    s = two_plant_market(candidate)

    assert estimate_yearly_revenue(candidate, 2018, s, s.initial_fleet, FLAT_ZERO) == pytest.approx(-2000.0 * 30)


def test_hand_traced_candidate_revenue():
    candidate = make_tech("mid", capacity_mw=30.0, variable_om=7.0, fixed_om=1000.0, emission_factor=0.5)
    s = two_plant_market(candidate)

    # merit order cheap 60 MW, mid 30 MW, dear 10 MW -> price 10, margin 3 (carbon 0)
    assert estimate_yearly_revenue(candidate, 2018, s, s.initial_fleet, FLAT_ZERO) == pytest.approx(
        30 * 3 * 8760 - 30 * 1000,
    )
    # forecast 2 GBP/t in 2028 adds 1 GBP/MWh to its offer
    forecast = CarbonForecast(slope=0.0, intercept=2.0)
    assert estimate_yearly_revenue(candidate, 2018, s, s.initial_fleet, forecast) == pytest.approx(
        30 * 2 * 8760 - 30 * 1000,
    )


def test_emitting_candidate_value_falls_as_forecast_slope_rises():
    candidate = make_tech("coalish", capacity_mw=30.0, variable_om=6.0, emission_factor=0.9)
    s = two_plant_market(candidate, segments=[Segment(12.0, 100.0), Segment(12.0, 110.0)])

    revenues = []
    for slope in np.linspace(0.0, 1.0, 11):
        forecast = CarbonForecast(slope=float(slope), intercept=-float(slope) * 2018)
        revenues.append(estimate_yearly_revenue(candidate, 2018, s, s.initial_fleet, forecast))

    assert all(later <= earlier + 1e-9 for earlier, later in zip(revenues, revenues[1:], strict=False))
    assert revenues[-1] < revenues[0]


def peaker_market(budget: float):
    """Demand 100 MW priced by a 500 MW peaker at 50 GBP/MWh; two zero-cost candidates."""
    return make_scenario(
        [
            make_tech("peaker", capacity_mw=500.0, variable_om=50.0),
            make_tech("big", capacity_mw=50.0, capital_cost=1_000_000.0, lifetime_years=20),
            make_tech("small", capacity_mw=10.0, capital_cost=1_000_000.0, lifetime_years=20),
        ],
        [PowerPlant("peaker", "g1", 2010)],
        gencos=[GenCo(id="g1", budget=budget)],
    )


def test_no_positive_npv_means_no_investment():
    s = two_plant_market()
    genco = GenCo(id="g1", budget=1e12)

    assert invest(genco, 2018, s, s.initial_fleet, [(2018, 0.0)]) == []
    assert genco.budget == 1e12


def test_single_affordable_option():
    s = peaker_market(budget=15_000_000.0)
    genco = GenCo(id="g1", budget=15_000_000.0)

    decisions = invest(genco, 2018, s, s.initial_fleet, [(2018, 0.0)])

    assert [decision.technology for decision in decisions] == ["small"]
    assert decisions[0].capital == 10_000_000.0
    assert decisions[0].npv > 0
    assert genco.budget == 5_000_000.0


def test_greedy_buys_highest_npv_first():
    s = peaker_market(budget=100_000_000.0)
    genco = GenCo(id="g1", budget=100_000_000.0)

    options = {a.technology.name: a.npv for a in appraise(genco, 2018, s, s.initial_fleet, FLAT_ZERO)}
    assert options["big"] > options["small"] > 0 > options["peaker"]

    decisions = invest(genco, 2018, s, s.initial_fleet, [(2018, 0.0)])

    # big (50 MW) first, then small units until zero-cost capacity would cover all 100 MW
    assert [decision.technology for decision in decisions] == ["big", "small", "small", "small", "small"]
    assert genco.budget == 10_000_000.0
    assert [decision.plant.id for decision in decisions][:2] == ["g1-big-2018-1", "g1-small-2018-2"]


def test_budget_caps_spending():
    for budget in (0.0, 9_999_999.0, 10_000_000.0, 37_000_000.0, 75_000_000.0):
        s = peaker_market(budget)
        genco = GenCo(id="g1", budget=budget)

        decisions = invest(genco, 2018, s, s.initial_fleet, [(2018, 0.0)])

        assert genco.budget >= 0
        assert sum(decision.capital for decision in decisions) <= budget


def test_builds_per_year_are_capped():
    s = peaker_market(budget=1e9)
    s = msgspec.structs.replace(s, max_builds_per_year=2)
    genco = GenCo(id="g1", budget=1e9)

    assert len(invest(genco, 2018, s, s.initial_fleet, [(2018, 0.0)])) == 2


def test_construction_lag_sets_commission_year():
    s = make_scenario(
        [
            make_tech("peaker", capacity_mw=500.0, variable_om=50.0),
            make_tech("slow", capacity_mw=50.0, capital_cost=1_000_000.0, lifetime_years=30, construction_lag_years=4),
        ],
        [PowerPlant("peaker", "g1", 2010)],
        gencos=[GenCo(id="g1", budget=50_000_000.0)],
    )
    genco = GenCo(id="g1", budget=50_000_000.0)

    (decision,) = invest(genco, 2020, s, s.initial_fleet, [(2018, 0.0), (2019, 0.0), (2020, 0.0)])

    assert decision.plant.commission_year == 2024
    assert decision.plant.owner == "g1"
