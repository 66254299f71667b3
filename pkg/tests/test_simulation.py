from __future__ import annotations

import pytest
from conftest import make_scenario, make_tech

from exceptions import GenomeError
from models import EventKind, PolicyKind, Resource
from schema.policy import LinearPolicy, NonParametricPolicy
from schema.scenario import GenCo, PowerPlant, Segment
from utils.policy import parse_policy_spec
from utils.simulation import evaluate_objectives, run_simulation


def dirty_clean_market(**overrides):
    """60 MW emitting plant at 5 GBP/MWh against a 60 MW clean one at 10, serving 100 MW."""
    return make_scenario(
        [
            make_tech("dirty", capacity_mw=60.0, variable_om=5.0, emission_factor=1.0),
            make_tech("clean", capacity_mw=60.0, variable_om=10.0),
        ],
        [PowerPlant("dirty", "g1", 2010), PowerPlant("clean", "g1", 2010)],
        base_carbon_intensity=0.6,
        **overrides,
    )


def test_zero_tax_on_a_static_fleet_keeps_intensity(static_fossil):
    result = run_simulation(static_fossil, parse_policy_spec("flat:0"))

    assert result.objective_rci == pytest.approx(1.0, abs=1e-12)
    assert len(result.per_year) == 18
    assert [year.year for year in result.per_year] == list(range(2018, 2036))
    assert result.events == ()


def test_tax_switches_coal_behind_gas(static_fossil):
    result = run_simulation(static_fossil, parse_policy_spec("flat:100"))

    # gas 1200 MW runs first, coal covers 0 / 200 / 600 / 0 MW above it
    base = (4000 * 0.91 + 1400 * 0.37) / 5400
    final = (800 * 0.91 + 4600 * 0.37) / 5400
    assert result.objective_rci == pytest.approx(final / base)
    assert result.objective_rci < 1.0
    assert result.per_year[-1].carbon_price == 100.0


def test_two_year_hand_trace():
    s = dirty_clean_market()

    result = run_simulation(s, NonParametricPolicy(prices=(0.0, 10.0)))

    first, second = result.per_year
    # year 1: dirty 60 MW then clean 40 MW at 10; year 2: dirty offers 15, so clean runs first
    assert first.average_price == pytest.approx(10.0)
    assert first.carbon_intensity == pytest.approx(0.6)
    assert second.average_price == pytest.approx(15.0)
    assert second.carbon_intensity == pytest.approx(0.4)
    assert second.emissions_t == pytest.approx(40 * 8760)
    assert result.objective_price == pytest.approx(15.0)
    assert result.objective_rci == pytest.approx(0.4 / 0.6)


def test_emission_free_fleet_has_zero_intensity():
    solar = make_tech("solar", is_intermittent=True, resource=Resource.SOLAR)
    s = make_scenario(
        [solar],
        [PowerPlant("solar", "g1", 2015, unit_count=3)],
        [Segment(24.0, 100.0, solar_capacity_factor=0.5)],
        base_carbon_intensity=0.5,
    )

    result = run_simulation(s, LinearPolicy(a1=1.0, a2=30.0))

    assert result.objective_rci == 0.0
    assert result.objective_price == 0.0


def test_same_seed_same_result(uk_synthetic):
    policy = LinearPolicy(a1=3.0, a2=20.0)

    assert run_simulation(uk_synthetic, policy, seed=4) == run_simulation(uk_synthetic, policy, seed=4)


def test_jitter_depends_on_seed():
    s = dirty_clean_market(demand_jitter=0.1)
    policy = NonParametricPolicy(prices=(0.0, 0.0))

    assert run_simulation(s, policy, seed=1) == run_simulation(s, policy, seed=1)
    assert run_simulation(s, policy, seed=1).per_year != run_simulation(s, policy, seed=2).per_year


def test_linear_policy_matches_flat_free_policy(uk_synthetic):
    linear = run_simulation(uk_synthetic, LinearPolicy(a1=0.0, a2=55.0))
    free = run_simulation(uk_synthetic, NonParametricPolicy(prices=(55.0,) * 18))

    assert linear == free


def test_lifecycle_events_in_order():
    s = make_scenario(
        [
            make_tech("peaker", capacity_mw=500.0, variable_om=50.0),
            make_tech("small", capacity_mw=10.0, capital_cost=1_000_000.0, lifetime_years=20),
            make_tech("old", capacity_mw=10.0, variable_om=60.0, lifetime_years=9),
        ],
        [PowerPlant("peaker", "g1", 2010), PowerPlant("old", "g1", 2010), PowerPlant("old", "g1", 2019)],
        gencos=[GenCo(id="g1", budget=10_000_000.0)],
        base_carbon_intensity=1.0,
    )

    result = run_simulation(s, NonParametricPolicy(prices=(0.0, 0.0)))

    assert [(event.year, event.kind, event.plant_id) for event in result.events] == [
        (2018, EventKind.INVEST, "g1-small-2018-1"),
        (2018, EventKind.COMMISSION, "g1-small-2018-1"),
        (2019, EventKind.RETIRE, "p1"),
        (2019, EventKind.COMMISSION, "p2"),
    ]
    invest = result.events[0]
    assert invest.capital == 10_000_000.0
    assert invest.npv > 0
    # GenCos are copied per run
    assert s.gencos[0].budget == 10_000_000.0
    assert result.per_year[0].energy_by_technology["small"] == pytest.approx(10 * 8760)


def test_evaluate_objectives_averages_replicates():
    s = dirty_clean_market(demand_jitter=0.1)
    genome = [2.0, 1.0]

    price, rci = evaluate_objectives(s, genome, PolicyKind.LINEAR, seed=5, replicates=3)
    runs = [run_simulation(s, LinearPolicy(a1=2.0, a2=1.0), seed) for seed in (5, 6, 7)]

    assert price == pytest.approx(sum(run.objective_price for run in runs) / 3)
    assert rci == pytest.approx(sum(run.objective_rci for run in runs) / 3)
    assert evaluate_objectives(s, genome, "linear", seed=5) == (runs[0].objective_price, runs[0].objective_rci)


def test_evaluate_objectives_rejects_out_of_bounds_genome():
    with pytest.raises(GenomeError):
        evaluate_objectives(dirty_clean_market(), [99.0, 1.0], PolicyKind.LINEAR)
