from __future__ import annotations

import logging
from pathlib import Path

import click
from rich.table import Table

from config import STDOUT
from controllers.options import (
    Stopwatch,
    default_out_dir,
    out_option,
    resolved_scenario,
    scenario_option,
    write_manifest,
)
from models import CommandName
from schema.commands import RunManifest, SimulateParams
from schema.market import SimulationResult
from utils.export import staged_output, write_simulation
from utils.policy import parse_policy_spec
from utils.scenario import load_scenario, scenario_checksum
from utils.simulation import run_simulation

logger = logging.getLogger(__name__)


def run_simulate(params: SimulateParams, out_dir: Path) -> tuple[SimulationResult, RunManifest]:
    scenario_path = Path(params.scenario)
    checksum = scenario_checksum(scenario_path)
    s = load_scenario(scenario_path)
    policy = parse_policy_spec(params.policy, s.horizon_years)

    clock = Stopwatch()
    result = run_simulation(s, policy, params.seed)
    clock.lap("simulate_s")

    with staged_output(out_dir) as stage:
        outputs = write_simulation(result, stage)
        manifest = write_manifest(
            stage,
            CommandName.SIMULATE,
            params,
            seed=params.seed,
            outputs=outputs,
            scenario_checksum=checksum,
            timings=clock.timings,
        )
    return result, manifest


def render_simulation(result: SimulationResult) -> Table:
    table = Table(title="Simulation")
    for column in ("year", "carbon £/t", "price £/MWh", "intensity t/MWh"):
        table.add_column(column, justify="right")
    for year in result.per_year:
        table.add_row(
            str(year.year),
            f"{year.carbon_price:.2f}",
            f"{year.average_price:.2f}",
            f"{year.carbon_intensity:.4f}",
        )
    table.caption = f"objective_price {result.objective_price:.4f}  objective_rci {result.objective_rci:.4f}"
    return table


@click.command(name=CommandName.SIMULATE)
@scenario_option
@click.option("--policy", "policy_spec", required=True, help="linear:a1,a2 | free:v1,...,vN | flat:c")
@click.option("--seed", type=int, default=0, show_default=True)
@out_option
def simulate(scenario: str, policy_spec: str, seed: int, out_dir: Path | None) -> None:
    """Run the market simulation under one carbon tax policy."""
    params = SimulateParams(scenario=resolved_scenario(scenario), policy=policy_spec, seed=seed)
    result, _ = run_simulate(params, out_dir or default_out_dir(CommandName.SIMULATE))
    STDOUT.print(render_simulation(result))
