"""Electricity mix of the highlighted front policies, averaged over several simulation seeds."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

import click
import pandas as pd
from rich.table import Table

from config import STDOUT
from controllers.options import (
    Stopwatch,
    default_out_dir,
    jobs_option,
    out_option,
    resolved_scenario,
    scenario_option,
    write_manifest,
)
from exceptions import ParetoFileError
from models import CommandName, PolicyKind
from schema.commands import MixParams, RunManifest
from schema.market import SimulationResult
from schema.policy import CarbonPolicy
from schema.scenario import Scenario
from utils.analysis import filter_front, highlight_policies, mean_tax, mix_shares
from utils.export import read_pareto, staged_output, write_csv
from utils.policy import decode
from utils.scenario import load_scenario, scenario_checksum
from utils.simulation import run_simulation

logger = logging.getLogger(__name__)


def _simulate_seeds(s: Scenario, policy: CarbonPolicy, seeds: range, jobs: int) -> list[SimulationResult]:
    simulate = partial(run_simulation, s, policy)
    if jobs <= 1:
        return [simulate(seed) for seed in seeds]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(simulate, seeds))


def run_mix(params: MixParams, out_dir: Path, *, jobs: int = 1) -> tuple[pd.DataFrame, RunManifest]:
    scenario_path = Path(params.scenario)
    checksum = scenario_checksum(scenario_path)
    s = load_scenario(scenario_path)
    front = read_pareto(Path(params.pareto))
    kind = params.kind or front.policy_kind
    if kind is None:
        raise ParetoFileError(f"{params.pareto}: policy kind unknown, pass --kind")

    candidates = filter_front(front.points, params.max_price)
    if not candidates:
        raise ParetoFileError(f"{params.pareto}: no front point priced at or below {params.max_price}")
    highlighted = highlight_policies(candidates, kind, s.horizon_years)

    clock = Stopwatch()
    seeds = range(params.seed, params.seed + params.runs)
    frames, strategies = [], []
    for label, point in highlighted.items():
        policy = decode(point.genome, kind, horizon=s.horizon_years, repair=True)
        shares = mix_shares(_simulate_seeds(s, policy, seeds, jobs))
        shares.insert(0, "strategy", label)
        frames.append(shares)
        strategies.append(
            {
                "strategy": label,
                "mean_tax": mean_tax(point, kind, s.horizon_years),
                "objective_price": point.objectives[0],
                "objective_rci": point.objectives[1],
                **{f"gene_{gene + 1}": value for gene, value in enumerate(point.genome)},
            },
        )
        logger.info("simulated %s strategy over %d seeds", label, params.runs)
    clock.lap("simulate_s")
    mix = pd.concat(frames, ignore_index=True)

    with staged_output(out_dir) as stage:
        write_csv(mix, stage / "mix.csv")
        write_csv(pd.DataFrame(strategies), stage / "strategies.csv")
        manifest = write_manifest(
            stage,
            CommandName.MIX,
            params,
            seed=params.seed,
            outputs=["mix.csv", "strategies.csv"],
            scenario_checksum=checksum,
            jobs=jobs,
            timings=clock.timings,
        )
    return mix, manifest


def render_mix(mix: pd.DataFrame) -> Table:
    final_year = mix["year"].max()
    final = mix[mix["year"] == final_year]
    table = Table(title=f"Electricity mix in {final_year}")
    table.add_column("strategy")
    table.add_column("technology")
    table.add_column("share", justify="right")
    for row in final.itertuples(index=False):
        table.add_row(row.strategy, row.technology, f"{row.share:.1%}")
    return table


@click.command(name=CommandName.MIX)
@scenario_option
@click.option(
    "--pareto",
    "pareto_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="pareto.json written by optimize.",
)
@click.option("--kind", type=click.Choice([kind.value for kind in PolicyKind]), default=None)
@click.option("--max-price", type=float, default=None, help="Only consider front points at or below this price.")
@click.option("--runs", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@jobs_option
@out_option
def mix(
    scenario: str,
    pareto_path: Path,
    kind: str | None,
    max_price: float | None,
    runs: int,
    seed: int,
    jobs: int,
    out_dir: Path | None,
) -> None:
    """Electricity mix of the highest, lowest and flattest tax strategies on the front."""
    params = MixParams(
        scenario=resolved_scenario(scenario),
        pareto=str(pareto_path.resolve()),
        kind=PolicyKind(kind) if kind else None,
        max_price=max_price,
        runs=runs,
        seed=seed,
    )
    shares, _ = run_mix(params, out_dir or default_out_dir(CommandName.MIX), jobs=jobs)
    STDOUT.print(render_mix(shares))
