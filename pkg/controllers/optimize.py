from __future__ import annotations

import logging
from functools import partial
from pathlib import Path

import click
from rich.table import Table

from config import STDOUT
from controllers.options import (
    Stopwatch,
    build_ga_config,
    default_out_dir,
    ga_options,
    jobs_option,
    out_option,
    resolved_scenario,
    scenario_option,
    write_manifest,
)
from models import CommandName, MutationKind, PolicyKind
from schema.commands import OptimizeParams, RunManifest
from schema.optimizer import FrontArchive
from utils.export import MARKET_OBJECTIVES, staged_output, write_archive
from utils.nsga2 import evolve
from utils.policy import bounds
from utils.scenario import load_scenario, scenario_checksum
from utils.simulation import evaluate_objectives

logger = logging.getLogger(__name__)


def run_optimize(params: OptimizeParams, out_dir: Path, *, jobs: int = 1) -> tuple[FrontArchive, RunManifest]:
    scenario_path = Path(params.scenario)
    checksum = scenario_checksum(scenario_path)
    s = load_scenario(scenario_path)
    fitness = partial(
        evaluate_objectives,
        s,
        policy_kind=params.kind,
        seed=params.ga.seed,
        replicates=params.replicates,
    )

    clock = Stopwatch()
    archive = evolve(fitness, params.ga, bounds(params.kind, s.horizon_years), jobs=jobs)
    clock.lap("evolve_s")
    logger.info("optimization finished with %d front points", len(archive.pareto))

    with staged_output(out_dir) as stage:
        outputs = write_archive(archive, stage, MARKET_OBJECTIVES, params.kind)
        manifest = write_manifest(
            stage,
            CommandName.OPTIMIZE,
            params,
            seed=params.ga.seed,
            outputs=outputs,
            scenario_checksum=checksum,
            jobs=jobs,
            timings=clock.timings,
        )
    return archive, manifest


def render_front(archive: FrontArchive, kind: PolicyKind) -> Table:
    table = Table(title=f"Final front ({kind} policy)")
    table.add_column("#", justify="right")
    table.add_column("objective_price", justify="right")
    table.add_column("objective_rci", justify="right")
    table.add_column("genome")
    ordered = sorted(archive.pareto, key=lambda individual: individual.objectives or ())
    for index, individual in enumerate(ordered):
        price, rci = individual.objectives or (float("nan"), float("nan"))
        genome = ", ".join(f"{gene:.1f}" for gene in individual.genome)
        table.add_row(str(index), f"{price:.4f}", f"{rci:.4f}", genome)
    return table


@click.command(name=CommandName.OPTIMIZE)
@scenario_option
@click.option("--kind", type=click.Choice([kind.value for kind in PolicyKind]), required=True)
@ga_options(MutationKind.PER_GENE)
@click.option(
    "--replicates",
    type=click.IntRange(min=1),
    default=1,
    show_default=True,
    help="Simulations averaged per fitness evaluation.",
)
@jobs_option
@out_option
def optimize(scenario: str, kind: str, replicates: int, jobs: int, out_dir: Path | None, **ga: object) -> None:
    """Search carbon tax trajectories minimizing final-year price and relative carbon intensity."""
    policy_kind = PolicyKind(kind)
    scenario_path = resolved_scenario(scenario)
    horizon = load_scenario(scenario_path).horizon_years
    params = OptimizeParams(
        scenario=scenario_path,
        kind=policy_kind,
        ga=build_ga_config(len(bounds(policy_kind, horizon)), **ga),
        replicates=replicates,
    )
    archive, _ = run_optimize(params, out_dir or default_out_dir(CommandName.OPTIMIZE), jobs=jobs)
    STDOUT.print(render_front(archive, policy_kind))
