from __future__ import annotations

import logging
from pathlib import Path

import click

from config import STDOUT
from controllers.options import Stopwatch, build_ga_config, ga_options, jobs_option, write_manifest
from exceptions import ThresholdExceededError
from models import BenchmarkProblem, CommandName, MutationKind
from schema.commands import BenchmarkParams
from schema.optimizer import FrontArchive
from utils.benchmarks import generational_distance, get_problem
from utils.export import staged_output, write_archive
from utils.nsga2 import evolve

logger = logging.getLogger(__name__)

BENCHMARK_OBJECTIVES = ("f1", "f2")


def run_benchmark(params: BenchmarkParams, out_dir: Path | None = None, *, jobs: int = 1) -> tuple[float, FrontArchive]:
    """Evolve on an analytic problem and measure the distance of the final front to the true one.

    Outputs are written only when ``out_dir`` is given.
    """
    problem = get_problem(params.problem)
    clock = Stopwatch()
    archive = evolve(problem.fitness, params.ga, problem.bounds, jobs=jobs)
    clock.lap("evolve_s")
    front = [individual.objectives for individual in archive.pareto]
    distance = generational_distance(front, problem.reference_front())

    if out_dir is not None:
        with staged_output(out_dir) as stage:
            outputs = write_archive(archive, stage, BENCHMARK_OBJECTIVES)
            write_manifest(
                stage,
                CommandName.BENCHMARK,
                params,
                seed=params.ga.seed,
                outputs=outputs,
                jobs=jobs,
                timings=clock.timings,
            )

    return distance, archive


def check_threshold(params: BenchmarkParams, distance: float) -> None:
    if params.fail_above is not None and distance > params.fail_above:
        raise ThresholdExceededError(
            f"{params.problem} generational distance {distance:.6g} exceeds {params.fail_above:g}",
        )


@click.command(name=CommandName.BENCHMARK)
@click.option("--problem", type=click.Choice([problem.value for problem in BenchmarkProblem]), required=True)
@ga_options(MutationKind.POLYNOMIAL)
@click.option("--fail-above", type=float, default=None, help="Exit nonzero when the distance exceeds this value.")
@jobs_option
@click.option(
    "--out",
    "out_dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Also export generations.csv, pareto.json and a manifest here.",
)
def benchmark(problem: str, fail_above: float | None, jobs: int, out_dir: Path | None, **ga: object) -> None:
    """Validate the optimizer on an analytic problem (generational distance to the true front)."""
    selected = BenchmarkProblem(problem)
    params = BenchmarkParams(
        problem=selected,
        ga=build_ga_config(len(get_problem(selected).bounds), **ga),
        fail_above=fail_above,
    )
    distance, _ = run_benchmark(params, out_dir, jobs=jobs)
    STDOUT.print(f"{selected} generational distance: {distance:.6g}", highlight=False)
    check_threshold(params, distance)
