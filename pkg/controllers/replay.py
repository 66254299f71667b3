from __future__ import annotations

import logging
from pathlib import Path

import click

from config import STDOUT
from controllers.benchmark import check_threshold, run_benchmark
from controllers.mix import run_mix
from controllers.optimize import run_optimize
from controllers.options import default_out_dir
from controllers.simulate import run_simulate
from exceptions import ManifestError
from schema.commands import BenchmarkParams, MixParams, OptimizeParams, RunManifest, SimulateParams
from utils.export import read_manifest
from utils.scenario import scenario_checksum

logger = logging.getLogger(__name__)


def verify_inputs(manifest: RunManifest) -> None:
    scenario = getattr(manifest.params, "scenario", None)
    if scenario is None or manifest.scenario_checksum is None:
        return
    path = Path(scenario)
    if not path.is_file():
        raise ManifestError(f"scenario {path} recorded in the manifest no longer exists")
    if scenario_checksum(path) != manifest.scenario_checksum:
        raise ManifestError(f"scenario {path} changed since the recorded run (checksum mismatch)")


def run_replay(manifest: RunManifest, out_dir: Path | None = None, *, jobs: int | None = None) -> Path:
    """Re-run the command a manifest records; returns the directory the outputs went to."""
    verify_inputs(manifest)
    target = out_dir or default_out_dir(manifest.command)
    workers = jobs or manifest.jobs
    logger.info("replaying %s into %s", manifest.command, target)

    match manifest.params:
        case SimulateParams() as params:
            run_simulate(params, target)
        case OptimizeParams() as params:
            run_optimize(params, target, jobs=workers)
        case MixParams() as params:
            run_mix(params, target, jobs=workers)
        case BenchmarkParams() as params:
            distance, _ = run_benchmark(params, target, jobs=workers)
            STDOUT.print(f"{params.problem} generational distance: {distance:.6g}", highlight=False)
            check_threshold(params, distance)
    return target


@click.command(name="replay")
@click.argument("manifest_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=None)
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Override the recorded worker count.")
def replay(manifest_path: Path, out_dir: Path | None, jobs: int | None) -> None:
    """Re-run a recorded command from its manifest.json."""
    target = run_replay(read_manifest(manifest_path), out_dir, jobs=jobs)
    STDOUT.print(f"replayed into {target}", highlight=False)
