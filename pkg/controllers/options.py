"""Options and helpers shared by the commands."""

from __future__ import annotations

import time
from collections.abc import Callable
from pathlib import Path
from typing import Any

import click

from config import (
    DEFAULT_CROSSOVER_PROBABILITY,
    DEFAULT_ETA_C,
    DEFAULT_ETA_M,
    DEFAULT_GENERATIONS,
    DEFAULT_JOBS,
    DEFAULT_MUTATION_PROBABILITY,
    DEFAULT_POPULATION,
    OUT_DIR,
    VERSION,
)
from models import CommandName, MutationKind
from schema.commands import CommandParams, RunManifest
from schema.optimizer import GAConfig
from utils.export import MANIFEST_NAME, write_json
from utils.scenario import resolve_scenario_path

Decorator = Callable[[Callable[..., Any]], Callable[..., Any]]


def default_out_dir(command: CommandName) -> Path:
    return OUT_DIR / command


def scenario_option(func: Callable[..., Any]) -> Callable[..., Any]:
    return click.option(
        "--scenario",
        required=True,
        help="Scenario file, or the name of a bundled scenario (e.g. uk_synthetic).",
    )(func)


def out_option(func: Callable[..., Any]) -> Callable[..., Any]:
    return click.option(
        "--out",
        "out_dir",
        type=click.Path(file_okay=False, path_type=Path),
        default=None,
        help="Output directory (default: $CARBON_OPT_OUT_DIR/<command>).",
    )(func)


def jobs_option(func: Callable[..., Any]) -> Callable[..., Any]:
    return click.option(
        "--jobs",
        type=click.IntRange(min=1),
        default=DEFAULT_JOBS,
        show_default=True,
        help="Worker processes for fitness evaluation.",
    )(func)


def ga_options(mutation_default: MutationKind) -> Decorator:
    """``--pop/--gens/--crossover-prob/--mutation-prob/--eta-c/--eta-m/--mutation/--seed``."""
    options = [
        click.option("--pop", "population_size", type=int, default=DEFAULT_POPULATION, show_default=True),
        click.option("--gens", "generations", type=int, default=DEFAULT_GENERATIONS, show_default=True),
        click.option(
            "--crossover-prob",
            "crossover_probability",
            type=float,
            default=DEFAULT_CROSSOVER_PROBABILITY,
            show_default=True,
        ),
        click.option(
            "--mutation-prob",
            "mutation_probability",
            type=float,
            default=None,
            help="Per-gene mutation probability (default 0.05, or 1/n for polynomial mutation).",
        ),
        click.option("--eta-c", type=float, default=DEFAULT_ETA_C, show_default=True),
        click.option("--eta-m", type=float, default=DEFAULT_ETA_M, show_default=True),
        click.option(
            "--mutation",
            "mutation_kind",
            type=click.Choice([kind.value for kind in MutationKind]),
            default=mutation_default.value,
            show_default=True,
        ),
        click.option("--seed", type=int, default=0, show_default=True),
    ]

    def decorate(func: Callable[..., Any]) -> Callable[..., Any]:
        for option in reversed(options):
            func = option(func)
        return func

    return decorate


def build_ga_config(genes: int, **options: Any) -> GAConfig:
    if options.get("mutation_probability") is None:
        polynomial = options["mutation_kind"] == MutationKind.POLYNOMIAL
        options["mutation_probability"] = 1.0 / genes if polynomial else DEFAULT_MUTATION_PROBABILITY
    options["mutation_kind"] = MutationKind(options["mutation_kind"])
    try:
        return GAConfig(**options)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


def resolved_scenario(name_or_path: str) -> str:
    return str(resolve_scenario_path(name_or_path).resolve())


class Stopwatch:
    def __init__(self) -> None:
        self.started = time.perf_counter()
        self.timings: dict[str, float] = {}

    def lap(self, name: str) -> None:
        self.timings[name] = round(time.perf_counter() - self.started, 6)


def write_manifest(
    out_dir: Path,
    command: CommandName,
    params: CommandParams,
    *,
    seed: int,
    outputs: list[str],
    scenario_checksum: str | None = None,
    jobs: int = 1,
    timings: dict[str, float] | None = None,
) -> RunManifest:
    manifest = RunManifest(
        command=command,
        params=params,
        seed=seed,
        version=VERSION,
        scenario_checksum=scenario_checksum,
        jobs=jobs,
        timings=timings or {},
        outputs=(*outputs, MANIFEST_NAME),
    )
    write_json(manifest, out_dir / MANIFEST_NAME)
    return manifest
