"""CSV and JSON writers for command outputs.

Every file of a run is written into a staging directory under ``out_dir`` first and moved into place
only once the whole set exists, so a failed run leaves earlier outputs untouched.
"""

from __future__ import annotations

import logging
import math
import os
import shutil
import tempfile
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import msgspec
import pandas as pd

from exceptions import ManifestError, ParetoFileError
from models import PolicyKind
from schema.commands import RunManifest
from schema.market import SimulationResult
from schema.optimizer import FrontArchive, ParetoFile, ParetoPoint
from utils.analysis import energy_shares

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
PARETO_NAME = "pareto.json"
GENERATIONS_NAME = "generations.csv"

MARKET_OBJECTIVES = ("objective_price", "objective_rci")


@contextmanager
def staged_output(out_dir: Path) -> Iterator[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=".staging-", dir=out_dir))
    try:
        yield staging
        for item in sorted(staging.iterdir()):
            os.replace(item, out_dir / item.name)
            logger.info("wrote %s", out_dir / item.name)
    finally:
        shutil.rmtree(staging, ignore_errors=True)


def write_json(obj: Any, path: Path) -> Path:
    path.write_bytes(msgspec.json.format(msgspec.json.encode(obj), indent=2) + b"\n")
    return path


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def years_frame(result: SimulationResult) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "year": year.year,
                "carbon_price": year.carbon_price,
                "average_price": year.average_price,
                "emissions_t": year.emissions_t,
                "served_mwh": year.served_mwh,
                "unserved_mwh": year.unserved_mwh,
                "carbon_intensity": year.carbon_intensity,
            }
            for year in result.per_year
        ],
    )


def objectives_frame(result: SimulationResult) -> pd.DataFrame:
    return pd.DataFrame([{"objective_price": result.objective_price, "objective_rci": result.objective_rci}])


def events_frame(result: SimulationResult) -> pd.DataFrame:
    columns = ["year", "kind", "genco", "technology", "plant_id", "unit_count", "npv", "capital"]
    return pd.DataFrame([msgspec.structs.asdict(event) for event in result.events], columns=columns)


def write_simulation(result: SimulationResult, out_dir: Path) -> list[str]:
    write_csv(energy_shares(result), out_dir / "per_year.csv")
    write_csv(years_frame(result), out_dir / "years.csv")
    write_csv(objectives_frame(result), out_dir / "objectives.csv")
    write_csv(events_frame(result), out_dir / "events.csv")
    return ["per_year.csv", "years.csv", "objectives.csv", "events.csv"]


def generations_frame(archive: FrontArchive, objective_names: Sequence[str]) -> pd.DataFrame:
    rows = []
    for snapshot in archive.snapshots:
        for index, genome in enumerate(snapshot.genomes):
            row: dict[str, float | int] = {"generation": snapshot.generation, "individual": index}
            row.update({f"gene_{gene + 1}": value for gene, value in enumerate(genome)})
            row.update(dict(zip(objective_names, snapshot.objectives[index], strict=True)))
            row["rank"] = snapshot.ranks[index]
            row["crowding"] = snapshot.crowding[index]
            rows.append(row)
    return pd.DataFrame(rows)


def pareto_file(
    archive: FrontArchive,
    objective_names: Sequence[str],
    policy_kind: PolicyKind | None = None,
) -> ParetoFile:
    """Final first front; infinite crowding distances become ``null``."""
    points = tuple(
        ParetoPoint(
            genome=individual.genome,
            objectives=individual.objectives or (),
            crowding=individual.crowding if math.isfinite(individual.crowding) else None,
        )
        for individual in archive.pareto
    )
    return ParetoFile(objective_names=tuple(objective_names), points=points, policy_kind=policy_kind)


def write_archive(
    archive: FrontArchive,
    out_dir: Path,
    objective_names: Sequence[str],
    policy_kind: PolicyKind | None = None,
) -> list[str]:
    write_csv(generations_frame(archive, objective_names), out_dir / GENERATIONS_NAME)
    write_json(pareto_file(archive, objective_names, policy_kind), out_dir / PARETO_NAME)
    return [GENERATIONS_NAME, PARETO_NAME]


def read_pareto(path: Path) -> ParetoFile:
    try:
        return msgspec.json.decode(path.read_bytes(), type=ParetoFile)
    except OSError as exc:
        raise ParetoFileError(f"cannot read pareto file {path}: {exc}") from exc
    except msgspec.DecodeError as exc:
        raise ParetoFileError(f"{path}: {exc}") from exc


def read_manifest(path: Path) -> RunManifest:
    try:
        return msgspec.json.decode(path.read_bytes(), type=RunManifest)
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    except msgspec.DecodeError as exc:
        raise ManifestError(f"{path}: {exc}") from exc
