from __future__ import annotations

import logging
import os
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import click
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler
from rich.text import Text

from exceptions import CarbonOptError

load_dotenv()

ROOT_DIR = Path(__file__).resolve().parent


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {value!r}") from None


try:
    VERSION = version("carbon-opt")
except PackageNotFoundError:
    VERSION = "0.1.0"

# paths
OUT_DIR = Path(os.environ.get("CARBON_OPT_OUT_DIR", "results"))
SCENARIO_DIR = Path(os.environ.get("CARBON_OPT_SCENARIO_DIR", str(ROOT_DIR / "scenarios")))
SCENARIO_SUFFIX = ".scenario"

# workers
DEFAULT_JOBS = _env_int("CARBON_OPT_JOBS", os.cpu_count() or 1)

# genetic algorithm
DEFAULT_POPULATION = 100
DEFAULT_GENERATIONS = 20
DEFAULT_CROSSOVER_PROBABILITY = 0.9
DEFAULT_MUTATION_PROBABILITY = 0.05
DEFAULT_ETA_C = 15.0
DEFAULT_ETA_M = 20.0

# carbon policy
DEFAULT_HORIZON = 18
TAX_CEILING = 250.0
SLOPE_LIMIT = 14.0

# logging
LOG_LEVEL = os.environ.get("CARBON_OPT_LOG_LEVEL", "INFO").upper()

STDOUT = Console()
STDERR = Console(stderr=True)


def configure_logging(level: str = LOG_LEVEL) -> None:
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=STDERR, show_path=False)],
        force=True,
    )


# exception handler
def exception_handler(exc: Exception) -> int:
    if isinstance(exc, click.ClickException):
        exit_code = 1
        detail = exc.format_message()
    else:
        exit_code = getattr(exc, "exit_code", 2) if isinstance(exc, CarbonOptError) else 2
        detail = str(exc) or type(exc).__name__

    STDERR.print(Text.assemble(("error: ", "bold red"), detail), highlight=False)
    return exit_code
