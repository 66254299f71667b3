from __future__ import annotations

import sys
from collections.abc import Sequence

import click

from config import LOG_LEVEL, VERSION, configure_logging, exception_handler
from controllers.benchmark import benchmark
from controllers.mix import mix
from controllers.optimize import optimize
from controllers.replay import replay
from controllers.simulate import simulate


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(VERSION, prog_name="carbon-opt")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=LOG_LEVEL,
    show_default=True,
)
def app(log_level: str) -> None:
    """Agent-based electricity market simulator with an NSGA-II carbon tax optimizer."""
    configure_logging(log_level.upper())


app.add_command(simulate)
app.add_command(optimize)
app.add_command(benchmark)
app.add_command(mix)
app.add_command(replay)


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit status: 0 success, 1 invalid input, 2 runtime failure."""
    try:
        result = app.main(args=list(argv) if argv is not None else None, prog_name="carbon-opt", standalone_mode=False)
    except Exception as exc:  # noqa: BLE001
        return exception_handler(exc)
    return result if isinstance(result, int) else 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
