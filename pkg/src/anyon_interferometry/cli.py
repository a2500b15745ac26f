"""Command-line driver for the interferometry experiments.

Exit status is 0 when every check passes, 1 when some check fails and 2
when the flags are invalid or an input file cannot be used.
"""

from __future__ import annotations

import argparse
import contextvars
import logging
import sys
import typing as typ
from concurrent.futures import ThreadPoolExecutor

from .cli_config import (
    BASES,
    DEFAULT_LAMBDA,
    DEFAULT_N_MAX,
    EXPERIMENT_NAMES,
    LAYERS,
    LOG_LEVELS,
    VALID_CONFIG_KWARGS,
    ExperimentConfig,
)
from .cli_experiments import COMMANDS
from .cli_report import render_table, summarize, write_jsonl
from .log_context import (
    configure_logging,
    default_run_id_generator,
    experiment_scope,
    run_id_var,
)
from .optics_cnot import CNOT_MODELS

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from .cli_report import ReportRecord

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED_CHECKS = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser for ``anyon-interferometry``."""
    parser = argparse.ArgumentParser(
        prog="anyon-interferometry",
        description="Run S3 quantum-double interferometry checks.",
    )
    parser.add_argument(
        "--experiment", choices=(*EXPERIMENT_NAMES, "all"), default="all"
    )
    parser.add_argument("--layer", choices=LAYERS, default="abstract")
    parser.add_argument(
        "--element", default=None, help="e, t0, t1, t2, c+, c- or all"
    )
    parser.add_argument("--vertex", default="v1")
    parser.add_argument("--basis", choices=BASES, default="x")
    parser.add_argument("--lambda", dest="strength", type=float, default=DEFAULT_LAMBDA)
    parser.add_argument("--nmax", dest="n_max", type=int, default=DEFAULT_N_MAX)
    parser.add_argument("--circuit", default=None, help="circuit description JSON")
    parser.add_argument("--tolerance", type=float, default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", dest="output", default=None, help="JSON-lines report")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--run-id", default=None)
    parser.add_argument("--cnot-model", choices=tuple(CNOT_MODELS), default="logical")
    parser.add_argument(
        "--log-level", type=str.upper, choices=LOG_LEVELS, default="WARNING"
    )
    return parser


def _run_one(name: str, config: ExperimentConfig) -> list[ReportRecord]:
    with experiment_scope(name):
        logger.info("experiment started")
        records = COMMANDS[name](config)
        logger.info("experiment finished", extra={"checks": len(records)})
        return records


def run_experiments(config: ExperimentConfig) -> list[ReportRecord]:
    """Run the configured experiments and return their records in order.

    With ``jobs > 1`` the experiments run on a thread pool; each worker gets
    a copy of the caller's context so the run identifier reaches its logs.
    """
    names = config.experiments
    if config.jobs == 1 or len(names) == 1:
        batches = [_run_one(name, config) for name in names]
    else:
        with ThreadPoolExecutor(max_workers=config.jobs) as executor:
            futures = [
                executor.submit(contextvars.copy_context().run, _run_one, name, config)
                for name in names
            ]
            batches = [future.result() for future in futures]
    return [record for batch in batches for record in batch]


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    options = vars(args)
    unknown_keys = set(options) - VALID_CONFIG_KWARGS
    if unknown_keys:
        msg = f"Unknown keyword arguments: {', '.join(sorted(unknown_keys))}"
        raise TypeError(msg)
    return ExperimentConfig.from_kwargs(**options)


def main(argv: cabc.Sequence[str] | None = None) -> int:
    """Parse flags, run the experiments and print the report table.

    Parameters
    ----------
    argv : Sequence[str] | None
        Arguments without the program name; ``sys.argv`` when ``None``.

    Returns
    -------
    int
        The process exit status.

    """
    args = build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
    except ValueError as err:
        print(f"anyon-interferometry: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    handler = configure_logging(config.log_level)
    token = run_id_var.set(config.run_id or default_run_id_generator())
    try:
        records = run_experiments(config)
    except (OSError, ValueError) as err:
        print(f"anyon-interferometry: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        run_id_var.reset(token)
        logging.getLogger("anyon_interferometry").removeHandler(handler)
    print(render_table(records))
    print(summarize(records))
    if config.output is not None:
        write_jsonl(records, config.output)
    return EXIT_OK if all(record.passed for record in records) else EXIT_FAILED_CHECKS


if __name__ == "__main__":
    raise SystemExit(main())
