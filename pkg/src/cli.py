"""
Command-line front-end.

    python -m src.cli ranks --n-max 4 --d-max 3 --format csv
    python -m src.cli hilbert --n 0 --spec max-edges:3 --d-max 8
    python -m src.cli verify --only wdvv
    python -m src.cli pullback-ranks --pairs "(3,1),(2,0)" --m-max 6

Standard output carries only the result; logs and progress bars go to
standard error. Exit codes: 0 success, 2 configuration error, 3 failed
verification, 1 any other domain error.
"""

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from src import __version__
from src.core import ChowException, RegistryException, SubstackException, ValidationException
from src.core.config import override_settings
from src.core.logging import configure_logging
from src.schemas import CommandConfig, OutputFormat, Subcommand
from src.services import HilbertService, PullbackService, RankService, VerificationService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_VERIFY_FAILED = 3


def _dump_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv_rows(header: Sequence[Any], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def cmd_ranks(config: CommandConfig) -> str:
    """Rank grid with one row per degree and one column per n."""
    service = RankService(threads=config.threads)
    table = service.rank_table(config.n_max, config.d_max, config.spec, config.n_min, config.d_min)
    if config.format == OutputFormat.CSV:
        return service.table_csv(table, config.n_min, config.d_min)
    if config.format == OutputFormat.JSON:
        return _dump_json(
            {"spec": config.spec, "n_min": config.n_min, "d_min": config.d_min, "ranks": table}
        )
    return service.table_text(table, config.n_min, config.d_min)


def cmd_hilbert(config: CommandConfig) -> str:
    """Hilbert coefficients of the named substack."""
    values = HilbertService().coefficients(config.n, config.spec, config.d_max)
    if config.format == OutputFormat.CSV:
        return _csv_rows(["d", "rank"], list(enumerate(values)))
    if config.format == OutputFormat.JSON:
        return _dump_json({"n": config.n, "spec": config.spec, "coefficients": values})
    return " ".join(str(x) for x in values) + "\n"


def cmd_verify(config: CommandConfig) -> Tuple[str, bool]:
    """Run the identity suite; returns the report and whether everything passed."""
    service = VerificationService()
    results = service.run(config.only)
    summary = service.summary(results)
    if config.format == OutputFormat.CSV:
        rows = [(r.name, r.passed, r.cases, ";".join(r.failures)) for r in results]
        text = _csv_rows(["name", "passed", "cases", "failures"], rows)
    elif config.format == OutputFormat.JSON:
        text = _dump_json(summary)
    else:
        lines = [
            f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.cases} cases)"
            + ("" if r.passed else ": " + "; ".join(r.failures))
            for r in results
        ]
        text = "\n".join(lines) + "\n"
    return text, summary["passed"]


def cmd_pullback_ranks(config: CommandConfig) -> str:
    """Image ranks of the forgetful-chart pullbacks over the requested grid."""
    service = PullbackService(threads=config.threads)
    rows = service.table(config.pairs, config.m_max)
    if config.format == OutputFormat.CSV:
        return service.table_csv(rows)
    if config.format == OutputFormat.JSON:
        return _dump_json(rows)
    return service.table_text(rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prestable-chow", description="Chow rings of genus-0 prestable curve stacks")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.TEXT.value)
    parser.add_argument("--threads", type=int, default=None, help="worker upper bound")
    parser.add_argument("--out", default=None, help="write the result to this file instead of stdout")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ...")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    ranks = sub.add_parser(Subcommand.RANKS.value, help="Chow rank grid")
    ranks.add_argument("--n-min", type=int, default=0)
    ranks.add_argument("--n-max", type=int, default=4)
    ranks.add_argument("--d-min", type=int, default=0)
    ranks.add_argument("--d-max", type=int, default=3)
    ranks.add_argument("--spec", default="all")

    hilbert = sub.add_parser(Subcommand.HILBERT.value, help="Hilbert coefficients of a substack")
    hilbert.add_argument("--n", type=int, default=0)
    hilbert.add_argument("--spec", default="all", help="all, max-edges:E, stable, chains, oesinghaus")
    hilbert.add_argument("--d-max", type=int, default=8)

    verify = sub.add_parser(Subcommand.VERIFY.value, help="run the identity checks")
    verify.add_argument("--only", action="append", default=None, metavar="NAME")

    pullback = sub.add_parser(Subcommand.PULLBACK_RANKS.value, help="forgetful pullback image ranks")
    pullback.add_argument("--pairs", required=True, help='e.g. "(3,1),(2,0)"')
    pullback.add_argument("--m-max", type=int, default=6)
    return parser


def config_from_args(args: argparse.Namespace) -> CommandConfig:
    """
    Build a validated CommandConfig from parsed arguments.

    Raises:
        ValidationError: If the values are inconsistent.
    """
    fields = {
        "subcommand": args.subcommand,
        "format": args.format,
        "threads": args.threads,
        "out": args.out,
    }
    for name in ("n_min", "n_max", "d_min", "d_max", "n", "spec", "pairs", "m_max", "only"):
        value = getattr(args, name, None)
        if value is not None:
            fields[name] = value
    return CommandConfig(**fields)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI.

    Returns:
        The process exit code.
    """
    args = build_parser().parse_args(argv)
    try:
        override_settings(threads=args.threads, log_level=args.log_level)
    except ValidationError as e:
        sys.stderr.write(f"invalid settings: {e}\n")
        return EXIT_CONFIG
    configure_logging()

    try:
        config = config_from_args(args)
    except ValidationError as e:
        sys.stderr.write(f"invalid configuration: {e}\n")
        return EXIT_CONFIG

    try:
        if config.subcommand == Subcommand.VERIFY:
            text, passed = cmd_verify(config)
            _emit(text, config.out)
            return EXIT_OK if passed else EXIT_VERIFY_FAILED
        handlers = {
            Subcommand.RANKS: cmd_ranks,
            Subcommand.HILBERT: cmd_hilbert,
            Subcommand.PULLBACK_RANKS: cmd_pullback_ranks,
        }
        _emit(handlers[config.subcommand](config), config.out)
        return EXIT_OK
    except (RegistryException, SubstackException, ValidationException) as e:
        sys.stderr.write(f"{e}\n")
        return EXIT_CONFIG
    except ChowException as e:
        logger.error("computation failed: %s", e)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
