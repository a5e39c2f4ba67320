"""Command-line front end for ladscore.

Commands:
- fit       LAD coefficients, objective, basis and residuals
- scores    leave-one-out L and O scores
- diagnose  leverage and outlier detection (optionally with the round trace)
- compare   classical cut-offs next to the LAD-score detectors
- simulate  write a generated dataset as CSV

Results go to standard output, diagnostics to standard error. Exit status:
0 success, 1 usage error, 2 data error, 3 numerical failure.
"""

from io import StringIO
from typing import Literal, Optional, Union
import argparse
import logging
import sys

from pydantic import BaseModel, ValidationError, model_validator

from . import __version__
from .config import config
from .data import BUNDLED_NAMES, GENERATOR_NAMES, DatasetSource, bundled, generate, save_csv
from .errors import LadError, UsageError
from .models import Dataset
from .reporting import ComparisonBlock, render_comparison, render_diagnosis, render_fit, render_scores
from .services.classical import OutlierRule, classical_flags
from .services.detectors import detect_leverage, detect_outliers
from .services.lad import fit_lad
from .services.scores import compute_scores, score_summary

logger = logging.getLogger(__name__)

COMMANDS = ("fit", "scores", "diagnose", "compare", "simulate")


class RunConfig(BaseModel):
    """One CLI invocation."""
    command: Literal["fit", "scores", "diagnose", "compare", "simulate"]
    source: Optional[DatasetSource] = None
    output_format: Literal["table", "csv", "json"] = "table"
    outlier_rule: OutlierRule = OutlierRule.TWO_SIDED
    trace: bool = False
    threads: Union[int, Literal["auto"]] = 1
    output: Optional[str] = None
    all_datasets: bool = False
    seed: Optional[int] = None
    progress: bool = False

    @model_validator(mode="after")
    def _check_source(self) -> "RunConfig":
        if self.all_datasets and self.command != "compare":
            raise ValueError("--all is only valid with the compare command")
        if self.source is None and not self.all_datasets:
            raise ValueError("a data source is required: --data, --bundled or --generate")
        if self.command == "simulate" and (self.source is None or self.source.kind != "generated"):
            raise ValueError("simulate needs --generate <name> --seed <n>")
        return self


def configure_logging(level: str) -> None:
    """Log to stderr in the house format."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=config.logging.format,
        stream=sys.stderr,
    )


def _comparison(name: str, data: Dataset, cfg: RunConfig) -> ComparisonBlock:
    logger.info(f"Comparing methods on {name}")
    return ComparisonBlock(
        dataset=name,
        classical=classical_flags(data, cfg.outlier_rule),
        leverage=detect_leverage(data, threads=cfg.threads),
        outliers=detect_outliers(data, threads=cfg.threads),
    )


def _all_comparisons(cfg: RunConfig) -> list[ComparisonBlock]:
    seed = cfg.seed if cfg.seed is not None else config.simulation.default_seed
    blocks = [_comparison(name, bundled(name), cfg) for name in BUNDLED_NAMES]
    blocks += [_comparison(name, generate(name, seed), cfg) for name in GENERATOR_NAMES]
    return blocks


def execute(cfg: RunConfig) -> str:
    """Run one command and return its rendered output."""
    fmt = cfg.output_format
    precision = config.output.precision

    if cfg.command == "compare" and cfg.all_datasets:
        return render_comparison(_all_comparisons(cfg), fmt, cfg.outlier_rule.value)

    data = cfg.source.load()
    logger.info(f"Running {cfg.command} on {data.name or 'dataset'} (n={data.n}, p={data.p})")

    if cfg.command == "fit":
        return render_fit(data, fit_lad(data), fmt, precision)

    if cfg.command == "scores":
        table = compute_scores(data, threads=cfg.threads, progress=cfg.progress)
        return render_scores(data, table, score_summary(table), fmt)

    if cfg.command == "diagnose":
        leverage = detect_leverage(data, threads=cfg.threads)
        outliers = detect_outliers(data, threads=cfg.threads)
        return render_diagnosis(data, leverage, outliers, fmt, trace=cfg.trace)

    if cfg.command == "compare":
        block = _comparison(data.name or cfg.source.name, data, cfg)
        return render_comparison([block], fmt, cfg.outlier_rule.value)

    # simulate
    if cfg.output:
        save_csv(data, cfg.output)
        logger.info(f"Wrote {data.name} (seed {cfg.source.seed}) to {cfg.output}")
        return ""
    buffer = StringIO()
    save_csv(data, buffer)
    return buffer.getvalue().rstrip("\n")


def run(cfg: RunConfig) -> int:
    """Execute a command, print its result and return the exit status."""
    try:
        text = execute(cfg)
    except LadError as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    if text:
        sys.stdout.write(text + "\n")
    return 0


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with status 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(UsageError.exit_code, f"{self.prog}: error: {message}\n")


def _threads_arg(value: str) -> Union[int, str]:
    if value == "auto":
        return value
    try:
        count = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'auto', got {value!r}") from None
    if count < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'auto', got {value!r}")
    return count


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ladscore", description="LAD regression and leave-one-out influence diagnostics")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=COMMANDS, help="What to run")

    source = parser.add_mutually_exclusive_group()
    source.add_argument("--data", metavar="PATH", help="CSV file with a header row")
    source.add_argument("--bundled", metavar="NAME", help=f"Bundled dataset ({', '.join(BUNDLED_NAMES)})")
    source.add_argument("--generate", metavar="NAME", help=f"Simulated dataset ({', '.join(GENERATOR_NAMES)})")
    parser.add_argument("--seed", type=int, help="Seed for --generate (unsigned 64-bit)")
    parser.add_argument("--response", help="Response column name or 0-based index (default: last column)")
    parser.add_argument("--delimiter", default=",", help="CSV field separator")
    parser.add_argument("--all", dest="all_datasets", action="store_true",
                        help="compare: run every dataset of the comparison table")

    parser.add_argument("--format", dest="output_format", choices=("table", "csv", "json"),
                        default=config.output.format, help="Output format")
    parser.add_argument("--outlier-rule", choices=("one", "two"), default=config.output.outlier_rule,
                        help="Studentized residual rule: one-sided (> 2) or two-sided (|r| > 2)")
    parser.add_argument("--trace", action="store_true", help="diagnose: print the per-round audit log")
    parser.add_argument("--threads", type=_threads_arg, default=config.compute.threads,
                        help="Worker threads for subset fits (positive integer or 'auto')")
    parser.add_argument("--out", dest="output", metavar="PATH", help="simulate: write the CSV here")
    parser.add_argument("--progress", action="store_true", default=config.compute.progress,
                        help="Show progress bars on stderr")
    parser.add_argument("--log-level", default=config.logging.level, help="Logging level for stderr diagnostics")
    return parser


def _source_from_args(args: argparse.Namespace) -> Optional[DatasetSource]:
    if args.data:
        return DatasetSource(kind="csv-file", name=args.data, response_column=args.response, delimiter=args.delimiter)
    if args.bundled:
        return DatasetSource(kind="bundled", name=args.bundled)
    if args.generate:
        return DatasetSource(kind="generated", name=args.generate, seed=args.seed)
    return None


def main(argv: Optional[list[str]] = None) -> int:
    """Parse arguments, run the command and return the exit status."""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)

    try:
        cfg = RunConfig(
            command=args.command,
            source=_source_from_args(args),
            output_format=args.output_format,
            outlier_rule=args.outlier_rule,
            trace=args.trace,
            threads=args.threads,
            output=args.output,
            all_datasets=args.all_datasets,
            seed=args.seed,
            progress=args.progress,
        )
    except ValidationError as e:
        message = "; ".join(err["msg"] for err in e.errors())
        print(f"error: {message}", file=sys.stderr)
        return UsageError.exit_code

    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
