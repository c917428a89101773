"""Command-line front end: ``explog {stats,constants,oracle,dump}``.

Every subcommand writes its report to standard output.  Failures print one
``explog: error: ...`` line to standard error and exit with a code that
identifies the failure class (see ``EXIT_CODES``).

Set ``EXPLOG_WORKERS`` to a number above one to compute independent tables
in separate processes.  Results are always assembled in input order, so the
output does not depend on the worker count.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence, TextIO

from .catalog import STRUCTURES, get_structure
from .constants import limit_summary
from .engine import DEFAULT_PRECISION, build_table
from .errors import (
    ExplogError,
    QuadratureError,
    ResourceLimitError,
    UnknownStructureError,
    UnsupportedStructureError,
)
from .oracle import format_braces, oracle_rows, square_rows
from .stats import CONVENTIONS, EXACT_THRESHOLD, format_cells, headers, render, resolve_mode, table_series

__all__ = ["RunConfig", "run", "main", "parse_n_values", "EXIT_CODES"]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_UNKNOWN_STRUCTURE = 3
EXIT_RESOURCE = 4
EXIT_QUADRATURE = 5
EXIT_UNSUPPORTED = 6

EXIT_CODES = {
    "ok": EXIT_OK,
    "error": EXIT_ERROR,
    "usage": EXIT_USAGE,
    "unknown-structure": EXIT_UNKNOWN_STRUCTURE,
    "resource-limit": EXIT_RESOURCE,
    "quadrature-failure": EXIT_QUADRATURE,
    "unsupported-structure": EXIT_UNSUPPORTED,
}

MIN_TOLERANCE = 1e-14
MIN_PRECISION = 64
WORKERS_ENV = "EXPLOG_WORKERS"


@dataclass
class RunConfig:
    subcommand: str
    structure: str | None = None
    statistic: str = "both"
    n_values: list[int] = field(default_factory=list)
    mode: str = "auto"
    precision_bits: int | None = None
    tolerance: float = 1e-12
    format: str = "text"
    convention: str = "tabulated"
    exact_threshold: int = EXACT_THRESHOLD

    def validate(self) -> None:
        if self.subcommand not in ("stats", "constants", "oracle", "dump"):
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        if self.precision_bits is not None and self.precision_bits < MIN_PRECISION:
            raise ValueError(f"--precision-bits must be at least {MIN_PRECISION}")
        if not self.tolerance >= MIN_TOLERANCE:
            raise ValueError(f"--tol must be at least {MIN_TOLERANCE:g}")
        if self.subcommand != "constants":
            if self.structure is None:
                raise ValueError(f"{self.subcommand} needs a structure")
            if not self.n_values:
                raise ValueError(f"{self.subcommand} needs --n")
        if any(n < 1 for n in self.n_values):
            raise ValueError("n values must be positive")


def parse_n_values(text: str) -> list[int]:
    """``"1000"``, ``"999,1000"`` or ``"1000:4000:1000"`` (inclusive), mixed freely.

    The result is sorted with duplicates removed.
    """
    values: set[int] = set()
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" in item:
            parts = [int(p) for p in item.split(":")]
            if len(parts) == 2:
                parts.append(1)
            if len(parts) != 3 or parts[2] < 1:
                raise ValueError(f"bad range {item!r}; use start:stop[:step]")
            start, stop, step = parts
            values.update(range(start, stop + 1, step))
        else:
            values.add(int(item))
    if not values:
        raise ValueError(f"no n values in {text!r}")
    return sorted(values)


def _n_argument(text: str) -> list[int]:
    try:
        return parse_n_values(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def _map_ordered(fn: Callable, jobs: list) -> list:
    workers = min(_worker_count(), len(jobs))
    if workers <= 1:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def _series_job(job):
    structure, statistic, n_values, mode, precision, threshold = job
    return table_series(structure, statistic, n_values, mode,
                        precision=precision, exact_threshold=threshold)


def _constants_job(job):
    structure, tol, precision = job
    return structure, limit_summary(structure, tol, precision)


def _run_stats(cfg: RunConfig, out: TextIO, err: TextIO) -> None:
    spec = get_structure(cfg.structure)
    if not spec.recursion_supported:
        raise UnsupportedStructureError(f"{spec.name}: no recursion; use the oracle subcommand")
    n_values = cfg.n_values
    if spec.name == "ev-perms":
        odd = [n for n in n_values if n % 2]
        if odd:
            print(f"explog: note: ev-perms has no objects at odd n; skipped {','.join(map(str, odd))}",
                  file=err)
        n_values = [n for n in n_values if n % 2 == 0]
        if not n_values:
            return
    statistics = ("L", "S") if cfg.statistic == "both" else (cfg.statistic,)
    precision = cfg.precision_bits or DEFAULT_PRECISION
    jobs = [(spec.name, s, n_values, cfg.mode, precision, cfg.exact_threshold) for s in statistics]
    series = _map_ordered(_series_job, jobs)
    rows = []
    for i, n in enumerate(n_values):
        cols = (n,) + tuple(c for s in series for c in s[i].columns(cfg.convention))
        rows.append(format_cells(cols, cfg.statistic))
    out.write(render(headers(cfg.statistic), rows, cfg.format))


def _run_constants(cfg: RunConfig, out: TextIO, err: TextIO) -> None:
    if cfg.structure is not None:
        names = [get_structure(cfg.structure).name]
    else:
        names = [name for name, spec in STRUCTURES.items() if spec.a is not None]
    precision = cfg.precision_bits or 128
    results = _map_ordered(_constants_job, [(name, cfg.tolerance, precision) for name in names])
    if cfg.format == "text":
        for i, (name, items) in enumerate(results):
            if len(results) > 1:
                out.write(("\n" if i else "") + f"# {name}\n")
            for item in items:
                out.write(item.format(20) + "\n")
        return
    header = ["structure", "quantity", "name", "value", "error_estimate", "method"]
    rows = [[name, c.quantity, c.name, c.digits(20), f"{float(c.error_estimate):.1e}", c.method]
            for name, items in results for c in items]
    out.write(render(header, rows, cfg.format))


def _run_oracle(cfg: RunConfig, out: TextIO, err: TextIO) -> None:
    spec = get_structure(cfg.structure)
    for n in cfg.n_values:
        largest, smallest = square_rows(n) if not spec.recursion_supported else oracle_rows(spec, n)
        prefix = f"n={n}  " if len(cfg.n_values) > 1 else ""
        out.write(f"{prefix}L: {format_braces(largest)}  S: {format_braces(smallest)}\n")


def _run_dump(cfg: RunConfig, out: TextIO, err: TextIO) -> None:
    spec = get_structure(cfg.structure)
    if not spec.recursion_supported:
        raise UnsupportedStructureError(f"{spec.name}: no recursion; use the oracle subcommand")
    statistics = ("L", "S") if cfg.statistic == "both" else (cfg.statistic,)
    N = cfg.n_values[-1]
    mode = resolve_mode(cfg.mode, N, cfg.exact_threshold)
    precision = cfg.precision_bits or DEFAULT_PRECISION
    out.write("statistic,structure,n,k,value\n")
    for statistic in statistics:
        table = build_table(spec, statistic, N, mode, precision=precision, rows=cfg.n_values)
        for line in table.dump_lines():
            out.write(line + "\n")


_HANDLERS = {
    "stats": _run_stats,
    "constants": _run_constants,
    "oracle": _run_oracle,
    "dump": _run_dump,
}


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, UnknownStructureError):
        return EXIT_UNKNOWN_STRUCTURE
    if isinstance(exc, (ResourceLimitError, MemoryError)):
        return EXIT_RESOURCE
    if isinstance(exc, QuadratureError):
        return EXIT_QUADRATURE
    if isinstance(exc, UnsupportedStructureError):
        return EXIT_UNSUPPORTED
    return EXIT_ERROR


def run(config: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Execute ``config``; returns the process exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        config.validate()
        _HANDLERS[config.subcommand](config, out, err)
    except (ExplogError, ValueError, MemoryError) as exc:
        message = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"explog: error: {message}", file=err)
        return _exit_code(exc)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="explog",
        description="Largest and smallest component statistics of exp-log labeled structures.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    structures = ", ".join(STRUCTURES)

    def common(p, needs_n: bool):
        p.add_argument("structure_pos", nargs="?", metavar="STRUCTURE", help=f"one of: {structures}")
        p.add_argument("--structure", help="same as the positional STRUCTURE")
        if needs_n:
            p.add_argument("--n", dest="n_values", type=_n_argument, required=True,
                           help="n values: 1000 | 999,1000 | 1000:4000:1000 (inclusive)")
        p.add_argument("--precision-bits", type=int, help=f"working precision, at least {MIN_PRECISION}")
        p.add_argument("--format", choices=("text", "csv", "markdown"), default="text")

    def counting(p):
        p.add_argument("--stat", dest="statistic", choices=("L", "S", "both"), default="both")
        p.add_argument("--mode", choices=("exact", "normalized", "auto"), default="auto")
        p.add_argument("--exact-threshold", type=int, default=EXACT_THRESHOLD,
                       help="largest n computed exactly in auto mode (default %(default)s)")

    p = sub.add_parser("stats", help="finite-n summary statistics, one row per n")
    common(p, True)
    counting(p)
    p.add_argument("--convention", choices=CONVENTIONS, default="tabulated",
                   help="tabulated: exceedance median and raw S second moment; standard: median and variance")

    p = sub.add_parser("constants", help="limiting constants to 20 significant digits")
    common(p, False)
    p.add_argument("--tol", dest="tolerance", type=float, default=1e-12,
                   help=f"quadrature tolerance, at least {MIN_TOLERANCE:g}")

    p = sub.add_parser("oracle", help="brute-force L and S rows for small n")
    common(p, True)

    p = sub.add_parser("dump", help="raw count table rows as CSV")
    common(p, True)
    counting(p)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    values = vars(args).copy()
    positional = values.pop("structure_pos", None)
    flag = values.pop("structure", None)
    if positional and flag and positional != flag:
        raise ValueError(f"conflicting structures {positional!r} and {flag!r}")
    return RunConfig(structure=positional or flag, **values)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
    except ValueError as exc:
        parser.exit(EXIT_USAGE, f"explog: error: {exc}\n")
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
