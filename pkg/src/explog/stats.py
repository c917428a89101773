"""Finite-n summary statistics of component-size distributions.

A count row ``{X[k, n] : 1 <= k <= n}`` divided by its normalizer is a
probability mass function.  :func:`summarize` turns one row into mean,
variance, raw second moment and two medians, plus their scaled forms.

Two medians are kept because two conventions are in use:

* ``median`` is the least ``k`` with ``P(X <= k) >= 1/2``;
* ``exceedance_median`` is the largest ``k`` with ``P(X > k) >= 1/2``,
  the discrete form of the limit law ``P(L > n x) = 1/2``.

The ``tabulated`` convention reports ``exceedance_median``.  For the
smallest component it reports the raw second moment over the variance
scaling in place of the variance, which is why that moment is carried too.  The
``standard`` convention reports the median and the variance.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpfr, mpq

from .catalog import Normalizer, StructureSpec, get_structure, normalizer as count_normalizer, scaling_divisors
from .engine import CountTable, DEFAULT_PRECISION, Mode, build_table
from .formatting import format_fixed

__all__ = [
    "SummaryRow",
    "TableRow",
    "summarize",
    "table_series",
    "table_rows",
    "resolve_mode",
    "headers",
    "format_cells",
    "render",
    "to_csv",
    "to_markdown",
    "CONVENTIONS",
    "EXACT_THRESHOLD",
]

EXACT_THRESHOLD = 1000
CONVENTIONS = ("tabulated", "standard")
_SCALE_PRECISION = 128


@dataclass(frozen=True)
class SummaryRow:
    """Statistics of one row.  Undefined rows (no objects) carry ``None``."""

    structure: str
    statistic: str
    n: int
    defined: bool
    mean: Fraction | mpfr | None = None
    variance: Fraction | mpfr | None = None
    second_moment: Fraction | mpfr | None = None
    median: int | None = None
    exceedance_median: int | None = None
    scaled_mean: mpfr | None = None
    scaled_variance: mpfr | None = None
    scaled_second_moment: mpfr | None = None
    scaled_median: Fraction | None = None
    scaled_exceedance_median: Fraction | None = None

    def columns(self, convention: str = "tabulated") -> tuple:
        """The table columns for this statistic: ``L`` has three, ``S`` two.

        ``tabulated`` reports the exceedance median for ``L`` and the scaled raw
        second moment for ``S``; ``standard`` reports median and variance.
        """
        if convention not in CONVENTIONS:
            raise ValueError(f"convention must be one of {CONVENTIONS}")
        width = 3 if self.statistic == "L" else 2
        if not self.defined:
            return (None,) * width
        tabulated = convention == "tabulated"
        if self.statistic == "L":
            median = self.scaled_exceedance_median if tabulated else self.scaled_median
            return (self.scaled_mean, self.scaled_variance, median)
        return (self.scaled_mean, self.scaled_second_moment if tabulated else self.scaled_variance)


def _to_mpfr(value) -> mpfr:
    if isinstance(value, Fraction):
        return mpfr(mpq(value.numerator, value.denominator))
    return mpfr(value)


def _medians_exact(row: Sequence[int], total: int) -> tuple[int, int]:
    cum = 0
    median = None
    exceed = 0
    for k, v in enumerate(row, start=1):
        cum += v
        if 2 * cum <= total:
            exceed = k
        if median is None and 2 * cum >= total:
            median = k
    return median, exceed


def summarize(table: CountTable, n: int, normalizer=None) -> SummaryRow:
    """Statistics of row ``n`` of ``table``.

    ``normalizer`` is the total object count ``b_n`` (or ``(n+1)!`` for
    colored permutations); it defaults to the structure's own rule.  In
    normalized mode a supplied count is divided by ``n!`` to match the
    table's units.
    """
    spec = get_structure(table.structure)
    row = table.row(n)
    statistic = table.statistic
    if table.mode is Mode.EXACT:
        row_sum = sum(row)
        total = count_normalizer(spec, n, row_sum) if normalizer is None else int(normalizer)
        if row_sum == 0:
            return SummaryRow(spec.name, statistic, n, False)
        if total <= 0:
            raise ValueError("normalizer must be positive")
        first = sum(k * v for k, v in enumerate(row, start=1))
        second = sum(k * k * v for k, v in enumerate(row, start=1))
        mean = Fraction(first, total)
        second_moment = Fraction(second, total)
        variance = second_moment - mean * mean
        median, exceed = _medians_exact(row, total)
    else:
        with gmpy2.context(gmpy2.get_context(), precision=table.precision):
            row_sum = sum(row, mpfr(0))
            if row_sum == 0:
                return SummaryRow(spec.name, statistic, n, False)
            if normalizer is not None:
                total = mpfr(mpq(int(normalizer), math.factorial(n)))
            elif spec.normalizer is Normalizer.SHIFTED_FACTORIAL:
                total = mpfr(n + 1)
            else:
                total = row_sum
            first = sum((k * v for k, v in enumerate(row, start=1)), mpfr(0))
            second = sum((k * k * v for k, v in enumerate(row, start=1)), mpfr(0))
            mean = first / total
            second_moment = second / total
            variance = second_moment - mean * mean
            cum = mpfr(0)
            median, exceed = None, 0
            for k, v in enumerate(row, start=1):
                cum += v
                if 2 * cum <= total:
                    exceed = k
                if median is None and 2 * cum >= total:
                    median = k

    prec = max(_SCALE_PRECISION, table.precision or 0)
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        mean_div, var_div, median_div = scaling_divisors(spec, statistic, n)
        scaled_mean = _to_mpfr(mean) / mean_div
        scaled_variance = _to_mpfr(variance) / var_div
        scaled_second = _to_mpfr(second_moment) / var_div
    scaled_median = scaled_exceed = None
    if median_div is not None:
        scaled_median = Fraction(median, n)
        scaled_exceed = Fraction(exceed, n)
    return SummaryRow(spec.name, statistic, n, True, mean, variance, second_moment, median, exceed,
                      scaled_mean, scaled_variance, scaled_second, scaled_median, scaled_exceed)


def resolve_mode(mode: Mode | str, n_max: int, exact_threshold: int = EXACT_THRESHOLD) -> Mode:
    if mode == "auto":
        return Mode.EXACT if n_max <= exact_threshold else Mode.NORMALIZED
    return Mode(mode)


def table_series(spec: StructureSpec | str, statistic: str, n_list: Iterable[int], mode: Mode | str = "auto",
                 *, precision: int = DEFAULT_PRECISION, exact_threshold: int = EXACT_THRESHOLD
                 ) -> list[SummaryRow]:
    """One :class:`SummaryRow` per ``n``, from a single table build up to ``max(n_list)``."""
    n_list = list(n_list)
    if not n_list:
        raise ValueError("n_list is empty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be strictly ascending")
    mode = resolve_mode(mode, n_list[-1], exact_threshold)
    table = build_table(spec, statistic, n_list[-1], mode, precision=precision, rows=n_list)
    return [summarize(table, n) for n in n_list]


@dataclass(frozen=True)
class TableRow:
    """The six table columns for one ``n``."""

    n: int
    largest: SummaryRow
    smallest: SummaryRow

    @property
    def defined(self) -> bool:
        return self.largest.defined and self.smallest.defined

    def columns(self, convention: str = "tabulated") -> tuple:
        return (self.n,) + self.largest.columns(convention) + self.smallest.columns(convention)


def table_rows(spec: StructureSpec | str, n_list: Iterable[int], mode: Mode | str = "auto",
               *, precision: int = DEFAULT_PRECISION, exact_threshold: int = EXACT_THRESHOLD
               ) -> list[TableRow]:
    n_list = list(n_list)
    kw = dict(precision=precision, exact_threshold=exact_threshold)
    largest = table_series(spec, "L", n_list, mode, **kw)
    smallest = table_series(spec, "S", n_list, mode, **kw)
    return [TableRow(n, lg, sm) for n, lg, sm in zip(n_list, largest, smallest)]


_COLUMNS = {
    "L": (("L_mean", 6), ("L_variance", 6), ("L_median", 4)),
    "S": (("S_mean", 6), ("S_variance", 6)),
}


def headers(statistic: str = "both") -> list[str]:
    """Column names for ``L``, ``S`` or ``both``; ``n`` first."""
    stats = ("L", "S") if statistic == "both" else (statistic,)
    return ["n"] + [name for s in stats for name, _ in _COLUMNS[s]]


def format_cells(columns: Sequence, statistic: str = "both") -> list[str]:
    """Render ``(n, ...)`` with 6 decimals for moments and 4 for medians."""
    stats = ("L", "S") if statistic == "both" else (statistic,)
    places = [p for s in stats for _, p in _COLUMNS[s]]
    if len(columns) != len(places) + 1:
        raise ValueError("column count does not match statistic")
    out = [str(columns[0])]
    for value, p in zip(columns[1:], places):
        out.append("undefined" if value is None else format_fixed(value, p))
    return out


def render(header: Sequence[str], rows: Iterable[Sequence[str]], fmt: str = "csv") -> str:
    """Text table: ``csv`` (plain commas), ``text`` (comma and space) or ``markdown``."""
    rows = list(rows)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "text":
        return "".join(", ".join(r) + "\n" for r in [list(header)] + rows)
    if fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def to_csv(rows: Iterable[TableRow], convention: str = "tabulated") -> str:
    return render(headers(), (format_cells(r.columns(convention)) for r in rows), "csv")


def to_markdown(rows: Iterable[TableRow], convention: str = "tabulated") -> str:
    return render(headers(), (format_cells(r.columns(convention)) for r in rows), "markdown")
