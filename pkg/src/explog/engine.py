"""Triangular tables of largest/smallest component counts.

``L[k, n]`` (``S[k, n]``) counts the ``n``-objects whose largest (smallest)
component has exactly ``k`` nodes.  Both tables come from the classical
exponential-formula recursions

    L[k, n] = sum_j  n! c_k^j / (j! (k!)^j (n-kj)!) * sum_{i=1..m} L[i, n-kj]
    S[k, n] = sum_j  n! c_k^j / (j! (k!)^j (n-kj)!) * sum_{i=k+1..n-kj} S[i, n-kj]
              + [k | n] n! c_k^(n/k) / ((n/k)! (k!)^(n/k))

with ``m = min(k-1, n-kj)`` and the ``m = 0`` branch summing ``L[0..1, 0]``.

Column ``k`` of ``L`` only reads columns ``< k`` and column ``k`` of ``S``
only reads columns ``> k``.  The tables are therefore filled column by
column while a single running prefix (suffix) vector over ``n`` carries the
inner sums, so each column costs ``O(N^2 / k)`` vectorised multiply-adds
and the working memory is ``O(N)`` besides whatever rows the caller asks to
keep.  The summation order inside every entry is ``j`` ascending.

Two arithmetic modes are offered.  ``exact`` works on big integers.
``normalized`` stores ``L[k, n] / n!`` as binary floats with a fixed
mantissa (192 bits by default, round-to-nearest), which is what makes
``n`` in the thousands cheap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from itertools import accumulate
from types import MappingProxyType
from typing import Iterable, Mapping

import gmpy2
import numpy as np
from gmpy2 import mpfr, mpz

from .catalog import StructureSpec, connected_counts, connected_ratio, get_structure
from .errors import ResourceLimitError, UnsupportedStructureError

__all__ = [
    "Mode",
    "CountTable",
    "build_table",
    "build_largest",
    "build_smallest",
    "normalized_recursion_coefficients",
    "DEFAULT_PRECISION",
]

DEFAULT_PRECISION = 192

# Rough per-cell overhead of a retained Python object, in bytes.
_CELL_OVERHEAD = 48


class Mode(str, Enum):
    EXACT = "exact"
    NORMALIZED = "normalized"


def _memory_budget() -> int:
    mb = os.environ.get("EXPLOG_MEMORY_BUDGET_MB")
    return int(mb) * 2**20 if mb else 3 * 2**30


@dataclass(frozen=True)
class CountTable:
    """Rows of an ``L`` or ``S`` table.

    ``rows[n]`` holds the values for ``k = 1..n``: Python ints in exact mode,
    ``mpfr`` values of ``L[k, n] / n!`` in normalized mode.  Only the rows
    requested at build time are retained.
    """

    statistic: str
    structure: str
    N: int
    mode: Mode
    precision: int | None
    rows: Mapping[int, tuple] = field(repr=False)

    def __contains__(self, n: int) -> bool:
        return n in self.rows

    @property
    def row_numbers(self) -> tuple[int, ...]:
        return tuple(sorted(self.rows))

    def row(self, n: int) -> tuple:
        try:
            return self.rows[n]
        except KeyError:
            raise KeyError(f"row n={n} was not retained (N={self.N})") from None

    def entry(self, k: int, n: int):
        if not 1 <= k <= n:
            raise IndexError(f"k={k} outside 1..{n}")
        return self.row(n)[k - 1]

    def prefix_sums(self, n: int) -> tuple:
        """Cumulative sums ``sum_{i<=k}`` of row ``n`` for ``k = 1..n``."""
        if self.mode is Mode.NORMALIZED:
            with gmpy2.context(gmpy2.get_context(), precision=self.precision):
                return tuple(accumulate(self.row(n)))
        return tuple(accumulate(self.row(n)))

    def row_sum(self, n: int):
        return self.prefix_sums(n)[-1]

    def dump_lines(self) -> Iterable[str]:
        """One ``statistic,structure,n,k,value`` line per retained entry."""
        for n in self.row_numbers:
            for k, value in enumerate(self.rows[n], start=1):
                if self.mode is Mode.NORMALIZED:
                    text = f"{value:.30g}" if value else "0"
                else:
                    text = str(value)
                yield f"{self.statistic},{self.structure},{n},{k},{text}"


def normalized_recursion_coefficients(spec: StructureSpec | str, k: int,
                                      precision: int = DEFAULT_PRECISION) -> mpfr:
    """``rho_k = c_k / k!``, the per-size weight of the normalized recursion."""
    return connected_ratio(spec, k, precision)


def _resolve_rows(N: int, rows: Iterable[int] | None) -> list[int]:
    if rows is None:
        return list(range(1, N + 1))
    keep = sorted(set(int(n) for n in rows))
    if keep and (keep[0] < 1 or keep[-1] > N):
        raise ValueError(f"retained rows must lie in 1..{N}")
    return keep


def _estimate_bytes(mode: Mode, keep: list[int], counts: list[int] | None, precision: int) -> int:
    if mode is Mode.NORMALIZED:
        per = 64 + precision // 8
        return sum(keep) * per
    total = 0
    for n in keep:
        # Row magnitudes track the largest nearby connected count times n^2.
        big = max(counts[n], counts[n - 1] if n > 1 else 0, 1)
        total += n * (_CELL_OVERHEAD + (big.bit_length() + 2 * n.bit_length()) // 8)
    return total


def _check_budget(spec: StructureSpec, mode: Mode, keep: list[int], counts, precision: int) -> None:
    need = _estimate_bytes(mode, keep, counts, precision)
    budget = _memory_budget()
    if need > budget:
        raise ResourceLimitError(
            f"{spec.name}: retaining {len(keep)} rows in {mode.value} mode needs about "
            f"{need / 2**20:.0f} MiB (budget {budget / 2**20:.0f} MiB); "
            "retain fewer rows or raise EXPLOG_MEMORY_BUDGET_MB"
        )


def _binomial_column(t: int, N: int) -> np.ndarray:
    """``C(n, t)`` for ``n = t..N``."""
    out = np.empty(N + 1 - t, dtype=object)
    x = mpz(1)
    for i in range(N + 1 - t):
        out[i] = x
        x = x * (t + i + 1) // (i + 1)
    return out


def _zeros(N: int, zero) -> np.ndarray:
    return np.full(N + 1, zero, dtype=object)


def _largest_exact(c: list, N: int, keep: list[int]) -> dict[int, list]:
    store = {n: [mpz(0)] * n for n in keep}
    c1 = mpz(c[1])
    # Running prefix over columns 0..k-1; starts with L[0, .] + L[1, .].
    prefix = np.array([c1 ** n for n in range(N + 1)], dtype=object)
    for n in keep:
        store[n][0] = c1 ** n
    for k in range(2, N + 1):
        ck = mpz(c[k])
        if not ck:
            continue
        col = _zeros(N, mpz(0))
        weight = mpz(1)
        for j in range(1, N // k + 1):
            t = k * j
            # weight = (kj)! c_k^j / (j! (k!)^j)
            weight = weight * gmpy2.comb(t - 1, k - 1) * ck
            col[t:] += _binomial_column(t, N) * (weight * prefix[: N + 1 - t])
        prefix[k:] += col[k:]
        for n in keep:
            if n >= k:
                store[n][k - 1] = col[n]
    return store


def _smallest_exact(c: list, N: int, keep: list[int]) -> dict[int, list]:
    store = {n: [mpz(0)] * n for n in keep}
    # Running suffix over columns > k.
    suffix = _zeros(N, mpz(0))
    for k in range(N, 0, -1):
        ck = mpz(c[k])
        if not ck:
            continue
        col = _zeros(N, mpz(0))
        weight = mpz(1)
        for j in range(1, N // k + 1):
            t = k * j
            weight = weight * gmpy2.comb(t - 1, k - 1) * ck
            col[t] += weight  # k divides n: every component has size k
            if t < N:
                col[t + 1:] += _binomial_column(t, N)[1:] * (weight * suffix[1: N + 1 - t])
        suffix[k:] += col[k:]
        for n in keep:
            if n >= k:
                store[n][k - 1] = col[n]
    return store


def _largest_normalized(spec: StructureSpec, N: int, keep: list[int], precision: int) -> dict[int, list]:
    zero = mpfr(0)
    store = {n: [zero] * n for n in keep}
    rho = [None] + [connected_ratio(spec, k, precision) for k in range(1, N + 1)]
    prefix = _zeros(N, zero)
    prefix[0] = mpfr(1)
    term = mpfr(1)
    for n in range(1, N + 1):
        term = term * rho[1] / n  # c_1^n / n!
        prefix[n] = term
    for n in keep:
        store[n][0] = prefix[n]
    for k in range(2, N + 1):
        r = rho[k]
        if not r:
            continue
        col = _zeros(N, zero)
        weight = mpfr(1)
        for j in range(1, N // k + 1):
            t = k * j
            weight = (r / j) * weight  # rho_k^j / j!
            col[t:] += weight * prefix[: N + 1 - t]
        prefix[k:] += col[k:]
        for n in keep:
            if n >= k:
                store[n][k - 1] = col[n]
    return store


def _smallest_normalized(spec: StructureSpec, N: int, keep: list[int], precision: int) -> dict[int, list]:
    zero = mpfr(0)
    store = {n: [zero] * n for n in keep}
    rho = [None] + [connected_ratio(spec, k, precision) for k in range(1, N + 1)]
    suffix = _zeros(N, zero)
    for k in range(N, 0, -1):
        r = rho[k]
        if not r:
            continue
        col = _zeros(N, zero)
        weight = mpfr(1)
        for j in range(1, N // k + 1):
            t = k * j
            weight = (r / j) * weight
            col[t] += weight
            if t < N:
                col[t + 1:] += weight * suffix[1: N + 1 - t]
        suffix[k:] += col[k:]
        for n in keep:
            if n >= k:
                store[n][k - 1] = col[n]
    return store


def build_table(spec: StructureSpec | str, statistic: str, N: int, mode: Mode | str = Mode.EXACT,
                *, precision: int = DEFAULT_PRECISION, rows: Iterable[int] | None = None) -> CountTable:
    """Build the ``L`` or ``S`` table for ``1 <= k <= n <= N``.

    ``rows`` selects which ``n`` rows are kept (all of them by default);
    every row is still computed since later rows depend on earlier ones.
    Raises :class:`ResourceLimitError` when the retained rows would not fit
    the memory budget (``EXPLOG_MEMORY_BUDGET_MB``, default 3 GiB).
    """
    spec = get_structure(spec)
    if not spec.recursion_supported:
        raise UnsupportedStructureError(
            f"{spec.name}: the component recursions need connected counts alone; use the oracle"
        )
    statistic = statistic.upper()
    if statistic not in ("L", "S"):
        raise ValueError(f"statistic must be 'L' or 'S', got {statistic!r}")
    if isinstance(N, bool) or not isinstance(N, int) or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    mode = Mode(mode)
    keep = _resolve_rows(N, rows)

    if mode is Mode.EXACT:
        counts = connected_counts(spec, N)
        _check_budget(spec, mode, keep, counts, precision)
        store = (_largest_exact if statistic == "L" else _smallest_exact)(counts, N, keep)
        frozen = {n: tuple(int(v) for v in store[n]) for n in keep}
        prec = None
    else:
        if precision < 64:
            raise ValueError("precision must be at least 64 bits")
        _check_budget(spec, mode, keep, None, precision)
        with gmpy2.context(gmpy2.get_context(), precision=precision, round=gmpy2.RoundToNearest):
            build = _largest_normalized if statistic == "L" else _smallest_normalized
            store = build(spec, N, keep, precision)
        frozen = {n: tuple(store[n]) for n in keep}
        prec = precision
    return CountTable(statistic, spec.name, N, mode, prec, MappingProxyType(frozen))


def build_largest(spec: StructureSpec | str, N: int, mode: Mode | str = Mode.EXACT, **kwargs) -> CountTable:
    return build_table(spec, "L", N, mode, **kwargs)


def build_smallest(spec: StructureSpec | str, N: int, mode: Mode | str = Mode.EXACT, **kwargs) -> CountTable:
    return build_table(spec, "S", N, mode, **kwargs)
