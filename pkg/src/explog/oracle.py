"""Brute-force component tables for small n, independent of the recursions.

Objects are grouped by their multiset of component sizes.  A size profile
``k^(m_k)`` accounts for ``n! prod_k (c_k/k!)^(m_k) / m_k!`` objects, all
with the same largest and smallest component, so summing over integer
partitions of ``n`` gives both rows directly.  Square permutations are
handled by filtering cycle types, and cross-checked by squaring every
permutation of a small set.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterator

from .catalog import StructureSpec, connected_count, get_structure
from .errors import ResourceLimitError, UnsupportedStructureError

__all__ = [
    "CycleType",
    "OracleRow",
    "partitions",
    "oracle_rows",
    "is_square_type",
    "square_rows",
    "square_count_by_squaring",
    "format_braces",
    "ORACLE_MAX_N",
    "SQUARE_MAX_N",
    "SQUARING_MAX_N",
]

ORACLE_MAX_N = 9
SQUARE_MAX_N = 12
SQUARING_MAX_N = 7


@dataclass(frozen=True)
class CycleType:
    """Multiset of part sizes, stored in descending order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive")
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))


@dataclass(frozen=True)
class OracleRow:
    statistic: str
    structure: str
    n: int
    values: tuple[int, ...]  # k = 1..n


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Integer partitions of ``n`` as descending tuples, in descending lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _profile_count(parts: tuple[int, ...], weight) -> int:
    """``n! prod (weight(k)/k!)^m / m!`` as an exact integer."""
    n = sum(parts)
    total = Fraction(math.factorial(n))
    for k, m in Counter(parts).items():
        total *= Fraction(weight(k), math.factorial(k)) ** m / math.factorial(m)
    if total.denominator != 1:
        raise ArithmeticError(f"non-integral count for profile {parts}")
    return total.numerator


def _rows_from_profiles(n: int, profiles) -> tuple[list[int], list[int]]:
    largest = [0] * n
    smallest = [0] * n
    for parts, count in profiles:
        if count:
            largest[parts[0] - 1] += count
            smallest[parts[-1] - 1] += count
    return largest, smallest


def oracle_rows(spec: StructureSpec | str, n: int) -> tuple[OracleRow, OracleRow]:
    """Exact ``L`` and ``S`` rows for ``n <= 9`` by summing over size profiles."""
    spec = get_structure(spec)
    if not spec.recursion_supported:
        raise UnsupportedStructureError(f"{spec.name}: use square_rows")
    if n < 1:
        raise ValueError("n must be positive")
    if n > ORACLE_MAX_N:
        raise ResourceLimitError(f"oracle rows are limited to n <= {ORACLE_MAX_N}")
    c = {k: connected_count(spec, k) for k in range(1, n + 1)}
    profiles = ((p, _profile_count(p, c.__getitem__)) for p in partitions(n))
    largest, smallest = _rows_from_profiles(n, profiles)
    return (OracleRow("L", spec.name, n, tuple(largest)),
            OracleRow("S", spec.name, n, tuple(smallest)))


def is_square_type(t: CycleType | tuple[int, ...]) -> bool:
    """A permutation is a square iff every even cycle length occurs an even number of times."""
    parts = t.parts if isinstance(t, CycleType) else tuple(t)
    return all(m % 2 == 0 for length, m in Counter(parts).items() if length % 2 == 0)


def square_rows(n: int) -> tuple[OracleRow, OracleRow]:
    """``L`` and ``S`` rows of square permutations, ``n <= 12``."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > SQUARE_MAX_N:
        raise ResourceLimitError(f"square rows are limited to n <= {SQUARE_MAX_N}")
    # Cycles of length k: c_k = (k-1)!.
    profiles = ((p, _profile_count(p, lambda k: math.factorial(k - 1)))
                for p in partitions(n) if is_square_type(p))
    largest, smallest = _rows_from_profiles(n, profiles)
    return (OracleRow("L", "square-perms", n, tuple(largest)),
            OracleRow("S", "square-perms", n, tuple(smallest)))


def square_count_by_squaring(n: int) -> int:
    """Number of distinct ``q o q`` over all permutations ``q`` of ``n`` points."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > SQUARING_MAX_N:
        raise ResourceLimitError(f"explicit squaring is limited to n <= {SQUARING_MAX_N}")
    return len({tuple(q[i] for i in q) for q in permutations(range(n))})


def format_braces(row: OracleRow, trim: bool = True) -> str:
    """``{v1,v2,...}``; trailing zeros dropped when ``trim`` (as in printed lists)."""
    values = list(row.values)
    if trim:
        while len(values) > 1 and values[-1] == 0:
            values.pop()
    return "{" + ",".join(str(v) for v in values) + "}"
