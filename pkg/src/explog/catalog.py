"""Structure families: connected counts, normalizers and statistic scalings.

Each family is a labeled exp-log structure.  A family is fully described,
for the purposes of the count engine, by its connected counts ``c_k`` (the
number of ``k``-node objects with exactly one component).  Square
permutations are listed for completeness but cannot be driven by ``c_k``
alone; only the brute-force oracle handles them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from .errors import UnknownStructureError, UnsupportedStructureError

__all__ = [
    "Normalizer",
    "StructureSpec",
    "STRUCTURES",
    "get_structure",
    "connected_count",
    "connected_counts",
    "connected_ratio",
    "normalizer",
    "scaling_divisors",
]


class Normalizer(str, Enum):
    ROW_SUM = "sum-of-row"
    SHIFTED_FACTORIAL = "explicit-(n+1)-factorial"


@dataclass(frozen=True)
class StructureSpec:
    """A named structure family.

    ``a`` is the exp-log parameter as an exact rational, or ``None`` when it
    is unknown (square permutations).
    """

    name: str
    a: Fraction | None
    normalizer: Normalizer
    recursion_supported: bool
    description: str = ""

    def __str__(self) -> str:
        return self.name


_HALF = Fraction(1, 2)

STRUCTURES: dict[str, StructureSpec] = {
    s.name: s
    for s in (
        StructureSpec("rounds", Fraction(1), Normalizer.ROW_SUM, True,
                      "children's rounds (a directed ring plus one child inside)"),
        StructureSpec("rounds-variant", Fraction(1), Normalizer.ROW_SUM, True,
                      "children's rounds whose outer ring holds at least two children"),
        StructureSpec("colored-perms", Fraction(2), Normalizer.SHIFTED_FACTORIAL, True,
                      "permutations with each cycle given one of two colors"),
        StructureSpec("colored-derangements", Fraction(2), Normalizer.ROW_SUM, True,
                      "two-colored permutations without fixed points"),
        StructureSpec("colored-mappings", Fraction(3, 2), Normalizer.ROW_SUM, True,
                      "mappings with each component given one of three colors"),
        StructureSpec("ev-perms", _HALF, Normalizer.ROW_SUM, True,
                      "permutations with all cycle lengths even"),
        StructureSpec("od-perms", _HALF, Normalizer.ROW_SUM, True,
                      "permutations with all cycle lengths odd"),
        StructureSpec("square-perms", None, Normalizer.ROW_SUM, False,
                      "permutations p = q^2"),
    )
}


def get_structure(name: str | StructureSpec) -> StructureSpec:
    if isinstance(name, StructureSpec):
        return name
    try:
        return STRUCTURES[name]
    except KeyError:
        known = ", ".join(STRUCTURES)
        raise UnknownStructureError(f"unknown structure {name!r} (expected one of: {known})") from None


def _require_recursive(spec: StructureSpec) -> None:
    if not spec.recursion_supported:
        raise UnsupportedStructureError(
            f"{spec.name}: connected counts do not determine the component tables; "
            "use the brute-force oracle"
        )


@lru_cache(maxsize=None)
def _mapping_connected(k: int) -> int:
    # Uncolored connected mappings: sum_{i<k} k^i (k-1)!/i!, by Horner in i.
    acc = mpz(1)
    power = mpz(1)
    for m in range(1, k):
        power *= k
        acc = acc * m + power
    return int(acc)


def _connected_exact(name: str, k: int) -> int:
    f = math.factorial
    if name == "rounds":
        return 0 if k < 2 else f(k - 1) + f(k - 2)
    if name == "rounds-variant":
        return 0 if k < 3 else f(k - 1) + f(k - 2)
    if name == "colored-perms":
        return 2 * f(k - 1)
    if name == "colored-derangements":
        return 0 if k < 2 else 2 * f(k - 1)
    if name == "colored-mappings":
        return 3 * _mapping_connected(k)
    if name == "ev-perms":
        return f(k - 1) if k % 2 == 0 else 0
    if name == "od-perms":
        return f(k - 1) if k % 2 == 1 else 0
    raise UnsupportedStructureError(name)


def connected_count(spec: StructureSpec | str, k: int) -> int:
    """Number of connected ``k``-node objects, ``c_k``, as an exact integer."""
    spec = get_structure(spec)
    _require_recursive(spec)
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    return _connected_exact(spec.name, k)


def connected_counts(spec: StructureSpec | str, N: int) -> list[int]:
    """``[0, c_1, ..., c_N]``; index 0 is a placeholder."""
    spec = get_structure(spec)
    _require_recursive(spec)
    if spec.name == "colored-mappings":
        return [0] + [3 * _mapping_connected(k) for k in range(1, N + 1)]
    return [0] + [_connected_exact(spec.name, k) for k in range(1, N + 1)]


def connected_ratio(spec: StructureSpec | str, k: int, precision: int = 192) -> mpfr:
    """``c_k / k!`` rounded to ``precision`` bits.

    Colored mappings use a guarded floating sum so that large ``k`` does not
    require the exact count; every other family is rounded from the exact
    rational.
    """
    spec = get_structure(spec)
    _require_recursive(spec)
    if k < 1:
        raise ValueError("k must be positive")
    if spec.name != "colored-mappings":
        return mpfr(mpq(_connected_exact(spec.name, k), math.factorial(k)), precision)
    with gmpy2.context(gmpy2.get_context(), precision=precision + 64):
        term = mpfr(1)
        total = mpfr(1)
        for i in range(1, k):
            term = term * k / i
            total += term
        value = 3 * total / k
    return mpfr(value, precision)


def normalizer(spec: StructureSpec | str, n: int, row_sum: int):
    """Total object count used to turn a count row into probabilities.

    Colored permutations are normalized by ``(n+1)!``; every other family
    by the row sum itself.  An all-zero row (EV permutations at odd ``n``)
    gets the guard value 1 so callers never divide by zero; the statistics
    layer reports such rows as undefined.
    """
    spec = get_structure(spec)
    if spec.normalizer is Normalizer.SHIFTED_FACTORIAL:
        return math.factorial(n + 1)
    if row_sum == 0:
        return 1
    return row_sum


def scaling_divisors(spec: StructureSpec | str, statistic: str, n: int):
    """Divisors ``(mean, variance, median)`` used in the scaled table columns.

    Values are ``mpfr`` at the current context precision; the median divisor
    is ``None`` for the smallest-component statistic.
    """
    spec = get_structure(spec)
    if spec.a is None:
        raise UnsupportedStructureError(f"{spec.name}: exp-log parameter is unknown")
    if n < 1:
        raise ValueError("n must be positive")
    statistic = statistic.upper()
    nn = mpfr(n)
    if statistic == "L":
        return nn, nn * nn, nn
    if statistic != "S":
        raise ValueError(f"statistic must be 'L' or 'S', got {statistic!r}")
    a = spec.a
    log_n = gmpy2.log(nn)
    if a == _HALF:
        return gmpy2.sqrt(nn), nn * gmpy2.sqrt(nn), None
    if a == 1:
        return log_n, nn, None
    if a == Fraction(3, 2):
        return mpfr(1), gmpy2.sqrt(nn), None
    if a == 2:
        return mpfr(1), log_n, None
    raise UnsupportedStructureError(f"no scaling rule for a = {a}")
