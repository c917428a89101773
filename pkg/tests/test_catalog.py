import math
from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr, mpq

from explog.catalog import (
    STRUCTURES,
    Normalizer,
    connected_count,
    connected_counts,
    connected_ratio,
    get_structure,
    normalizer,
    scaling_divisors,
)
from explog.errors import UnknownStructureError, UnsupportedStructureError


def test_catalog_names_and_parameters():
    assert list(STRUCTURES) == [
        "rounds", "rounds-variant", "colored-perms", "colored-derangements",
        "colored-mappings", "ev-perms", "od-perms", "square-perms",
    ]
    a = {name: spec.a for name, spec in STRUCTURES.items()}
    assert a["rounds"] == a["rounds-variant"] == 1
    assert a["colored-perms"] == a["colored-derangements"] == 2
    assert a["colored-mappings"] == Fraction(3, 2)
    assert a["ev-perms"] == a["od-perms"] == Fraction(1, 2)
    assert a["square-perms"] is None
    assert not STRUCTURES["square-perms"].recursion_supported


def test_unknown_structure():
    with pytest.raises(UnknownStructureError, match="expected one of"):
        get_structure("necklaces")
    # Still a KeyError for callers that treat the catalog as a mapping.
    with pytest.raises(KeyError):
        get_structure("necklaces")


@pytest.mark.parametrize("name,first", [
    ("rounds", [0, 2, 3, 8, 30, 144]),
    ("rounds-variant", [0, 0, 3, 8, 30, 144]),
    ("colored-perms", [2, 2, 4, 12, 48, 240]),
    ("colored-derangements", [0, 2, 4, 12, 48, 240]),
    ("colored-mappings", [3, 9, 51, 426, 4707, 64728]),
    ("ev-perms", [0, 1, 0, 6, 0, 120]),
    ("od-perms", [1, 0, 2, 0, 24, 0]),
])
def test_connected_counts(name, first):
    assert [connected_count(name, k) for k in range(1, 7)] == first
    assert connected_counts(name, 6) == [0] + first


def test_connected_mappings_match_known_sequence():
    # Connected functional graphs on k labeled points.
    known = [1, 3, 17, 142, 1569, 21576, 355081, 6805296]
    assert [connected_count("colored-mappings", k) // 3 for k in range(1, 9)] == known


def test_connected_count_rejects():
    with pytest.raises(UnsupportedStructureError):
        connected_count("square-perms", 3)
    with pytest.raises(ValueError):
        connected_count("rounds", 0)
    with pytest.raises(ValueError):
        connected_count("rounds", True)


@pytest.mark.parametrize("name", ["rounds", "colored-mappings", "od-perms"])
def test_connected_ratio_rounds_exact_value(name):
    for k in (1, 2, 7, 40, 200):
        want = mpfr(mpq(connected_count(name, k), math.factorial(k)), 192)
        got = connected_ratio(name, k, 192)
        assert abs(got - want) <= abs(want) * mpfr(2) ** -190


def test_normalizer_rules():
    assert normalizer("colored-perms", 4, 999) == math.factorial(5)
    assert normalizer("rounds", 4, 26) == 26
    assert normalizer("ev-perms", 3, 0) == 1
    assert STRUCTURES["colored-perms"].normalizer is Normalizer.SHIFTED_FACTORIAL


def test_scaling_divisors():
    with gmpy2.context(gmpy2.get_context(), precision=128):
        n = mpfr(10000)
        assert scaling_divisors("rounds", "L", 10000) == (n, n * n, n)
        assert scaling_divisors("rounds", "S", 10000) == (gmpy2.log(n), n, None)
        assert scaling_divisors("colored-perms", "S", 10000) == (1, gmpy2.log(n), None)
        assert scaling_divisors("colored-mappings", "S", 10000) == (1, 100, None)
        assert scaling_divisors("od-perms", "S", 10000) == (100, 10 ** 6, None)
    with pytest.raises(UnsupportedStructureError):
        scaling_divisors("square-perms", "L", 5)
    with pytest.raises(ValueError):
        scaling_divisors("rounds", "X", 5)
