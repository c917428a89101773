import math
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from explog.errors import ResourceLimitError, UnsupportedStructureError
from explog.oracle import (
    CycleType,
    format_braces,
    is_square_type,
    oracle_rows,
    partitions,
    square_count_by_squaring,
    square_rows,
)


def test_partitions():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    # p(n) for n = 1..12.
    assert [sum(1 for _ in partitions(n)) for n in range(1, 13)] == [
        1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77,
    ]


def test_cycle_type():
    t = CycleType((1, 3, 2, 3))
    assert t.parts == (3, 3, 2, 1)
    assert t.n == 9
    assert t.multiplicities == {3: 2, 2: 1, 1: 1}
    with pytest.raises(ValueError):
        CycleType((2, 0))


def test_square_type_rule():
    assert is_square_type((3, 1))
    assert is_square_type((2, 2))
    assert not is_square_type((4,))
    assert not is_square_type((2, 1))
    assert is_square_type(CycleType((4, 4, 3)))


@given(st.lists(st.integers(min_value=1, max_value=8), max_size=8),
       st.lists(st.integers(min_value=0, max_value=3).map(lambda i: 2 * i + 1), max_size=5))
def test_odd_cycles_never_change_squareness(parts, odd):
    assert is_square_type(tuple(parts)) == is_square_type(tuple(parts) + tuple(odd))


def _cycle_lengths(perm):
    seen, lengths = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        length, i = 0, start
        while i not in seen:
            seen.add(i)
            i = perm[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


@pytest.mark.parametrize("n", range(1, 7))
def test_square_rows_by_enumeration(n):
    squares = {tuple(q[i] for i in q) for q in permutations(range(n))}
    largest, smallest = [0] * n, [0] * n
    for p in squares:
        lengths = _cycle_lengths(p)
        assert is_square_type(lengths)
        largest[lengths[0] - 1] += 1
        smallest[lengths[-1] - 1] += 1
    got_l, got_s = square_rows(n)
    assert got_l.values == tuple(largest)
    assert got_s.values == tuple(smallest)


def test_square_counts_agree():
    for n in range(1, 8):
        assert sum(square_rows(n)[0].values) == square_count_by_squaring(n)
    assert [square_count_by_squaring(n) for n in range(1, 8)] == [1, 1, 3, 12, 60, 270, 1890]


def test_square_row_four_has_no_four_cycle():
    largest, smallest = square_rows(4)
    assert largest.values == (1, 3, 8, 0)
    assert smallest.values == (9, 3, 0, 0)
    assert format_braces(smallest) == "{9,3}"
    assert format_braces(smallest, trim=False) == "{9,3,0,0}"


def test_oracle_rows_rounds():
    largest, smallest = oracle_rows("rounds", 6)
    assert largest.values == (0, 120, 90, 240, 0, 144)
    assert smallest.values == (0, 360, 90, 0, 0, 144)
    assert largest.statistic == "L" and smallest.structure == "rounds"


def test_oracle_rows_sum_to_total():
    # Colored permutations: (n+1)! objects.
    for n in range(1, 8):
        largest, smallest = oracle_rows("colored-perms", n)
        assert sum(largest.values) == sum(smallest.values) == math.factorial(n + 1)


def test_limits():
    with pytest.raises(ResourceLimitError):
        oracle_rows("rounds", 10)
    with pytest.raises(ResourceLimitError):
        square_rows(13)
    with pytest.raises(ResourceLimitError):
        square_count_by_squaring(8)
    with pytest.raises(UnsupportedStructureError):
        oracle_rows("square-perms", 4)
    with pytest.raises(ValueError):
        oracle_rows("rounds", 0)
