from fractions import Fraction
from itertools import product
from math import isqrt

import pytest
from hypothesis import given, strategies as st

from ratembed.errors import DomainError
from ratembed.exact_arith import (
    QVec,
    decompose_four_squares,
    decompose_three_squares,
    factorize,
    format_rational,
    is_sum_three_squares,
    parse_rational,
    rational_squares,
    square_free_part,
    squared_dist,
    three_square_obstruction,
)


def brute_three_square_set(limit):
    reps = set()
    top = isqrt(limit)
    for x in range(top + 1):
        for y in range(x + 1):
            for z in range(y + 1):
                k = x * x + y * y + z * z
                if k <= limit:
                    reps.add(k)
    return reps


def brute_four_squares(k):
    top = isqrt(k)
    for a in range(top, -1, -1):
        for b in range(a, -1, -1):
            for c in range(b, -1, -1):
                rest = k - a * a - b * b - c * c
                if rest < 0:
                    continue
                d = isqrt(rest)
                if d * d == rest and d <= c:
                    return a, b, c, d
    return None


def has_repeated_prime(n):
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return True
        p += 1
    return False


@pytest.mark.parametrize(
    "q, expected",
    [(8, (2, Fraction(2))), (1, (1, Fraction(1))), (Fraction(9, 2), (2, Fraction(3, 2)))],
)
def test_square_free_part_examples(q, expected):
    assert square_free_part(q) == expected


def test_square_free_part_substitution():
    s, f = square_free_part(Fraction(9, 2))
    assert s * f * f == Fraction(9, 2)


@pytest.mark.parametrize("bad", [0, -3, Fraction(-1, 2)])
def test_square_free_part_rejects_non_positive(bad):
    with pytest.raises(DomainError):
        square_free_part(bad)


@given(st.integers(1, 10**6), st.integers(1, 10**4))
def test_square_free_part_round_trip(p, q):
    r = Fraction(p, q)
    s, f = square_free_part(r)
    assert s * f * f == r
    assert f > 0
    assert not has_repeated_prime(s)


@given(st.integers(1, 10**7))
def test_factorize_multiplies_back(n):
    prod = 1
    for p, e in factorize(n).items():
        prod *= p**e
    assert prod == n


def test_three_square_examples():
    assert not is_sum_three_squares(7)
    assert is_sum_three_squares(0)
    assert not is_sum_three_squares(28)
    assert three_square_obstruction(28) == (1, 0)


def test_three_square_condition_matches_enumeration_small():
    reps = brute_three_square_set(2000)
    assert {k for k in range(2001) if is_sum_three_squares(k)} == reps


@pytest.mark.parametrize("k, expected", [(6, (1, 1, 2)), (0, (0, 0, 0))])
def test_decompose_three_squares_examples(k, expected):
    # the search is largest-first, so compare as multisets
    assert sorted(decompose_three_squares(k)) == sorted(expected)


def test_decompose_three_squares_infeasible():
    assert decompose_three_squares(7) is None


@pytest.mark.parametrize("k", [7, 0, 63, 1, 2, 15, 96, 1000])
def test_decompose_four_squares_matches_brute_force(k):
    got = decompose_four_squares(k)
    assert sum(x * x for x in got) == k
    assert got == brute_four_squares(k)


def test_decompose_four_squares_examples():
    assert decompose_four_squares(7) == (2, 1, 1, 1)
    assert decompose_four_squares(0) == (0, 0, 0, 0)
    assert decompose_four_squares(63) == (7, 3, 2, 1)


@given(st.integers(0, 10**9))
def test_four_squares_always_succeeds(k):
    a, b, c, d = decompose_four_squares(k)
    assert a * a + b * b + c * c + d * d == k


@given(st.integers(0, 10**8))
def test_three_squares_identity_or_obstruction(k):
    triple = decompose_three_squares(k)
    if triple is None:
        a, b = three_square_obstruction(k)
        assert 4**a * (8 * b + 7) == k
    else:
        assert sum(x * x for x in triple) == k


@pytest.mark.parametrize("q", [Fraction(7, 9), Fraction(5, 4), Fraction(3), Fraction(1, 6)])
def test_rational_squares_sum_back(q):
    for count in (2, 3, 4):
        parts = rational_squares(q, count)
        if parts is not None:
            assert sum(x * x for x in parts) == q


@given(st.integers(-10**12, 10**12), st.integers(1, 10**12))
def test_rational_string_round_trip(p, q):
    r = Fraction(p, q)
    text = format_rational(r)
    assert parse_rational(text) == r
    assert format_rational(parse_rational(text)) == text
    if r.denominator == 1:
        assert "/" not in text


def test_parse_rational_rejects_garbage():
    for bad in ["", "1/0", "x", "1.5"]:
        with pytest.raises(DomainError):
            parse_rational(bad)


def test_qvec_distances():
    u = QVec.of(1, 2, Fraction(1, 2))
    v = QVec.of(0, 2, Fraction(-1, 2))
    assert squared_dist(u, v) == 2
    assert squared_dist(u, v) == squared_dist(v, u)
    assert squared_dist(u, u) == 0
    with pytest.raises(DomainError):
        u + QVec.of(1, 2)


def test_qvec_rejects_float():
    with pytest.raises(TypeError):
        QVec.of(0.5, 1)


@given(st.lists(st.tuples(st.integers(-50, 50), st.integers(1, 20)), min_size=3, max_size=3))
def test_squared_norm_exact(pairs):
    v = QVec(tuple(Fraction(p, q) for p, q in pairs))
    assert v.squared_norm() == sum(Fraction(p, q) ** 2 for p, q in pairs)
