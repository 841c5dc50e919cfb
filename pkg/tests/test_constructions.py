from fractions import Fraction
from itertools import combinations

import pytest

from ratembed.constructions import (
    book_conic,
    clique_extension,
    embed_book_sqrt2,
    embed_k133_q5,
    embed_k23_q3,
    plan_k133,
)
from ratembed.distance_graphs import Embedding, schoenberg_c1, verify_embedding
from ratembed.errors import DomainError, Infeasible
from ratembed.exact_arith import QVec, integer_square_free_part, is_square, squared_dist

SQUARE_FREE = [k for k in range(1, 51) if integer_square_free_part(k)[0] == k]


def exact_edges(e: Embedding) -> bool:
    return all(squared_dist(e.coords[u], e.coords[v]) == e.r for u, v in e.graph.edges)


def test_k23_unit():
    e = embed_k23_q3(1)
    assert e.coords["a1"] == QVec.zero(3)
    assert {e.coords[b] for b in ("b1", "b2", "b3")} == {QVec.basis(3, i) for i in range(3)}
    assert e.coords["a2"] == QVec.of(*(Fraction(2, 3),) * 3)
    assert exact_edges(e)


@pytest.mark.parametrize("r", [1, 2, 3, 5, 6, 10, 11, Fraction(1, 2), Fraction(3, 25)])
def test_k23_verifies(r):
    e = embed_k23_q3(r)
    assert e.r == r and len(e.graph.edges) == 6
    assert exact_edges(e)
    assert len(set(e.coords.values())) == 5


@pytest.mark.parametrize("r", [7, 15, 28, Fraction(7, 4), Fraction(1, 7)])
def test_k23_infeasible(r):
    with pytest.raises(Infeasible) as info:
        embed_k23_q3(r)
    assert "(mod 8)" in info.value.witness


def test_k23_rejects_non_positive():
    with pytest.raises(DomainError):
        embed_k23_q3(0)


def test_book_small_cases():
    e2 = embed_book_sqrt2(2)
    assert e2.coords["v1"] == QVec.of(1, 0)
    assert {e2.coords[b] for b in ("b1", "b2", "b3")} == {
        QVec.of(0, 1), QVec.of(0, -1), QVec.of(2, 1)
    }
    e3 = embed_book_sqrt2(3)
    bs = {e3.coords[b] for b in ("b1", "b2", "b3")}
    assert {QVec.of(0, 0, 1), QVec.of(0, 0, -1)} <= bs


def test_book_conic_contains_spec_point():
    t, w = Fraction(4, 3), Fraction(-1, 3)
    assert book_conic(3).evaluate(t, w) == 0
    assert squared_dist(QVec.of(t, t, w), QVec.of(1, 0, 0)) == 2


@pytest.mark.parametrize("n", range(2, 10))
def test_book_verifies(n):
    e = embed_book_sqrt2(n)
    assert e.n == n and exact_edges(e)
    assert len({e.coords[b] for b in ("b1", "b2", "b3")}) == 3
    assert e.graph.part_profile() == (n - 1, 0, 1)


def test_book_rejects_small_n():
    with pytest.raises(DomainError):
        embed_book_sqrt2(1)


def test_k133_plan_examples():
    p = plan_k133(2)
    assert (p.a, p.b, p.r1, p.q, p.k0_squared) == (1, 2, 1, 1, 1)
    p = plan_k133(1)
    assert (p.d, p.a, p.e, p.b) == (3, 9, 5, 11)
    assert (p.r1, p.q, p.k0_squared) == (Fraction(9, 11), Fraction(11, 18), Fraction(25, 36))
    p = plan_k133(7)
    assert (p.d, p.a, p.e, p.b) == (2, 28, 9, 31)
    assert 7 * (p.b - p.a) == 21


@pytest.mark.parametrize("s", SQUARE_FREE)
def test_k133_plan_invariants(s):
    p = plan_k133(s)
    assert p.check() == []
    assert p.a < p.b and 3 * p.a > s
    ratio = Fraction(s * (4 * p.a - p.b), p.a)
    assert is_square(ratio.numerator) and is_square(ratio.denominator)
    if s % 2 == 1:
        assert p.a == s * p.d * p.d
        assert p.e % 2 == 1 and p.e * p.e < 3 * p.a
        assert p.a * p.b - p.a**2 == p.d**2 * s * (p.b - p.a)
        assert s * (p.b - p.a) % 4 in (1, 2)


def test_k133_r2_coordinates():
    e = embed_k133_q5(2)
    assert e.coords["c"] == QVec.zero(5)
    assert e.coords["a1"] == QVec.of(1, 1, 0, 0, 0)
    assert exact_edges(e)


@pytest.mark.parametrize("r", list(range(1, 11)) + [Fraction(1, 2), Fraction(9, 4), Fraction(5, 3)])
def test_k133_verifies(r):
    e = embed_k133_q5(r)
    assert e.r == r and len(e.graph.edges) == 15
    assert exact_edges(e)
    assert len(set(e.coords.values())) == 7
    for name in ("a1", "a2", "a3"):
        assert e.coords[name].coords[4] == 0
    for name in ("b1", "b2", "b3"):
        assert e.coords[name].coords[4] != 0


@pytest.mark.parametrize(
    "builder, r, s, f",
    [
        (embed_k23_q3, 4, 1, 2),
        (embed_k23_q3, 8, 2, 2),
        (embed_k23_q3, Fraction(9, 4), 1, Fraction(3, 2)),
        (embed_k133_q5, 4, 1, 2),
        (embed_k133_q5, 8, 2, 2),
        (embed_k133_q5, Fraction(9, 4), 1, Fraction(3, 2)),
    ],
)
def test_scaling_consistency(builder, r, s, f):
    assert builder(r) == builder(s).scaled(f)


def test_clique_extension_m1_r2():
    e = clique_extension(1, 2)
    assert e.n == 7
    for i in range(4):
        assert e.coords[f"P{i + 1}"] == QVec.basis(7, i)
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    assert e.coords["P"] == QVec.of(quarter, quarter, quarter, quarter, 1, half, 0)
    assert exact_edges(e)


@pytest.mark.parametrize("m, r", [(1, 1), (1, 3), (2, 2), (2, 5), (3, 7), (1, Fraction(2, 9))])
def test_clique_extension_verifies(m, r):
    e = clique_extension(m, r)
    names = e.graph.vertices
    assert len(names) == 4 * m + 1 and e.n == 4 * m + 3
    assert all(squared_dist(e.coords[u], e.coords[v]) == r for u, v in combinations(names, 2))


def test_clique_extension_bound():
    e = clique_extension(1, 2)
    lower = len(e.graph.vertices)
    assert lower == 5
    # largest simplex in Q^7 has 8 vertices; the gap is at most 3
    assert schoenberg_c1(7) == 8
    assert schoenberg_c1(7) - lower <= 3


def test_clique_extension_rejects():
    with pytest.raises(DomainError):
        clique_extension(0, 2)


@pytest.mark.parametrize(
    "e",
    [embed_k23_q3(2), embed_book_sqrt2(4), embed_k133_q5(Fraction(9, 4)), clique_extension(1, 3)],
    ids=["k23", "book", "k133", "clique"],
)
def test_constructions_round_trip(e):
    back = Embedding.from_json(e.to_json())
    assert back == e
    assert verify_embedding(back).ok
