"""Exact embeddings of specific graphs into Q^n with all edges at sqrt(r).

Every builder returns an :class:`Embedding` that has already been verified.
Squared distances are first reduced to a square-free integer ``s``
(``r = s·f²``); the construction runs at ``s`` and coordinates are scaled
by ``f`` at the end, so ``build(r) == build(s).scaled(f)`` exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import isqrt

from ratembed.diophantine import Conic2, iter_chord_solutions
from ratembed.distance_graphs import Embedding, Graph, verify_embedding
from ratembed.errors import DomainError, Infeasible
from ratembed.exact_arith import (
    QVec,
    as_rational,
    decompose_three_squares,
    is_sum_three_squares,
    rational_sqrt,
    rational_squares,
    square_free_part,
)
from ratembed.lattice_geom import (
    circumcenter,
    equidistant_affine,
    iter_sphere_points,
    quaternion_orthobasis,
    rational_point_on_sphere,
    realizability_witness,
    scale_sqrt_q,
)


def _checked(e: Embedding) -> Embedding:
    report = verify_embedding(e)
    if not report.edges_ok:
        bad = report.failed_edges[0]
        raise AssertionError(f"construction produced a bad edge {bad.u}-{bad.v}")
    return e


def _positive(r) -> Fraction:
    r = as_rational(r)
    if r <= 0:
        raise DomainError(f"squared distance must be positive, got {r}")
    return r


# --- K_{2,3} in Q^3 -------------------------------------------------------------


def _off_origin_triangle(points: list[QVec]):
    """Circumcenter of (p_i, p_j, p_k) for the newest index k, if usable."""
    k = len(points) - 1
    for i, j in combinations(range(k), 2):
        try:
            c = circumcenter(points[i], points[j], points[k])
        except DomainError:
            continue
        return (points[i], points[j], points[k]), c
    return None


def embed_k23_q3(r) -> Embedding:
    """K_{2,3} in Q^3: one apex at the origin, the other at twice the circumcenter."""
    r = _positive(r)
    s, f = square_free_part(r)
    witness = realizability_witness(3, s)
    if witness is not None:
        raise Infeasible(witness)
    points: list[QVec] = []
    found = None
    for p in iter_sphere_points(3, s):
        points.append(p)
        if len(points) >= 3:
            found = _off_origin_triangle(points)
            if found:
                break
    assert found is not None
    (b1, b2, b3), c = found
    graph = Graph.complete_multipartite([("a1", "a2"), ("b1", "b2", "b3")])
    coords = {"a1": QVec.zero(3), "a2": 2 * c, "b1": b1, "b2": b2, "b3": b3}
    return _checked(Embedding(graph, 3, s, coords).scaled(f))


# --- book graph at sqrt(2) -------------------------------------------------------


def book_conic(n: int) -> Conic2:
    """(n-2)t² + (t-1)² + w² = 2, i.e. (n-1)t² - 2t + w² - 1 = 0."""
    return Conic2(n - 1, 0, 1, -2, 0, -1)


def embed_book_sqrt2(n: int) -> Embedding:
    """n-1 singleton parts at e_1..e_{n-1} plus a 3-part on the line (t,...,t,w)."""
    if n < 2:
        raise DomainError(f"book graph needs n >= 2, got {n}")
    singles = [f"v{i}" for i in range(1, n)]
    coords = {v: QVec.basis(n, i) for i, v in enumerate(singles)}
    sols = iter_chord_solutions(book_conic(n), (Fraction(0), Fraction(1)))
    for name, (t, w) in zip(("b1", "b2", "b3"), sols):
        coords[name] = QVec((t,) * (n - 1) + (w,))
    graph = Graph.complete_multipartite([(v,) for v in singles] + [("b1", "b2", "b3")])
    return _checked(Embedding(graph, n, 2, coords))


# --- K_{1,3,3} in Q^5 -------------------------------------------------------------


@dataclass(frozen=True)
class K133Plan:
    """Parameters of the K_{1,3,3} construction for ``r = square_free · scale²``."""

    r: Fraction
    square_free: int
    scale: Fraction
    a: int
    b: int
    d: int | None = None
    e: int | None = None

    @property
    def r1(self) -> Fraction:
        """Squared norm of the foot point P1."""
        return Fraction(self.a * self.square_free, self.b)

    @property
    def q(self) -> Fraction:
        return Fraction(self.b, 2 * self.a)

    @property
    def k0_squared(self) -> Fraction:
        return Fraction(self.square_free * (4 * self.a - self.b), 4 * self.a)

    def check(self) -> list[str]:
        """Names of violated conditions (empty when the plan is sound)."""
        bad = []
        a, b, s = self.a, self.b, self.square_free
        if not a < b:
            bad.append("a < b")
        if not 3 * a > s:
            bad.append("3a > r'")
        ratio = Fraction(s * (4 * a - b), a)
        if ratio <= 0 or rational_sqrt(ratio) is None:
            bad.append("(i) r'(4a-b)/a is a positive rational square")
        if not is_sum_three_squares(a * b - a * a):
            bad.append("(ii) ab - a² is a sum of three squares")
        return bad


def _largest_odd_below_sqrt(bound: int) -> int:
    """Largest odd e with e² < bound."""
    e = isqrt(bound - 1)
    if e % 2 == 0:
        e -= 1
    return e


def plan_k133(r) -> K133Plan:
    r = _positive(r)
    s, f = square_free_part(r)
    if s % 2 == 0:
        # a: least odd square with 3a > s; 4a - b = s
        root = 1
        while 3 * root * root <= s:
            root += 2
        a = root * root
        return K133Plan(r, s, f, a, 4 * a - s)
    # a = s d², d odd (s ≡ 1) or even (s ≡ 3), least with a > s; 4a - b = e²
    d = 3 if s % 4 == 1 else 2
    a = s * d * d
    e = _largest_odd_below_sqrt(3 * a)
    return K133Plan(r, s, f, a, 4 * a - e * e, d, e)


def _frame_combo(frame, coefs) -> QVec:
    out = QVec.zero(4)
    for c, axis in zip(coefs, frame):
        out = out + c * axis
    return out


def embed_k133_q5(r) -> Embedding:
    """K_{1,3,3} in Q^5 with parts {c}, {a1,a2,a3}, {b1,b2,b3}."""
    plan = plan_k133(r)
    problems = plan.check()
    assert not problems, problems
    s, r1, q = plan.square_free, plan.r1, plan.q

    p1 = rational_point_on_sphere(4, r1)
    frame = quaternion_orthobasis(p1)
    u, v, w = (Fraction(x, plan.a) for x in decompose_three_squares(plan.a * plan.b - plan.a**2))
    dir_u = _frame_combo(frame, (u, v, w))  # P1 -> P2
    dir_v = _frame_combo(frame, (v, -u, 0) if (u, v) != (0, 0) else (w, 0, -u))  # P1 -> P3

    # a's: the circle |P1 + s·U + t·V|² = r in the plane through P1, P2, P3
    a_conic = Conic2(dir_u.squared_norm(), 0, dir_v.squared_norm(), 0, 0, r1 - s)
    a_candidates: list[QVec] = []
    locus = None
    for sa, ta in iter_chord_solutions(a_conic, (Fraction(1), Fraction(0))):
        a_candidates.append(p1 + sa * dir_u + ta * dir_v)
        if len(a_candidates) < 3:
            continue
        chosen = a_candidates[-3:]
        locus = equidistant_affine(chosen + [QVec.zero(4)], 4)
        if locus is not None and locus.dim == 1:
            break
    a_pts = chosen
    beta = q * p1
    assert locus.contains(beta)
    alpha = locus.directions[0]

    # b's: |beta + t·alpha|² + k² = r, seeded at t = 0, k = k0
    k0 = rational_sqrt(plan.k0_squared)
    b_conic = Conic2(
        alpha.squared_norm(), 0, 1, 2 * beta.dot(alpha), 0, beta.squared_norm() - s
    )
    b_pts = []
    for t, k in iter_chord_solutions(b_conic, (Fraction(0), k0)):
        if k == 0:
            continue
        b_pts.append(QVec((beta + t * alpha).coords + (k,)))
        if len(b_pts) == 3:
            break

    coords = {"c": QVec.zero(5)}
    coords.update({f"a{i}": p.pad(5) for i, p in enumerate(a_pts, 1)})
    coords.update({f"b{i}": p for i, p in enumerate(b_pts, 1)})
    graph = Graph.complete_multipartite([("c",), ("a1", "a2", "a3"), ("b1", "b2", "b3")])
    return _checked(Embedding(graph, 5, s, coords).scaled(plan.scale))


# --- one more vertex for a simplex in Q^{4m} ---------------------------------------


def _gram_schmidt(vectors) -> list[QVec]:
    out: list[QVec] = []
    for v in vectors:
        for o in out:
            v = v - (v.dot(o) / o.squared_norm()) * o
        if not v.is_zero():
            out.append(v)
    return out


def _rational_heights(limit: int):
    for den in range(1, limit + 1):
        yield Fraction(0)
        for num in range(1, 4 * den * den + 1):
            yield Fraction(num, den)
            yield Fraction(-num, den)


def clique_extension(m: int, r) -> Embedding:
    """K_{4m+1} in Q^{4m+3}: a regular 4m-simplex plus one equidistant point."""
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    r = _positive(r)
    s, f = square_free_part(r)
    dim, ambient = 4 * m, 4 * m + 3
    # e_i are pairwise at squared distance 2; scale by sqrt(s/2)
    simplex = scale_sqrt_q([QVec.basis(dim, i) for i in range(dim)], Fraction(s, 2))
    simplex = [p.pad(ambient) for p in simplex]
    locus = equidistant_affine(simplex, ambient)
    dirs = _gram_schmidt(locus.directions)
    anchor = simplex[0]
    offset = locus.origin - anchor
    centre = locus.origin
    for d in dirs:
        centre = centre - (offset.dot(d) / d.squared_norm()) * d
    # on the locus, |X - anchor|² = |centre - anchor|² + Σ |d_j|² t_j²
    budget = s - (centre - anchor).squared_norm()
    unit = [d for d in dirs if d.squared_norm() == 1]
    other = [d for d in dirs if d.squared_norm() != 1]
    if len(unit) != 3 or len(other) != 1:
        raise AssertionError("unexpected shape of the equidistant locus")
    normal = other[0]
    weight = normal.squared_norm()
    for t0 in _rational_heights(64):
        rest = budget - weight * t0 * t0
        if rest < 0:
            continue
        yzw = rational_squares(rest, 3)
        if yzw is not None:
            break
    else:  # pragma: no cover - excluded by the three-square argument
        raise Infeasible("no extension point found among small-height parameters")
    apex = centre + t0 * normal
    for c, d in zip(yzw, unit):
        apex = apex + c * d
    names = [f"P{i}" for i in range(1, dim + 1)]
    coords = dict(zip(names, simplex))
    coords["P"] = apex
    graph = Graph.complete(names + ["P"])
    return _checked(Embedding(graph, ambient, s, coords).scaled(f))
