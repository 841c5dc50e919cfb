"""Exact geometry in Q^n: sphere points, quaternion maps, triangles, loci."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from ratembed.diophantine import Conic2, iter_chord_solutions
from ratembed.errors import DomainError, Infeasible
from ratembed.exact_arith import (
    QVec,
    as_rational,
    decompose_four_squares,
    factorize,
    is_sum_three_squares,
    rational_squares,
    square_free_part,
)


def realizability_witness(n: int, r) -> str | None:
    """Why ``sqrt(r)`` is not a distance in Q^n, or None when it is."""
    r = as_rational(r)
    if n < 1:
        raise DomainError(f"dimension must be positive, got {n}")
    if r <= 0:
        raise DomainError(f"squared distance must be positive, got {r}")
    if n >= 4:
        return None
    s, _ = square_free_part(r)
    if n == 3:
        if s % 8 == 7:
            return f"square-free part of {r} is {s}, and {s} ≡ 7 (mod 8)"
        return None
    if n == 2:
        bad = [p for p in factorize(s) if p % 4 == 3]
        if bad:
            return f"square-free part of {r} is {s}, divisible by {bad[0]} ≡ 3 (mod 4)"
        return None
    if s != 1:
        return f"{r} is not the square of a rational (square-free part {s})"
    return None


def is_distance_realized(n: int, r) -> bool:
    return realizability_witness(n, r) is None


def rational_point_on_sphere(n: int, r) -> QVec | None:
    """A point of Q^n with squared norm ``r``; None if there is none."""
    r = as_rational(r)
    if not is_distance_realized(n, r):
        return None
    parts = rational_squares(r, min(n, 4))
    assert parts is not None
    return QVec(parts).pad(n)


def _slice_planes(base: QVec) -> Iterator[tuple[int, int]]:
    for i, j in combinations(range(base.dim), 2):
        if base[i] != 0 or base[j] != 0:
            yield i, j


def iter_sphere_points(n: int, r) -> Iterator[QVec]:
    """Distinct points of squared norm ``r``, in a fixed order.

    Cyclic shifts of a base point come first, then chord-method points on
    the circles cut out by coordinate 2-planes through the base point.
    """
    base = rational_point_on_sphere(n, r)
    if base is None:
        raise Infeasible(realizability_witness(n, r))
    seen = set()
    for k in range(n):
        shifted = QVec(base.coords[n - k :] + base.coords[: n - k])
        if shifted not in seen:
            seen.add(shifted)
            yield shifted
    if n == 1:
        for p in (-base,):
            if p not in seen:
                seen.add(p)
                yield p
        return
    for i, j in _slice_planes(base):
        # (base_i + s)² + (base_j + t)² = base_i² + base_j²
        conic = Conic2(1, 0, 1, 2 * base[i], 2 * base[j], 0)
        for s, t in iter_chord_solutions(conic, (Fraction(0), Fraction(0))):
            coords = list(base.coords)
            coords[i] += s
            coords[j] += t
            p = QVec(tuple(coords))
            if p not in seen:
                seen.add(p)
                yield p


def sphere_points(n: int, r, count: int) -> list[QVec]:
    out = []
    for p in iter_sphere_points(n, r):
        out.append(p)
        if len(out) == count:
            return out
    raise Infeasible(f"only {len(out)} rational points of squared norm {r} exist in Q^{n}")


# --- quaternions ---------------------------------------------------------------


def quaternion_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


_I = (Fraction(0), Fraction(1), Fraction(0), Fraction(0))
_J = (Fraction(0), Fraction(0), Fraction(1), Fraction(0))
_K = (Fraction(0), Fraction(0), Fraction(0), Fraction(1))


def norm_quaternion(q) -> tuple[Fraction, ...]:
    """Rational quaternion of norm ``q`` built from a four-square decomposition."""
    q = as_rational(q)
    if q <= 0:
        raise DomainError(f"scale factor must be positive, got {q}")
    parts = decompose_four_squares(q.numerator * q.denominator)
    return tuple(Fraction(x, q.denominator) for x in parts)


def scale_sqrt_q(points: Sequence[QVec], q) -> list[QVec]:
    """Map Q^{4k} to itself multiplying every distance by ``sqrt(q)``.

    Each 4-block of coordinates is right-multiplied, as a quaternion, by a
    fixed rational quaternion of norm ``q``.
    """
    h = norm_quaternion(q)
    out = []
    for p in points:
        if p.dim % 4:
            raise DomainError(f"dimension {p.dim} is not a multiple of 4")
        coords: list[Fraction] = []
        for k in range(0, p.dim, 4):
            coords.extend(quaternion_mul(p.coords[k : k + 4], h))
        out.append(QVec(tuple(coords)))
    if len({p.dim for p in out}) > 1:
        raise DomainError("points must share one dimension")
    return out


def quaternion_orthobasis(p: QVec) -> tuple[QVec, QVec, QVec]:
    """``p·i, p·j, p·k``: together with ``p``, an orthogonal frame of equal norms."""
    if p.dim != 4:
        raise DomainError(f"quaternion frame needs a 4-vector, got dimension {p.dim}")
    if p.is_zero():
        raise DomainError("quaternion frame of the zero vector")
    return tuple(QVec(quaternion_mul(p.coords, unit)) for unit in (_I, _J, _K))


# --- triangles -----------------------------------------------------------------


@dataclass(frozen=True)
class TriangleSq:
    """Triangle given by its squared side lengths |OP1|², |P1P2|², |OP2|²."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in "abc":
            value = as_rational(getattr(self, name))
            if value <= 0:
                raise DomainError(f"squared side {name} must be positive, got {value}")
            object.__setattr__(self, name, value)

    def area16(self) -> Fraction:
        """16·Area², by Heron's formula in squared sides."""
        a, b, c = self.a, self.b, self.c
        return 2 * (a * b + a * c + b * c) - a * a - b * b - c * c


def triangle_witness(t: TriangleSq) -> str | None:
    d = t.area16()
    if d <= 0:
        raise DomainError(f"degenerate triangle (16·Area² = {d})")
    s, _ = square_free_part(d)
    if not is_sum_three_squares(s):
        return f"16·Area² = {d} has square-free part {s} ≡ 7 (mod 8)"
    return None


def triangle_embeddable_q4(t: TriangleSq) -> bool:
    return triangle_witness(t) is None


def embed_triangle_q4(t: TriangleSq) -> tuple[QVec, QVec, QVec] | None:
    """Vertices ``O, P1, P2`` in Q^4 with the requested squared sides, or None."""
    if triangle_witness(t) is not None:
        return None
    origin = QVec.zero(4)
    p1 = rational_point_on_sphere(4, t.a)
    lam = (t.c + t.a - t.b) / (2 * t.a)
    mu = (t.c - lam * lam * t.a) / t.a
    uvw = rational_squares(mu, 3)
    assert uvw is not None, mu
    frame = quaternion_orthobasis(p1)
    p2 = lam * p1
    for coef, axis in zip(uvw, frame):
        p2 = p2 + coef * axis
    return origin, p1, p2


# --- linear loci ---------------------------------------------------------------


def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], ncols: int):
    """Exact Gauss–Jordan elimination.

    Returns ``(particular, null_basis)`` or None if the system is inconsistent.
    Free variables are 0 in the particular solution; the null basis has one
    vector per free column, in column order.
    """
    m = [list(map(as_rational, row)) + [as_rational(b)] for row, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [vi - factor * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    for row in m[r:]:
        if row[-1] != 0:
            return None
    particular = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        particular[col] = m[i][-1]
    null_basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for i, col in enumerate(pivots):
            vec[col] = -m[i][free]
        null_basis.append(vec)
    return particular, null_basis


@dataclass(frozen=True)
class AffineSubspace:
    origin: QVec
    directions: tuple[QVec, ...]

    @property
    def dim(self) -> int:
        return len(self.directions)

    def point(self, *params) -> QVec:
        if len(params) != self.dim:
            raise DomainError(f"expected {self.dim} parameters, got {len(params)}")
        p = self.origin
        for t, d in zip(params, self.directions):
            p = p + as_rational(t) * d
        return p

    def contains(self, x: QVec) -> bool:
        offset = x - self.origin
        if not self.directions:
            return offset.is_zero()
        rows = [[d[i] for d in self.directions] for i in range(x.dim)]
        return solve_linear(rows, offset.coords, self.dim) is not None


def equidistant_affine(points: Sequence[QVec], ambient: int) -> AffineSubspace | None:
    """All points of Q^ambient equidistant from every input point.

    Inputs of lower dimension are zero-padded.  None if the locus is empty.
    """
    pts = [p.pad(ambient) for p in points]
    if len(set(pts)) != len(pts):
        raise DomainError("input points must be pairwise distinct")
    if not pts:
        raise DomainError("need at least one point")
    base = pts[0]
    # |X - p|² = |X - base|²  <=>  2 X·(p - base) = |p|² - |base|²
    rows = [[2 * c for c in (p - base).coords] for p in pts[1:]]
    rhs = [p.squared_norm() - base.squared_norm() for p in pts[1:]]
    if not rows:
        rows, rhs = [[Fraction(0)] * ambient], [Fraction(0)]
    solved = solve_linear(rows, rhs, ambient)
    if solved is None:
        return None
    particular, null_basis = solved
    return AffineSubspace(QVec(particular), tuple(QVec(v) for v in null_basis))


def circumcenter(b1: QVec, b2: QVec, b3: QVec) -> QVec:
    """Circumcenter of a triangle in Q^n, in the plane of the triangle.

    When the three points have equal norms the result is also the foot of
    the perpendicular from the origin to their plane; in that case a plane
    through the origin is rejected.
    """
    u, v = b2 - b1, b3 - b1
    uu, uv, vv = u.dot(u), u.dot(v), v.dot(v)
    det = uu * vv - uv * uv
    if det == 0:
        raise DomainError("points are collinear (or coincide)")
    # C = b1 + s u + t v with |C - b1| = |C - b2| = |C - b3|
    ru, rv = uu / 2, vv / 2
    s = (ru * vv - rv * uv) / det
    t = (rv * uu - ru * uv) / det
    c = b1 + s * u + t * v
    if b1.squared_norm() == b2.squared_norm() == b3.squared_norm() and c.is_zero():
        raise DomainError("plane of the three points passes through the origin")
    return c
