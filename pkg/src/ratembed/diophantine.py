"""Rational solutions of the quadratic equations behind the constructions.

Two tools live here: the chord method, which turns one rational point of a
conic into as many as needed, and an exact solver for the equation that
decides whether a regular simplex in Q^{4m} extends by one vertex inside
Q^{4m+3}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count as _count
from typing import Iterator

from ratembed.errors import DomainError, Infeasible
from ratembed.exact_arith import (
    as_rational,
    decompose_three_squares,
    integer_square_free_part,
    is_sum_three_squares,
)

Point2 = tuple[Fraction, Fraction]

VERTICAL = None  # slope marker for the line x = x0


@dataclass(frozen=True)
class Conic2:
    """``a x² + b xy + c y² + d x + e y + f = 0`` with rational coefficients."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction = Fraction(0)
    e: Fraction = Fraction(0)
    f: Fraction = Fraction(0)

    def __post_init__(self):
        for name in "abcdef":
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.a == 0 and self.b == 0 and self.c == 0:
            raise DomainError("conic has no quadratic part")

    def evaluate(self, x, y) -> Fraction:
        x, y = as_rational(x), as_rational(y)
        return (
            self.a * x * x
            + self.b * x * y
            + self.c * y * y
            + self.d * x
            + self.e * y
            + self.f
        )

    def gradient(self, x: Fraction, y: Fraction) -> Point2:
        return (
            2 * self.a * x + self.b * y + self.d,
            self.b * x + 2 * self.c * y + self.e,
        )


def chord_slopes() -> Iterator[int | None]:
    """0, vertical, 1, -1, 2, -2, ..."""
    yield 0
    yield VERTICAL
    for m in _count(1):
        yield m
        yield -m


def second_intersection(conic: Conic2, seed: Point2, slope) -> Point2 | None:
    """Other intersection of the line through ``seed`` with the conic.

    None when the line is tangent at the seed, meets the conic only once,
    or lies inside it.
    """
    x0, y0 = seed
    dx, dy = (Fraction(0), Fraction(1)) if slope is VERTICAL else (Fraction(1), as_rational(slope))
    # F(seed + t*(dx, dy)) = A t² + B t, since F(seed) = 0
    A = conic.a * dx * dx + conic.b * dx * dy + conic.c * dy * dy
    gx, gy = conic.gradient(x0, y0)
    B = gx * dx + gy * dy
    if A == 0 or B == 0:
        return None
    t = -B / A
    return (x0 + t * dx, y0 + t * dy)


def iter_chord_solutions(conic: Conic2, seed: Point2, max_slopes: int = 2000) -> Iterator[Point2]:
    """Yield the seed, then new solutions along lines of increasing slope height."""
    seed = (as_rational(seed[0]), as_rational(seed[1]))
    if conic.evaluate(*seed) != 0:
        raise DomainError(f"seed {seed} does not lie on the conic")
    seen = {seed}
    yield seed
    for tried, slope in enumerate(chord_slopes()):
        if tried >= max_slopes:
            return
        point = second_intersection(conic, seed, slope)
        if point is None or point in seen:
            continue
        seen.add(point)
        yield point


def chord_solutions(conic: Conic2, seed, count: int, max_slopes: int = 2000) -> list[Point2]:
    if count < 1:
        raise DomainError("count must be at least 1")
    found = []
    for point in iter_chord_solutions(conic, seed, max_slopes):
        found.append(point)
        if len(found) == count:
            return found
    raise Infeasible(
        f"only {len(found)} rational point(s) found after trying {max_slopes} slopes "
        "(0, vertical, ±1, ±2, ...); the conic's rational locus looks finite"
    )


# --- simplex extension equation ---------------------------------------------
#
#   r(4m-1)/(8m) + 2rm x² + y² + z² + w² = r
#
# Homogenize with t, substitute t = 4m t0, write 2rm = s α² (s square-free),
# t0 = t1/α, x = x1/α; the right-hand side becomes γ = s[(4m+1) t1² - x1²].


@dataclass(frozen=True)
class ExtensionSolution:
    m: int
    r: int
    s: int
    alpha: int
    t1: int
    x1: int
    gamma: int
    squares: tuple[int, int, int]
    x: Fraction
    y: Fraction
    z: Fraction
    w: Fraction

    @property
    def solution(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z, self.w)


def extension_lhs(m: int, r: int, x, y, z, w) -> Fraction:
    return Fraction(r * (4 * m - 1), 8 * m) + 2 * r * m * x * x + y * y + z * z + w * w


def extension_chain(m: int, r: int) -> ExtensionSolution:
    """Solve the extension equation through its integer three-square form.

    Any positive integer ``r`` works: ``s`` is square-free either way, and
    gamma is then 1 or 5 (mod 8), or twice an odd number.
    """
    if m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")
    if r < 1:
        raise DomainError(f"r must be a positive integer, got {r}")
    s, alpha = integer_square_free_part(2 * r * m)
    if s % 4 == 3:
        t1, x1 = 4, 1
    else:
        t1, x1 = 1, 0
    gamma = s * ((4 * m + 1) * t1 * t1 - x1 * x1)
    assert is_sum_three_squares(gamma), gamma
    squares = decompose_three_squares(gamma)
    # dehomogenize: t = 4m*t0 = 4m*t1/alpha
    t = Fraction(4 * m * t1, alpha)
    x = Fraction(x1, alpha) / t
    y, z, w = (Fraction(v) / t for v in squares)
    return ExtensionSolution(m, r, s, alpha, t1, x1, gamma, squares, x, y, z, w)


def solve_extension_equation(m: int, r: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Exact ``(x, y, z, w)`` with ``r(4m-1)/(8m) + 2rm x² + y² + z² + w² = r``."""
    return extension_chain(m, r).solution
