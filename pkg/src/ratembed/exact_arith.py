"""Exact rationals, rational vectors and sums-of-squares primitives.

Rationals are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator.  Nothing in this module rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Iterator, Sequence

from ratembed.errors import DomainError

Rational = Fraction


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    """Serialize as ``"p/q"`` in lowest terms, or ``"p"`` for integers."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational 'p/q' string: {text!r}") from exc


@dataclass(frozen=True)
class QVec:
    """A point of Q^n."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(as_rational(c) for c in self.coords))
        if not self.coords:
            raise DomainError("QVec needs at least one coordinate")

    @classmethod
    def of(cls, *coords) -> "QVec":
        return cls(tuple(coords))

    @classmethod
    def zero(cls, dim: int) -> "QVec":
        return cls((Fraction(0),) * dim)

    @classmethod
    def basis(cls, dim: int, index: int) -> "QVec":
        return cls(tuple(Fraction(int(i == index)) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _check(self, other: "QVec") -> None:
        if self.dim != other.dim:
            raise DomainError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "QVec") -> "QVec":
        self._check(other)
        return QVec(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "QVec") -> "QVec":
        self._check(other)
        return QVec(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "QVec":
        return QVec(tuple(-a for a in self.coords))

    def __mul__(self, scalar) -> "QVec":
        s = as_rational(scalar)
        return QVec(tuple(s * a for a in self.coords))

    __rmul__ = __mul__

    def dot(self, other: "QVec") -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def squared_norm(self) -> Fraction:
        return self.dot(self)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def pad(self, dim: int) -> "QVec":
        """Append zero coordinates up to ``dim``."""
        if dim < self.dim:
            raise DomainError(f"cannot pad a {self.dim}-vector down to {dim}")
        return QVec(self.coords + (Fraction(0),) * (dim - self.dim))

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coords]

    def __repr__(self) -> str:
        return "QVec(" + ", ".join(format_rational(c) for c in self.coords) + ")"


def squared_norm(v: QVec) -> Fraction:
    return v.squared_norm()


def squared_dist(u: QVec, v: QVec) -> Fraction:
    return (u - v).squared_norm()


# --- integer number theory -------------------------------------------------


@lru_cache(maxsize=None)
def _small_primes(limit: int = 1 << 16) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (sieve primes, then odd candidates)."""
    if n < 1:
        raise DomainError(f"factorize expects a positive integer, got {n}")
    factors: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    else:
        p = _small_primes()[-1] + 2
        while p * p <= n:
            while n % p == 0:
                factors[p] = factors.get(p, 0) + 1
                n //= p
            p += 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def integer_square_free_part(n: int) -> tuple[int, int]:
    """Return ``(s, g)`` with ``n == s * g**2`` and ``s`` square-free."""
    s, g = 1, 1
    for p, e in factorize(n).items():
        g *= p ** (e // 2)
        if e % 2:
            s *= p
    return s, g


def square_free_part(q) -> tuple[int, Fraction]:
    """Write a positive rational as ``s * f**2`` with ``s`` a square-free integer.

    >>> square_free_part(Fraction(9, 2))
    (2, Fraction(3, 2))
    """
    q = as_rational(q)
    if q <= 0:
        raise DomainError(f"square_free_part expects a positive rational, got {q}")
    # p/d = (p*d) / d**2
    s, g = integer_square_free_part(q.numerator * q.denominator)
    return s, Fraction(g, q.denominator)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def rational_sqrt(q) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    q = as_rational(q)
    if q < 0:
        return None
    p, d = q.numerator, q.denominator
    if is_square(p) and is_square(d):
        return Fraction(isqrt(p), isqrt(d))
    return None


def three_square_obstruction(k: int) -> tuple[int, int] | None:
    """``(a, b)`` with ``k == 4**a * (8*b + 7)``, or None when no such form exists."""
    if k <= 0:
        return None
    a = 0
    while k % 4 == 0:
        k //= 4
        a += 1
    if k % 8 == 7:
        return a, (k - 7) // 8
    return None


def is_sum_three_squares(k: int) -> bool:
    if k < 0:
        return False
    return three_square_obstruction(k) is None


def is_sum_two_squares(k: int) -> bool:
    if k < 0:
        return False
    if k == 0:
        return True
    return all(e % 2 == 0 for p, e in factorize(k).items() if p % 4 == 3)


def decompose_two_squares(k: int) -> tuple[int, int] | None:
    """Largest-first search for ``x**2 + y**2 == k`` with ``x >= y >= 0``."""
    if k < 0:
        return None
    for x in range(isqrt(k), -1, -1):
        rest = k - x * x
        if rest > x * x:
            break
        y = isqrt(rest)
        if y * y == rest:
            return x, y
    return None


def decompose_three_squares(k: int) -> tuple[int, int, int] | None:
    """Largest-first search for ``x >= y >= z >= 0`` with ``x²+y²+z² == k``.

    Returns None exactly when ``k`` has the form ``4**a * (8b + 7)``.
    """
    if k < 0 or not is_sum_three_squares(k):
        return None
    for x in range(isqrt(k), -1, -1):
        rest = k - x * x
        if rest > 2 * x * x:
            break
        if not is_sum_two_squares(rest):
            continue
        pair = decompose_two_squares(rest)
        if pair is not None and pair[0] <= x:
            return (x, *pair)
    raise AssertionError(f"three-square search failed for {k}")  # pragma: no cover


def decompose_four_squares(k: int) -> tuple[int, int, int, int]:
    """Largest square first, then a three-square decomposition of the rest."""
    if k < 0:
        raise DomainError(f"decompose_four_squares expects k >= 0, got {k}")
    for a in range(isqrt(k), -1, -1):
        triple = decompose_three_squares(k - a * a)
        if triple is not None:
            return (a, *triple)
    raise AssertionError(f"four-square search failed for {k}")  # pragma: no cover


def rational_squares(q, count: int) -> tuple[Fraction, ...] | None:
    """Write a non-negative rational as a sum of ``count`` (1..4) rational squares.

    ``p/d`` is handled through the integer ``p*d``: ``p/d = (p*d)/d**2``.
    Returns None when no representation exists.
    """
    q = as_rational(q)
    if q < 0:
        return None
    n = q.numerator * q.denominator
    if count == 1:
        root = isqrt(n)
        ints = (root,) if root * root == n else None
    elif count == 2:
        ints = decompose_two_squares(n) if is_sum_two_squares(n) else None
    elif count == 3:
        ints = decompose_three_squares(n)
    elif count == 4:
        ints = decompose_four_squares(n)
    else:
        raise DomainError(f"count must be in 1..4, got {count}")
    if ints is None:
        return None
    return tuple(Fraction(x, q.denominator) for x in ints)


def qvecs(rows: Iterable[Sequence]) -> list[QVec]:
    return [QVec(tuple(row)) for row in rows]
