"""
Exact scalars and quadratic surds.

Every quantity in the library is a :class:`fractions.Fraction`.  Values that
involve a single square root (critical abscissae, circle endpoints) are held
as :class:`Surd` instances ``a + b*sqrt(c)`` and are only ever compared
exactly, by sign-aware squaring.  Nothing here extracts a numerical root.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NonPositiveRadius, StabWallsError

Q = Fraction
Rational = Union[int, Fraction]

# trial-division bound used when pulling square factors out of a radicand
_SQUARE_FACTOR_BOUND = 1000


def as_q(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise StabWallsError(f"not a rational: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact input; use 'p/q' strings")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def q_str(x: Rational) -> str:
    """Serialise a rational as ``"p/q"`` (or ``"p"`` when q = 1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_sqrt(x: Rational) -> Fraction | None:
    """Return the exact square root of a non-negative rational, or None."""
    x = Fraction(x)
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def floor_q(x: Rational) -> int:
    return math.floor(Fraction(x))


def ceil_q(x: Rational) -> int:
    return math.ceil(Fraction(x))


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _split_square(n: int) -> tuple[int, int]:
    """Write n = k**2 * m, pulling out squares of small primes and exact squares."""
    k = 1
    root = math.isqrt(n)
    if root * root == n:
        return root, 1
    f = 2
    while f <= _SQUARE_FACTOR_BOUND and f * f <= n:
        ff = f * f
        while n % ff == 0:
            n //= ff
            k *= f
        f += 1 if f == 2 else 2
    root = math.isqrt(n)
    if root * root == n:
        return k * root, 1
    return k, n


def _sign1(a: Fraction, b: Fraction, c: Fraction) -> int:
    """Sign of a + b*sqrt(c), c >= 0."""
    if b == 0 or c == 0:
        return _sign(a)
    sb = _sign(b)
    sa = _sign(a)
    if sa == 0 or sa == sb:
        return sb
    diff = a * a - b * b * c
    if diff == 0:
        return 0
    return sa if diff > 0 else sb


def _sign2(a: Fraction, b: Fraction, p: Fraction, e: Fraction, q: Fraction) -> int:
    """Sign of a + b*sqrt(p) + e*sqrt(q), p, q >= 0."""
    if e == 0 or q == 0:
        return _sign1(a, b, p)
    if b == 0 or p == 0:
        return _sign1(a, e, q)
    if p == q:
        return _sign1(a, b + e, p)
    # compare L = a + b*sqrt(p) against R = -e*sqrt(q)
    s_left = _sign1(a, b, p)
    s_right = -_sign(e)
    if s_left != s_right:
        return 1 if s_left > s_right else -1
    if s_left == 0:
        return 0
    s_sq = _sign1(a * a + b * b * p - e * e * q, 2 * a * b, p)
    return s_sq if s_left > 0 else -s_sq


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True, init=False)
class Surd:
    """The real number ``a + b*sqrt(c)`` with rational a, b and c >= 0.

    The radicand is stored as an integer with small square factors removed;
    a perfect-square radicand folds into ``a``.  Arithmetic is closed for
    rational scaling and for sums of surds sharing a radicand.
    """

    a: Fraction
    b: Fraction
    c: Fraction

    def __init__(self, a: Rational = 0, b: Rational = 0, c: Rational = 0):
        a, b, c = Fraction(a), Fraction(b), Fraction(c)
        if c < 0:
            raise StabWallsError(f"negative radicand {c}")
        if b != 0 and c != 0:
            # sqrt(p/q) = sqrt(p*q)/q
            b = b / c.denominator
            k, m = _split_square(c.numerator * c.denominator)
            b *= k
            c = Fraction(m)
            if m == 1:
                a, b, c = a + b, Fraction(0), Fraction(0)
        else:
            b, c = Fraction(0), Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @classmethod
    def sqrt(cls, x: Rational) -> "Surd":
        return cls(0, 1, x)

    @classmethod
    def lift(cls, x: "Surd | Rational") -> "Surd":
        return x if isinstance(x, Surd) else cls(x)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if not self.is_rational:
            raise StabWallsError(f"{self} is irrational")
        return self.a

    def sign(self) -> int:
        return _sign1(self.a, self.b, self.c)

    def __neg__(self) -> "Surd":
        return Surd(-self.a, -self.b, self.c)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return Surd(self.a + other, self.b, self.c)
        if isinstance(other, Surd):
            if other.is_rational:
                return Surd(self.a + other.a, self.b, self.c)
            if self.is_rational:
                return Surd(self.a + other.a, other.b, other.c)
            if self.c == other.c:
                return Surd(self.a + other.a, self.b + other.b, self.c)
            raise StabWallsError("sum of surds with different radicands is not a surd")
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Surd)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Surd(self.a * other, self.b * other, self.c)
        if isinstance(other, Surd) and other.is_rational:
            return self * other.a
        if isinstance(other, Surd) and self.is_rational:
            return other * self.a
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def _cmp(self, other) -> int:
        other = Surd.lift(other)
        return _sign2(self.a - other.a, self.b, self.c, -other.b, other.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Surd)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def floor(self) -> int:
        if self.is_rational:
            return math.floor(self.a)
        n = math.floor(self.a + self.b * Fraction(math.isqrt(int(self.c) << 128), 1 << 64))
        while self._cmp(n + 1) >= 0:
            n += 1
        while self._cmp(n) < 0:
            n -= 1
        return n

    def ceil(self) -> int:
        return -((-self).floor())

    def bracket(self, bits: int = 40) -> tuple[Fraction, Fraction]:
        """Rationals lo <= self <= hi with hi - lo <= 2**-bits."""
        scale = 1 << bits
        n = (self * scale).floor()
        lo = Fraction(n, scale)
        hi = lo if self == lo else Fraction(n + 1, scale)
        return lo, hi

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(float(self.c))

    def to_json(self) -> dict:
        return {"a": q_str(self.a), "b": q_str(self.b), "c": q_str(self.c)}

    @classmethod
    def from_json(cls, data) -> "Surd":
        if isinstance(data, dict):
            return cls(as_q(data.get("a", "0")), as_q(data.get("b", "0")), as_q(data.get("c", "0")))
        return cls(as_q(data))

    def __repr__(self):
        if self.is_rational:
            return f"Surd({q_str(self.a)})"
        return f"Surd({q_str(self.a)} + {q_str(self.b)}*sqrt({q_str(self.c)}))"

    def __str__(self):
        if self.is_rational:
            return q_str(self.a)
        sign = "-" if self.b < 0 else "+"
        head = "" if self.a == 0 else f"{q_str(self.a)} {sign} "
        coef = abs(self.b) if head else self.b
        coef_s = "" if coef == 1 else ("-" if coef == -1 else f"{q_str(coef)}*")
        return f"{head}{coef_s}sqrt({q_str(self.c)})"


def cmp_surd(lhs: "Surd | Rational", rhs: "Surd | Rational") -> Ordering:
    """Exact order of two surds (or rationals) as real numbers."""
    return Ordering(Surd.lift(lhs)._cmp(rhs))


class CircleRelation(enum.Enum):
    EQUAL = "equal"
    NESTED = "nested"
    INTERNALLY_TANGENT = "internally_tangent"
    INTERSECTING = "intersecting"
    EXTERNALLY_TANGENT = "externally_tangent"
    EXTERIOR = "exterior"


def circle_pair_classify(c1: Rational, r1sq: Rational, c2: Rational, r2sq: Rational) -> CircleRelation:
    """Relative position of two circles centred on the real axis.

    Radii enter only squared; the distance between centres is compared with
    ``R1 - R2`` and ``R1 + R2`` through ``r1sq + r2sq -+ 2*sqrt(r1sq*r2sq)``.
    """
    c1, r1sq, c2, r2sq = map(Fraction, (c1, r1sq, c2, r2sq))
    if r1sq <= 0 or r2sq <= 0:
        raise NonPositiveRadius(f"radius squared must be positive, got {r1sq} and {r2sq}")
    if c1 == c2 and r1sq == r2sq:
        return CircleRelation.EQUAL
    dist_sq = (c1 - c2) ** 2
    total, prod = r1sq + r2sq, r1sq * r2sq
    inner = cmp_surd(dist_sq, Surd(total, -2, prod))
    if inner is Ordering.LESS:
        return CircleRelation.NESTED
    if inner is Ordering.EQUAL:
        return CircleRelation.INTERNALLY_TANGENT
    outer = cmp_surd(dist_sq, Surd(total, 2, prod))
    if outer is Ordering.LESS:
        return CircleRelation.INTERSECTING
    if outer is Ordering.EQUAL:
        return CircleRelation.EXTERNALLY_TANGENT
    return CircleRelation.EXTERIOR


def simplest_between(lo: Rational, hi: Rational) -> Fraction:
    """The fraction of least denominator in the open interval (lo, hi).

    Continued-fraction descent of the Stern-Brocot tree.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise StabWallsError(f"empty interval ({lo}, {hi})")
    n = math.floor(lo)
    if n + 1 < hi:
        return Fraction(n + 1)
    a, b = lo - n, hi - n
    if a == 0:
        return n + Fraction(1, math.floor(1 / b) + 1)
    return n + 1 / simplest_between(1 / b, 1 / a)
