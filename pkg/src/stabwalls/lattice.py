"""
Numerical data of a surface and Chern characters in slice coordinates.

A :class:`SurfaceGeom` holds the intersection form on NS(X), an ample class
omega and a class gamma orthogonal to it.  A :class:`CharVector` stores a Chern
character ``(r, c1, ch2)`` with ``c1 = y1*omega + y2*gamma + alpha``, which is
all that any wall formula needs: alpha only ever appears through alpha**2.
"""

from __future__ import annotations

import math
from functools import cached_property
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidCharacter, InvalidSurface
from .numerics import Rational, as_q

Vector = tuple  # tuple of Fractions in the lattice basis


def _vec(values) -> Vector:
    return tuple(as_q(v) for v in values)


def _is_integral(vec: Sequence[Fraction]) -> bool:
    return all(Fraction(v).denominator == 1 for v in vec)


def inertia(matrix: Sequence[Sequence[Rational]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational matrix.

    Lagrange diagonalisation over Q; zero pivots are repaired by adding a
    row/column with a non-zero off-diagonal entry.
    """
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if m[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i < j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j (or e_i - e_j) to create a non-zero pivot
            sgn = 1 if m[i][i] + 2 * m[i][j] + m[j][j] != 0 else -1
            for t in range(n):
                m[i][t] += sgn * m[j][t]
            for t in range(n):
                m[t][i] += sgn * m[t][j]
            k = i
        piv = m[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for i in active:
            f = m[i][k] / piv
            if f:
                for j in active:
                    m[i][j] -= f * m[k][j]
        for i in active:
            m[i][k] = m[k][i] = Fraction(0)
    return pos, neg, n - pos - neg


@dataclass(frozen=True)
class SurfaceGeom:
    """Neron-Severi lattice with ample class omega and orthogonal class gamma.

    ``gtilde`` is the gcd of ``c1.omega`` over the lattice; when omitted it is
    computed from the Gram matrix, and a supplied value must agree with it.
    """

    gram: tuple
    omega: Vector
    gamma: Vector = ()
    gtilde: Optional[Fraction] = None

    def __post_init__(self):
        gram = tuple(tuple(as_q(x) for x in row) for row in self.gram)
        rho = len(gram)
        if rho == 0 or any(len(row) != rho for row in gram):
            raise InvalidSurface("gram matrix must be square and non-empty")
        if not all(x.denominator == 1 for row in gram for x in row):
            raise InvalidSurface("gram matrix must be integral")
        if any(gram[i][j] != gram[j][i] for i in range(rho) for j in range(rho)):
            raise InvalidSurface("gram matrix must be symmetric")
        pos, neg, zero = inertia(gram)
        if (pos, neg, zero) != (1, rho - 1, 0):
            raise InvalidSurface(f"gram matrix has signature ({pos}, {neg}) with {zero} null directions; expected (1, {rho - 1})")
        omega = _vec(self.omega)
        if len(omega) != rho or not _is_integral(omega):
            raise InvalidSurface("omega must be an integral vector of length rho")
        gamma = _vec(self.gamma) if len(self.gamma) else tuple(Fraction(0) for _ in range(rho))
        if len(gamma) != rho:
            raise InvalidSurface("gamma must have length rho")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "gamma", gamma)
        if self.g <= 0:
            raise InvalidSurface(f"omega^2 = {self.g} is not positive")
        if self.dot(gamma, omega) != 0:
            raise InvalidSurface("gamma is not orthogonal to omega")
        if rho == 1 and any(gamma):
            raise InvalidSurface("gamma must vanish when the Picard rank is 1")
        # d >= 0, with d = 0 only for gamma = 0, follows from the signature check
        lattice_gcd = Fraction(math.gcd(*(int(x) for x in self.omega_form)))
        if self.gtilde is None:
            object.__setattr__(self, "gtilde", lattice_gcd)
        else:
            gt = as_q(self.gtilde)
            if gt <= 0:
                raise InvalidSurface("gtilde must be positive")
            if gt != lattice_gcd:
                raise InvalidSurface(f"gtilde = {gt} disagrees with gcd(c1.omega) = {lattice_gcd} over the lattice")
            object.__setattr__(self, "gtilde", gt)
        if (self.g / self.gtilde).denominator != 1:
            raise InvalidSurface("g / gtilde must be an integer")

    @property
    def picard_rank(self) -> int:
        return len(self.gram)

    @cached_property
    def _entries(self) -> tuple:
        n = self.picard_rank
        return tuple((i, j, int(self.gram[i][j])) for i in range(n) for j in range(n) if self.gram[i][j])

    def dot(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
        return sum((a[i] * b[j] * gij for i, j, gij in self._entries), Fraction(0))

    @cached_property
    def omega_form(self) -> Vector:
        """The linear form c -> c.omega as a coefficient vector."""
        n = self.picard_rank
        return tuple(sum((self.gram[i][j] * self.omega[j] for j in range(n)), Fraction(0)) for i in range(n))

    @cached_property
    def gamma_form(self) -> Vector:
        n = self.picard_rank
        return tuple(sum((self.gram[i][j] * self.gamma[j] for j in range(n)), Fraction(0)) for i in range(n))

    @cached_property
    def g(self) -> Fraction:
        return self.dot(self.omega, self.omega)

    @cached_property
    def d(self) -> Fraction:
        return -self.dot(self.gamma, self.gamma)

    @cached_property
    def gprime(self) -> int:
        return int(self.g / self.gtilde)

    def decompose(self, c1: Sequence[Rational]) -> tuple[Fraction, Fraction, Fraction]:
        """Coordinates (y1, y2, alpha^2) of a class in NS(X) tensor Q."""
        c1 = _vec(c1)
        if len(c1) != self.picard_rank:
            raise InvalidCharacter("c1 has the wrong length for this lattice")
        y1 = self.dot(c1, self.omega) / self.g
        dg = self.dot(c1, self.gamma)
        if self.d > 0:
            y2 = -dg / self.d
        else:
            y2 = Fraction(0)
        alpha_sq = self.dot(c1, c1) - self.g * y1 * y1 + self.d * y2 * y2
        return y1, y2, alpha_sq

    def decompose_beta(self, beta: Sequence[Rational]) -> tuple[Fraction, Vector]:
        """Split beta = b*omega + gamma' with gamma' orthogonal to omega; returns (b, gamma')."""
        beta = _vec(beta)
        b = self.dot(beta, self.omega) / self.g
        return b, tuple(beta[i] - b * self.omega[i] for i in range(self.picard_rank))

    def spans_omega_gamma(self) -> bool:
        """True when omega and gamma span NS(X) tensor Q, so that alpha is always 0."""
        return self.picard_rank == 1 or (self.picard_rank == 2 and self.d > 0)

    def rational_class(self, y1: Rational, y2: Rational) -> Vector:
        return tuple(Fraction(y1) * self.omega[i] + Fraction(y2) * self.gamma[i] for i in range(self.picard_rank))


@dataclass(frozen=True)
class CharVector:
    """Chern character (x, y1*omega + y2*gamma + alpha, z) in slice coordinates.

    ``c1`` keeps the lattice representation when the class was built from one.
    """

    x: int
    y1: Fraction
    y2: Fraction
    alpha_sq: Fraction
    z: Fraction
    c1: Optional[Vector] = field(default=None, compare=False)

    def c1_sq(self, surface: SurfaceGeom) -> Fraction:
        return surface.g * self.y1 ** 2 - surface.d * self.y2 ** 2 + self.alpha_sq

    def is_valid_for_walls(self) -> bool:
        return self.x > 0 or (self.x == 0 and self.y1 > 0)


def check_character(surface: SurfaceGeom, v: CharVector, *, strict: bool = True, for_walls: bool = True) -> None:
    """Raise InvalidCharacter unless v satisfies the integrality and Hodge-index invariants."""
    if v.alpha_sq > 0:
        raise InvalidCharacter(f"alpha^2 = {v.alpha_sq} > 0 violates the Hodge index theorem")
    if surface.d == 0 and v.y2 != 0:
        raise InvalidCharacter("y2 must be 0 when gamma = 0")
    if surface.spans_omega_gamma() and v.alpha_sq != 0:
        raise InvalidCharacter("alpha^2 must be 0 when omega and gamma span NS(X)")
    if (v.y1 * surface.gprime).denominator != 1:
        raise InvalidCharacter(f"y1*g' = {v.y1 * surface.gprime} is not an integer")
    if v.c1 is not None and not _is_integral(v.c1):
        raise InvalidCharacter("c1 is not a lattice vector")
    twice_c2_part = 2 * v.z - v.c1_sq(surface)
    if strict:
        if (twice_c2_part / 2).denominator != 1:
            raise InvalidCharacter(f"ch2 - c1^2/2 = {twice_c2_part / 2} is not an integer")
    elif twice_c2_part.denominator != 1:
        raise InvalidCharacter("2*ch2 - c1^2 is not an integer")
    if for_walls and not v.is_valid_for_walls():
        if v.x == 0 and v.y1 == 0:
            raise InvalidCharacter("classes with r = 0 and c1.omega = 0 (point classes) have no walls")
        raise InvalidCharacter("wall queries need r > 0, or r = 0 with c1.omega > 0")


def from_lattice(surface: SurfaceGeom, rank: int, c1_lattice: Sequence[Rational], ch2: Rational, *, strict: bool = True, for_walls: bool = True) -> CharVector:
    """Build a CharVector from a lattice representation of c1."""
    c1 = _vec(c1_lattice)
    if len(c1) != surface.picard_rank:
        raise InvalidCharacter(f"c1 must have {surface.picard_rank} entries")
    if surface.d == 0 and surface.dot(c1, surface.gamma) != 0:
        raise InvalidCharacter("c1.gamma must vanish when gamma = 0")
    y1, y2, alpha_sq = surface.decompose(c1)
    v = CharVector(int(rank), y1, y2, alpha_sq, as_q(ch2), c1)
    check_character(surface, v, strict=strict, for_walls=for_walls)
    return v


def from_coordinates(surface: SurfaceGeom, rank: int, y1: Rational, y2: Rational, alpha_sq: Rational, ch2: Rational, *, strict: bool = True, for_walls: bool = True) -> CharVector:
    """Build a CharVector from (y1, y2, alpha^2) directly, e.g. for Picard rank above 2."""
    y1, y2, alpha_sq = as_q(y1), as_q(y2), as_q(alpha_sq)
    c1 = None
    if surface.spans_omega_gamma() and alpha_sq == 0:
        vec = surface.rational_class(y1, y2)
        if _is_integral(vec):
            c1 = vec
    v = CharVector(int(rank), y1, y2, alpha_sq, as_q(ch2), c1)
    check_character(surface, v, strict=strict, for_walls=for_walls)
    return v


def discriminant(v: CharVector, surface: SurfaceGeom) -> Fraction:
    """Bogomolov discriminant c1^2 - 2*r*ch2."""
    return v.c1_sq(surface) - 2 * v.x * v.z


def delta_bar(v: CharVector, surface: SurfaceGeom) -> Fraction:
    """g*y1^2 - d*y2^2 - alpha^2, the quantity entering the n-condition of the (m, n) search.

    Differs from :func:`discriminant` in the sign of alpha^2 and has no ch2 term.
    """
    return surface.g * v.y1 ** 2 - surface.d * v.y2 ** 2 - v.alpha_sq


def bogomolov_holds(v: CharVector, surface: SurfaceGeom) -> tuple[bool, Fraction]:
    """Return (c1^2 >= 2 r ch2, c1^2 - 2 r ch2)."""
    slack = discriminant(v, surface)
    return slack >= 0, slack


def twist_by_omega(v: CharVector, n: int, surface: SurfaceGeom) -> CharVector:
    """Multiply v by exp(n*omega) = (1, n*omega, n^2 g / 2)."""
    g = surface.g
    c1 = None
    if v.c1 is not None:
        c1 = tuple(v.c1[i] + n * v.x * surface.omega[i] for i in range(surface.picard_rank))
    return CharVector(
        v.x,
        v.y1 + n * v.x,
        v.y2,
        v.alpha_sq,
        v.z + n * g * v.y1 + Fraction(n * n * v.x) * g / 2,
        c1,
    )


def char_difference(v: CharVector, w: CharVector, surface: SurfaceGeom) -> CharVector:
    """The class v - w.

    With lattice data on both sides alpha^2 is exact; otherwise the two
    orthogonal parts are assumed mutually orthogonal (alpha^2 + alpha'^2).
    """
    if v.c1 is not None and w.c1 is not None:
        c1 = tuple(a - b for a, b in zip(v.c1, w.c1))
        y1, y2, alpha_sq = surface.decompose(c1)
    else:
        c1 = None
        y1, y2 = v.y1 - w.y1, v.y2 - w.y2
        alpha_sq = v.alpha_sq + w.alpha_sq
    return CharVector(v.x - w.x, y1, y2, alpha_sq, v.z - w.z, c1)


def with_ch2(v: CharVector, z: Rational) -> CharVector:
    return replace(v, z=as_q(z))
