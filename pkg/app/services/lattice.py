"""
Rank-2 lattice reduction and the simultaneous-approximation primitive built on it.

Norms are weighted: |(x, y)|^2 = x^2 + weight * y^2. The lattice spanned by
(1, 0) and (-alpha, eps^2 / sqrt(2)) carries an irrational second coordinate;
writing y without the sqrt(2) and using weight 2 keeps every squared norm
rational, so the reduction is exact.
"""

from dataclasses import dataclass
from fractions import Fraction

from app.core.arith import round_half_up
from app.core.exceptions import (
    DegenerateBasisError,
    InvariantViolationError,
    InvalidInputError,
    ZeroDenominatorError,
)


@dataclass(frozen=True, slots=True)
class Vec2:
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: int | Fraction, y: int | Fraction) -> "Vec2":
        return cls(Fraction(x), Fraction(y))

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def scaled(self, c: int | Fraction) -> "Vec2":
        return Vec2(c * self.x, c * self.y)


@dataclass(frozen=True, slots=True)
class Basis2:
    u: Vec2
    v: Vec2
    weight: Fraction = Fraction(1)

    def dot(self, a: Vec2, b: Vec2) -> Fraction:
        return a.x * b.x + self.weight * a.y * b.y

    def norm2(self, a: Vec2) -> Fraction:
        return self.dot(a, a)

    @property
    def determinant(self) -> Fraction:
        return self.u.x * self.v.y - self.u.y * self.v.x


def gauss_reduce(basis: Basis2) -> Basis2:
    """
    Lagrange-Gauss reduction.

    The returned basis spans the same lattice, its u is a shortest nonzero
    vector and |<u, v>| <= |u|^2 / 2, hence |u| <= |v| <= |v +- u|.

    Raises:
        DegenerateBasisError: If the two vectors are linearly dependent.
    """
    if basis.weight <= 0:
        raise InvalidInputError(f"norm weight must be positive, got {basis.weight}")
    if basis.determinant == 0:
        raise DegenerateBasisError(f"basis {basis.u}, {basis.v} has zero determinant")

    u, v = basis.u, basis.v
    nu, nv = basis.norm2(u), basis.norm2(v)
    if nv < nu:
        u, v, nu, nv = v, u, nv, nu
    while True:
        mu = round_half_up(basis.dot(u, v) / nu)
        if mu:
            v = v - u.scaled(mu)
            nv = basis.norm2(v)
        if nv >= nu:
            return Basis2(u, v, basis.weight)
        u, v, nu, nv = v, u, nv, nu


def approx_best(alpha: Fraction | int, eps_exponent: int) -> tuple[int, int]:
    """
    Integers (p, q) with |p - q*alpha| <= eps and 1 <= q <= sqrt(2)/eps,
    where eps = sqrt(2) / 10^eps_exponent.

    The lattice is scaled by D * 10^(2e) (alpha = A/D) so that the basis
    (D*S, 0), (-A*S, D) is integral; a reduced vector (X, Y) decodes as
    q = Y / D and p = (X + q*A*S) / (D*S).

    Raises:
        ZeroDenominatorError: If the shortest vector has q = 0.
    """
    if eps_exponent < 1:
        raise InvalidInputError(f"eps exponent must be >= 1, got {eps_exponent}")
    alpha = Fraction(alpha)
    A, D = alpha.numerator, alpha.denominator
    S = 10 ** (2 * eps_exponent)
    basis = Basis2(Vec2.of(D * S, 0), Vec2.of(-A * S, D), weight=Fraction(2))
    shortest = gauss_reduce(basis).u

    X, Y = shortest.x, shortest.y
    q = Y / D
    p = (X + q * A * S) / (D * S)
    if q.denominator != 1 or p.denominator != 1:
        raise InvariantViolationError(f"reduced vector {shortest} left the lattice")
    p, q = int(p), int(q)
    if q < 0:
        p, q = -p, -q
    if q == 0:
        raise ZeroDenominatorError(f"reduced vector for alpha={alpha} has q = 0")
    return p, q
