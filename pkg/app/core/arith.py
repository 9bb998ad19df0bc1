"""
Exact integer and rational arithmetic shared by every solver.

Nothing here touches floating point. Quantities of the form u + v*sqrt(d) are
compared by sign analysis and integer squaring; floors of such quantities are
computed from integer square roots.
"""

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from math import gcd
from math import isqrt as _isqrt

from sympy import mod_inverse
from sympy.ntheory.modular import solve_congruence

from .exceptions import (
    InconsistentCongruenceError,
    InvalidInputError,
    NotInvertibleError,
    PerfectSquareError,
)


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def sign(n: int) -> int:
    return (n > 0) - (n < 0)


def isqrt(n: int) -> int:
    """Return r with r*r <= n < (r+1)*(r+1)."""
    if n < 0:
        raise InvalidInputError(f"isqrt of negative number {n}")
    return _isqrt(n)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = _isqrt(n)
    return r * r == n


def require_nonsquare(d: int) -> int:
    """Validate d for the Pell equation and return floor(sqrt(d))."""
    if d < 2:
        if d in (0, 1):
            raise PerfectSquareError(d)
        raise InvalidInputError(f"d must be a positive non-square integer, got {d}")
    root = _isqrt(d)
    if root * root == d:
        raise PerfectSquareError(d)
    return root


def mod_inv(a: int, m: int) -> int:
    """Inverse of a modulo m, in [0, m)."""
    if m < 1:
        raise InvalidInputError(f"modulus must be >= 1, got {m}")
    if m == 1:
        return 0
    if gcd(a, m) != 1:
        raise NotInvertibleError(f"{a} is not invertible modulo {m}")
    try:
        return int(mod_inverse(a % m, m))
    except ValueError as e:
        raise NotInvertibleError(f"{a} is not invertible modulo {m}") from e


def crt_combine(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """
    Combine r1 (mod m1) and r2 (mod m2) into a single residue modulo lcm(m1, m2).

    Moduli need not be coprime; the residues must then agree modulo gcd(m1, m2).
    """
    if m1 < 1 or m2 < 1:
        raise InvalidInputError(f"moduli must be >= 1, got {m1}, {m2}")
    solution = solve_congruence((r1 % m1, m1), (r2 % m2, m2))
    if solution is None:
        raise InconsistentCongruenceError(
            f"{r1} mod {m1} and {r2} mod {m2} have no common solution"
        )
    r, modulus = solution
    return int(r), int(modulus)


def sign_quad(u: int, v: int, d: int) -> int:
    """Exact sign of u + v*sqrt(d) for integers u, v and d > 0."""
    if v == 0:
        return sign(u)
    if u == 0:
        return sign(v)
    if (u > 0) == (v > 0):
        return sign(u)
    diff = u * u - v * v * d
    if diff == 0:
        return 0
    return sign(u) if diff > 0 else sign(v)


def cmp_quad(u1: int, v1: int, u2: int, v2: int, d: int) -> Ordering:
    """Compare u1 + v1*sqrt(d) with u2 + v2*sqrt(d)."""
    return Ordering(sign_quad(u1 - u2, v1 - v2, d))


def cmp_abs_quad(u1: int, v1: int, u2: int, v2: int, d: int) -> Ordering:
    """Compare |u1 + v1*sqrt(d)| with |u2 + v2*sqrt(d)|."""
    s1 = sign_quad(u1, v1, d)
    s2 = sign_quad(u2, v2, d)
    return Ordering(sign_quad(s1 * u1 - s2 * u2, s1 * v1 - s2 * v2, d))


def floor_quad(a: int, b: int, c: int, d: int) -> int:
    """floor((a + b*sqrt(d)) / c) for c > 0."""
    if c <= 0:
        raise InvalidInputError(f"denominator must be positive, got {c}")
    n = b * b * d
    root = _isqrt(n)
    if b >= 0:
        numerator_floor = a + root
    elif root * root == n:
        numerator_floor = a - root
    else:
        numerator_floor = a - root - 1
    return numerator_floor // c


def round_quad(a: int, b: int, c: int, d: int) -> int:
    """Nearest integer to (a + b*sqrt(d)) / c, exact halves going up."""
    return floor_quad(2 * a + c, 2 * b, 2 * c, d)


def round_half_up(x: Fraction) -> int:
    """Nearest integer to x; exact halves go toward +infinity."""
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def lies_below_sqrt(value: int, d: int, multiple: int = 1) -> bool:
    """True when value < multiple * sqrt(d)."""
    return sign_quad(value, -multiple, d) < 0


@dataclass(frozen=True, slots=True)
class SqrtCtx:
    """
    Decimal bracket of sqrt(d): s / 10^p <= sqrt(d) < (s + 1) / 10^p.

    Only the rational approximations that feed the continued-fraction and
    lattice step rules go through here; every decision that must be exact uses
    the integer comparisons above.
    """

    d: int
    p: int
    s: int

    @classmethod
    def create(cls, d: int, p: int) -> "SqrtCtx":
        if p < 0:
            raise InvalidInputError(f"precision must be >= 0, got {p}")
        return cls(d=d, p=p, s=_isqrt(d * 10 ** (2 * p)))

    def ensure(self, p: int) -> "SqrtCtx":
        """Context with at least p digits (precision never goes down)."""
        if self.p >= p:
            return self
        return SqrtCtx.create(self.d, p)

    def refined(self) -> "SqrtCtx":
        return SqrtCtx.create(self.d, max(2 * self.p, 1))

    def sqrt_bounds(self) -> tuple[Fraction, Fraction]:
        scale = 10**self.p
        return Fraction(self.s, scale), Fraction(self.s + 1, scale)

    def alpha_bounds(self, M: int, K: int) -> tuple[Fraction, Fraction]:
        """Rational bracket of (sqrt(d) - M) / K for K > 0."""
        scale = 10**self.p
        lo = Fraction(self.s - M * scale, K * scale)
        hi = Fraction(self.s + 1 - M * scale, K * scale)
        return lo, hi

    def approx(self, u: int | Fraction, v: int | Fraction) -> Fraction:
        """Lower rational approximation of u + v*sqrt(d) (for v >= 0)."""
        return Fraction(u) + Fraction(v) * Fraction(self.s, 10**self.p)
