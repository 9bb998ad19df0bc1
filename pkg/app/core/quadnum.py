from dataclasses import dataclass
from fractions import Fraction

from .arith import sign_quad
from .exceptions import InvalidInputError


@dataclass(frozen=True, slots=True)
class QuadNum:
    """Exact element u + v*sqrt(d) of Q(sqrt(d)), d a fixed non-square."""

    u: Fraction
    v: Fraction
    d: int

    @classmethod
    def of(cls, u: int | Fraction, v: int | Fraction, d: int) -> "QuadNum":
        return cls(Fraction(u), Fraction(v), d)

    def _coerce(self, other: "QuadNum | int | Fraction") -> "QuadNum":
        if isinstance(other, QuadNum):
            if other.d != self.d:
                raise InvalidInputError(
                    f"cannot mix Q(sqrt({self.d})) and Q(sqrt({other.d}))"
                )
            return other
        return QuadNum(Fraction(other), Fraction(0), self.d)

    def __add__(self, other: "QuadNum | int | Fraction") -> "QuadNum":
        o = self._coerce(other)
        return QuadNum(self.u + o.u, self.v + o.v, self.d)

    def __sub__(self, other: "QuadNum | int | Fraction") -> "QuadNum":
        o = self._coerce(other)
        return QuadNum(self.u - o.u, self.v - o.v, self.d)

    def __mul__(self, other: "QuadNum | int | Fraction") -> "QuadNum":
        o = self._coerce(other)
        return QuadNum(
            self.u * o.u + self.d * self.v * o.v,
            self.u * o.v + self.v * o.u,
            self.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: "QuadNum | int | Fraction") -> "QuadNum":
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        product = self * o.conjugate()
        return QuadNum(product.u / n, product.v / n, self.d)

    def conjugate(self) -> "QuadNum":
        return QuadNum(self.u, -self.v, self.d)

    def norm(self) -> Fraction:
        return self.u * self.u - self.d * self.v * self.v

    @property
    def is_integral(self) -> bool:
        return self.u.denominator == 1 and self.v.denominator == 1

    @property
    def is_rational(self) -> bool:
        return self.v == 0

    def sign(self) -> int:
        # a positive common denominator keeps the sign
        den = self.u.denominator * self.v.denominator
        return sign_quad(int(self.u * den), int(self.v * den), self.d)

    def as_ints(self) -> tuple[int, int]:
        if not self.is_integral:
            raise InvalidInputError(f"{self} is not an algebraic integer pair")
        return self.u.numerator, self.v.numerator
