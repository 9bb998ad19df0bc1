import random
from fractions import Fraction
from math import gcd

import pytest

from app.core.arith import (
    Ordering,
    SqrtCtx,
    cmp_abs_quad,
    cmp_quad,
    crt_combine,
    floor_quad,
    is_square,
    isqrt,
    lies_below_sqrt,
    mod_inv,
    require_nonsquare,
    round_half_up,
    round_quad,
    sign_quad,
)
from app.core.exceptions import (
    InconsistentCongruenceError,
    InvalidInputError,
    NotInvertibleError,
    PerfectSquareError,
)
from app.core.quadnum import QuadNum


class TestIntegerRoots:
    """Integer square roots and the d validation built on them."""

    @pytest.mark.parametrize(
        "n, expected", [(0, 0), (1, 1), (61, 7), (63, 7), (64, 8), (10**100, 10**50)]
    )
    def test_isqrt(self, n, expected):
        assert isqrt(n) == expected

    def test_isqrt_negative(self):
        with pytest.raises(InvalidInputError):
            isqrt(-1)

    def test_is_square(self):
        assert is_square(0)
        assert is_square(10**100)
        assert not is_square(10**100 + 1)
        assert not is_square(-4)

    @pytest.mark.parametrize("d", [0, 1, 4, 9, 10**20])
    def test_require_nonsquare_rejects_squares(self, d):
        with pytest.raises(PerfectSquareError):
            require_nonsquare(d)

    def test_require_nonsquare_rejects_negative(self):
        with pytest.raises(InvalidInputError):
            require_nonsquare(-5)

    def test_require_nonsquare_returns_floor(self):
        assert require_nonsquare(61) == 7


class TestModularArithmetic:
    """Inverses and congruence combination."""

    @pytest.mark.parametrize("a, m, expected", [(1, 7, 1), (3, 10, 7), (-2, 7, 3), (5, 1, 0)])
    def test_mod_inv(self, a, m, expected):
        assert mod_inv(a, m) == expected

    def test_mod_inv_not_invertible(self):
        with pytest.raises(NotInvertibleError):
            mod_inv(2, 4)

    def test_crt_coprime(self):
        assert crt_combine(1, 3, 2, 5) == (7, 15)

    def test_crt_modulus_one(self):
        assert crt_combine(0, 1, 5, 9) == (5, 9)

    def test_crt_shared_factor(self):
        assert crt_combine(1, 4, 3, 6) == (9, 12)

    def test_crt_inconsistent(self):
        with pytest.raises(InconsistentCongruenceError):
            crt_combine(1, 4, 0, 6)


class TestQuadraticComparisons:
    """Exact comparisons of u + v*sqrt(d)."""

    def test_cmp_quad(self):
        assert cmp_quad(7, 0, 0, 1, 61) is Ordering.LESS
        assert cmp_quad(8, 0, 0, 1, 61) is Ordering.GREATER
        assert cmp_quad(0, 1, 0, 1, 61) is Ordering.EQUAL

    @pytest.mark.parametrize(
        "u, v, expected",
        [(0, 0, 0), (3, 0, 1), (0, -1, -1), (-7, 1, 1), (-8, 1, -1), (8, -1, 1), (7, -1, -1)],
    )
    def test_sign_quad(self, u, v, expected):
        assert sign_quad(u, v, 61) == expected

    def test_cmp_abs_quad(self):
        # |7 - sqrt(61)| ~ 0.81 against |8 - sqrt(61)| ~ 0.19
        assert cmp_abs_quad(7, -1, 8, -1, 61) is Ordering.GREATER
        assert cmp_abs_quad(-7, 1, 7, -1, 61) is Ordering.EQUAL

    def test_floor_and_round(self):
        assert floor_quad(0, 1, 1, 61) == 7
        assert floor_quad(0, -1, 1, 61) == -8
        assert floor_quad(-1, 1, 3, 61) == 2
        assert floor_quad(0, -2, 1, 4) == -4
        assert round_quad(0, 1, 1, 61) == 8
        assert round_quad(-1, 1, 3, 61) == 2

    def test_floor_quad_rejects_non_positive_denominator(self):
        with pytest.raises(InvalidInputError):
            floor_quad(1, 1, 0, 2)

    def test_round_half_up(self):
        assert round_half_up(Fraction(1, 2)) == 1
        assert round_half_up(Fraction(-1, 2)) == 0
        assert round_half_up(Fraction(-3, 2)) == -1
        assert round_half_up(Fraction(7, 3)) == 2

    def test_lies_below_sqrt(self):
        assert lies_below_sqrt(7, 61)
        assert not lies_below_sqrt(8, 61)
        assert lies_below_sqrt(15, 61, multiple=2)
        assert not lies_below_sqrt(16, 61, multiple=2)


class TestSqrtCtx:
    """Decimal brackets of sqrt(d)."""

    def test_bounds_bracket_sqrt(self):
        ctx = SqrtCtx.create(2, 3)
        lo, hi = ctx.sqrt_bounds()
        assert (lo, hi) == (Fraction(1414, 1000), Fraction(1415, 1000))
        assert lo * lo <= 2 < hi * hi

    def test_alpha_bounds(self):
        ctx = SqrtCtx.create(61, 10)
        lo, hi = ctx.alpha_bounds(1, 3)
        assert lo < hi
        # alpha = (sqrt(61) - 1) / 3 ~ 2.27
        assert Fraction(227, 100) < lo < hi < Fraction(228, 100)

    def test_ensure_and_refine(self):
        ctx = SqrtCtx.create(61, 4)
        assert ctx.ensure(2) is ctx
        assert ctx.ensure(8).p == 8
        assert ctx.refined().p == 8

    def test_negative_precision(self):
        with pytest.raises(InvalidInputError):
            SqrtCtx.create(2, -1)


class TestQuadNum:
    """Arithmetic in Q(sqrt(d))."""

    def test_unit_times_conjugate(self):
        unit = QuadNum.of(1, 1, 2)
        assert unit * unit.conjugate() == QuadNum.of(-1, 0, 2)
        assert unit.norm() == -1

    def test_division(self):
        eps = QuadNum.of(3, 2, 2)
        square = eps * eps
        assert square == QuadNum.of(17, 12, 2)
        assert square / eps == eps
        assert (QuadNum.of(2, 0, 2) / 4).u == Fraction(1, 2)

    def test_integrality_and_sign(self):
        value = QuadNum.of(Fraction(1, 2), 1, 61)
        assert not value.is_integral
        assert QuadNum.of(Fraction(-15, 2), 1, 61).sign() == 1
        assert QuadNum.of(-8, 1, 61).sign() == -1
        assert QuadNum.of(5, 3, 61).as_ints() == (5, 3)
        with pytest.raises(InvalidInputError):
            value.as_ints()

    def test_mixed_fields(self):
        with pytest.raises(InvalidInputError):
            QuadNum.of(1, 1, 2) + QuadNum.of(1, 1, 3)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            QuadNum.of(1, 1, 2) / 0


class TestRandomized:
    """Seeded random inputs checked against independent computations."""

    def test_isqrt_big_ints(self):
        rng = random.Random(20240611)
        for _ in range(300):
            n = rng.getrandbits(rng.randint(1, 4000))
            root = isqrt(n)
            assert root * root <= n < (root + 1) ** 2

    def test_mod_inv_is_an_inverse(self):
        rng = random.Random(20240612)
        checked = 0
        while checked < 300:
            m = rng.randint(2, 10**30)
            a = rng.randint(-(10**40), 10**40)
            if gcd(a, m) != 1:
                continue
            inverse = mod_inv(a, m)
            assert 0 <= inverse < m
            assert a * inverse % m == 1
            checked += 1

    def test_cmp_quad_agrees_with_decimal_bracket(self):
        rng = random.Random(20240613)
        for _ in range(500):
            d = rng.randint(2, 10**6)
            if is_square(d):
                continue
            u1, v1, u2, v2 = (rng.randint(-(10**6), 10**6) for _ in range(4))
            lo, hi = SqrtCtx.create(d, 50).sqrt_bounds()
            dv = v1 - v2
            ends = (u1 - u2 + dv * lo, u1 - u2 + dv * hi)
            if min(ends) > 0:
                assert cmp_quad(u1, v1, u2, v2, d) is Ordering.GREATER
            elif max(ends) < 0:
                assert cmp_quad(u1, v1, u2, v2, d) is Ordering.LESS
            else:
                # the bracket only straddles zero when both differences vanish
                assert (u1 - u2, dv) == (0, 0)
                assert cmp_quad(u1, v1, u2, v2, d) is Ordering.EQUAL
