import random
from fractions import Fraction

import pytest

from app.core.exceptions import DegenerateBasisError, InvalidInputError
from app.services.lattice import Basis2, Vec2, approx_best, gauss_reduce

PI_40 = Fraction("3.141592653589793238462643383279502884197")


def check_random_rationals(count: int) -> None:
    rng = random.Random(20240611)
    for _ in range(count):
        exponent = rng.randint(1, 6)
        alpha = Fraction(rng.randint(-(10**12), 10**12), rng.randint(1, 10**12))
        p, q = approx_best(alpha, exponent)
        scale = 10**exponent

        # |p - q*alpha| <= sqrt(2)/10^e and 1 <= q <= 10^e, squared to stay exact
        assert 1 <= q <= scale
        assert (p - q * alpha) ** 2 * scale**2 <= 2


class TestGaussReduce:
    """Lagrange-Gauss reduction of rank-2 bases."""

    def test_reduced_basis_unchanged(self):
        basis = Basis2(Vec2.of(1, 0), Vec2.of(0, 1))
        reduced = gauss_reduce(basis)
        assert (reduced.u, reduced.v) == (basis.u, basis.v)

    def test_short_vector_found(self):
        basis = Basis2(Vec2.of(1, 0), Vec2.of(Fraction(-1, 2), Fraction(1, 8)))
        reduced = gauss_reduce(basis)

        assert reduced.norm2(reduced.u) == Fraction(1, 16)
        assert reduced.norm2(reduced.u) <= Fraction(1, 4) + Fraction(1, 64)
        assert abs(reduced.determinant) == abs(basis.determinant)

    def test_reduction_conditions(self):
        basis = Basis2(Vec2.of(1001, 7), Vec2.of(998, 9), weight=Fraction(2))
        reduced = gauss_reduce(basis)
        nu, nv = reduced.norm2(reduced.u), reduced.norm2(reduced.v)

        assert nu <= nv
        assert 2 * abs(reduced.dot(reduced.u, reduced.v)) <= nu
        assert abs(reduced.determinant) == abs(basis.determinant)

    def test_degenerate_basis(self):
        with pytest.raises(DegenerateBasisError):
            gauss_reduce(Basis2(Vec2.of(2, 0), Vec2.of(1, 0)))

    def test_non_positive_weight(self):
        with pytest.raises(InvalidInputError):
            gauss_reduce(Basis2(Vec2.of(1, 0), Vec2.of(0, 1), weight=Fraction(0)))


class TestApproxBest:
    """Simultaneous approximation through the reduced lattice."""

    def test_exact_hit(self):
        assert approx_best(Fraction(1, 2), 1) == (1, 2)

    @pytest.mark.parametrize("n", [0, 5, -3, 10**30])
    def test_integer(self, n):
        assert approx_best(Fraction(n), 4) == (n, 1)

    def test_pi(self):
        assert approx_best(PI_40, 2) == (22, 7)
        assert approx_best(PI_40, 4) == (355, 113)

    def test_bad_exponent(self):
        with pytest.raises(InvalidInputError):
            approx_best(Fraction(1, 3), 0)

    def test_postconditions_on_random_rationals(self):
        check_random_rationals(500)

    @pytest.mark.slow
    def test_postconditions_on_many_random_rationals(self):
        check_random_rationals(10_000)
