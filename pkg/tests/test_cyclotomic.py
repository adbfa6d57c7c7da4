from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polyverify.arith import euler_phi
from polyverify.cyclotomic import (
    SQRT2,
    CycNum,
    embed,
    eps,
    min_poly,
    phase,
    root_of_unity,
    sqrt_int,
    unit_circle_check,
)
from polyverify.exceptions import DomainError
from polyverify.gauss import quadratic_gauss_sum


@st.composite
def cycnums(draw, orders=(1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 20, 24)):
    order = draw(st.sampled_from(orders))
    terms = draw(st.dictionaries(
        st.integers(0, order - 1),
        st.fractions(min_value=-5, max_value=5, max_denominator=7),
        max_size=5,
    ))
    return CycNum.from_exponents(order, terms)


class TestBasis:
    def test_min_poly(self):
        assert min_poly(1) == (-1, 1)
        assert min_poly(4) == (1, 0, 1)
        assert min_poly(6) == (1, -1, 1)
        assert min_poly(8) == (1, 0, 0, 0, 1)

    @pytest.mark.parametrize("nu", range(1, 61))
    def test_roots_of_unity(self, nu):
        assert unit_circle_check(nu)
        assert root_of_unity(nu) ** nu == 1
        assert root_of_unity(nu).degree == euler_phi(nu)

    def test_cube_roots_sum(self):
        assert root_of_unity(3, 1) + root_of_unity(3, 2) == CycNum.rational(-1)

    def test_equality_across_orders(self):
        assert root_of_unity(4, 2) == -1
        assert root_of_unity(12, 3) == root_of_unity(4, 1)
        assert root_of_unity(30, 6) == root_of_unity(5, 1)
        assert root_of_unity(8, 1) != root_of_unity(4, 1)

    def test_phase(self):
        assert phase(3, 12) == root_of_unity(4, 1)
        assert phase(-1, 4) == root_of_unity(4, 3)


class TestArithmetic:
    def test_rational_views(self):
        x = CycNum.rational(Fraction(3, 4), 12)
        assert x.is_rational()
        assert x.to_rational() == Fraction(3, 4)
        with pytest.raises(DomainError):
            root_of_unity(4).to_rational()

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            root_of_unity(5) / 0

    def test_negative_power_rejected(self):
        with pytest.raises(DomainError):
            root_of_unity(5) ** -1

    def test_coerce_requires_multiple(self):
        with pytest.raises(DomainError):
            root_of_unity(6).coerce(9)

    @given(cycnums(), cycnums(), cycnums())
    def test_ring_axioms(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a - a == 0

    @given(cycnums(), cycnums())
    def test_embedding_is_homomorphism(self, a, b):
        assert abs(embed(a * b) - embed(a) * embed(b)) < 1e-9
        assert abs(embed(a + b) - embed(a) - embed(b)) < 1e-9

    @given(cycnums())
    def test_conjugate(self, a):
        assert abs(embed(a.conjugate()) - embed(a).conjugate()) < 1e-9
        assert (a * a.conjugate()).conjugate() == a * a.conjugate()


class TestSquareRoots:
    def test_sqrt2(self):
        assert SQRT2 * SQRT2 == 2

    @pytest.mark.parametrize("n", range(0, 80))
    def test_squares_back(self, n):
        root = sqrt_int(n)
        assert root * root == n
        assert abs(embed(root) - n ** 0.5) < 1e-9

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            sqrt_int(-1)

    def test_eps(self):
        assert eps(5) == 1
        assert eps(7) == root_of_unity(4, 1)
        with pytest.raises(DomainError):
            eps(4)

    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
    def test_gauss_sum_norm(self, p):
        g = quadratic_gauss_sum(p)
        assert g * g.conjugate() == p
