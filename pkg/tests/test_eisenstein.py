from fractions import Fraction

import pytest

from polyverify.eisenstein import (
    CONGRUENCE_CLASSES,
    bound_divergence,
    cusp_residual,
    decomposition_rows,
    eis_coeff,
    eis_lower_bound,
    headline_slope,
    in_class,
    lower_bound_violations,
    support_violations,
)
from polyverify.exceptions import DomainError, UnsupportedPolygonError


class TestEisCoeff:
    @pytest.mark.parametrize(
        "m, n, expected",
        [
            (7, 15, Fraction(1, 12)),
            (7, 55, Fraction(1, 4)),
            (9, 39, Fraction(1, 12)),
            (10, 28, Fraction(1, 32)),
            (11, 15, Fraction(1, 72)),
            (12, 80, Fraction(1, 24)),
            (13, 71, Fraction(3, 110)),
            (14, 60, Fraction(3, 128)),
        ],
    )
    def test_known_values(self, m, n, expected):
        assert eis_coeff(m, n) == expected

    def test_zero_off_class(self, polygon):
        modulus, residue = CONGRUENCE_CLASSES[polygon]
        for n in range(1, 400):
            if n % modulus != residue:
                assert eis_coeff(polygon, n) == 0
                assert not in_class(polygon, n)

    def test_unsupported_polygon(self):
        with pytest.raises(UnsupportedPolygonError) as exc:
            eis_coeff(8, 15)
        assert exc.value.m == 8

    def test_rejects_nonpositive_index(self):
        with pytest.raises(DomainError):
            eis_coeff(7, 0)


class TestLowerBounds:
    def test_holds(self, polygon):
        assert lower_bound_violations(polygon, 5000) == []

    def test_headline_slopes(self):
        assert headline_slope(7) == Fraction(1, 240)
        assert headline_slope(12) == Fraction(1, 1920)
        assert headline_slope(14) == Fraction(1, 3072)

    def test_m12_piecewise_bound(self):
        assert eis_lower_bound(12, 80) == Fraction(1, 24)
        assert eis_lower_bound(12, 1280) == 1
        with pytest.raises(DomainError):
            eis_lower_bound(12, 81)

    def test_m12_divergence_starts_at_valuation_nine(self):
        assert not bound_divergence(12, 2 ** 8 * 5)
        assert bound_divergence(12, 2 ** 9 * 5)
        assert not any(bound_divergence(7, n) for n in range(15, 2000, 40))


class TestDecomposition:
    def test_support(self, polygon):
        assert support_violations(polygon, 1500) == []

    def test_residual_examples(self):
        assert cusp_residual(7, 15) == Fraction(-1, 12)
        assert cusp_residual(7, 135) == 1 - eis_coeff(7, 135)

    def test_rows(self):
        rows = decomposition_rows(7, 200)
        assert [row.n for row in rows] == [15, 55, 95, 135, 175]
        for row in rows:
            assert row.a == eis_coeff(7, row.n)
            assert row.s - row.a == row.b
            assert row.b == cusp_residual(7, row.n)

    def test_rows_full_range(self):
        rows = decomposition_rows(9, 60, class_only=False)
        assert len(rows) == 60
        assert all(row.s == 0 and row.a == 0 for row in rows if not in_class(9, row.n))
