from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polyverify.eisenstein import eis_coeff
from polyverify.exceptions import DomainError, UnsupportedPolygonError
from polyverify.models import FormSpec
from polyverify.polygonal import count_s
from polyverify.qseries import (
    QSeries,
    apply_normal,
    apply_word,
    commute_check,
    e2,
    eisenstein_component,
    normalize_word,
    normalized_recipe,
    recipe,
    series_rows,
    sieve,
    theta_series,
    v_op,
)

operators = st.one_of(
    st.tuples(st.just("V"), st.integers(1, 6)),
    st.tuples(st.just("S"), st.integers(1, 12), st.integers(-12, 24)),
)


class TestQSeries:
    def test_e2_head(self):
        assert e2(5).to_list() == [1, -24, -72, -96, -168, -144]

    def test_index_bounds(self):
        f = e2(10)
        with pytest.raises(IndexError):
            f[11]
        with pytest.raises(DomainError):
            QSeries(3, {4: 1})

    def test_truncation_aligns_to_minimum(self):
        total = e2(10) + e2(5)
        assert total.truncation == 5
        assert total[1] == -48

    def test_scalar_arithmetic(self):
        f = e2(6)
        assert (f * 2 - f) == f
        assert f.scale(Fraction(1, 24))[1] == -1
        assert (f - f).support() == []

    def test_rows(self):
        rows = series_rows(QSeries.from_list([1, Fraction(1, 2)]))
        assert rows == [(0, 1, 1), (1, 1, 2)]


class TestOperators:
    def test_sieve(self):
        f = sieve(e2(10), 3, 1)
        assert f.support() == [1, 4, 7, 10]
        assert sieve(e2(10), 3, -2) == f

    def test_v_op(self):
        f = v_op(e2(10), 2)
        assert f[4] == -72
        assert f[0] == 1
        assert all(f[n] == 0 for n in range(1, 11, 2))

    def test_bad_arguments(self):
        with pytest.raises(DomainError):
            sieve(e2(5), 0, 0)
        with pytest.raises(DomainError):
            v_op(e2(5), 0)

    @given(st.integers(1, 12), st.integers(1, 12), st.integers(-30, 30))
    def test_commutation(self, M1, M2, m):
        assert commute_check(e2(120), M1, M2, m)

    @given(st.integers(1, 10))
    def test_sieves_partition(self, M):
        f = e2(80)
        parts = QSeries.zero(80)
        for residue in range(M):
            parts = parts + sieve(f, M, residue)
        assert parts == f


class TestNormalForms:
    def test_examples(self):
        assert normalize_word((("V", 5), ("S", 40, 15))) == (8, 3, 5)
        assert normalize_word((("V", 4), ("S", 64, 28))) == (16, 7, 4)
        assert normalize_word((("S", 80, 0),)) == (80, 0, 1)
        assert normalize_word((("V", 2), ("S", 4, 1))) is None
        assert normalize_word((("S", 4, 1), ("S", 6, 2))) is None

    def test_unknown_operator(self):
        with pytest.raises(DomainError):
            normalize_word((("T", 2),))

    @given(st.lists(operators, max_size=4))
    def test_normal_form_acts_like_word(self, word):
        word = tuple(word)
        f = e2(150)
        assert apply_word(f, word) == apply_normal(f, normalize_word(word))

    def test_recipe_normal_forms(self, polygon):
        f = e2(400)
        scale, terms = recipe(polygon)
        _, normal = normalized_recipe(polygon)
        direct = QSeries.zero(400)
        for coef, word in terms:
            direct = direct + apply_word(f, word).scale(coef)
        rewritten = QSeries.zero(400)
        for coef, form in normal:
            rewritten = rewritten + apply_normal(f, form).scale(coef)
        assert direct == rewritten

    def test_unsupported(self):
        with pytest.raises(UnsupportedPolygonError):
            recipe(8)


class TestEisensteinComponent:
    def test_m7_coefficient_at_15(self):
        assert eisenstein_component(7, 60)[15] == Fraction(1, 12)

    def test_m9_coefficient_at_39(self):
        assert eisenstein_component(9, 60)[39] == Fraction(1, 12)

    def test_matches_closed_form(self, polygon):
        series = eisenstein_component(polygon, 500)
        assert series[0] == 0
        for n in range(1, 501):
            assert series[n] == eis_coeff(polygon, n)

    def test_truncation_independent(self):
        long = eisenstein_component(12, 3000)
        short = eisenstein_component(12, 1000)
        assert long.truncate(1000) == short


class TestThetaSeries:
    def test_matches_pointwise_counts(self, form7):
        series = theta_series(form7, 400)
        for n in (0, 15, 135, 175, 215, 255, 375):
            assert series[n] == count_s(form7.r, form7.M, form7.alpha, n)

    def test_first_term_m7(self, form7):
        # 9 + 2*9 + 4*9 + 8*9 from x = -3 in every slot
        series = theta_series(form7, 200)
        assert series.support()[0] == 135
        assert series[135] == 1

    def test_rejects_nonpositive_weights(self):
        with pytest.raises(DomainError):
            theta_series(FormSpec(alpha=(1, 0), r=1, M=2), 10)
