import pytest

from polyverify.exceptions import DomainError
from polyverify.gauss import theta_cusp_growth_1248
from polyverify.models import CuspRep, FormSpec, GaussSumSpec, SpecialSpec
from polyverify.polygonal import count_r, count_s, representation_counts


class TestFormSpec:
    def test_polygon_shape(self):
        form = FormSpec.for_polygon(7)
        assert (form.r, form.M, form.alpha) == (7, 10, (1, 2, 4, 8))
        assert form.level == 32
        assert form.discriminant == 2 ** 4 * 64
        assert form.theta_level == 3200

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"alpha": (0, 2, 4, 8), "r": 7, "M": 10},
            {"alpha": (1, -2), "r": 1, "M": 2},
            {"alpha": (), "r": 1, "M": 2},
            {"r": 7, "M": 0},
            {"r": 9, "M": 3, "m": 7},
            {"r": 7, "M": 14, "m": 7},
            {"r": 2, "M": 0, "m": 2},
        ],
    )
    def test_rejects_invalid(self, kwargs):
        with pytest.raises(DomainError):
            FormSpec(**kwargs)

    def test_counting_rejects_nonpositive_weights(self):
        with pytest.raises(DomainError):
            count_r(7, (0, 2, 4, 8), 5)
        with pytest.raises(DomainError):
            count_s(7, 10, (1, 2, 0, 8), 5)
        with pytest.raises(DomainError):
            representation_counts(7, (1, -1), 5)


class TestSpecialSpec:
    def test_derived_fields(self):
        spec = SpecialSpec(h=3, k=40, ell=1, r=12, M=20)
        assert (spec.kappa, spec.k0) == (3, 5)
        assert (spec.mu, spec.M0) == (2, 5)
        assert (spec.varrho, spec.r0) == (2, 3)
        assert (spec.g0, spec.g1) == (5, 1)
        assert spec.delta == 3

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"h": 2, "k": 4, "r": 7, "M": 10},
            {"h": 1, "k": 0, "r": 7, "M": 10},
            {"h": 1, "k": 3, "r": 0, "M": 10},
            {"h": 1, "k": 3, "r": 8, "M": 24},
            {"h": 1, "k": 3, "r": 4, "M": 10},
            {"h": 1, "k": 3, "ell": -1, "r": 7, "M": 10},
        ],
    )
    def test_rejects_invalid(self, kwargs):
        with pytest.raises(DomainError):
            SpecialSpec(**kwargs)

    def test_growth_shifts_residue_instead_of_failing(self):
        # r = 4 has a larger 2-adic valuation than M = 10; r + M = 14 is the same class
        assert theta_cusp_growth_1248(1, 3, 4, 10) == theta_cusp_growth_1248(1, 3, 14, 10)


class TestSmallModels:
    def test_gauss_sum_modulus(self):
        assert GaussSumSpec(a=1, b=0, c=1).c == 1
        with pytest.raises(DomainError):
            GaussSumSpec(a=1, b=0, c=0)

    def test_cusp_must_be_reduced(self):
        assert str(CuspRep(h=1, k=4)) == "1/4"
        with pytest.raises(DomainError):
            CuspRep(h=2, k=4)
        with pytest.raises(DomainError):
            CuspRep(h=1, k=0)
