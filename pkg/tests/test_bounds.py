import json
from fractions import Fraction

import mpmath
import pytest

from polyverify.bounds import (
    KNOWN_TABLE_DISCREPANCIES,
    TABLE_COEFFICIENTS,
    all_reports,
    bound_report,
    coeff_bound_const,
    crossover,
    deligne_bound,
    deligne_ratio,
    final_constant,
    norm_sq_bound,
    norm_sq_terms,
    table_rows,
)
from polyverify.exceptions import DomainError
from polyverify.models import FormSpec
from polyverify.reports import to_jsonable

REPRODUCED = (7, 9, 10, 11, 12, 14)


@pytest.fixture(scope="module")
def reports():
    return {rep.m: rep for rep in all_reports(40)}


class TestNormBound:
    def test_exact_terms_m7(self):
        terms = norm_sq_terms(FormSpec.for_polygon(7))
        assert terms["prefactor"] == 20736000000
        assert terms["divisorSum"] == Fraction(138892032, 3125)
        assert terms["piCoefficient"] == Fraction(675, 4)
        assert terms["constant"] == 32

    def test_interval_encloses_value_m7(self):
        bound = norm_sq_bound(FormSpec.for_polygon(7), 40)
        assert bound.a <= bound.b
        assert 8.10e14 < float(bound.b) < 8.12e14

    def test_requires_four_variables(self):
        with pytest.raises(DomainError):
            norm_sq_terms(FormSpec(alpha=(1, 2, 4), r=7, M=10))


class TestCoefficientBound:
    def test_sublevel_must_divide_level(self):
        with pytest.raises(DomainError):
            coeff_bound_const(10, 3, 1)

    def test_scales_with_norm(self):
        one = coeff_bound_const(3200, 10, 1, 40)
        two = coeff_bound_const(3200, 10, 2, 40)
        assert abs(float(two.b) / float(one.b) - 2) < 1e-12


class TestReports:
    @pytest.mark.parametrize("m", REPRODUCED)
    def test_published_figures(self, reports, m):
        audit = reports[m].audit
        assert audit["normColumnRelErrorAsNormSq"] < 0.02
        assert audit["coeffConstRelError"] < 0.02
        assert audit["crossoverRelError"] < 0.05
        assert audit["finalConstantRelError"] < 0.05

    def test_m13_norm_column_disagrees(self, reports):
        assert 13 in KNOWN_TABLE_DISCREPANCIES
        report = reports[13]
        assert "tableDiscrepancy" in report.audit
        assert mpmath.mpf(report.norm_sq_bound) > 1.25 * mpmath.mpf(TABLE_COEFFICIENTS[13][0])

    def test_monotone_in_m(self, reports):
        ordered = [reports[m] for m in sorted(reports)]
        consts = [mpmath.mpf(rep.coeff_bound_const) for rep in ordered]
        crossings = [rep.crossover_n for rep in ordered]
        assert consts == sorted(consts)
        assert crossings == sorted(crossings)
        assert all(rep.C_m > 0 for rep in ordered)

    def test_m12_caveat(self, reports):
        audit = reports[12].audit
        assert audit["divergesAt"] == 2560
        assert audit["divergenceFlag"] is True

    def test_final_constant_formula(self):
        bound = crossover(7, 40)
        assert final_constant(7, 40) == -(-(bound - 135) // 40)
        assert 1.8e82 < bound < 2.0e82

    def test_report_serialises_with_aliases(self, reports):
        data = to_jsonable(reports[7])
        assert data["eisSlope"] == {"num": "1", "den": "240"}
        assert data["exactTerms"]["piCoefficient"] == {"num": "675", "den": "4"}
        assert json.loads(json.dumps(data)) == data
        assert data["crossoverN"] == reports[7].crossover_n
        assert "exactTerms" in data

    def test_table_rows(self, reports):
        rows = table_rows([reports[7]])
        assert rows[0][:4] == ["7", "7", "10", "1/240"]

    def test_unsupported(self):
        with pytest.raises(DomainError):
            bound_report(8)
        with pytest.raises(DomainError):
            crossover(15)


class TestDeligne:
    def test_values(self):
        assert deligne_bound(1) == 1
        with mpmath.workdps(30):
            assert abs(deligne_bound(6) - 4 * mpmath.sqrt(6)) < mpmath.mpf("1e-20")

    def test_rejects_odd_weight(self):
        with pytest.raises(DomainError):
            deligne_bound(4, k=3)

    def test_ratio(self):
        n, ratio = deligne_ratio(7, 400)
        assert n is not None and n % 40 == 15
        assert ratio > 0
