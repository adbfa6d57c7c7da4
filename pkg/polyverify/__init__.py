"""polyverify - verification toolkit for sums of polygonal numbers with coefficients 1, 2, 4, 8."""

__version__ = "0.1.0"

from typing import List, Optional

from .bounds import bound_report, coeff_bound_const, crossover, deligne_bound, final_constant, norm_sq_bound
from .config import Settings, load_settings
from .cusps import cusp_reps, match_growth
from .cyclotomic import CycNum
from .eisenstein import decomposition_rows, eis_coeff
from .exceptions import ConfigError, DomainError, PolyverifyError, UnsupportedPolygonError, VerificationError
from .gauss import gauss_direct, gauss_eval, gauss_special
from .models import BoundReport, ConjectureReport, DecompositionRow, FormSpec, GrowthReport, SuiteResult
from .polygonal import count_r, count_s, polygonal_number, verify_conjecture
from .qseries import QSeries, eisenstein_component, polygon_series
from .reports import ReportWriter
from .selftest import SelfTestSuite

__all__ = [
    "PolyVerify",
    "Settings",
    "load_settings",
    "CycNum",
    "QSeries",
    "FormSpec",
    "BoundReport",
    "ConjectureReport",
    "DecompositionRow",
    "GrowthReport",
    "SuiteResult",
    "ReportWriter",
    "SelfTestSuite",
    "gauss_direct",
    "gauss_eval",
    "gauss_special",
    "polygonal_number",
    "count_r",
    "count_s",
    "verify_conjecture",
    "eis_coeff",
    "eisenstein_component",
    "polygon_series",
    "decomposition_rows",
    "cusp_reps",
    "match_growth",
    "norm_sq_bound",
    "coeff_bound_const",
    "crossover",
    "final_constant",
    "deligne_bound",
    "bound_report",
    "PolyverifyError",
    "DomainError",
    "UnsupportedPolygonError",
    "VerificationError",
    "ConfigError",
]


class PolyVerify:
    """Main entry point bundling settings, report output and the verification engines."""

    def __init__(self, settings: Optional[Settings] = None, config_path: Optional[str] = None, **overrides):
        """
        Initialize the toolkit.

        Args:
            settings: Ready-made settings; when omitted they are loaded
                from the environment, config_path and overrides
            config_path: Optional JSON settings file
            **overrides: Explicit settings values
        """
        self.settings = settings or load_settings(config_path, **overrides)
        self.writer = ReportWriter(self.settings.output_dir)

    def verify(self, m: int, n_max: Optional[int] = None, save: bool = False, strict: bool = False) -> ConjectureReport:
        """
        Check representability of every 1 <= n <= n_max.

        Raises:
            VerificationError: In strict mode, when some n has no representation
        """
        report = verify_conjecture(m, n_max or self.settings.verify_max, workers=self.settings.workers)
        if save:
            self.writer.save_json(f"conjecture_m{m}.json", report, command="verify")
        if strict and report.failures:
            raise VerificationError(f"m={m}: {len(report.failures)} value(s) not represented", report.failures)
        return report

    def decompose(self, m: int, n_max: Optional[int] = None) -> List[DecompositionRow]:
        return decomposition_rows(m, n_max or self.settings.series_length)

    def bounds(self, m: int) -> BoundReport:
        return bound_report(m, self.settings.digits)

    def match_growth(self, m: int, kmax: Optional[int] = None, mode: str = "sweep") -> GrowthReport:
        return match_growth(
            m,
            kmax=kmax or self.settings.kmax,
            workers=self.settings.workers,
            mode=mode,
            budget=self.settings.cusp_budget,
        )

    def series(self, m: int, kind: str = "eisenstein", n_max: Optional[int] = None) -> QSeries:
        """Eisenstein component or theta series of the polygon form, truncated at n_max."""
        return polygon_series(m, kind, n_max or self.settings.series_length)

    def selftest(self, quick: bool = True, strict: bool = False) -> List[SuiteResult]:
        results = SelfTestSuite(self.settings, quick=quick).run()
        failed = [r for r in results if not r.passed]
        if strict and failed:
            raise VerificationError(
                "self-test failed: " + ", ".join(r.name for r in failed),
                [f"{r.name}: {f}" for r in failed for f in r.failures],
            )
        return results
