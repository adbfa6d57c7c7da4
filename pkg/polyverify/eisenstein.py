"""
Eisenstein Coefficients
-----------------------
Closed forms for the Eisenstein part a(n) of the polygonal theta series,
their linear lower bounds, and the cuspidal residual b(n) = s(n) - a(n).
"""

import logging
from fractions import Fraction
from typing import Dict, List, Tuple

from .arith import sigma, two_adic_split
from .exceptions import DomainError, UnsupportedPolygonError
from .models import DecompositionRow, FormSpec
from .polygonal import count_s, theta_counts

logger = logging.getLogger(__name__)

# n = residue (mod modulus) carries the Eisenstein coefficient for each m
CONGRUENCE_CLASSES: Dict[int, Tuple[int, int]] = {
    7: (40, 15),
    9: (56, 39),
    10: (64, 28),
    11: (72, 15),
    12: (80, 0),
    13: (88, 71),
    14: (96, 60),
}

HEADLINE_SLOPES: Dict[int, Fraction] = {
    7: Fraction(1, 240),
    9: Fraction(1, 672),
    10: Fraction(1, 1024),
    11: Fraction(1, 1728),
    12: Fraction(1, 1920),
    13: Fraction(1, 2640),
    14: Fraction(1, 3072),
}

# sigma(n / d) weights for m = 12, over the common factor 1/120
_M12_TERMS: Tuple[Tuple[int, int], ...] = (
    (16, 1), (32, -1), (80, -1), (160, 1),
    (256, 8), (512, -32), (1280, -8), (2560, 32),
)


def _check_m(m: int) -> None:
    if m not in CONGRUENCE_CLASSES:
        raise UnsupportedPolygonError(m)


def in_class(m: int, n: int) -> bool:
    _check_m(m)
    modulus, residue = CONGRUENCE_CLASSES[m]
    return n % modulus == residue


def eis_coeff(m: int, n: int) -> Fraction:
    """
    Eisenstein coefficient a_{m,2(m-2),(1,2,4,8)}(n).

    Args:
        m: Polygon index in {7, 9, 10, 11, 12, 13, 14}
        n: Positive index

    Returns:
        Exact value; zero off the congruence class

    Raises:
        UnsupportedPolygonError: For any other m
    """
    _check_m(m)
    if n < 1:
        raise DomainError("eis_coeff needs n >= 1", value=n)
    if not in_class(m, n):
        return Fraction(0)
    q = Fraction(n)
    if m == 7:
        return Fraction(sigma(q) - sigma(q / 5), 240)
    if m == 9:
        return Fraction(sigma(q), 672)
    if m == 10:
        return Fraction(sigma(q / 4), 256)
    if m == 11:
        return Fraction(sigma(q), 1728)
    if m == 12:
        return Fraction(sum(w * sigma(q / d) for d, w in _M12_TERMS), 120)
    if m == 13:
        return Fraction(sigma(q), 2640)
    return Fraction(sigma(q / 4) - sigma(q / 12), 768)


def eis_lower_bound(m: int, n: int) -> Fraction:
    """
    Linear lower bound for eis_coeff(m, n) on the congruence class.

    For m = 12 write n = 2^a 5^b c with gcd(c, 10) = 1; the bound is
    5^b c / 120 times 2^(a-4) for 4 <= a <= 7 and times 24 for a >= 8.

    Raises:
        DomainError: If n is outside the class
    """
    _check_m(m)
    if n < 1 or not in_class(m, n):
        raise DomainError(f"n={n} is outside the congruence class for m={m}", value=n)
    if m != 12:
        return HEADLINE_SLOPES[m] * n
    split = two_adic_split(n)
    a, rest = split.valuation, split.odd_part
    if 4 <= a <= 7:
        factor = Fraction(2) ** (a - 4)
    else:
        factor = Fraction(24)
    return Fraction(rest, 120) * factor


def headline_slope(m: int) -> Fraction:
    """Slope c with a(n) >= c n quoted for the bound pipeline."""
    _check_m(m)
    return HEADLINE_SLOPES[m]


def bound_divergence(m: int, n: int) -> bool:
    """True when the per-n lower bound falls below the headline slope (only m = 12, large 2-power)."""
    if m != 12 or not in_class(m, n):
        return False
    return eis_lower_bound(m, n) < headline_slope(m) * n


def cusp_residual(m: int, n: int) -> Fraction:
    """b(n) = s_{m,2(m-2),(1,2,4,8)}(n) - a(n)."""
    _check_m(m)
    form = FormSpec.for_polygon(m)
    return count_s(form.r, form.M, form.alpha, n) - eis_coeff(m, n)


def decomposition_rows(m: int, n_max: int, class_only: bool = True) -> List[DecompositionRow]:
    """(n, s, a, b) for 1 <= n <= n_max, by default only on the congruence class."""
    _check_m(m)
    counts = theta_counts(FormSpec.for_polygon(m), n_max)
    rows = []
    for n in range(1, n_max + 1):
        if class_only and not in_class(m, n):
            continue
        a = eis_coeff(m, n)
        rows.append(DecompositionRow(n=n, s=counts[n], a=a, b=counts[n] - a))
    logger.debug("decomposed m=%d up to %d: %d row(s)", m, n_max, len(rows))
    return rows


def support_violations(m: int, n_max: int) -> List[int]:
    """n <= n_max off the congruence class where s(n) or a(n) is nonzero."""
    _check_m(m)
    counts = theta_counts(FormSpec.for_polygon(m), n_max)
    return [
        n for n in range(1, n_max + 1)
        if not in_class(m, n) and (counts[n] or eis_coeff(m, n))
    ]


def lower_bound_violations(m: int, n_max: int) -> List[int]:
    """In-class n <= n_max with a(n) below its stated lower bound."""
    _check_m(m)
    modulus, residue = CONGRUENCE_CLASSES[m]
    start = residue if residue else modulus
    return [n for n in range(start, n_max + 1, modulus) if eis_coeff(m, n) < eis_lower_bound(m, n)]
