"""
Gauss Sum Engine
----------------
Generalized quadratic Gauss sums G(a, b; c) evaluated three ways (direct
summation, the recursive reduction rules, and the closed form for the
theta-type special sums) plus the cusp growth constants of the
congruence-restricted theta series built from them.
"""

import logging
from collections import Counter
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from .arith import kronecker, mod_inverse
from .cyclotomic import CycNum, embed, eps, root_of_unity, sqrt_int
from .exceptions import DomainError
from .models import FormSpec, GaussRecord, GaussSumSpec, SpecialSpec

logger = logging.getLogger(__name__)

# (r, M) = (m, 2(m-2)) for the seven polygon indices with identities
POLYGON_PAIRS: Tuple[Tuple[int, int], ...] = (
    (7, 10), (9, 14), (10, 16), (11, 18), (12, 20), (13, 22), (14, 24),
)


def _as_spec(spec_or_a, b: Optional[int] = None, c: Optional[int] = None) -> GaussSumSpec:
    if isinstance(spec_or_a, GaussSumSpec):
        return spec_or_a
    if c is None or c < 1:
        raise DomainError("Gauss sum modulus must be positive", value=c)
    return GaussSumSpec(a=spec_or_a, b=b, c=c)


def _direct(a: int, b: int, c: int) -> CycNum:
    exponents = Counter((a * t * t + b * t) % c for t in range(c))
    return CycNum.from_exponents(c, dict(exponents))


def gauss_direct(spec, b: Optional[int] = None, c: Optional[int] = None) -> CycNum:
    """
    Evaluate G(a, b; c) by summing all c terms.

    Args:
        spec: GaussSumSpec, or the integer a when b and c are given
        b: Linear coefficient
        c: Modulus

    Returns:
        Exact value in Q(zeta_c)
    """
    spec = _as_spec(spec, b, c)
    return _direct(spec.a, spec.b, spec.c)


def quadratic_gauss_sum(c: int) -> CycNum:
    """G(1, 0; c) = epsilon_c sqrt(c) for odd c >= 1."""
    if c < 1 or c % 2 == 0:
        raise DomainError("quadratic_gauss_sum needs an odd positive modulus", value=c)
    return eps(c) * sqrt_int(c)


def _sqrt_two_power_times_one_plus_i(kappa: int) -> CycNum:
    """2^(kappa/2) (1 + i)."""
    if kappa % 2 == 0:
        return (1 + root_of_unity(4, 1)).scale(2 ** (kappa // 2))
    # sqrt(2)(1 + i) = 2 zeta_8
    return root_of_unity(8, 1).scale(2 ** ((kappa + 1) // 2))


def _eval(a: int, b: int, c: int) -> CycNum:
    if c == 1:
        return CycNum.rational(1)
    a %= c
    b %= c

    g = gcd(a, c)
    if g > 1:
        if b % g:
            return CycNum.zero()
        return _eval(a // g, b // g, c // g).scale(g)

    kappa = (c & -c).bit_length() - 1
    k0 = c >> kappa

    if kappa == 0:
        exponent = -mod_inverse(4 * a, c) * b * b
        return quadratic_gauss_sum(c).scale(kronecker(a, c)) * root_of_unity(c, exponent)

    if k0 > 1:
        two_power = 1 << kappa
        return _eval(a * two_power, b, k0) * _eval(a * k0, b, two_power)

    if kappa == 1:
        logger.debug("direct summation for G(%d, %d; 2)", a, b)
        return CycNum.rational(2 if (a + b) % 2 == 0 else 0)

    if b % 2:
        return CycNum.zero()

    exponent = -mod_inverse(a, c) * (b // 2) ** 2
    return (
        _sqrt_two_power_times_one_plus_i(kappa).scale(kronecker(-c, a))
        * eps(a)
        * root_of_unity(c, exponent)
    )


def gauss_eval(spec, b: Optional[int] = None, c: Optional[int] = None) -> CycNum:
    """
    Evaluate G(a, b; c) through the reduction rules.

    The common divisor of a and c is stripped first, the modulus is split
    into its odd part and its power of two, odd moduli use the Jacobi symbol
    formula and powers of two the epsilon formula. Modulus 2 is summed
    directly.

    Args:
        spec: GaussSumSpec, or the integer a when b and c are given
        b: Linear coefficient
        c: Modulus

    Returns:
        Exact value, equal to gauss_direct
    """
    spec = _as_spec(spec, b, c)
    return _eval(spec.a, spec.b, spec.c)


def gauss_special(spec: SpecialSpec) -> CycNum:
    """
    Closed form of e(2^l h r^2 / k) G(2^l h M^2, 2^(l+1) h r M; k).

    Args:
        spec: SpecialSpec; its validator enforces gcd(h, k) = 1, varrho <= mu
            and gcd(M, r) in {1, 2, 4}

    Returns:
        Exact value
    """
    if spec.k == 1:
        return CycNum.rational(1)
    s = spec.model_copy(update={"h": spec.h % spec.k})
    h, ell = s.h, s.ell
    kappa, mu, varrho = s.kappa, s.mu, s.varrho
    g0, r0 = s.g0, s.r0
    n = s.k0 // g0

    if s.g1 != 1 or varrho < min(mu, kappa - ell - mu) - 1:
        return CycNum.zero()

    if kappa <= ell + 2 * mu or (kappa == ell + 2 * mu + 1 and varrho == mu - 1):
        delta = s.delta
        modulus = (1 << (kappa - delta)) * g0
        exponent = h * r0 * r0 * (1 << (ell + 2 * varrho - delta)) * mod_inverse(n, modulus)
        sign = kronecker((1 << (ell + kappa)) * h * g0, n)
        return quadratic_gauss_sum(n).scale((1 << kappa) * g0 * sign) * root_of_unity(modulus, exponent)

    if kappa >= ell + 2 * mu + 2 and varrho == mu:
        hg0 = h * g0
        sign = kronecker(-(1 << (ell + kappa)) * n, hg0)
        exponent = h * r0 * r0 * mod_inverse((1 << (kappa - ell - 2 * mu)) * n, g0)
        return (
            sqrt_int((1 << (kappa + ell + 2 * mu)) * n).scale(g0 * sign)
            * (1 + root_of_unity(4, 1))
            * eps(hg0)
            * root_of_unity(g0, exponent)
        )

    return CycNum.zero()


def special_direct(spec: SpecialSpec) -> CycNum:
    """The special sum by direct summation, used as its oracle."""
    a = (1 << spec.ell) * spec.h * spec.M ** 2
    b = (1 << (spec.ell + 1)) * spec.h * spec.r * spec.M
    phase = root_of_unity(spec.k, (1 << spec.ell) * spec.h * spec.r ** 2)
    return phase * _direct(a, b, spec.k)


def theta_cusp_growth(h: int, k: int, form: FormSpec) -> CycNum:
    """
    Growth -lim z^2 Theta(h/k + iz/k) of the theta series towards h/k.

    Each factor is evaluated with gauss_eval, so this is independent of the
    closed forms used by theta_cusp_growth_1248.

    Args:
        h: Cusp numerator
        k: Cusp denominator, coprime to h
        form: Diagonal form with congruence condition

    Returns:
        Exact growth constant
    """
    if k < 1 or gcd(h, k) != 1:
        raise DomainError(f"cusp {h}/{k} needs gcd(h, k) = 1 and k >= 1", value=(h, k))
    r, M = form.r, form.M
    value = CycNum.rational(1)
    for alpha in form.alpha:
        factor = _eval(h * alpha * M * M, 2 * h * r * alpha * M, k)
        if factor.is_zero():
            return CycNum.zero()
        value = value * factor * root_of_unity(k, r * r * h * alpha)
    discriminant_part = form.character_numerator
    scale = Fraction(-1, 4 * k * k * M ** 4 * discriminant_part)
    return value * sqrt_int(discriminant_part).scale(scale)


def theta_cusp_growth_1248(h: int, k: int, r: int, M: int) -> CycNum:
    """
    Closed form of theta_cusp_growth for alpha = (1, 2, 4, 8).

    When the 2-adic valuation of r exceeds that of M the residue is
    replaced by r + M, which leaves the congruence class unchanged.

    Raises:
        DomainError: If gcd(h, k) != 1 or gcd(M, r) is not 1, 2 or 4
    """
    if k < 1 or gcd(h, k) != 1:
        raise DomainError(f"cusp {h}/{k} needs gcd(h, k) = 1 and k >= 1", value=(h, k))
    if r == 0 or gcd(M, r) not in (1, 2, 4):
        raise DomainError("gcd(M, r) must be 1, 2 or 4", value=(r, M))
    if (r & -r) > (M & -M):
        r += M
    s = SpecialSpec(h=h % k, k=k, r=r, M=M)
    h = s.h
    kappa, mu, varrho = s.kappa, s.mu, s.varrho
    g0, r0, M0 = s.g0, s.r0, s.M0
    n = s.k0 // g0

    if s.g1 != 1 or varrho < min(mu, kappa - mu) - 1:
        return CycNum.zero()

    if kappa <= 2 * mu or (kappa == 2 * mu + 1 and varrho == mu - 1):
        delta0 = min(kappa, 2 * varrho)
        modulus = (1 << (kappa - delta0)) * g0
        exponent = h * r0 * r0 * (1 << (2 * varrho - delta0)) * 15 * mod_inverse(n, modulus)
        scale = -Fraction(2) ** (2 * kappa - 4 * mu - 5) * Fraction(g0 * g0, M0 ** 4)
        return root_of_unity(modulus, exponent).scale(scale)

    if kappa >= 2 * mu + 5 and varrho == mu:
        exponent = h * r0 * r0 * 15 * mod_inverse((1 << (kappa - 2 * mu)) * n, g0)
        return root_of_unity(g0, exponent).scale(Fraction(g0 * g0, M0 ** 4))

    return CycNum.zero()


def gauss_record(a: int, b: int, c: int, digits: int = 30) -> GaussRecord:
    """Evaluate G(a, b; c) and package it for a JSON report."""
    value = gauss_eval(a, b, c)
    z = embed(value, digits)
    return GaussRecord(
        a=a,
        b=b,
        c=c,
        order=value.order,
        value_basis=value.basis_strings(),
        complex_approx=(z.real, z.imag),
    )


# Sweep helpers. Each takes a chunk of work and returns the failing cases,
# so they can be handed to workers.run_chunked.

def check_gauss_moduli(moduli: Sequence[int]) -> List[Tuple[int, int, int]]:
    """(a, b, c) with gauss_eval != gauss_direct, for |a|, |b| <= 2c."""
    failures = []
    for c in moduli:
        for a in range(-2 * c, 2 * c + 1):
            for b in range(-2 * c, 2 * c + 1):
                if _eval(a, b, c) != _direct(a, b, c):
                    failures.append((a, b, c))
        logger.debug("checked Gauss sums modulo %d", c)
    return failures


def check_special_moduli(
    moduli: Sequence[int],
    pairs: Iterable[Tuple[int, int]] = POLYGON_PAIRS,
    ells: Iterable[int] = (0, 1, 2, 3),
) -> List[Tuple[int, int, int, int, int]]:
    """(h, k, l, r, M) where gauss_special disagrees with direct summation."""
    pairs, ells = list(pairs), list(ells)
    failures = []
    for k in moduli:
        for h in range(k):
            if gcd(h, k) != 1:
                continue
            for r, M in pairs:
                for ell in ells:
                    spec = SpecialSpec(h=h, k=k, ell=ell, r=r, M=M)
                    if gauss_special(spec) != special_direct(spec):
                        failures.append((h, k, ell, r, M))
    return failures


def check_corollary_moduli(
    moduli: Sequence[int],
    pairs: Iterable[Tuple[int, int]] = POLYGON_PAIRS,
) -> List[Tuple[int, int, int, int]]:
    """(h, k, r, M) where the (1, 2, 4, 8) closed form disagrees with the product formula."""
    pairs = list(pairs)
    failures = []
    for k in moduli:
        for h in range(k):
            if gcd(h, k) != 1:
                continue
            for r, M in pairs:
                form = FormSpec(r=r, M=M)
                if theta_cusp_growth_1248(h, k, r, M) != theta_cusp_growth(h, k, form):
                    failures.append((h, k, r, M))
    return failures


def modulus_law_holds(c: int, tol: float = 1e-8) -> bool:
    """|G(a, 0; c)|^2 lies in {0, c, 2c} for every a coprime to c."""
    for a in range(1, c + 1):
        if gcd(a, c) != 1:
            continue
        size = abs(embed(_eval(a, 0, c))) ** 2
        if not any(abs(size - target) < tol * max(1, c) for target in (0, c, 2 * c)):
            return False
    return True


__all__ = [
    "POLYGON_PAIRS",
    "gauss_direct",
    "gauss_eval",
    "gauss_special",
    "special_direct",
    "quadratic_gauss_sum",
    "theta_cusp_growth",
    "theta_cusp_growth_1248",
    "gauss_record",
    "check_gauss_moduli",
    "check_special_moduli",
    "check_corollary_moduli",
    "modulus_law_holds",
]
