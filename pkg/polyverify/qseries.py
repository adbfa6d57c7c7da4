"""
Q-Series Operator Algebra
-------------------------
Truncated q-expansions with exact rational coefficients, the sieving and
V operators acting on them, and the operator recipes that express the
Eisenstein part of each polygonal theta series as a combination of
sieved and dilated copies of E_2.
"""

import logging
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from sympy.ntheory.modular import solve_congruence

from .arith import mod_inverse, sigma_table
from .exceptions import DomainError, UnsupportedPolygonError
from .models import FormSpec

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
Operator = Tuple  # ("S", modulus, residue) or ("V", factor)
Word = Tuple[Operator, ...]
NormalForm = Tuple[int, int, int]  # (M1, m, M2): sieve S_{M1,m} then V_{M2}


class QSeries:
    """
    Truncated Fourier expansion sum c(n) q^n for 0 <= n <= truncation.

    Coefficients are stored sparsely; an absent index means zero. Instances
    are immutable and every operator returns a new series.
    """

    __slots__ = ("truncation", "_coeffs")

    def __init__(self, truncation: int, coeffs: Optional[Dict[int, Scalar]] = None):
        if truncation < 0:
            raise DomainError("truncation must be nonnegative", value=truncation)
        self.truncation = truncation
        clean = {}
        for n, c in (coeffs or {}).items():
            if n < 0 or n > truncation:
                raise DomainError(f"index {n} outside 0..{truncation}", value=n)
            if c:
                clean[n] = Fraction(c)
        self._coeffs = clean

    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or n > self.truncation:
            raise IndexError(f"index {n} outside 0..{self.truncation}")
        return self._coeffs.get(n, Fraction(0))

    coeff = __getitem__

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        """Nonzero coefficients in increasing index order."""
        for n in sorted(self._coeffs):
            yield n, self._coeffs[n]

    def support(self) -> List[int]:
        return sorted(self._coeffs)

    def to_list(self) -> List[Fraction]:
        return [self[n] for n in range(self.truncation + 1)]

    def truncate(self, truncation: int) -> "QSeries":
        truncation = min(truncation, self.truncation)
        return QSeries(truncation, {n: c for n, c in self._coeffs.items() if n <= truncation})

    def _align(self, other: "QSeries") -> Tuple["QSeries", "QSeries"]:
        n = min(self.truncation, other.truncation)
        return self.truncate(n), other.truncate(n)

    def __add__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._align(other)
        total = dict(a._coeffs)
        for n, c in b._coeffs.items():
            total[n] = total.get(n, 0) + c
        return QSeries(a.truncation, total)

    def __neg__(self) -> "QSeries":
        return QSeries(self.truncation, {n: -c for n, c in self._coeffs.items()})

    def __sub__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Scalar) -> "QSeries":
        factor = Fraction(factor)
        return QSeries(self.truncation, {n: c * factor for n, c in self._coeffs.items()})

    def __mul__(self, factor):
        if isinstance(factor, (int, Fraction)):
            return self.scale(factor)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return False
        a, b = self._align(other)
        return a._coeffs == b._coeffs

    __hash__ = None

    def __repr__(self) -> str:
        head = ", ".join(f"{n}: {c}" for n, c in list(self.items())[:6])
        return f"QSeries(N={self.truncation}, {{{head}{', ...' if len(self._coeffs) > 6 else ''}}})"

    @classmethod
    def zero(cls, truncation: int) -> "QSeries":
        return cls(truncation)

    @classmethod
    def from_list(cls, values: Iterable[Scalar]) -> "QSeries":
        values = list(values)
        return cls(len(values) - 1, dict(enumerate(values)))


def e2(N: int) -> QSeries:
    """E_2 = 1 - 24 sum sigma(n) q^n up to q^N."""
    if N < 0:
        raise DomainError("truncation must be nonnegative", value=N)
    table = sigma_table(N)
    coeffs = {n: -24 * table[n] for n in range(1, N + 1)}
    coeffs[0] = 1
    return QSeries(N, coeffs)


def sieve(f: QSeries, M: int, m: int) -> QSeries:
    """S_{M,m}: keep the coefficients with n = m (mod M)."""
    if M < 1:
        raise DomainError("sieve modulus must be positive", value=M)
    m %= M
    return QSeries(f.truncation, {n: c for n, c in f.items() if n % M == m})


def v_op(f: QSeries, delta: int) -> QSeries:
    """V_delta: move the coefficient at n to delta * n, dropping indices past the truncation."""
    if delta < 1:
        raise DomainError("V-operator factor must be positive", value=delta)
    N = f.truncation
    return QSeries(N, {delta * n: c for n, c in f.items() if delta * n <= N})


def commute_check(f: QSeries, M1: int, M2: int, m: int) -> bool:
    """
    Check f|V_{M1}|S_{M2,m} against the commuted form.

    With d = gcd(M1, M2), M1 = d mu1 and M2 = d mu2 the right side is
    f|S_{mu2, inv(mu1) m/d}|V_{M1} when d | m and the zero series otherwise.
    """
    left = sieve(v_op(f, M1), M2, m)
    d = gcd(M1, M2)
    if m % d:
        right = QSeries.zero(f.truncation)
    else:
        mu1, mu2 = M1 // d, M2 // d
        right = v_op(sieve(f, mu2, mod_inverse(mu1, mu2) * (m // d)), M1)
    return left == right


def theta_series(form: FormSpec, N: int) -> QSeries:
    """Theta series with coefficients s_{r,M,alpha}(n) for n <= N."""
    from .polygonal import theta_counts

    return QSeries.from_list(theta_counts(form, N))


# Operator words apply left to right: ("V", 5) then ("S", 40, 15) is E_2|V_5|S_{40,15}.
RECIPES: Dict[int, Tuple[Fraction, Tuple[Tuple[int, Word], ...]]] = {
    7: (Fraction(-1, 5760), (
        (1, (("S", 40, 15),)),
        (-1, (("V", 5), ("S", 40, 15))),
    )),
    9: (Fraction(-1, 16128), (
        (1, (("S", 56, 39),)),
    )),
    10: (Fraction(-1, 6144), (
        (1, (("V", 4), ("S", 64, 28))),
    )),
    11: (Fraction(-1, 41472), (
        (1, (("S", 72, 15),)),
    )),
    12: (Fraction(-1, 2880), tuple(
        (coef, (("V", delta), ("S", 80, 0)))
        for delta, coef in (
            (16, 1), (32, -1), (256, 8), (512, -32),
            (80, -1), (160, 1), (1280, -8), (2560, 32),
        )
    )),
    13: (Fraction(-1, 63360), (
        (1, (("S", 88, 71),)),
    )),
    14: (Fraction(-1, 18432), (
        (1, (("V", 4), ("S", 96, 60))),
        (-1, (("V", 12), ("S", 96, 60))),
    )),
}

SUPPORTED_POLYGONS: Tuple[int, ...] = tuple(sorted(RECIPES))


def recipe(m: int) -> Tuple[Fraction, Tuple[Tuple[int, Word], ...]]:
    """Scale and signed operator words of the Eisenstein identity for m."""
    if m not in RECIPES:
        raise UnsupportedPolygonError(m)
    return RECIPES[m]


def normalize_word(word: Word) -> Optional[NormalForm]:
    """
    Rewrite an operator word as a single sieve followed by a single V.

    Returns (M1, m, M2) with word = S_{M1,m}|V_{M2}, or None when the word
    annihilates every series (incompatible sieves).
    """
    M1, m, M2 = 1, 0, 1
    for op in word:
        if op[0] == "V":
            M2 *= op[1]
        elif op[0] == "S":
            modulus, residue = op[1], op[2] % op[1]
            d = gcd(M2, modulus)
            if residue % d:
                return None
            mu1, mu2 = M2 // d, modulus // d
            pulled = mod_inverse(mu1, mu2) * (residue // d) % mu2
            joined = solve_congruence((m, M1), (pulled, mu2))
            if joined is None:
                return None
            m, M1 = int(joined[0]), int(joined[1])
        else:
            raise DomainError(f"unknown operator {op!r}", value=op)
    return M1, m % M1, M2


def apply_word(f: QSeries, word: Word) -> QSeries:
    for op in word:
        if op[0] == "V":
            f = v_op(f, op[1])
        elif op[0] == "S":
            f = sieve(f, op[1], op[2])
        else:
            raise DomainError(f"unknown operator {op!r}", value=op)
    return f


def apply_normal(f: QSeries, form: Optional[NormalForm]) -> QSeries:
    if form is None:
        return QSeries.zero(f.truncation)
    M1, m, M2 = form
    return v_op(sieve(f, M1, m), M2)


def normalized_recipe(m: int) -> Tuple[Fraction, List[Tuple[int, NormalForm]]]:
    """Recipe for m with every word in sieve-then-V normal form, zero words dropped."""
    scale, terms = recipe(m)
    normal = []
    for coef, word in terms:
        form = normalize_word(word)
        if form is not None:
            normal.append((coef, form))
    return scale, normal


def eisenstein_component(m: int, N: int) -> QSeries:
    """
    Eisenstein part of the theta series for polygon index m, up to q^N.

    V-operators only read indices below their output, so E_2 truncated at N
    already gives every coefficient up to N exactly.

    Raises:
        UnsupportedPolygonError: If m has no identity attached
    """
    scale, terms = recipe(m)
    base = e2(N)
    total = QSeries.zero(N)
    for coef, word in terms:
        total = total + apply_word(base, word).scale(coef)
    logger.debug("built Eisenstein component for m=%d up to q^%d", m, N)
    return total.scale(scale)


SERIES_KINDS = ("eisenstein", "theta")


def polygon_series(m: int, kind: str, N: int) -> QSeries:
    """Eisenstein component or theta series attached to polygon index m."""
    if kind == "eisenstein":
        return eisenstein_component(m, N)
    if kind == "theta":
        return theta_series(FormSpec.for_polygon(m), N)
    raise DomainError(f"unknown series kind {kind!r}, expected one of {SERIES_KINDS}", value=kind)


def series_rows(f: QSeries) -> List[Tuple[int, int, int]]:
    """(n, numerator, denominator) for every index, as written to CSV."""
    return [(n, c.numerator, c.denominator) for n, c in enumerate(f.to_list())]
