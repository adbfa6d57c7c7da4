"""
Cyclotomic Field Arithmetic
---------------------------
Exact elements of Q(zeta_nu) stored in the power basis modulo the nu-th
cyclotomic polynomial. Gauss sums and cusp growth constants live here.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Tuple, Union

import mpmath

from .arith import kronecker, lcm, moebius, divisors, squarefree_decomposition, prime_divisors
from .exceptions import DomainError

Scalar = Union[int, Fraction]


def _poly_times_binomial(poly: List[int], d: int) -> List[int]:
    """Multiply poly by (x^d - 1)."""
    out = [0] * (len(poly) + d)
    for i, c in enumerate(poly):
        if c:
            out[i + d] += c
            out[i] -= c
    return out


def _poly_divide_binomial(poly: List[int], d: int) -> List[int]:
    """Exact division of poly by (x^d - 1)."""
    rem = list(poly)
    quotient = [0] * (len(poly) - d)
    for i in range(len(rem) - 1, d - 1, -1):
        c = rem[i]
        if c:
            quotient[i - d] = c
            rem[i] = 0
            rem[i - d] += c
    if any(rem):
        raise ArithmeticError(f"x^{d} - 1 does not divide the polynomial")
    return quotient


@lru_cache(maxsize=None)
def min_poly(nu: int) -> Tuple[int, ...]:
    """
    The nu-th cyclotomic polynomial, coefficients from x^0 upwards.

    Built as prod over d | nu of (x^d - 1)^mu(nu/d), dividing out the
    negative-exponent factors exactly.
    """
    if nu < 1:
        raise DomainError("cyclotomic order must be positive", value=nu)
    numerator = [1]
    denominators = []
    for d in divisors(nu):
        mu = moebius(nu // d)
        if mu == 1:
            numerator = _poly_times_binomial(numerator, d)
        elif mu == -1:
            denominators.append(d)
    for d in denominators:
        numerator = _poly_divide_binomial(numerator, d)
    while len(numerator) > 1 and numerator[-1] == 0:
        numerator.pop()
    return tuple(numerator)


@lru_cache(maxsize=None)
def _reduction_table(nu: int) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    """Degree of Phi_nu and its nonzero lower terms (exponent, coefficient)."""
    poly = min_poly(nu)
    degree = len(poly) - 1
    lower = tuple((j, c) for j, c in enumerate(poly[:-1]) if c)
    return degree, lower


def _reduce(nu: int, vec: List[int]) -> List[int]:
    """Reduce an integer polynomial modulo x^nu - 1, then modulo Phi_nu."""
    if len(vec) > nu:
        folded = [0] * nu
        for i, c in enumerate(vec):
            if c:
                folded[i % nu] += c
        vec = folded
    else:
        vec = list(vec) + [0] * (nu - len(vec))
    degree, lower = _reduction_table(nu)
    for i in range(nu - 1, degree - 1, -1):
        c = vec[i]
        if c:
            vec[i] = 0
            shift = i - degree
            for j, a in lower:
                vec[shift + j] -= c * a
    return vec[:degree]


class CycNum:
    """
    Element of Q(zeta_order), kept as an integer vector over a common
    positive denominator in the reduced power basis.
    """

    __slots__ = ("order", "_num", "_den")

    def __init__(self, order: int, numerators: Iterable[int], denominator: int = 1):
        if order < 1:
            raise DomainError("cyclotomic order must be positive", value=order)
        if denominator == 0:
            raise ZeroDivisionError("zero denominator")
        num = list(numerators)
        degree = _reduction_table(order)[0]
        if len(num) != degree:
            num = _reduce(order, num)
        if denominator < 0:
            num = [-c for c in num]
            denominator = -denominator
        g = denominator
        for c in num:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if not any(num):
            denominator = 1
        elif g > 1:
            num = [c // g for c in num]
            denominator //= g
        self.order = order
        self._num = tuple(num)
        self._den = denominator

    # construction

    @classmethod
    def from_exponents(cls, order: int, terms: Dict[int, Scalar]) -> "CycNum":
        """Build sum of coef * zeta_order^exp from an exponent map."""
        den = 1
        for coef in terms.values():
            if isinstance(coef, Fraction):
                den = den * coef.denominator // gcd(den, coef.denominator)
        vec = [0] * order
        for exp, coef in terms.items():
            if coef:
                vec[exp % order] += int(Fraction(coef) * den)
        return cls(order, _reduce(order, vec), den)

    @classmethod
    def rational(cls, value: Scalar, order: int = 1) -> "CycNum":
        return cls.from_exponents(order, {0: Fraction(value)})

    @classmethod
    def zero(cls, order: int = 1) -> "CycNum":
        return cls.from_exponents(order, {})

    # views

    @property
    def degree(self) -> int:
        return len(self._num)

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("value is not rational", value=self)
        return Fraction(self._num[0], self._den) if self._num else Fraction(0)

    # coercion

    def coerce(self, order: int) -> "CycNum":
        """Re-express in Q(zeta_order); order must be a multiple of self.order."""
        if order == self.order:
            return self
        if order % self.order:
            raise DomainError(f"cannot coerce order {self.order} into {order}", value=order)
        step = order // self.order
        vec = [0] * order
        for j, c in enumerate(self._num):
            if c:
                vec[j * step] += c
        return CycNum(order, _reduce(order, vec), self._den)

    @staticmethod
    def _lift(value) -> "CycNum":
        if isinstance(value, CycNum):
            return value
        if isinstance(value, (int, Fraction)):
            return CycNum.rational(value)
        return NotImplemented

    def _common(self, other: "CycNum") -> Tuple["CycNum", "CycNum"]:
        order = lcm(self.order, other.order)
        return self.coerce(order), other.coerce(order)

    # field operations

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        num = [x * b._den + y * a._den for x, y in zip(a._num, b._num)]
        return CycNum(a.order, num, a._den * b._den)

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.order, [-c for c in self._num], self._den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._common(other)
        order = a.order
        left = [(i, c) for i, c in enumerate(a._num) if c]
        right = [(j, c) for j, c in enumerate(b._num) if c]
        vec = [0] * (2 * len(a._num) + 1)
        for i, x in left:
            for j, y in right:
                vec[i + j] += x * y
        return CycNum(order, _reduce(order, vec), a._den * b._den)

    __rmul__ = __mul__

    def scale(self, factor: Scalar) -> "CycNum":
        factor = Fraction(factor)
        return CycNum(
            self.order,
            [c * factor.numerator for c in self._num],
            self._den * factor.denominator,
        )

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int) -> "CycNum":
        if exponent < 0:
            raise DomainError("only nonnegative powers are supported", value=exponent)
        result = CycNum.rational(1, self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "CycNum":
        """Complex conjugate, zeta -> zeta^-1."""
        return CycNum.from_exponents(
            self.order,
            {-j: Fraction(c, self._den) for j, c in enumerate(self._num) if c},
        )

    # comparison

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return False
        a, b = self._common(other)
        return a._den == b._den and a._num == b._num

    __hash__ = None

    def __repr__(self) -> str:
        terms = [f"{Fraction(c, self._den)}*z^{j}" for j, c in enumerate(self._num) if c]
        return f"CycNum({self.order}: {' + '.join(terms) or '0'})"

    def basis_strings(self) -> List[str]:
        return [str(c) for c in self.coeffs]


def root_of_unity(nu: int, j: int = 1) -> CycNum:
    """zeta_nu^j."""
    if nu < 1:
        raise DomainError("root of unity order must be positive", value=nu)
    return CycNum.from_exponents(nu, {j % nu: 1})


def add(a: CycNum, b: CycNum) -> CycNum:
    return a + b


def mul(a: CycNum, b: CycNum) -> CycNum:
    return a * b


def scalar_mul(factor: Scalar, x: CycNum) -> CycNum:
    return x.scale(factor)


def negate(x: CycNum) -> CycNum:
    return -x


def equals(a: CycNum, b: CycNum) -> bool:
    return a == b


def embed(x: CycNum, precision: int = 30) -> complex:
    """Numerical value sum c_j exp(2 pi i j / nu) evaluated at the given digits."""
    with mpmath.workdps(precision):
        total = mpmath.mpc(0)
        for j, c in enumerate(x.coeffs):
            if c:
                total += mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(mpmath.mpf(2 * j) / x.order)
        return complex(total)


def eps(d: int) -> CycNum:
    """epsilon_d = 1 if d = 1 (mod 4), i if d = 3 (mod 4)."""
    if d % 2 == 0:
        raise DomainError("epsilon is only defined for odd d", value=d)
    return root_of_unity(4, 0 if d % 4 == 1 else 1)


def eps_inverse(d: int) -> CycNum:
    if d % 2 == 0:
        raise DomainError("epsilon is only defined for odd d", value=d)
    return root_of_unity(4, 0 if d % 4 == 1 else 3)


SQRT2 = CycNum.from_exponents(8, {1: 1, 7: 1})


@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> CycNum:
    if p == 2:
        return SQRT2
    gauss = CycNum.from_exponents(p, {t: kronecker(t, p) for t in range(1, p)})
    return gauss * eps_inverse(p)


def sqrt_int(n: int) -> CycNum:
    """
    Positive square root of n as a cyclotomic integer.

    Uses sqrt(2) = zeta_8 + zeta_8^-1 and, for odd primes p, the quadratic
    Gauss sum identity sum (t/p) zeta_p^t = epsilon_p sqrt(p).
    """
    if n < 0:
        raise DomainError("sqrt_int needs n >= 0", value=n)
    if n == 0:
        return CycNum.zero()
    s, t = squarefree_decomposition(n)
    value = CycNum.rational(s)
    for p in prime_divisors(t):
        value = value * _sqrt_prime(p)
    return value


def phase(numerator: int, denominator: int) -> CycNum:
    """exp(2 pi i numerator / denominator) as a root of unity."""
    return root_of_unity(denominator, numerator % denominator)


def unit_circle_check(nu: int) -> bool:
    """zeta_nu^nu == 1 and Phi_nu(zeta_nu) == 0, exactly."""
    zeta = root_of_unity(nu, 1)
    poly_value = CycNum.zero(nu)
    for j, c in enumerate(min_poly(nu)):
        if c:
            poly_value = poly_value + root_of_unity(nu, j).scale(c)
    return zeta ** nu == 1 and poly_value.is_zero()
