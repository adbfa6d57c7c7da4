"""
Arithmetic Primitives
---------------------
Exact integer and rational helpers shared by every other module:
divisor sums, the Kronecker symbol, modular inverses and 2-adic splits.
"""

from fractions import Fraction
from functools import reduce
from math import gcd as _gcd, isqrt
from typing import List, Union

from sympy import divisors as _divisors
from sympy import factorint, mobius, mod_inverse as _mod_inverse, totient
from sympy.functions.combinatorial.numbers import jacobi_symbol

from .exceptions import DomainError
from .models import TwoAdicSplit

Rat = Fraction
Number = Union[int, Fraction]


def as_integer(x: Number):
    """Return ``x`` as an int when it is integral, otherwise None."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return None


def sigma(n: Number, k: int = 1) -> int:
    """
    Divisor power sum sigma_k(n).

    Non-integral and non-positive arguments give 0, so that terms like
    sigma(n/5) drop out when 5 does not divide n.

    Args:
        n: Integer or rational argument
        k: Nonnegative exponent

    Returns:
        Sum of d**k over the positive divisors d of n
    """
    if k < 0:
        raise DomainError("sigma exponent must be nonnegative", value=k)
    value = as_integer(n)
    if value is None or value <= 0:
        return 0
    total = 1
    for p, e in factorint(value).items():
        if k == 0:
            total *= e + 1
        else:
            pk = p ** k
            total *= (pk ** (e + 1) - 1) // (pk - 1)
    return total


def sigma_table(n_max: int, k: int = 1) -> List[int]:
    """Return [sigma_k(0), ..., sigma_k(n_max)] with sigma_k(0) = 0."""
    table = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        dk = d ** k
        for multiple in range(d, n_max + 1, d):
            table[multiple] += dk
    return table


def kronecker(a: int, n: int) -> int:
    """
    Kronecker symbol (a/n), extending the Jacobi symbol to all n.

    Args:
        a: Top argument
        n: Bottom argument (any integer)

    Returns:
        -1, 0 or 1
    """
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * int(jacobi_symbol(a % n, n))


def mod_inverse(a: int, b: int) -> int:
    """
    Inverse of a modulo b, written [a]_b.

    Raises:
        DomainError: If gcd(a, b) != 1 or b < 1
    """
    if b < 1:
        raise DomainError("modulus must be positive", value=b)
    if b == 1:
        return 0
    if _gcd(a, b) != 1:
        raise DomainError(f"{a} is not invertible modulo {b}", value=(a, b))
    return int(_mod_inverse(a % b, b))


def two_adic_split(n: int) -> TwoAdicSplit:
    """Write n = 2**valuation * odd_part with odd_part odd."""
    if n < 1:
        raise DomainError("two_adic_split needs a positive integer", value=n)
    valuation = (n & -n).bit_length() - 1
    return TwoAdicSplit(valuation=valuation, odd_part=n >> valuation)


def euler_phi(n: int) -> int:
    """Euler's totient."""
    if n < 1:
        raise DomainError("euler_phi needs a positive integer", value=n)
    return int(totient(n))


def moebius(n: int) -> int:
    """Möbius function."""
    if n < 1:
        raise DomainError("moebius needs a positive integer", value=n)
    return int(mobius(n))


def divisors(n: int) -> List[int]:
    """Sorted positive divisors of n."""
    if n < 1:
        raise DomainError("divisors needs a positive integer", value=n)
    return [int(d) for d in _divisors(n)]


def prime_divisors(n: int) -> List[int]:
    """Sorted primes dividing n."""
    return sorted(int(p) for p in factorint(n))


def gcd(*values: int) -> int:
    return reduce(_gcd, values, 0)


def lcm(*values: int) -> int:
    return reduce(lambda x, y: x * y // _gcd(x, y) if x and y else 0, values, 1)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def squarefree_decomposition(n: int):
    """Return (s, t) with n = s**2 * t and t squarefree."""
    if n < 1:
        raise DomainError("squarefree_decomposition needs n >= 1", value=n)
    s, t = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            t *= p
    return s, t
