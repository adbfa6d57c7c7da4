"""Pydantic models for polyverify data structures."""

from fractions import Fraction
from functools import reduce
from math import gcd, prod
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .exceptions import DomainError


def _split2(n: int) -> Tuple[int, int]:
    n = abs(n)
    v = (n & -n).bit_length() - 1
    return v, n >> v


class TwoAdicSplit(BaseModel):
    """n = 2**valuation * odd_part."""
    model_config = ConfigDict(frozen=True)

    valuation: int = Field(ge=0)
    odd_part: int = Field(ge=1)

    @property
    def value(self) -> int:
        return self.odd_part << self.valuation


class FormSpec(BaseModel):
    """
    Diagonal form sum(alpha_j * x_j**2) with congruence x_j = r (mod M).

    When built from a polygon index m the residue is r = m and the modulus
    M = 2(m-2), which is the shape produced by completing the square.
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    alpha: Tuple[int, ...] = (1, 2, 4, 8)
    r: int
    M: int
    m: Optional[int] = None

    @model_validator(mode="after")
    def _check_shape(self) -> "FormSpec":
        if not self.alpha or any(a < 1 for a in self.alpha):
            raise DomainError(f"coefficients must be positive, got {self.alpha}", value=self.alpha)
        if self.M < 1:
            raise DomainError(f"modulus must be positive, got {self.M}", value=self.M)
        if self.m is not None:
            if self.m < 3:
                raise DomainError(f"polygon index must be at least 3, got {self.m}", value=self.m)
            if self.r != self.m or self.M != 2 * (self.m - 2):
                raise DomainError(
                    f"m={self.m} requires r={self.m} and M={2 * (self.m - 2)}", value=(self.r, self.M)
                )
        return self

    @classmethod
    def for_polygon(cls, m: int, alpha: Tuple[int, ...] = (1, 2, 4, 8)) -> "FormSpec":
        return cls(alpha=tuple(alpha), r=m, M=2 * (m - 2), m=m)

    @property
    def level(self) -> int:
        """N_alpha = 4 lcm(alpha)."""
        return 4 * reduce(lambda x, y: x * y // gcd(x, y), self.alpha, 1)

    @property
    def discriminant(self) -> int:
        """D_alpha = 2**len(alpha) * prod(alpha)."""
        return 2 ** len(self.alpha) * prod(self.alpha)

    @property
    def theta_level(self) -> int:
        return self.level * self.M ** 2

    @property
    def theta_sublevel(self) -> int:
        return self.M

    @property
    def character_numerator(self) -> int:
        return prod(self.alpha)

    @property
    def residue(self) -> int:
        return self.r % self.M


class GaussSumSpec(BaseModel):
    """Parameters of G(a, b; c) = sum over l mod c of e((a l^2 + b l) / c)."""
    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    c: int

    @model_validator(mode="after")
    def _check_modulus(self) -> "GaussSumSpec":
        if self.c < 1:
            raise DomainError("Gauss sum modulus must be positive", value=self.c)
        return self


class SpecialSpec(BaseModel):
    """
    Parameters of the theta-type sum e(2^l h r^2 / k) G(2^l h M^2, 2^(l+1) h r M; k).

    The derived 2-adic bookkeeping follows k = 2^kappa k0, M = 2^mu M0,
    r = 2^varrho r0, g0 = gcd(M0, k0), g1 = gcd(g0, k0/g0).
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    h: int
    k: int
    ell: int = 0
    r: int
    M: int

    @model_validator(mode="after")
    def _check_invariants(self) -> "SpecialSpec":
        if self.k < 1 or self.M < 1 or self.ell < 0:
            raise DomainError("k and M must be positive and l nonnegative", value=(self.k, self.M, self.ell))
        if gcd(self.h, self.k) != 1:
            raise DomainError(f"h={self.h} and k={self.k} are not coprime", value=(self.h, self.k))
        if self.r == 0:
            raise DomainError("residue r must be nonzero", value=self.r)
        if self.varrho > self.mu:
            raise DomainError("2-adic valuation of r exceeds that of M", value=(self.r, self.M))
        if gcd(self.M, self.r) not in (1, 2, 4):
            raise DomainError("gcd(M, r) must be 1, 2 or 4", value=(self.r, self.M))
        return self

    @property
    def kappa(self) -> int:
        return _split2(self.k)[0]

    @property
    def k0(self) -> int:
        return _split2(self.k)[1]

    @property
    def mu(self) -> int:
        return _split2(self.M)[0]

    @property
    def M0(self) -> int:
        return _split2(self.M)[1]

    @property
    def varrho(self) -> int:
        return _split2(self.r)[0]

    @property
    def r0(self) -> int:
        """Odd part of r, carrying the sign of r."""
        odd = _split2(self.r)[1]
        return odd if self.r > 0 else -odd

    @property
    def g0(self) -> int:
        return gcd(self.M0, self.k0)

    @property
    def g1(self) -> int:
        g0 = self.g0
        return gcd(g0, self.k0 // g0)

    @property
    def delta(self) -> int:
        return min(self.ell + 2 * self.varrho, self.kappa)


class CuspRep(BaseModel):
    """Cusp h/k with gcd(h, k) = 1."""
    model_config = ConfigDict(frozen=True)

    h: int
    k: int

    @model_validator(mode="after")
    def _check_reduced(self) -> "CuspRep":
        if self.k < 1 or gcd(self.h, self.k) != 1:
            raise DomainError(f"cusp {self.h}/{self.k} is not reduced", value=(self.h, self.k))
        return self

    def __str__(self) -> str:
        return f"{self.h}/{self.k}"


class BoundReport(BaseModel):
    """One row of the explicit bound pipeline."""
    model_config = ConfigDict(populate_by_name=True, arbitrary_types_allowed=True)

    m: int
    r: int
    M: int
    level: int
    sublevel: int
    eis_slope: Fraction = Field(alias="eisSlope")
    norm_sq_bound: str = Field(alias="normSqBound")
    norm_bound: str = Field(alias="normBound")
    coeff_bound_const: str = Field(alias="coeffBoundConst")
    crossover_n: int = Field(alias="crossoverN")
    C_m: int = Field(alias="finalConstant")
    exact_terms: Dict[str, Fraction] = Field(default_factory=dict, alias="exactTerms")
    audit: Dict[str, Any] = Field(default_factory=dict)


class ConjectureReport(BaseModel):
    """Failures of p_m(l1) + 2p_m(l2) + 4p_m(l3) + 8p_m(l4) = n up to a bound."""
    model_config = ConfigDict(populate_by_name=True)

    m: int
    max: int
    failures: List[int] = Field(default_factory=list)
    witness_samples: List[Dict[str, Any]] = Field(default_factory=list, alias="witnessSamples")

    @property
    def universal_up_to_max(self) -> bool:
        return not self.failures


class GrowthMismatch(BaseModel):
    """A cusp where theta growth and Eisenstein growth disagree."""
    h: int
    k: int
    theta: str
    eisenstein: str


class GrowthReport(BaseModel):
    """Outcome of a cusp growth sweep for one polygon index."""
    model_config = ConfigDict(populate_by_name=True)

    m: int
    kmax: int
    mode: str = "sweep"
    checked: int = 0
    mismatches: List[GrowthMismatch] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


class DecompositionRow(BaseModel):
    """s(n) = a(n) + b(n) at one index."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    s: int
    a: Fraction
    b: Fraction


class GaussRecord(BaseModel):
    """Serialisable value of one Gauss sum evaluation."""
    model_config = ConfigDict(populate_by_name=True)

    a: int
    b: int
    c: int
    order: int
    value_basis: List[str] = Field(alias="valueBasis")
    complex_approx: Tuple[float, float] = Field(alias="complexApprox")


class SuiteResult(BaseModel):
    """Result of one self-test family."""
    name: str
    passed: bool
    checked: int = 0
    failures: List[str] = Field(default_factory=list)
    detail: Optional[str] = None
