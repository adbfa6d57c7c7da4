"""
Cusps and Growth Matching
-------------------------
Cusps of Gamma_1(N), the growth of sieved and dilated E_2 towards a cusp,
and the driver that compares the theta-side and Eisenstein-side growth of
each polygonal identity.
"""

import logging
from fractions import Fraction
from functools import partial
from math import gcd
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .arith import divisors, euler_phi, mod_inverse
from .cyclotomic import CycNum
from .exceptions import DomainError
from .gauss import theta_cusp_growth_1248
from .models import CuspRep, FormSpec, GrowthMismatch, GrowthReport
from .qseries import normalized_recipe
from .workers import run_chunked

logger = logging.getLogger(__name__)

Row = Tuple[int, int]


def _canonical_classes(N: int) -> List[Tuple[int, int]]:
    """Pairs (c mod N, a mod gcd(c, N)) up to simultaneous sign, one per class."""
    classes = set()
    for c in range(N):
        d = gcd(c, N)
        for a in range(d):
            if gcd(a, d) != 1:
                continue
            partner = ((-c) % N, (-a) % d)
            classes.add(min((c, a), partner))
    return sorted(classes)


def cusp_reps(N: int) -> List[CuspRep]:
    """
    One representative a/c for every cusp of Gamma_1(N).

    Two cusps a/c and a'/c' are equivalent exactly when
    (c', a') = +-(c, a + j c) modulo N for some j, so the classes are the
    pairs (c mod N, a mod gcd(c, N)) up to sign. Each class is lifted to a
    fraction in lowest terms with 1 <= c <= N.
    """
    if N < 1:
        raise DomainError("level must be positive", value=N)
    reps = []
    for c, a in _canonical_classes(N):
        k = c if c else N
        step = gcd(c, N)
        h = a
        while gcd(h, k) != 1:
            h += step
        reps.append(CuspRep(h=h, k=k))
    return reps


def gamma1_cusp_count(N: int) -> int:
    """Number of cusps of Gamma_1(N)."""
    if N < 1:
        raise DomainError("level must be positive", value=N)
    small = {1: 1, 2: 2, 3: 2, 4: 3}
    if N in small:
        return small[N]
    return sum(euler_phi(d) * euler_phi(N // d) for d in divisors(N)) // 2


def cusp_orbits_bruteforce(N: int) -> List[FrozenSet[Row]]:
    """Orbits of bottom rows (c, d) mod N with gcd(c, d, N) = 1 under d -> d + c and negation."""
    if N < 1:
        raise DomainError("level must be positive", value=N)
    unseen = {(c, d) for c in range(N) for d in range(N) if gcd(gcd(c, d), N) == 1}
    orbits = []
    while unseen:
        start = min(unseen)
        orbit, stack = set(), [start]
        while stack:
            c, d = stack.pop()
            if (c, d) in orbit:
                continue
            orbit.add((c, d))
            stack.append((c, (d + c) % N))
            stack.append(((-c) % N, (-d) % N))
        unseen -= orbit
        orbits.append(frozenset(orbit))
    return orbits


def bottom_row(rep: CuspRep, N: int) -> Row:
    """Bottom row mod N of a matrix in SL_2(Z) sending infinity to h/k."""
    d = mod_inverse(rep.h % rep.k, rep.k)
    return rep.k % N, d % N


def e2_combo_cusp_growth(M1: int, m: int, M2: int, h: int, k: int) -> CycNum:
    """
    Growth of the completed E_2 after S_{M1,m} and V_{M2} towards h/k.

    (1 / (M1^3 M2^2)) sum over j mod M1 of gcd(h M1 M2 + j k, M1 k)^2 zeta_M1^(-j m).
    """
    if k < 1 or gcd(h, k) != 1:
        raise DomainError(f"cusp {h}/{k} needs gcd(h, k) = 1 and k >= 1", value=(h, k))
    if M1 < 1 or M2 < 1:
        raise DomainError("operator moduli must be positive", value=(M1, M2))
    weights: Dict[int, int] = {}
    for j in range(M1):
        g = gcd(h * M1 * M2 + j * k, M1 * k)
        exponent = (-j * m) % M1
        weights[exponent] = weights.get(exponent, 0) + g * g
    scale = Fraction(1, M1 ** 3 * M2 ** 2)
    return CycNum.from_exponents(M1, {e: w * scale for e, w in weights.items()})


def combo_growth(m: int, h: int, k: int) -> CycNum:
    """Growth of the Eisenstein side of the identity for m towards h/k."""
    scale, terms = normalized_recipe(m)
    total = CycNum.zero()
    for coef, (M1, residue, M2) in terms:
        total = total + e2_combo_cusp_growth(M1, residue, M2, h, k).scale(coef)
    return total.scale(scale)


def _growth_chunk(pairs: List[Tuple[int, int]], m: int) -> List[Tuple[int, int, str, str]]:
    form = FormSpec.for_polygon(m)
    mismatches = []
    for h, k in pairs:
        theta = theta_cusp_growth_1248(h, k, form.r, form.M)
        eisenstein = combo_growth(m, h, k)
        if theta != eisenstein:
            mismatches.append((h, k, repr(theta), repr(eisenstein)))
    return mismatches


def sweep_pairs(kmax: int) -> List[Tuple[int, int]]:
    return [(h, k) for k in range(1, kmax + 1) for h in range(k) if gcd(h, k) == 1]


def match_growth(
    m: int,
    kmax: int = 100,
    workers: int = 1,
    mode: str = "sweep",
    budget: int = 400,
    pairs: Optional[Sequence[Tuple[int, int]]] = None,
) -> GrowthReport:
    """
    Compare theta growth with Eisenstein growth at many cusps.

    Args:
        m: Polygon index with an identity
        kmax: Largest denominator in sweep mode
        workers: Worker processes
        mode: "sweep" (all coprime h/k with k <= kmax) or "orbits"
            (one representative per cusp of Gamma_1 at the theta level)
        budget: Largest level allowed in orbits mode
        pairs: Explicit (h, k) list, overriding mode

    Returns:
        GrowthReport listing every disagreement
    """
    if pairs is None:
        if mode == "sweep":
            pairs = sweep_pairs(kmax)
        elif mode == "orbits":
            level = FormSpec.for_polygon(m).theta_level
            if level > budget:
                raise DomainError(
                    f"level {level} exceeds the cusp budget {budget}; raise cusp_budget to sweep all orbits",
                    value=level,
                )
            pairs = [(rep.h, rep.k) for rep in cusp_reps(level)]
        else:
            raise DomainError(f"unknown growth mode {mode!r}", value=mode)
    pairs = list(pairs)
    normalized_recipe(m)
    logger.info("matching growth for m=%d at %d cusp(s)", m, len(pairs))
    chunks = run_chunked(partial(_growth_chunk, m=m), pairs, workers)
    mismatches = [
        GrowthMismatch(h=h, k=k, theta=theta, eisenstein=eis)
        for chunk in chunks
        for h, k, theta, eis in chunk
    ]
    if mismatches:
        logger.warning("m=%d: %d growth mismatch(es)", m, len(mismatches))
    return GrowthReport(m=m, kmax=kmax, mode=mode, checked=len(pairs), mismatches=mismatches)
