"""
Polygonal Representation Counts
-------------------------------
Generalized polygonal numbers, exact counts of weighted representations
by enumeration, the completing-the-square correspondence with
congruence-restricted sums of squares, and the verification harness for
sums p_m(l1) + 2 p_m(l2) + 4 p_m(l3) + 8 p_m(l4).
"""

import logging
from collections import defaultdict
from functools import partial
from math import isqrt
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import DomainError
from .models import ConjectureReport, FormSpec
from .workers import run_chunked

logger = logging.getLogger(__name__)

ALPHA_1248: Tuple[int, ...] = (1, 2, 4, 8)


def polygonal_number(m: int, ell: int) -> int:
    """p_m(l) = ((m-2) l^2 - (m-4) l) / 2, nonnegative for every integer l."""
    if m < 3:
        raise DomainError("polygon index must be at least 3", value=m)
    return ((m - 2) * ell * ell - (m - 4) * ell) // 2


def _ell_bound(m: int, limit: int) -> int:
    return isqrt(2 * max(limit, 0) // (m - 2)) + 2


def polygonal_values(m: int, limit: int) -> Dict[int, List[int]]:
    """Map p -> [l, ...] for every generalized m-gonal number p <= limit."""
    bound = _ell_bound(m, limit)
    values: Dict[int, List[int]] = defaultdict(list)
    for ell in range(-bound, bound + 1):
        p = polygonal_number(m, ell)
        if p <= limit:
            values[p].append(ell)
    return dict(values)


def congruent_square_values(r: int, M: int, limit: int) -> Dict[int, List[int]]:
    """Map x^2 -> [x, ...] for x = r (mod M) with x^2 <= limit."""
    if M < 1:
        raise DomainError("modulus must be positive", value=M)
    root = isqrt(max(limit, 0))
    values: Dict[int, List[int]] = defaultdict(list)
    for x in range(-root, root + 1):
        if (x - r) % M == 0:
            values[x * x].append(x)
    return dict(values)


def _check_alpha(alpha: Sequence[int]) -> None:
    if any(a < 1 for a in alpha):
        raise DomainError(f"coefficients must be positive, got {tuple(alpha)}", value=tuple(alpha))


def _count_weighted(multiplicity: Dict[int, int], alpha: Sequence[int], n: int) -> int:
    """Number of vectors with sum alpha_j v_j = n, v_j drawn with the given multiplicities."""
    order = sorted(range(len(alpha)), key=lambda j: -alpha[j])
    weights = [alpha[j] for j in order]
    values = sorted(multiplicity)

    def walk(index: int, remainder: int) -> int:
        a = weights[index]
        if index == len(weights) - 1:
            if remainder % a:
                return 0
            return multiplicity.get(remainder // a, 0)
        total = 0
        for v in values:
            step = a * v
            if step > remainder:
                break
            total += multiplicity[v] * walk(index + 1, remainder - step)
        return total

    if n < 0:
        return 0
    if not weights:
        return 1 if n == 0 else 0
    return walk(0, n)


def count_r(m: int, alpha: Sequence[int], n: int) -> int:
    """r_{m,alpha}(n): number of l in Z^len(alpha) with sum alpha_j p_m(l_j) = n."""
    if n < 0:
        raise DomainError("n must be nonnegative", value=n)
    _check_alpha(alpha)
    values = polygonal_values(m, n)
    return _count_weighted({p: len(ells) for p, ells in values.items()}, alpha, n)


def count_s(r: int, M: int, alpha: Sequence[int], n: int) -> int:
    """s_{r,M,alpha}(n): number of x in Z^len(alpha) with sum alpha_j x_j^2 = n and x_j = r (mod M)."""
    if n < 0:
        raise DomainError("n must be nonnegative", value=n)
    _check_alpha(alpha)
    values = congruent_square_values(r, M, n)
    return _count_weighted({q: len(xs) for q, xs in values.items()}, alpha, n)


def _shift_add(multiplicity: Dict[int, int], alpha: Sequence[int], n_max: int) -> np.ndarray:
    """Counts for every target 0..n_max at once, one weighted slot at a time."""
    acc = np.zeros(n_max + 1, dtype=np.int64)
    acc[0] = 1
    for a in alpha:
        nxt = np.zeros_like(acc)
        for v, c in multiplicity.items():
            step = a * v
            if step > n_max:
                continue
            nxt[step:] += c * acc[: n_max + 1 - step]
        acc = nxt
    return acc


def representation_counts(m: int, alpha: Sequence[int], n_max: int) -> List[int]:
    """[r_{m,alpha}(0), ..., r_{m,alpha}(n_max)]."""
    _check_alpha(alpha)
    values = polygonal_values(m, n_max)
    counts = _shift_add({p: len(ells) for p, ells in values.items()}, alpha, n_max)
    return [int(c) for c in counts]


def theta_counts(form: FormSpec, n_max: int) -> List[int]:
    """[s_{r,M,alpha}(0), ..., s_{r,M,alpha}(n_max)]."""
    values = congruent_square_values(form.r, form.M, n_max)
    counts = _shift_add({q: len(xs) for q, xs in values.items()}, form.alpha, n_max)
    return [int(c) for c in counts]


def relation_target(m: int, n: int, alpha: Sequence[int] = ALPHA_1248) -> int:
    """8(m-2) n + (m-4)^2 sum(alpha), the square-sum value matching n."""
    return 8 * (m - 2) * n + (m - 4) ** 2 * sum(alpha)


def check_relation(m: int, n: int, alpha: Sequence[int] = ALPHA_1248) -> bool:
    """
    Compare r_{m,alpha}(n) with s_{m,2(m-2),alpha}(8(m-2)n + (m-4)^2 sum(alpha)).

    Both sides are counted independently; x = 2(m-2) l - (m-4) is the
    bijection between them.
    """
    if m < 3 or n < 0:
        raise DomainError("check_relation needs m >= 3 and n >= 0", value=(m, n))
    left = count_r(m, alpha, n)
    right = count_s(m, 2 * (m - 2), alpha, relation_target(m, n, alpha))
    if left != right:
        logger.warning("relation mismatch at m=%d n=%d: %d != %d", m, n, left, right)
    return left == right


def _search(values: Dict[int, List[int]], alpha: Sequence[int], n: int) -> Optional[List[int]]:
    """Depth-first search, heaviest weight outermost; result in the order of alpha."""
    order = sorted(range(len(alpha)), key=lambda j: -alpha[j])
    keys = sorted(values)
    chosen: List[int] = []

    def walk(index: int, remainder: int) -> bool:
        a = alpha[order[index]]
        if index == len(order) - 1:
            if remainder % a == 0 and remainder // a in values:
                chosen.append(values[remainder // a][0])
                return True
            return False
        for v in keys:
            if a * v > remainder:
                break
            chosen.append(values[v][0])
            if walk(index + 1, remainder - a * v):
                return True
            chosen.pop()
        return False

    if n < 0 or not alpha or not walk(0, n):
        return None
    result = [0] * len(alpha)
    for slot, j in enumerate(order):
        result[j] = chosen[slot]
    return result


def find_representation(m: int, n: int, alpha: Sequence[int] = ALPHA_1248) -> Optional[Tuple[int, ...]]:
    """An l-vector with sum alpha_j p_m(l_j) = n, or None."""
    found = _search(polygonal_values(m, n), alpha, n)
    return tuple(found) if found is not None else None


def find_theta_vector(form: FormSpec, n: int) -> Optional[Tuple[int, ...]]:
    """An x-vector with sum alpha_j x_j^2 = n and x_j = r (mod M), or None."""
    found = _search(congruent_square_values(form.r, form.M, n), form.alpha, n)
    return tuple(found) if found is not None else None


def _reachable_chunk(
    outer_values: List[int],
    m: int,
    outer_weight: int,
    inner_alpha: Tuple[int, ...],
    n_max: int,
) -> np.ndarray:
    """Targets reachable with the outermost slot restricted to outer_values."""
    values = polygonal_values(m, n_max)
    inner = np.zeros(n_max + 1, dtype=bool)
    inner[0] = True
    for a in inner_alpha:
        nxt = np.zeros_like(inner)
        for v in values:
            step = a * v
            if step > n_max:
                continue
            nxt[step:] |= inner[: n_max + 1 - step]
        inner = nxt
    reached = np.zeros(n_max + 1, dtype=bool)
    for v in outer_values:
        step = outer_weight * v
        if step <= n_max:
            reached[step:] |= inner[: n_max + 1 - step]
    return reached


def reachable(m: int, n_max: int, alpha: Sequence[int] = ALPHA_1248, workers: int = 1) -> np.ndarray:
    """Boolean array: True at n when some l-vector represents n."""
    alpha = tuple(sorted(alpha, reverse=True))
    outer_weight, inner_alpha = alpha[0], alpha[1:]
    outer_values = sorted(polygonal_values(m, n_max // outer_weight))
    job = partial(_reachable_chunk, m=m, outer_weight=outer_weight, inner_alpha=inner_alpha, n_max=n_max)
    parts = run_chunked(job, outer_values, workers)
    result = np.zeros(n_max + 1, dtype=bool)
    for part in parts:
        result |= part
    return result


def verify_conjecture(
    m: int,
    n_max: int,
    alpha: Sequence[int] = ALPHA_1248,
    workers: int = 1,
    samples: int = 3,
) -> ConjectureReport:
    """
    List every 1 <= n <= n_max with no representation by sum alpha_j p_m(l_j).

    Args:
        m: Polygon index
        n_max: Largest n checked
        alpha: Weights
        workers: Worker processes for the sweep
        samples: Number of explicit witnesses attached to the report

    Returns:
        ConjectureReport with the sorted failure list
    """
    if m < 3 or n_max < 0:
        raise DomainError("verify_conjecture needs m >= 3 and n_max >= 0", value=(m, n_max))
    logger.info("verifying m=%d up to %d with %d worker(s)", m, n_max, workers)
    hit = reachable(m, n_max, alpha, workers)
    failures = [int(n) for n in np.flatnonzero(~hit) if n >= 1]

    witnesses = []
    if n_max >= 1 and samples > 0:
        picks = sorted({1, max(1, n_max // 2), n_max})[:samples]
        for n in picks:
            ells = find_representation(m, n, alpha) if hit[n] else None
            if ells is not None:
                witnesses.append({"n": n, "ell": list(ells)})
    logger.info("m=%d: %d failure(s) up to %d", m, len(failures), n_max)
    return ConjectureReport(m=m, max=n_max, failures=failures, witness_samples=witnesses)


def descent_check_m12(n: int) -> bool:
    """
    If n is a sum of x_j^2 (weights 1, 2, 4, 8) with x_j = 12 (mod 20),
    so is 256 n. Vacuously true when n has no such representation.
    """
    if n < 1:
        raise DomainError("descent_check_m12 needs n >= 1", value=n)
    form = FormSpec.for_polygon(12)
    if find_theta_vector(form, n) is None:
        return True
    return find_theta_vector(form, 256 * n) is not None


def descent_witness(n: int) -> Optional[Dict[str, Tuple[int, ...]]]:
    """Explicit representations of n and 256 n for the m=12 form, or None."""
    form = FormSpec.for_polygon(12)
    x = find_theta_vector(form, n)
    if x is None:
        return None
    lifted = find_theta_vector(form, 256 * n)
    if lifted is None:
        return None
    return {"x": x, "x256": lifted}


def first_descent_witness(n_max: int) -> Optional[Tuple[int, Dict[str, Tuple[int, ...]]]]:
    """Witness pair for the smallest represented n <= n_max."""
    form = FormSpec.for_polygon(12)
    counts = theta_counts(form, n_max)
    for n in range(1, n_max + 1):
        if counts[n]:
            witness = descent_witness(n)
            return (n, witness) if witness else None
    return None


def small_value_gap(m: int, ell_range: int = 100) -> bool:
    """p_m(l) is 0, 1 or at least m - 3 for every |l| <= ell_range."""
    return all(
        p in (0, 1) or p >= m - 3
        for p in (polygonal_number(m, ell) for ell in range(-ell_range, ell_range + 1))
    )


def classify_universality(m_values: Iterable[int], n_max: int, alpha: Sequence[int] = ALPHA_1248) -> Dict[int, Optional[int]]:
    """First n >= 1 without a representation for each m, None if all n <= n_max are represented."""
    result = {}
    for m in m_values:
        misses = np.flatnonzero(~reachable(m, n_max, alpha))
        misses = [int(n) for n in misses if n >= 1]
        result[m] = misses[0] if misses else None
    return result


def theorem_restriction(m: int, n: int) -> bool:
    """Whether the large-n statement covers n: for m = 12 it excludes n = 4 (mod 16)."""
    if m == 12:
        return n % 16 != 4
    return True

