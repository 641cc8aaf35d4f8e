"""
sign_vectors.py

Sign vectors (q1, q2, q3) counting positive basic slices in the three
thickened tori around the singular fibers, the four overtwistedness
filters, and the enumeration that yields the upper bound on positive tight
contact structures.

Ranges: q1 in {0, 1}, q2 in {0..p}, q3 in {0..p(n+1)}.
"""

import logging
import warnings
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from src.seifert_slopes.slopes import SlopeError, check_parameters

logger = logging.getLogger(__name__)

# each survivor extends in exactly two ways over the complement
TIGHT_COMPLEMENT_FACTOR = 2

# filter names as reported, in checking order
C1_TORUS = "potatos"
C2_TORUS = "box"
C3_TORUS = "stop"
SIGN_FLIP = "page28"

FILTER_ORDER = (C1_TORUS, C2_TORUS, C3_TORUS, SIGN_FLIP)


@dataclass(frozen=True, order=True)
class SignVector:
    q1: int
    q2: int
    q3: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.q1, self.q2, self.q3)

    def in_range(self, p: int, n: int) -> bool:
        return 0 <= self.q1 <= 1 and 0 <= self.q2 <= p and 0 <= self.q3 <= p * (n + 1)


def _c1_torus(q: SignVector, p: int, n: int) -> bool:
    """Shuffling produces a torus of critical slope c1."""
    return q.q2 <= q.q3 <= q.q2 + p * n


def _c2_torus(q: SignVector, p: int, n: int) -> bool:
    return (q.q1 == 0 and q.q3 <= p - 1) or (q.q1 == 1 and q.q3 >= p * n + 1)


def _c3_torus(q: SignVector, p: int, n: int) -> bool:
    return (q.q1, q.q2) in ((0, 0), (1, p))


def _sign_flip(q: SignVector, p: int, n: int) -> bool:
    """Destabilizing one fiber turns these into C2_TORUS vectors."""
    return q.as_tuple() in (
        (0, 1, p * n + 2),
        (0, p - 1, p * n + p),
        (1, 1, 0),
        (1, p - 1, p - 2),
    )


FILTERS: Dict[str, Callable[[SignVector, int, int], bool]] = {
    C1_TORUS: _c1_torus,
    C2_TORUS: _c2_torus,
    C3_TORUS: _c3_torus,
    SIGN_FLIP: _sign_flip,
}


def is_overtwisted_vector(q: SignVector, p: int, n: int) -> Optional[str]:
    """
    Name of the first filter (in FILTER_ORDER) that kills `q`, or None.

    Raises
    ------
    SlopeError
        If `q` lies outside the ranges for (p, n).
    """
    check_parameters(p, n)
    if not q.in_range(p, n):
        raise SlopeError(f"sign vector {q.as_tuple()} out of range for p={p}, n={n}")
    for name in FILTER_ORDER:
        if FILTERS[name](q, p, n):
            return name
    return None


def all_sign_vectors(p: int, n: int) -> Iterable[SignVector]:
    """Every in-range vector, lexicographically."""
    for q1 in (0, 1):
        for q2 in range(p + 1):
            for q3 in range(p * (n + 1) + 1):
                yield SignVector(q1, q2, q3)


def enumerate_candidates(p: int, n: int) -> List[SignVector]:
    """
    Sign vectors that survive all four filters, in lexicographic order.

    Survivors are candidates only: the filters give an upper bound, not a
    certificate of tightness.
    """
    try:
        check_parameters(p, n)
        survivors = [q for q in all_sign_vectors(p, n) if is_overtwisted_vector(q, p, n) is None]
        logger.info("Enumerated %d candidate sign vectors for p=%d, n=%d", len(survivors), p, n)
        return survivors
    except Exception:
        logger.exception("Failed to enumerate sign vectors for p=%s, n=%s", p, n)
        raise


def filter_histogram(p: int, n: int) -> Dict[str, int]:
    """How many vectors each filter kills first (None key for survivors)."""
    counts: Dict[str, int] = {name: 0 for name in FILTER_ORDER}
    counts["survivor"] = 0
    for q in all_sign_vectors(p, n):
        verdict = is_overtwisted_vector(q, p, n)
        counts[verdict or "survivor"] += 1
    return counts


def survivor_count_formula(p: int) -> int:
    return max(p * (p - 1) - 4, 0)


def upper_bound(p: int, n: int) -> int:
    """2 * max{p(p-1) - 4, 0}; independent of n."""
    check_parameters(p, n)
    return TIGHT_COMPLEMENT_FACTOR * survivor_count_formula(p)


def check_survivor_conjecture(p_values: Iterable[int], n_values: Iterable[int]) -> List[Tuple[int, int, int]]:
    """
    Compare the enumerated survivor count with max{p(p-1) - 4, 0}.

    Returns the counterexamples as (p, n, count). The first one found is
    reported with warnings.warn; the check never raises.
    """
    n_values = list(n_values)
    counterexamples = []
    for p in p_values:
        expected = survivor_count_formula(p)
        for n in n_values:
            count = len(enumerate_candidates(p, n))
            if count != expected:
                if not counterexamples:
                    warnings.warn(
                        f"survivor count {count} != {expected} at p={p}, n={n}",
                        RuntimeWarning,
                        stacklevel=2,
                    )
                counterexamples.append((p, n, count))
    return counterexamples
