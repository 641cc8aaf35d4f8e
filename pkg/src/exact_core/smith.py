"""
smith.py

Smith normal form over the integers with explicit unimodular transforms.

Classical pivot-and-eliminate algorithm: the transforms U, V are accumulated
alongside the reduction so that U @ M @ V == D can be replayed exactly by any
consumer (generator reduction, spin counts, report certificates).
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

from src.exact_core.int_matrix import IntMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SnfResult:
    """D = U @ M @ V with D diagonal, d1 | d2 | ... and U, V unimodular."""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        k = min(self.D.shape)
        return tuple(self.D[i, i] for i in range(k))

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        """Diagonal entries different from 1 (zeros included: free summands)."""
        return tuple(d for d in self.diagonal if d != 1)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def torsion_order(self) -> int:
        """Product of the nonzero diagonal entries."""
        order = 1
        for d in self.diagonal:
            if d:
                order *= d
        return order

    def cokernel_order(self) -> int:
        """|coker M| for a square M, 0 when the cokernel is infinite."""
        if self.D.n_rows != self.D.n_cols:
            raise ValueError("cokernel order is only defined for square relation matrices")
        if self.rank < self.D.n_rows:
            return 0
        return self.torsion_order()


def _swap_rows(a: List[List[int]], i: int, j: int) -> None:
    a[i], a[j] = a[j], a[i]


def _swap_cols(a: List[List[int]], i: int, j: int) -> None:
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_row(a: List[List[int]], target: int, source: int, factor: int) -> None:
    """row_target += factor * row_source"""
    src = a[source]
    a[target] = [x + factor * y for x, y in zip(a[target], src)]


def _add_col(a: List[List[int]], target: int, source: int, factor: int) -> None:
    """col_target += factor * col_source"""
    for row in a:
        row[target] += factor * row[source]


def smith_normal_form(matrix: IntMatrix) -> SnfResult:
    """
    Compute the Smith normal form of an integer matrix.

    Parameters
    ----------
    matrix : IntMatrix
        Any m x n integer matrix.

    Returns
    -------
    SnfResult
        (D, U, V) with U @ matrix @ V == D, D diagonal with nonnegative
        entries each dividing the next, det U and det V equal to +-1.
    """
    m, n = matrix.shape
    a = matrix.to_lists()
    u = IntMatrix.identity(m).to_lists()
    v = IntMatrix.identity(n).to_lists()

    for t in range(min(m, n)):
        while True:
            candidates = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not candidates:
                break
            _, pi, pj = min(candidates)
            if pi != t:
                _swap_rows(a, t, pi)
                _swap_rows(u, t, pi)
            if pj != t:
                _swap_cols(a, t, pj)
                _swap_cols(v, t, pj)

            pivot = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // pivot
                    _add_row(a, i, t, -q)
                    _add_row(u, i, t, -q)
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // pivot
                    _add_col(a, j, t, -q)
                    _add_col(v, j, t, -q)
                    if a[t][j]:
                        clean = False
            if not clean:
                continue

            offender = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % pivot),
                None,
            )
            if offender is None:
                break
            # pull the offending row up; the next pass leaves a smaller pivot
            _add_row(a, t, offender, 1)
            _add_row(u, t, offender, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return SnfResult(D=IntMatrix(a, n_cols=n), U=IntMatrix(u, n_cols=m), V=IntMatrix(v, n_cols=n))


def cokernel_order(matrix: IntMatrix) -> int:
    """|Z^n / im(matrix)| for a square relation matrix (0 when infinite)."""
    return smith_normal_form(matrix).cokernel_order()
