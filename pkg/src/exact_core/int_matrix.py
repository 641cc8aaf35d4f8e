"""
int_matrix.py

Immutable exact integer matrices and the exact linear algebra the rest of the
library needs: Bareiss determinant, leading principal minors, inertia and
definiteness classification of symmetric forms.

No floating point anywhere: determinants are fraction-free, inertia uses
Fraction pivots.
"""

import logging
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from src.exact_core.rational import ExactArithmeticError

logger = logging.getLogger(__name__)

NEGATIVE_DEFINITE = "negative-definite"
POSITIVE_DEFINITE = "positive-definite"
INDEFINITE = "indefinite"
DEGENERATE = "degenerate"


class IntMatrix:
    """Rectangular matrix of Python integers, stored as a tuple of row tuples."""

    __slots__ = ("_rows", "_n_cols")

    def __init__(self, rows: Iterable[Iterable[int]], n_cols: int = None):
        frozen = tuple(tuple(int(x) for x in row) for row in rows)
        widths = {len(row) for row in frozen}
        if len(widths) > 1:
            raise ExactArithmeticError("matrix rows have different lengths")
        if frozen:
            n_cols = widths.pop()
        elif n_cols is None:
            n_cols = 0
        for row in frozen:
            for entry in row:
                if isinstance(entry, bool):
                    raise ExactArithmeticError("boolean matrix entries are not allowed")
        self._rows = frozen
        self._n_cols = n_cols

    # -- construction -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n_cols=n)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "IntMatrix":
        return cls([[0] * n_cols for _ in range(n_rows)], n_cols=n_cols)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n_cols=n)

    # -- access -------------------------------------------------------------

    @property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        return self._rows

    @property
    def n_rows(self) -> int:
        return len(self._rows)

    @property
    def n_cols(self) -> int:
        return self._n_cols

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def __getitem__(self, index):
        i, j = index
        return self._rows[i][j]

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self._rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_lists()!r})"

    # -- algebra ------------------------------------------------------------

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self._rows), n_cols=self.n_rows) if self._rows else IntMatrix.zeros(self.n_cols, 0)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.n_cols != other.n_rows:
            raise ExactArithmeticError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.n_cols
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._rows],
            n_cols=other.n_cols,
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-x for x in row] for row in self._rows], n_cols=self.n_cols)

    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        n = self.n_rows
        return all(self._rows[i][j] == self._rows[j][i] for i in range(n) for j in range(i + 1, n))

    def principal_submatrix(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[self._rows[i][j] for j in indices] for i in indices], n_cols=len(indices))

    def bilinear(self, u: Sequence[int], v: Sequence[int]) -> int:
        """u^T M v."""
        return sum(u[i] * self._rows[i][j] * v[j] for i in range(self.n_rows) for j in range(self.n_cols))


def determinant(matrix: IntMatrix) -> int:
    """
    Exact determinant by fraction-free (Bareiss) elimination.

    Parameters
    ----------
    matrix : IntMatrix
        Square integer matrix.

    Returns
    -------
    int
        det(matrix); the empty matrix has determinant 1.
    """
    if not matrix.is_square():
        raise ExactArithmeticError(f"determinant of non-square matrix {matrix.shape}")
    n = matrix.n_rows
    if n == 0:
        return 1
    a = matrix.to_lists()
    sign = 1
    previous = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
        previous = a[k][k]
    return sign * a[n - 1][n - 1]


def leading_principal_minors(matrix: IntMatrix) -> List[int]:
    """[det M_1, det M_2, ..., det M_n] for the top-left k x k blocks."""
    if not matrix.is_square():
        raise ExactArithmeticError("leading minors need a square matrix")
    return [determinant(matrix.principal_submatrix(range(k))) for k in range(1, matrix.n_rows + 1)]


def inertia(matrix: IntMatrix) -> Tuple[int, int, int]:
    """
    Inertia (n_plus, n_minus, n_zero) of a symmetric integer matrix.

    Symmetric Gaussian elimination over the rationals with symmetric pivoting:
    a nonzero diagonal pivot is preferred; if the remaining block has zero
    diagonal but a nonzero off-diagonal entry b, the 2x2 principal block
    [[0, b], [b, 0]] contributes one positive and one negative direction.
    """
    if not matrix.is_symmetric():
        raise ExactArithmeticError("inertia requires a symmetric matrix")
    a = [[Fraction(x) for x in row] for row in matrix.rows]
    active = list(range(matrix.n_rows))
    plus = minus = 0
    while active:
        pivot = next((i for i in active if a[i][i] != 0), None)
        if pivot is not None:
            d = a[pivot][pivot]
            if d > 0:
                plus += 1
            else:
                minus += 1
            active.remove(pivot)
            for i in active:
                factor = a[i][pivot] / d
                if factor:
                    for j in active:
                        a[i][j] -= factor * a[pivot][j]
            continue
        pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        # congruence e_i -> e_i + e_j turns the zero diagonal into 2*a_ij
        for k in active:
            a[i][k] += a[j][k]
        for k in active:
            a[k][i] += a[k][j]
    zero = matrix.n_rows - plus - minus
    return plus, minus, zero


def definiteness(matrix: IntMatrix) -> str:
    """
    Classify a symmetric integer matrix.

    Returns one of "negative-definite", "positive-definite", "indefinite"
    (both signs occur) or "degenerate" (singular, semidefinite).
    """
    plus, minus, zero = inertia(matrix)
    if plus and minus:
        return INDEFINITE
    if zero:
        return DEGENERATE
    if minus:
        return NEGATIVE_DEFINITE
    if plus:
        return POSITIVE_DEFINITE
    return DEGENERATE


def adjugate(matrix: IntMatrix) -> IntMatrix:
    """Classical adjoint: adj(M) @ M == det(M) * I, exact."""
    if not matrix.is_square():
        raise ExactArithmeticError("adjugate needs a square matrix")
    n = matrix.n_rows
    if n == 1:
        return IntMatrix([[1]])
    cofactors = []
    for i in range(n):
        keep_rows = [r for r in range(n) if r != i]
        row = []
        for j in range(n):
            keep_cols = [c for c in range(n) if c != j]
            minor = IntMatrix([[matrix[r, c] for c in keep_cols] for r in keep_rows], n_cols=n - 1)
            row.append((-1) ** (i + j) * determinant(minor))
        cofactors.append(row)
    return IntMatrix(cofactors).transpose()
