"""GF(2) linear algebra on bit-packed rows.

Rows are packed with ``np.packbits`` (column c lives in byte c // 8, bit
7 - c % 8) and padded to whole 64-bit words, so row additions are single
uint64 XORs while single-column tests read the uint8 view.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


def to_gf2(matrix) -> np.ndarray:
    return np.array(matrix, dtype=np.uint8) % 2


@dataclass
class PackedMatrix:
    """Binary matrix with rows packed into 64-bit words."""

    words: np.ndarray  # uint64, shape (rows, words_per_row)
    ncols: int

    @classmethod
    def from_dense(cls, matrix) -> "PackedMatrix":
        dense = to_gf2(matrix)
        if dense.ndim != 2:
            raise ValueError("expected a two-dimensional matrix")
        nrows, ncols = dense.shape
        width = max(1, -(-ncols // 64)) * 8
        packed = np.zeros((nrows, width), dtype=np.uint8)
        if ncols:
            bits = np.packbits(dense, axis=1)
            packed[:, : bits.shape[1]] = bits
        return cls(words=packed.view(np.uint64), ncols=ncols)

    @property
    def nrows(self) -> int:
        return self.words.shape[0]

    def _bytes(self) -> np.ndarray:
        return self.words.view(np.uint8)

    def column(self, col: int, start: int = 0) -> np.ndarray:
        """Bits of column ``col`` for rows ``start`` onwards."""
        return (self._bytes()[start:, col >> 3] >> (7 - (col & 7))) & 1

    def to_dense(self) -> np.ndarray:
        return np.unpackbits(self._bytes(), axis=1)[:, : self.ncols]

    def copy(self) -> "PackedMatrix":
        return PackedMatrix(words=self.words.copy(), ncols=self.ncols)


@dataclass(frozen=True)
class RowReduceResult:
    matrix: PackedMatrix
    rank: int
    pivots: Tuple[int, ...]


def row_reduce(matrix: PackedMatrix, pivot_columns: Optional[int] = None) -> RowReduceResult:
    """Reduced row echelon form, pivoting on the lowest column first.

    Only the first ``pivot_columns`` columns receive pivots; later columns
    (augmented right-hand sides) are carried along.
    """
    mat = matrix.copy()
    limit = mat.ncols if pivot_columns is None else pivot_columns
    pivots: List[int] = []
    row = 0
    for col in range(limit):
        if row == mat.nrows:
            break
        candidates = np.flatnonzero(mat.column(col, row))
        if candidates.size == 0:
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            mat.words[[row, pivot]] = mat.words[[pivot, row]]
        hits = mat.column(col).astype(bool)
        hits[row] = False
        if hits.any():
            mat.words[hits] ^= mat.words[row]
        pivots.append(col)
        row += 1
    logger.debug("row reduction: %d rows, %d columns, rank %d", mat.nrows, mat.ncols, row)
    return RowReduceResult(matrix=mat, rank=row, pivots=tuple(pivots))


def rank(matrix) -> int:
    packed = matrix if isinstance(matrix, PackedMatrix) else PackedMatrix.from_dense(matrix)
    return row_reduce(packed).rank


@dataclass
class LinearSystemF2:
    """A x = b over F2 for one or several right-hand sides.

    ``column_labels`` name the unknowns (exponent pairs for the string
    operator solves); ``rhs`` holds one column per right-hand side.
    """

    matrix: np.ndarray
    rhs: np.ndarray
    column_labels: Sequence = ()

    def solve(self) -> List[Optional[np.ndarray]]:
        """One solution vector per right-hand side, or None where inconsistent."""
        a = to_gf2(self.matrix)
        b = to_gf2(self.rhs)
        if b.ndim == 1:
            b = b.reshape(-1, 1)
        nunknowns = a.shape[1]
        augmented = PackedMatrix.from_dense(np.concatenate([a, b], axis=1))
        reduced = row_reduce(augmented, pivot_columns=nunknowns)
        dense = reduced.matrix.to_dense()
        solutions: List[Optional[np.ndarray]] = []
        for k in range(b.shape[1]):
            column = dense[:, nunknowns + k]
            if column[reduced.rank:].any():
                solutions.append(None)
                continue
            x = np.zeros(nunknowns, dtype=np.uint8)
            for r, pivot in enumerate(reduced.pivots):
                x[pivot] = column[r]
            solutions.append(x)
        return solutions

    def labelled(self, solution: np.ndarray) -> List:
        """Labels of the unknowns set to 1 in ``solution``."""
        return [self.column_labels[c] for c in np.flatnonzero(solution)]


def symplectic_products(x_part: np.ndarray, z_part: np.ndarray) -> np.ndarray:
    """Pairwise symplectic form X Z^T + Z X^T (mod 2) of binary rows."""
    x = x_part.astype(np.int64)
    z = z_part.astype(np.int64)
    return (x @ z.T + z @ x.T) % 2
