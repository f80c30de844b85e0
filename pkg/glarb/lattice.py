"""
Integer Lattices
Row-echelon lattices for subgroup membership and a Smith normal form for quotients.
"""

from typing import Iterable, List, Sequence, Tuple

import numpy as np


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Extended Euclid.

    Returns:
        (x, y, g) with x*a + y*b == g and g >= 0
    """
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


class IntegerLattice:
    """A sublattice of Z^N kept in Hermite-style row echelon form.

    Every stored row has a positive pivot; rows are indexed by pivot column.
    Vectors are added one at a time and membership is decided by reducing
    against the pivots from left to right.
    """

    __slots__ = ["dimension", "_rows"]

    def __init__(self, dimension: int, vectors: Iterable[Sequence[int]] = ()):
        self.dimension = dimension
        self._rows: dict = {}
        for vec in vectors:
            self.add_vector(vec)

    def add_vector(self, vec0: Sequence[int]) -> None:
        if len(vec0) != self.dimension:
            raise ValueError(f"expected a vector of length {self.dimension}, got {len(vec0)}")
        vec = [int(c) for c in vec0]
        for j in range(self.dimension):
            if vec[j] == 0:
                continue
            row = self._rows.get(j)
            if row is None:
                if vec[j] < 0:
                    vec = [-c for c in vec]
                self._rows[j] = vec
                return
            x, y, g = xgcd(row[j], vec[j])
            a, b = row[j] // g, vec[j] // g
            # [[x, y], [-b, a]] is unimodular, so the span is unchanged
            self._rows[j] = [x * r + y * v for r, v in zip(row, vec)]
            vec = [a * v - b * r for r, v in zip(row, vec)]

    def __contains__(self, vec0: Sequence[int]) -> bool:
        vec = [int(c) for c in vec0]
        for j in range(self.dimension):
            if vec[j] == 0:
                continue
            row = self._rows.get(j)
            if row is None or vec[j] % row[j] != 0:
                return False
            q = vec[j] // row[j]
            vec = [v - q * r for r, v in zip(row, vec)]
        return True

    @property
    def rank(self) -> int:
        return len(self._rows)

    def basis(self) -> List[List[int]]:
        return [list(self._rows[j]) for j in sorted(self._rows)]


def smith_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[List[int], List[List[int]]]:
    """Diagonalise an integer relation matrix.

    Finds unimodular U and V with U @ M @ V == D, D diagonal with
    d_1 | d_2 | ... | d_rank, all positive. Only V is tracked: in the
    coordinates x -> x @ V the row lattice of M becomes the span of
    d_i * e_i, which is all a quotient needs.

    Args:
        rows: relation vectors, each of length ncols
        ncols: ambient dimension N

    Returns:
        (diagonal, V) where diagonal lists the nonzero d_i in order and V is
        the N x N column transform as nested lists of ints
    """
    D = np.array([[int(c) for c in row] for row in rows], dtype=object).reshape(len(rows), ncols)
    V = np.eye(ncols, dtype=object)
    nrows = D.shape[0]
    diagonal: List[int] = []

    for t in range(min(nrows, ncols)):
        while True:
            nonzero = [(abs(D[i, j]), i, j)
                       for i in range(t, nrows) for j in range(t, ncols) if D[i, j] != 0]
            if not nonzero:
                return diagonal, V.tolist()
            _, i, j = min(nonzero)
            D[[t, i]] = D[[i, t]]
            D[:, [t, j]] = D[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
            pivot = D[t, t]

            clean = True
            for i in range(t + 1, nrows):
                q = D[i, t] // pivot
                if q:
                    D[i] -= q * D[t]
                if D[i, t] != 0:
                    clean = False
            for j in range(t + 1, ncols):
                q = D[t, j] // pivot
                if q:
                    D[:, j] -= q * D[:, t]
                    V[:, j] -= q * V[:, t]
                if D[t, j] != 0:
                    clean = False
            if not clean:
                continue

            # divisibility: fold an offending row into the pivot row and retry
            offender = next((i for i in range(t + 1, nrows)
                             for j in range(t + 1, ncols) if D[i, j] % pivot != 0), None)
            if offender is None:
                break
            D[t] += D[offender]

        if D[t, t] < 0:
            D[t] = -D[t]
        diagonal.append(int(D[t, t]))

    return diagonal, V.tolist()
