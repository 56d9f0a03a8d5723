"""
Integer lattices spanned by finitely many vectors

Row-style Hermite reduction with extended-gcd row operations, enough to
decide whether an integer vector is an integer combination of the spanning
vectors.
"""

from bisect import bisect_left
from typing import List, Optional


def xgcd(a, b):
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b) up to sign"""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


class IntegerLattice:
    """Integer span of the vectors added so far, kept in echelon form"""

    def __init__(self, dimension):
        self.dimension = dimension
        self.basis: List[List[int]] = []
        self.pivot_columns: List[int] = []

    def _pivot_row(self, column) -> Optional[int]:
        where = bisect_left(self.pivot_columns, column)
        if where < len(self.pivot_columns) and self.pivot_columns[where] == column:
            return where
        return None

    def add_vector(self, vector):
        vec = [int(value) for value in vector]
        if len(vec) != self.dimension:
            raise ValueError(f"expected a vector of length {self.dimension}")

        for j in range(self.dimension):
            if not vec[j]:
                continue
            p = self._pivot_row(j)
            if p is None:
                where = bisect_left(self.pivot_columns, j)
                self.basis.insert(where, vec)
                self.pivot_columns.insert(where, j)
                return
            row = self.basis[p]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for jj in range(j, self.dimension):
                    vec[jj] -= q * row[jj]
            else:
                # replace the pivot row by the gcd combination, keep the remainder
                x, y, g = xgcd(a, b)
                ag, mbg = a // g, -b // g
                for jj in range(j, self.dimension):
                    aa, bb = row[jj], vec[jj]
                    row[jj] = x * aa + y * bb
                    vec[jj] = mbg * aa + ag * bb

    def __contains__(self, vector):
        vec = [int(value) for value in vector]
        for j in range(self.dimension):
            if not vec[j]:
                continue
            p = self._pivot_row(j)
            if p is None:
                return False
            row = self.basis[p]
            if vec[j] % row[j]:
                return False
            q = vec[j] // row[j]
            for jj in range(j, self.dimension):
                vec[jj] -= q * row[jj]
        return True
