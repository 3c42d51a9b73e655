"""Exact rational linear algebra.

Everything here is dense and exact.  Ranks are computed by fraction-free
(Bareiss) Gaussian elimination on an integer-scaled copy of the matrix,
which avoids intermediate coefficient blow-up; kernels and linear solves
use reduced row echelon form over Fraction.  Pivoting is deterministic
(first nonzero entry in row-major scan order), so bases of kernels and
particular solutions are reproducible across runs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

Vector = List[Fraction]


class RationalMatrix:
    """Dense matrix with Fraction entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[Fraction]], cols: Optional[int] = None):
        self.entries = [[Fraction(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        if self.rows:
            self.cols = len(self.entries[0])
            if any(len(r) != self.cols for r in self.entries):
                raise ValueError("ragged matrix")
        else:
            self.cols = cols if cols is not None else 0

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]], rows: int) -> "RationalMatrix":
        entries = [[Fraction(col[r]) for col in columns] for r in range(rows)]
        return cls(entries, cols=len(columns))

    def column(self, j: int) -> Vector:
        return [self.entries[i][j] for i in range(self.rows)]

    def _integer_copy(self) -> List[List[int]]:
        out = []
        for row in self.entries:
            denom_lcm = 1
            for x in row:
                denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
            out.append([int(x * denom_lcm) for x in row])
        return out

    def rank(self) -> int:
        """Rank via fraction-free Bareiss elimination over the integers."""
        m = self._integer_copy()
        rows, cols = self.rows, self.cols
        rank = 0
        prev = 1
        for col in range(cols):
            pivot_row = None
            for r in range(rank, rows):
                if m[r][col] != 0:
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            if pivot_row != rank:
                m[rank], m[pivot_row] = m[pivot_row], m[rank]
            pivot = m[rank][col]
            for r in range(rank + 1, rows):
                factor = m[r][col]
                for c in range(col, cols):
                    m[r][c] = (m[r][c] * pivot - factor * m[rank][c]) // prev
            prev = pivot
            rank += 1
            if rank == rows:
                break
        return rank

    def rref(self) -> Tuple[List[Vector], List[int]]:
        """Reduced row echelon form (over Fraction) and pivot columns."""
        m = [row[:] for row in self.entries]
        rows, cols = self.rows, self.cols
        pivots: List[int] = []
        r = 0
        for col in range(cols):
            pivot_row = None
            for i in range(r, rows):
                if m[i][col] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = Fraction(1) / m[r][col]
            m[r] = [x * inv for x in m[r]]
            for i in range(rows):
                if i != r and m[i][col] != 0:
                    factor = m[i][col]
                    m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
            pivots.append(col)
            r += 1
            if r == rows:
                break
        return m, pivots

    def kernel_basis(self) -> List[Vector]:
        """Basis of the right kernel, one vector per free column, with the
        free variable set to 1 (deterministic order)."""
        rref, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vec = [Fraction(0)] * self.cols
            vec[free] = Fraction(1)
            for r, pc in enumerate(pivots):
                vec[pc] = -rref[r][free]
            basis.append(vec)
        return basis

    def nullity(self) -> int:
        return self.cols - self.rank()

    def solve(self, rhs: Sequence[Fraction]) -> Optional[Vector]:
        """One exact solution of A x = rhs (free variables set to 0), or
        None when the system is inconsistent."""
        if len(rhs) != self.rows:
            raise ValueError("right-hand side has wrong length")
        augmented = [row + [Fraction(rhs[i])] for i, row in enumerate(self.entries)]
        aug = RationalMatrix(augmented)
        rref, pivots = aug.rref()
        if self.cols in pivots:
            return None
        solution = [Fraction(0)] * self.cols
        for r, pc in enumerate(pivots):
            solution[pc] = rref[r][self.cols]
        return solution

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"
