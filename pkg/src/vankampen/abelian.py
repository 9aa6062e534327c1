"""Abelianization of finite presentations via Smith normal form.

Everything is exact integer arithmetic.  ``smith_normal_form`` returns
the diagonal form together with the unimodular row and column transforms
and re-verifies the certificate (U M V = D, det U, det V = +-1,
divisibility chain) before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .presentation import Presentation


@dataclass(frozen=True)
class IntMatrix:
    """An immutable integer matrix, stored row-major."""

    nrows: int
    ncols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat: list[int] = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            flat.extend(int(x) for x in row)
        return cls(nrows, ncols, tuple(flat))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.ncols + j]

    def rows(self) -> list[list[int]]:
        return [
            list(self.entries[i * self.ncols:(i + 1) * self.ncols])
            for i in range(self.nrows)
        ]

    def __mul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        a, b = self.rows(), other.rows()
        prod = [
            [sum(a[i][k] * b[k][j] for k in range(self.ncols)) for j in range(other.ncols)]
            for i in range(self.nrows)
        ]
        return IntMatrix(self.nrows, other.ncols, tuple(x for row in prod for x in row))

    def determinant(self) -> int:
        """Exact determinant by fraction-free Bareiss elimination."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        m = self.rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if pivot is None:
                    return 0
                m[k], m[pivot] = m[pivot], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


def relator_matrix(P: Presentation) -> IntMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    return IntMatrix.from_rows(
        [[r.exponent_sum(g) for g in P.generators] for r in P.relators]
    ) if P.relators else IntMatrix(0, len(P.generators), ())


def _find_pivot(m: list[list[int]], t: int) -> tuple[int, int] | None:
    """Smallest nonzero |entry| in the trailing submatrix, row-then-col ties."""
    best: tuple[int, int] | None = None
    best_val = 0
    for i in range(t, len(m)):
        for j in range(t, len(m[0]) if m else 0):
            v = abs(m[i][j])
            if v and (best is None or v < best_val):
                best, best_val = (i, j), v
    return best


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (D, U, V) with U M V = D in Smith normal form.

    D is diagonal with nonnegative entries satisfying d1 | d2 | ...;
    U and V are unimodular.  The certificate is re-checked on return.
    """
    r, c = M.nrows, M.ncols
    a = M.rows()
    u = IntMatrix.identity(r).rows()
    v = IntMatrix.identity(c).rows()

    def row_sub(i: int, j: int, q: int) -> None:
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(i: int, j: int, q: int) -> None:
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def clear_at(t: int) -> None:
        """Diagonalize position t of the trailing submatrix."""
        while True:
            loc = _find_pivot(a, t)
            if loc is None:
                return
            if loc != (t, t):
                if loc[0] != t:
                    row_swap(t, loc[0])
                if loc[1] != t:
                    col_swap(t, loc[1])
            if a[t][t] < 0:
                negate_row(t)
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    row_sub(i, t, a[i][t] // a[t][t])
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, c):
                if a[t][j]:
                    col_sub(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            clean = all(a[i][t] == 0 for i in range(t + 1, r)) and all(
                a[t][j] == 0 for j in range(t + 1, c)
            )
            if clean:
                return

    k = min(r, c)
    for t in range(k):
        clear_at(t)

    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for t in range(k - 1):
            d, e = a[t][t], a[t + 1][t + 1]
            if d and e % d != 0:
                # fold the next diagonal entry into column t and rediagonalize
                col_sub(t, t + 1, -1)
                clear_at(t)
                clear_at(t + 1)
                changed = True

    D = IntMatrix.from_rows(a) if a else IntMatrix(0, c, ())
    U = IntMatrix.from_rows(u) if u else IntMatrix(0, 0, ())
    V = IntMatrix.from_rows(v)

    _check_certificate(M, D, U, V)
    return D, U, V


def _check_certificate(M: IntMatrix, D: IntMatrix, U: IntMatrix, V: IntMatrix) -> None:
    if (U * M) * V != D:
        raise RuntimeError("SNF certificate failed: U M V != D")
    if abs(U.determinant()) != 1 or abs(V.determinant()) != 1:
        raise RuntimeError("SNF certificate failed: transform not unimodular")
    diag = [D.entry(i, i) for i in range(min(D.nrows, D.ncols))]
    for i in range(D.nrows):
        for j in range(D.ncols):
            if i != j and D.entry(i, j) != 0:
                raise RuntimeError("SNF certificate failed: not diagonal")
    for x, y in zip(diag, diag[1:]):
        if x < 0 or y < 0 or (x == 0 and y != 0) or (x != 0 and y % x != 0):
            raise RuntimeError("SNF certificate failed: divisibility chain broken")


@dataclass(frozen=True)
class AbelianInvariants:
    """Torsion coefficients (divisibility chain, each > 1) and free rank."""

    torsion: tuple[int, ...]
    free_rank: int

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def abelian_invariants(P: Presentation) -> AbelianInvariants:
    """Invariant factors of the abelianization of a presented group."""
    M = relator_matrix(P)
    if M.nrows == 0:
        return AbelianInvariants((), len(P.generators))
    D, _, _ = smith_normal_form(M)
    diag = [D.entry(i, i) for i in range(min(D.nrows, D.ncols))]
    torsion = tuple(d for d in diag if d > 1)
    nonzero = sum(1 for d in diag if d != 0)
    return AbelianInvariants(torsion, len(P.generators) - nonzero)
