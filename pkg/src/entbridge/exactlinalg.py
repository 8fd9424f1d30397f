"""Exact integer linear algebra: Hermite and Smith normal forms, integer
kernels, and lattice preimages.

Everything runs on arbitrary-precision integers and never rounds.  The
canonical sublattice representation used throughout the package is the
lower-triangular column Hermite normal form computed by :func:`hnf`:
strictly positive diagonal, and every entry left of the diagonal reduced
modulo the diagonal entry of its own row.  Canonicality turns lattice
equality into plain matrix equality, which the higher layers rely on for
exact subgroup comparisons.

Deliberately out of scope: floating point, modular-arithmetic HNF tricks,
sparse formats, and basis reduction.  The intended scale is small ambient
rank (up to a dozen or so) with possibly huge entries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "IntMatrix",
    "HnfBasis",
    "hnf",
    "snf",
    "kernel_basis",
    "preimage_lattice",
    "inverse_unimodular",
    "random_unimodular",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable arbitrary-precision integer matrix, row-major."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("column count mismatch")

    # ---- constructors -------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        width = len(data[0]) if data else (cols if cols is not None else 0)
        return IntMatrix(len(data), width, data)

    @staticmethod
    def from_columns(columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        cols = [tuple(int(x) for x in c) for c in columns]
        height = len(cols[0]) if cols else (rows if rows is not None else 0)
        data = tuple(tuple(c[i] for c in cols) for i in range(height))
        return IntMatrix(height, len(cols), data)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def diagonal(values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return IntMatrix(
            n, n, tuple(tuple(int(values[i]) if i == j else 0 for j in range(n)) for i in range(n))
        )

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    # ---- views ----------------------------------------------------------

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def column_list(self) -> list[list[int]]:
        return [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        data = tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))
        return IntMatrix(self.cols, self.rows, data)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return IntMatrix(
            self.rows,
            self.cols + other.cols,
            tuple(self.entries[i] + other.entries[i] for i in range(self.rows)),
        )

    def top_rows(self, k: int) -> "IntMatrix":
        if not 0 <= k <= self.rows:
            raise ValueError("row slice out of range")
        return IntMatrix(k, self.cols, self.entries[:k])

    def scaled(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(c * x for x in row) for row in self.entries))

    # ---- arithmetic ------------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        ot = other.transpose().entries
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot) for row in self.entries
        )
        return IntMatrix(self.rows, other.cols, data)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(r * v for r, v in zip(row, vector)) for row in self.entries)

    def det(self) -> int:
        """Exact determinant by Bareiss fraction-free elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if pivot is None:
                    return 0
                a[k], a[pivot] = a[pivot], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class HnfBasis:
    """Canonical basis (columns) of a full-rank sublattice of Z^k.

    The matrix is square, lower triangular with positive diagonal, and each
    entry left of the diagonal lies in [0, diagonal of its row).  Two
    sublattices are equal exactly when their HnfBasis matrices are equal.
    """

    matrix: IntMatrix

    def __post_init__(self) -> None:
        m = self.matrix
        if m.rows != m.cols:
            raise ValueError("basis matrix must be square")
        for i in range(m.rows):
            if m.entries[i][i] <= 0:
                raise ValueError("diagonal entries must be positive")
            for j in range(m.cols):
                if j > i and m.entries[i][j] != 0:
                    raise ValueError("basis matrix must be lower triangular")
                if j < i and not 0 <= m.entries[i][j] < m.entries[i][i]:
                    raise ValueError("off-diagonal entries must be reduced")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def det(self) -> int:
        d = 1
        for i in range(self.dim):
            d *= self.matrix.entries[i][i]
        return d

    def solve(self, vector: Sequence[int]) -> tuple[int, ...] | None:
        """Integer coordinates of `vector` in this basis, or None.

        Forward substitution down the triangle; every division must be
        exact, otherwise the vector is not in the lattice.
        """
        k = self.dim
        if len(vector) != k:
            raise ValueError("vector length mismatch")
        v = [int(x) for x in vector]
        coords = []
        for j in range(k):
            q, r = divmod(v[j], self.matrix.entries[j][j])
            if r:
                return None
            coords.append(q)
            if q:
                for i in range(j, k):
                    v[i] -= q * self.matrix.entries[i][j]
        return tuple(coords)

    def contains(self, vector: Sequence[int]) -> bool:
        return self.solve(vector) is not None

    def contains_lattice(self, other: "HnfBasis") -> bool:
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return all(self.contains(other.matrix.column(j)) for j in range(self.dim))


def hnf(gens: IntMatrix) -> HnfBasis:
    """Canonical column Hermite form of the lattice spanned by the columns.

    Accepts any number of generator columns (callers append relation
    columns themselves when working modulo a finite group).  Raises
    ValueError("lattice not full rank") when the column span has rank
    below the ambient dimension.
    """
    k = gens.rows
    pending = gens.column_list()
    basis: list[list[int]] = []
    for i in range(k):
        # shrink row i across the pending columns down to a single pivot
        while True:
            live = [c for c in pending if c[i] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda c: abs(c[i]))
            piv = live[0]
            for c in live[1:]:
                q = c[i] // piv[i]
                if q:
                    for t in range(i, k):
                        c[t] -= q * piv[t]
        piv = next((c for c in pending if c[i] != 0), None)
        if piv is None:
            raise ValueError("lattice not full rank")
        pending.remove(piv)
        if piv[i] < 0:
            piv[:] = [-x for x in piv]
        # normalize row i of the columns fixed earlier
        for b in basis:
            q = b[i] // piv[i]
            if q:
                for t in range(i, k):
                    b[t] -= q * piv[t]
        basis.append(piv)
    return HnfBasis(IntMatrix.from_columns(basis, rows=k))


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns spanning the whole integer kernel {x : m @ x = 0}.

    Column reduction with a tracked unimodular transform; the returned
    basis is saturated (it generates the kernel exactly, not a finite-index
    sublattice of it).
    """
    n = m.cols
    cols = [[m.entries[i][j] for i in range(m.rows)] for j in range(n)]
    trans = [[1 if r == j else 0 for r in range(n)] for j in range(n)]
    pending = list(range(n))
    for i in range(m.rows):
        while True:
            live = [c for c in pending if cols[c][i] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda c: abs(cols[c][i]))
            piv = live[0]
            for c in live[1:]:
                q = cols[c][i] // cols[piv][i]
                if q:
                    cols[c] = [x - q * y for x, y in zip(cols[c], cols[piv])]
                    trans[c] = [x - q * y for x, y in zip(trans[c], trans[piv])]
        live = [c for c in pending if cols[c][i] != 0]
        if live:
            pending.remove(live[0])
    return IntMatrix.from_columns([trans[c] for c in pending], rows=n)


def preimage_lattice(m: IntMatrix, target: HnfBasis) -> HnfBasis:
    """HNF basis of {x in Z^k : m @ x lies in the target lattice}.

    Solved as the projection onto the x-block of the integer kernel of
    [m | -target]; full rank of the target guarantees full rank of the
    preimage (det(target) * Z^k is always contained in it).
    """
    if m.rows != target.dim:
        raise ValueError("codomain dimension mismatch")
    stacked = m.hstack(target.matrix.scaled(-1))
    ker = kernel_basis(stacked)
    return hnf(ker.top_rows(m.cols))


def snf(m: IntMatrix) -> tuple[tuple[int, ...], IntMatrix, IntMatrix]:
    """Smith normal form with transforms.

    Returns (diag, left, right) where left @ m @ right is diagonal, the
    diagonal is non-negative with each entry dividing the next (zeros
    trailing), and both transforms are unimodular.  Pivots are chosen by
    smallest absolute value, which keeps intermediate growth tame at this
    scale.
    """
    rows, cols = m.rows, m.cols
    a = [list(r) for r in m.entries]
    left = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    right = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_sub(i: int, j: int, q: int) -> None:
        if q:
            a[i] = [x - q * y for x, y in zip(a[i], a[j])]
            left[i] = [x - q * y for x, y in zip(left[i], left[j])]

    def col_sub(i: int, j: int, q: int) -> None:
        if q:
            for r in range(rows):
                a[r][i] -= q * a[r][j]
            for r in range(cols):
                right[r][i] -= q * right[r][j]

    def smallest_nonzero(t: int) -> tuple[int, int] | None:
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    limit = min(rows, cols)
    t = 0
    while t < limit:
        if smallest_nonzero(t) is None:
            break
        while True:
            pi, pj = smallest_nonzero(t)
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
                left[t], left[pi] = left[pi], left[t]
            if pj != t:
                for r in range(rows):
                    a[r][t], a[r][pj] = a[r][pj], a[r][t]
                for r in range(cols):
                    right[r][t], right[r][pj] = right[r][pj], right[r][t]
            p = a[t][t]
            for i in range(t + 1, rows):
                row_sub(i, t, a[i][t] // p)
            for j in range(t + 1, cols):
                col_sub(j, t, a[t][j] // p)
            if any(a[i][t] for i in range(t + 1, rows)) or any(
                a[t][j] for j in range(t + 1, cols)
            ):
                continue  # remainders shrank the candidate pivots; go again
            bad = next(
                (
                    i
                    for i in range(t + 1, rows)
                    for j in range(t + 1, cols)
                    if a[i][j] % p
                ),
                None,
            )
            if bad is None:
                break
            # fold the offending row into row t so the next pass picks a
            # strictly smaller pivot; this is what enforces divisibility
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            left[t] = [x + y for x, y in zip(left[t], left[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1

    diag = tuple(a[i][i] for i in range(limit))
    return diag, IntMatrix.from_rows(left, cols=rows), IntMatrix.from_rows(right, cols=cols)


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact integer inverse of a determinant +-1 matrix."""
    if m.rows != m.cols:
        raise ValueError("matrix must be square")
    if m.det() not in (1, -1):
        raise ValueError("matrix is not unimodular")
    n = m.rows
    work = [[Fraction(m.entries[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if work[i][c])
        work[c], work[piv] = work[piv], work[c]
        scale = work[c][c]
        work[c] = [x / scale for x in work[c]]
        for i in range(n):
            if i != c and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    out = []
    for i in range(n):
        row = work[i][n:]
        if any(x.denominator != 1 for x in row):
            raise AssertionError("inverse of a unimodular matrix must be integral")
        out.append([int(x) for x in row])
    return IntMatrix.from_rows(out, cols=n)


def random_unimodular(rng: random.Random, n: int, steps: int | None = None) -> IntMatrix:
    """Random determinant +-1 matrix built from elementary row operations.

    Shear coefficients stay small so products of a few of these remain
    comfortable for exact arithmetic in tests.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    if steps is None:
        steps = 3 * n
    a = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        kind = rng.randrange(3)
        if n >= 2:
            i, j = rng.sample(range(n), 2)
        else:
            i = j = 0
        if kind == 0 and n >= 2:
            c = rng.choice([-2, -1, 1, 2])
            a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        elif kind == 1 and n >= 2:
            a[i], a[j] = a[j], a[i]
        else:
            a[i] = [-x for x in a[i]]
    return IntMatrix.from_rows(a, cols=n)
