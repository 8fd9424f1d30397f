"""Exact entropy arithmetic on Q_p^d.

A compact open subgroup of Q_p^d is a full-rank Z_p-lattice.  Every
lattice has a canonical basis computed here over the rationals: clear
unit denominators column by column, scale by p^e into the integers,
take the column Hermite form, and saturate with p^v * I (v the p-part
of the determinant) so that the stored integer matrix spans exactly
(Z_p-span of the generators) intersect Z^d.  Two generating sets of the
same lattice always produce the same stored pair (matrix, e), so
lattice equality is plain structural equality.

Indices of lattice pairs are powers of p read off determinant
valuations.  Cotrajectories shrink via exact preimages (a congruence
kernel at a finite level), trajectories grow via column sums, and the
pairing x . y mod Z_p makes Q_p^d self-dual with adjoint = transpose,
so both index sequences are available without leaving this module.

The third, closed-form route is the Newton polygon: the entropy of an
invertible matrix is log(p) times the sum of the positive slopes of the
lower hull of (i, v_p(c_i)) over the characteristic polynomial, counted
with multiplicity; that sum is a nonnegative integer, so the value is
carried as (multiple, prime) and compared exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactlinalg import HnfBasis, IntMatrix, hnf
from .fingroup import FinAbGroup, GroupHom, kernel

__all__ = [
    "PadicLattice",
    "PadicEntropy",
    "is_prime",
    "rational_matrix",
    "standard_lattice",
    "lattice_from_columns",
    "contains",
    "index_valuation",
    "lattice_index",
    "apply_matrix",
    "preimage",
    "sum_lattices",
    "dual_lattice",
    "cotrajectory_indices",
    "trajectory_indices",
    "char_poly",
    "newton_entropy",
]

RationalLike = Union[int, str, Fraction]
RationalMatrix = tuple[tuple[Fraction, ...], ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    q = 2
    while q * q <= n:
        if n % q == 0:
            return False
        q += 1
    return True


def rational_matrix(entries: Sequence[Sequence[RationalLike]]) -> RationalMatrix:
    """Normalize nested ints / 'a/b' strings / Fractions into a Fraction grid."""
    rows = tuple(tuple(Fraction(x) for x in row) for row in entries)
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix rows must be nonempty and of equal length")
    return rows


def _vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _vp_frac(x: Fraction, p: int) -> int:
    return _vp(x.numerator, p) - _vp(x.denominator, p)


def _unit_part(n: int, p: int) -> int:
    """Largest divisor of n coprime to p."""
    while n % p == 0:
        n //= p
    return n


def _clear_units(column: Sequence[Fraction], p: int) -> tuple[Fraction, ...]:
    """Scale a column by a p-adic unit so denominators become pure p powers."""
    dens = [x.denominator for x in column if x]
    if not dens:
        return tuple(column)
    u = _unit_part(math.lcm(*dens), p)
    return tuple(x * u for x in column)


def _rat_inverse(rows: RationalMatrix) -> RationalMatrix:
    n = len(rows)
    work = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def _rat_matmul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    return tuple(
        tuple(sum((x * b[k][j] for k, x in enumerate(row)), Fraction(0)) for j in range(len(b[0])))
        for row in a
    )


def _rat_transpose(a: RationalMatrix) -> RationalMatrix:
    return tuple(tuple(row[j] for row in a) for j in range(len(a[0])))


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise AssertionError("scaling was chosen to clear this denominator")
    return x.numerator


@dataclass(frozen=True)
class PadicLattice:
    """Canonical form of a full-rank Z_p-lattice: basis = scaled / prime**shift.

    ``scaled`` is a column Hermite basis whose determinant is a power of
    the prime, and ``shift`` is minimal, so equal lattices are equal
    dataclasses.
    """

    prime: int
    scaled: IntMatrix
    shift: int

    def __post_init__(self) -> None:
        if not is_prime(self.prime):
            raise ValueError("prime required")
        if self.shift < 0:
            raise ValueError("shift must be nonnegative")
        basis = HnfBasis(self.scaled)
        det = basis.det()
        if _unit_part(det, self.prime) != 1:
            raise ValueError("canonical determinant must be a prime power")
        if self.shift > 0 and all(
            x % self.prime == 0 for row in self.scaled.entries for x in row
        ):
            raise ValueError("shift is not minimal")

    @property
    def dim(self) -> int:
        return self.scaled.rows

    @property
    def det_valuation(self) -> int:
        return _vp(HnfBasis(self.scaled).det(), self.prime)

    def basis_columns(self) -> list[tuple[Fraction, ...]]:
        q = Fraction(1, self.prime**self.shift)
        return [
            tuple(self.scaled.entries[i][j] * q for i in range(self.dim))
            for j in range(self.dim)
        ]

    def basis_rows(self) -> RationalMatrix:
        q = Fraction(1, self.prime**self.shift)
        return tuple(tuple(x * q for x in row) for row in self.scaled.entries)


def standard_lattice(prime: int, dim: int) -> PadicLattice:
    return PadicLattice(prime, IntMatrix.identity(dim), 0)


def lattice_from_columns(
    prime: int, columns: Sequence[Sequence[RationalLike]]
) -> PadicLattice:
    """Canonicalize the Z_p-span of the given rational column vectors."""
    cols = [_clear_units([Fraction(x) for x in col], prime) for col in columns]
    if not cols:
        raise ValueError("lattice not full rank")
    dim = len(cols[0])
    shift = max((_vp(x.denominator, prime) for col in cols for x in col if x), default=0)
    scale = prime**shift
    integral = [[_as_int(x * scale) for x in col] for col in cols]
    h0 = hnf(IntMatrix.from_columns(integral, rows=dim))
    vstar = _vp(h0.det(), prime)
    sat = hnf(h0.matrix.hstack(IntMatrix.diagonal([prime**vstar] * dim)))
    entries = [list(row) for row in sat.matrix.entries]
    while shift > 0 and all(x % prime == 0 for row in entries for x in row):
        entries = [[x // prime for x in row] for row in entries]
        shift -= 1
    return PadicLattice(prime, IntMatrix.from_rows(entries, cols=dim), shift)


def _check_pair(a: PadicLattice, b: PadicLattice) -> None:
    if a.prime != b.prime or a.dim != b.dim:
        raise ValueError("lattices live in different spaces")


def _transition(outer: PadicLattice, inner: PadicLattice) -> RationalMatrix:
    """Coordinates of the inner basis in the outer basis."""
    _check_pair(outer, inner)
    raw = _rat_matmul(_rat_inverse(outer.basis_rows()), inner.basis_rows())
    return raw


def contains(outer: PadicLattice, inner: PadicLattice) -> bool:
    c = _transition(outer, inner)
    return all(_vp_frac(x, outer.prime) >= 0 for row in c for x in row if x)


def index_valuation(outer: PadicLattice, inner: PadicLattice) -> int:
    """v_p of the index [outer : inner]; the pair must nest."""
    if not contains(outer, inner):
        raise ValueError("not a subgroup pair")
    return (
        inner.det_valuation
        - outer.det_valuation
        + inner.dim * (outer.shift - inner.shift)
    )


def lattice_index(outer: PadicLattice, inner: PadicLattice) -> int:
    return outer.prime ** index_valuation(outer, inner)


def apply_matrix(matrix: RationalMatrix, lattice: PadicLattice) -> PadicLattice:
    """Image lattice; the matrix must keep full rank."""
    image = _rat_matmul(matrix, lattice.basis_rows())
    return lattice_from_columns(lattice.prime, _rat_transpose(image))


def sum_lattices(a: PadicLattice, b: PadicLattice) -> PadicLattice:
    _check_pair(a, b)
    return lattice_from_columns(a.prime, a.basis_columns() + b.basis_columns())


def dual_lattice(a: PadicLattice) -> PadicLattice:
    """Annihilator under the self-pairing x . y mod Z_p: the transpose inverse basis."""
    inv = _rat_inverse(_rat_transpose(a.basis_rows()))
    return lattice_from_columns(a.prime, _rat_transpose(inv))


def preimage(
    matrix: RationalMatrix, lattice: PadicLattice, within: PadicLattice
) -> PadicLattice:
    """{x in within : matrix @ x in lattice}, always full rank.

    In coordinates the condition is C y in Z_p^d with
    C = B_lattice^-1 . matrix . B_within; clearing unit rows leaves pure
    p-power denominators, and the condition becomes a kernel over
    (Z / p^c)^d.
    """
    _check_pair(lattice, within)
    p = lattice.prime
    d = lattice.dim
    c = _rat_matmul(_rat_inverse(lattice.basis_rows()), _rat_matmul(matrix, within.basis_rows()))
    cleared = [_clear_units(row, p) for row in c]
    depth = max((_vp(x.denominator, p) for row in cleared for x in row if x), default=0)
    if depth == 0:
        return within
    modulus = p**depth
    rows = [[_as_int(x * modulus) % modulus for x in row] for row in cleared]
    level = FinAbGroup((modulus,) * d)
    ker = kernel(GroupHom(level, level, IntMatrix.from_rows(rows, cols=d)))
    coords = tuple(tuple(Fraction(x) for x in row) for row in ker.basis.matrix.entries)
    basis = _rat_matmul(within.basis_rows(), coords)
    return lattice_from_columns(p, _rat_transpose(basis))


def cotrajectory_indices(
    prime: int,
    matrix: RationalMatrix,
    steps: int,
    base: Optional[PadicLattice] = None,
) -> tuple[int, ...]:
    """a_n = [U : U ∩ φ^-1 U ∩ ... ∩ φ^-(n-1) U] for n = 1..steps."""
    if steps < 1:
        raise ValueError("step count must be at least 1")
    u = base if base is not None else standard_lattice(prime, len(matrix))
    current = u
    out = []
    for _ in range(steps):
        out.append(lattice_index(u, current))
        current = preimage(matrix, current, u)
    return tuple(out)


def trajectory_indices(
    prime: int,
    matrix: RationalMatrix,
    steps: int,
    base: Optional[PadicLattice] = None,
) -> tuple[int, ...]:
    """b_n = [U + φU + ... + φ^(n-1)U : U] for n = 1..steps."""
    if steps < 1:
        raise ValueError("step count must be at least 1")
    u = base if base is not None else standard_lattice(prime, len(matrix))
    current = u
    out = []
    for _ in range(steps):
        out.append(lattice_index(current, u))
        pushed = _rat_transpose(_rat_matmul(matrix, current.basis_rows()))
        current = lattice_from_columns(prime, u.basis_columns() + list(pushed))
    return tuple(out)


def char_poly(matrix: RationalMatrix) -> tuple[Fraction, ...]:
    """Coefficients (c_0, ..., c_d) of det(xI - M), monic, exact."""
    d = len(matrix)
    if any(len(row) != d for row in matrix):
        raise ValueError("endomorphism matrix must be square")
    coeffs = [Fraction(0)] * d + [Fraction(1)]
    b = tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))
    for k in range(1, d + 1):
        a = _rat_matmul(matrix, b)
        trace = sum((a[i][i] for i in range(d)), Fraction(0))
        coeffs[d - k] = -trace / k
        b = tuple(
            tuple(a[i][j] + (coeffs[d - k] if i == j else 0) for j in range(d))
            for i in range(d)
        )
    return tuple(coeffs)


@dataclass(frozen=True)
class PadicEntropy:
    """An exact entropy value multiple * log(prime)."""

    multiple: int
    prime: int

    def as_float(self) -> float:
        return self.multiple * math.log(self.prime)


def newton_entropy(prime: int, coeffs: Sequence[Fraction]) -> PadicEntropy:
    """Sum of positive lower-hull rises of (i, v_p(c_i)): log of the p-adic
    moduli above 1, with multiplicity, as a multiple of log(prime)."""
    if not is_prime(prime):
        raise ValueError("prime required")
    points = [
        (i, _vp_frac(Fraction(c), prime)) for i, c in enumerate(coeffs) if Fraction(c) != 0
    ]
    if len(points) < 2:
        return PadicEntropy(0, prime)
    hull: list[tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2:
            ox, oy = hull[-2]
            ax, ay = hull[-1]
            if (ax - ox) * (pt[1] - oy) - (ay - oy) * (pt[0] - ox) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    multiple = sum(b[1] - a[1] for a, b in zip(hull, hull[1:]) if b[1] > a[1])
    return PadicEntropy(multiple, prime)
