"""Character duality for finite abelian groups, made exact.

For G = Z^k / diag(d) Z^k the character group is presented on the same
moduli ("self-dual presentation") through the pairing

    <x, y> = sum_i x_i * y_i / d_i   (mod 1),

carried as a reduced fraction, never a float.  On top of the pairing sit
the three workhorses of the package:

* ``annihilator``: the exact perp of a subgroup, computed via an integer
  kernel after clearing denominators by lcm(moduli);
* ``dual_hom``: the adjoint of a homomorphism, whose matrix entry
  [j][i] = M[i][j] * d_j / e_i is integral precisely because of the
  homomorphism certificate; for homogeneous moduli it is the transpose;
* ``check_quotient_duality``: invariant factors of outer/inner against
  those of perp(inner)/perp(outer), which duality says agree.

Annihilators exchange sums with intersections, preimages with dual
images, and reverse containments; the test suite exercises all of these
as exact identities of canonical lattices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactlinalg import HnfBasis, IntMatrix, preimage_lattice, snf
from .fingroup import FinAbGroup, GroupHom, SubgroupLattice

__all__ = [
    "PairingValue",
    "dual_group",
    "pairing",
    "annihilator",
    "dual_hom",
    "quotient_invariants",
    "check_quotient_duality",
]


@dataclass(frozen=True)
class PairingValue:
    """A rational number modulo 1, stored reduced with 0 <= num < den."""

    numerator: int
    denominator: int

    def __post_init__(self) -> None:
        if self.denominator < 1:
            raise ValueError("denominator must be positive")
        num = self.numerator % self.denominator
        g = math.gcd(num, self.denominator)
        object.__setattr__(self, "numerator", num // g)
        object.__setattr__(self, "denominator", self.denominator // g)

    @property
    def is_zero(self) -> bool:
        return self.numerator == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __add__(self, other: "PairingValue") -> "PairingValue":
        return PairingValue(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )


def dual_group(group: FinAbGroup) -> FinAbGroup:
    """Character group in the self-dual presentation; involutive on the tag."""
    return FinAbGroup(group.moduli, not group.dual)


def pairing(group: FinAbGroup, x: Sequence[int], y: Sequence[int]) -> PairingValue:
    """Evaluate <x, y> = sum x_i y_i / d_i mod 1 exactly."""
    xs = group.reduce(x)
    ys = group.reduce(y)
    n = math.lcm(*group.moduli) if group.moduli else 1
    num = sum(a * b * (n // d) for a, b, d in zip(xs, ys, group.moduli))
    return PairingValue(num, n)


def annihilator(subgroup: SubgroupLattice) -> SubgroupLattice:
    """Exact perp: all characters vanishing on the subgroup.

    Each basis column b of the subgroup imposes the congruence
    sum_i (N/d_i) b_i y_i == 0 (mod N) with N = lcm(moduli); the solution
    set is an integer lattice preimage, already containing the dual
    relation lattice.
    """
    g = subgroup.ambient
    k = g.rank
    n = math.lcm(*g.moduli) if g.moduli else 1
    b = subgroup.basis.matrix
    constraints = IntMatrix.from_rows(
        [[(n // g.moduli[i]) * b.entries[i][r] for i in range(k)] for r in range(k)],
        cols=k,
    )
    lattice = preimage_lattice(constraints, HnfBasis(IntMatrix.diagonal([n] * k)))
    return SubgroupLattice(dual_group(g), lattice)


def dual_hom(f: GroupHom) -> GroupHom:
    """Adjoint homomorphism between the dual groups.

    Defined by pairing(f(x), y) == pairing(x, dual_hom(f)(y)); with domain
    moduli (d_j) and codomain moduli (e_i) the matrix is
    [j][i] = M[i][j] * d_j / e_i, integral by the certificate.
    """
    dom, cod = f.domain, f.codomain
    data = []
    for j, dj in enumerate(dom.moduli):
        row = []
        for i, ei in enumerate(cod.moduli):
            num = f.matrix.entries[i][j] * dj
            if num % ei:
                raise AssertionError("certificate guarantees integrality of the adjoint")
            row.append(num // ei)
        data.append(row)
    return GroupHom(dual_group(cod), dual_group(dom), IntMatrix.from_rows(data, cols=cod.rank))


def quotient_invariants(outer: SubgroupLattice, inner: SubgroupLattice) -> tuple[int, ...]:
    """Invariant factors (> 1) of the finite quotient outer/inner."""
    if outer.ambient != inner.ambient:
        raise ValueError("subgroups live in different groups")
    if not outer.contains(inner):
        raise ValueError("not a subgroup pair")
    cols = []
    for j in range(inner.basis.dim):
        coords = outer.basis.solve(inner.basis.matrix.column(j))
        if coords is None:
            raise AssertionError("containment was just checked")
        cols.append(coords)
    rel = IntMatrix.from_columns(cols, rows=outer.basis.dim)
    diag, _, _ = snf(rel)
    return tuple(d for d in diag if d > 1)


def check_quotient_duality(
    outer: SubgroupLattice, inner: SubgroupLattice
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Invariant factors of outer/inner and of perp(inner)/perp(outer).

    Duality identifies the two quotients, so the lists agree; both are
    returned so callers (and tests) can compare them directly.
    """
    primal = quotient_invariants(outer, inner)
    dual_side = quotient_invariants(annihilator(inner), annihilator(outer))
    return primal, dual_side
