"""Totally disconnected LCA dynamics presented by towers of finite groups.

An inverse tower ``levels[0] <- levels[1] <- ...`` of finite abelian
groups with surjective bonding maps presents a profinite group G; the
compact open subgroups U_j are the kernels of the projections G ->
levels[j].  A continuous endomorphism with *lag* s is a compatible
family f_k : levels[k+s] -> levels[k]: the k-th coordinate of the image
depends on coordinates no deeper than k+s.  The full one-sided shift has
lag 1; a p-adic integer matrix acts level-wise with lag 0.

Everything is pushed down to a single finite working level.  The n-step
cotrajectory of U_j needs level l = j + (n-1)s, where it becomes

    W_n = ker(pi_{l->j}) ∩ ker(f_j pi) ∩ ... ∩ ker(F_{j,n-1} pi),

with F_{j,t} = f_j f_{j+s} ... f_{j+(t-1)s}, and [U_j : C_n] equals
[ker(pi_{l->j}) : W_n] because ker(G -> levels[l]) sits inside both.
The dual group is the colimit of the character groups along the adjoint
inclusions, and the trajectory of the annihilator of U_j is the sum of
the images of the adjoints of F_{j,t} pi, all inside the character
group of the same working level.  Both index sequences therefore come
out of finite exact lattice arithmetic, and the annihilator of W_n is
literally the n-step trajectory subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .duality import dual_group, dual_hom
from .exactlinalg import IntMatrix, inverse_unimodular
from .fingroup import (
    FinAbGroup,
    GroupHom,
    SubgroupLattice,
    full_subgroup,
    image,
    index,
    is_surjective,
    kernel,
)

__all__ = [
    "Tower",
    "TowerEndo",
    "full_shift_tower",
    "padic_tower",
    "conjugate_tower_endo",
]


@dataclass(frozen=True)
class Tower:
    """Finite inverse tower with surjective bonding projections.

    projections[k] maps levels[k+1] onto levels[k].
    """

    levels: tuple[FinAbGroup, ...]
    projections: tuple[GroupHom, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "projections", tuple(self.projections))
        if not self.levels:
            raise ValueError("tower needs at least one level")
        if len(self.projections) != len(self.levels) - 1:
            raise ValueError("need exactly one projection between consecutive levels")
        for k, pi in enumerate(self.projections):
            if pi.domain != self.levels[k + 1] or pi.codomain != self.levels[k]:
                raise ValueError(f"projection {k} does not map level {k + 1} to level {k}")
            if not is_surjective(pi):
                raise ValueError(f"projection {k} is not surjective")

    @property
    def height(self) -> int:
        return len(self.levels)

    def project(self, upper: int, lower: int) -> GroupHom:
        """Composite projection levels[upper] -> levels[lower]."""
        if not 0 <= lower <= upper < self.height:
            raise ValueError(f"tower has no projection from level {upper} to level {lower}")
        h = GroupHom.identity(self.levels[upper])
        for k in range(upper - 1, lower - 1, -1):
            h = self.projections[k].compose(h)
        return h

    def open_subgroup(self, level: int, j: int) -> SubgroupLattice:
        """U_j seen at a working level: the kernel of levels[level] -> levels[j]."""
        return kernel(self.project(level, j))


@dataclass(frozen=True)
class TowerEndo:
    """Endomorphism data over a tower: maps[k] sends levels[k+lag] to levels[k].

    Compatibility means every square commutes:
    projections[k] . maps[k+1] == maps[k] . projections[k+lag].
    """

    tower: Tower
    lag: int
    maps: tuple[GroupHom, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "maps", tuple(self.maps))
        if self.lag < 0:
            raise ValueError("lag must be nonnegative")
        height = self.tower.height
        if height <= self.lag:
            raise ValueError(f"tower too short for (j, n) = (0, 1); need level {self.lag}")
        if len(self.maps) != height - self.lag:
            raise ValueError("need one endomorphism component per reachable level")
        for k, f in enumerate(self.maps):
            if f.domain != self.tower.levels[k + self.lag] or f.codomain != self.tower.levels[k]:
                raise ValueError(f"component {k} does not map level {k + self.lag} to level {k}")
        for k in range(len(self.maps) - 1):
            left = self.tower.projections[k].compose(self.maps[k + 1])
            right = self.maps[k].compose(self.tower.projections[k + self.lag])
            if left != right:
                raise ValueError(f"components do not commute with projections at level {k}")

    def working_level(self, j: int, steps: int) -> int:
        """Deepest level entering the n-step computation at base level j."""
        if not 0 <= j < self.tower.height:
            raise ValueError(f"tower has no level {j}")
        if steps < 1:
            raise ValueError("step count must be at least 1")
        level = j + (steps - 1) * self.lag
        if level >= self.tower.height:
            raise ValueError(f"tower too short for (j, n) = ({j}, {steps}); need level {level}")
        return level

    def iterate(self, j: int, t: int) -> GroupHom:
        """F_{j,t} = maps[j] . maps[j+lag] ... : levels[j + t*lag] -> levels[j]."""
        h = GroupHom.identity(self.tower.levels[j])
        for i in range(t):
            h = h.compose(self.maps[j + i * self.lag])
        return h

    def cotrajectory_lattices(
        self, j: int, steps: int
    ) -> tuple[SubgroupLattice, list[SubgroupLattice]]:
        """(U_j, [W_1, ..., W_steps]) as lattices at the working level."""
        level = self.working_level(j, steps)
        tower = self.tower
        base = tower.open_subgroup(level, j)
        current = base
        out = [current]
        for t in range(1, steps):
            condition = self.iterate(j, t).compose(tower.project(level, j + t * self.lag))
            current = current.intersect(kernel(condition))
            out.append(current)
        return base, out

    def trajectory_lattices(
        self, j: int, steps: int
    ) -> tuple[SubgroupLattice, list[SubgroupLattice]]:
        """(perp of U_j, [T_1, ..., T_steps]) in the character group of the working level."""
        level = self.working_level(j, steps)
        tower = self.tower
        source = full_subgroup(dual_group(tower.levels[j]))
        base = image(dual_hom(tower.project(level, j)), source)
        current = base
        out = [current]
        for t in range(1, steps):
            condition = self.iterate(j, t).compose(tower.project(level, j + t * self.lag))
            current = current.sum(image(dual_hom(condition), source))
            out.append(current)
        return base, out

    def cotrajectory_indices(self, j: int, steps: int) -> tuple[int, ...]:
        """a_n = [U_j : C_n] for n = 1..steps."""
        base, chain = self.cotrajectory_lattices(j, steps)
        return tuple(index(base, w) for w in chain)

    def trajectory_indices(self, j: int, steps: int) -> tuple[int, ...]:
        """b_n = [T_n : perp of U_j] for n = 1..steps, on the dual side."""
        base, chain = self.trajectory_lattices(j, steps)
        return tuple(index(t, base) for t in chain)


def full_shift_tower(modulus: int, height: int) -> TowerEndo:
    """One-sided full shift over Z/modulus, truncated to the given height.

    levels[i] = (Z/modulus)^(i+1); projections drop the last coordinate,
    the shift drops the first, so the lag is 1.
    """
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if height < 2:
        raise ValueError("tower needs at least two levels for the shift")
    levels = [FinAbGroup((modulus,) * (i + 1)) for i in range(height)]
    projections = []
    shifts = []
    for i in range(height - 1):
        rank = i + 1
        drop_last = IntMatrix.from_rows(
            [[1 if c == r else 0 for c in range(rank + 1)] for r in range(rank)],
            cols=rank + 1,
        )
        drop_first = IntMatrix.from_rows(
            [[1 if c == r + 1 else 0 for c in range(rank + 1)] for r in range(rank)],
            cols=rank + 1,
        )
        projections.append(GroupHom(levels[i + 1], levels[i], drop_last))
        shifts.append(GroupHom(levels[i + 1], levels[i], drop_first))
    return TowerEndo(Tower(tuple(levels), tuple(projections)), 1, tuple(shifts))


def padic_tower(prime: int, height: int, entries: Sequence[Sequence[int]]) -> TowerEndo:
    """An integer matrix acting on the p-adic tower (Z/p^(k+1))^d, lag 0."""
    if prime < 2 or any(prime % q == 0 for q in range(2, prime) if q * q <= prime):
        raise ValueError("prime required")
    if height < 1:
        raise ValueError("tower needs at least one level")
    m = IntMatrix.from_rows([list(row) for row in entries])
    if m.rows != m.cols:
        raise ValueError("endomorphism matrix must be square")
    d = m.rows
    levels = [FinAbGroup((prime ** (k + 1),) * d) for k in range(height)]
    projections = tuple(
        GroupHom(levels[k + 1], levels[k], IntMatrix.identity(d)) for k in range(height - 1)
    )
    maps = tuple(GroupHom(levels[k], levels[k], m) for k in range(height))
    return TowerEndo(Tower(tuple(levels), projections), 0, maps)


def conjugate_tower_endo(endo: TowerEndo, unimodulars: Sequence[IntMatrix]) -> TowerEndo:
    """Re-present the same dynamics through level-wise changes of basis.

    Each unimodular matrix defines an automorphism of its level; the new
    projections and components are the conjugates, so index sequences
    are unchanged.
    """
    tower = endo.tower
    if len(unimodulars) != tower.height:
        raise ValueError("need one unimodular matrix per level")
    forward = []
    backward = []
    for g, a in zip(tower.levels, unimodulars):
        forward.append(GroupHom(g, g, a))
        backward.append(GroupHom(g, g, inverse_unimodular(a)))
    projections = tuple(
        forward[k].compose(tower.projections[k]).compose(backward[k + 1])
        for k in range(tower.height - 1)
    )
    maps = tuple(
        forward[k].compose(endo.maps[k]).compose(backward[k + endo.lag])
        for k in range(len(endo.maps))
    )
    return TowerEndo(Tower(tower.levels, projections), endo.lag, maps)
