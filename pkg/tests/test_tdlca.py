import random

import pytest

from entbridge.duality import annihilator
from entbridge.exactlinalg import IntMatrix, random_unimodular
from entbridge.fingroup import FinAbGroup, GroupHom
from entbridge.tdlca import (
    Tower,
    TowerEndo,
    conjugate_tower_endo,
    full_shift_tower,
    padic_tower,
)


def two_level_tower():
    upper = FinAbGroup((2, 2))
    lower = FinAbGroup((2,))
    pi = GroupHom(upper, lower, IntMatrix.from_rows([[1, 0]]))
    return Tower((lower, upper), (pi,))


class TestTowerValidation:
    def test_needs_levels(self):
        with pytest.raises(ValueError, match="at least one level"):
            Tower((), ())

    def test_projection_count(self):
        g = FinAbGroup((2,))
        with pytest.raises(ValueError, match="one projection"):
            Tower((g, g), ())

    def test_projection_endpoints(self):
        g = FinAbGroup((2,))
        h = FinAbGroup((4,))
        wrong = GroupHom.identity(g)
        with pytest.raises(ValueError, match="does not map level 1 to level 0"):
            Tower((g, h), (wrong,))

    def test_projection_surjective(self):
        g = FinAbGroup((2,))
        zero = GroupHom(g, g, IntMatrix.from_rows([[0]]))
        with pytest.raises(ValueError, match="not surjective"):
            Tower((g, g), (zero,))

    def test_project_bounds(self):
        tower = two_level_tower()
        with pytest.raises(ValueError, match="no projection"):
            tower.project(2, 0)
        with pytest.raises(ValueError, match="no projection"):
            tower.project(0, 1)

    def test_project_composes(self):
        endo = full_shift_tower(2, 4)
        tower = endo.tower
        direct = tower.project(3, 0)
        stepwise = tower.projections[0].compose(
            tower.projections[1].compose(tower.projections[2])
        )
        assert direct == stepwise

    def test_open_subgroup_order(self):
        # ker((Z/2)^3 -> Z/2) forgets two free coordinates
        tower = full_shift_tower(2, 3).tower
        assert tower.open_subgroup(2, 0).order == 4
        assert tower.open_subgroup(2, 2).order == 1


class TestTowerEndoValidation:
    def test_negative_lag(self):
        tower = two_level_tower()
        with pytest.raises(ValueError, match="lag must be nonnegative"):
            TowerEndo(tower, -1, ())

    def test_component_count(self):
        tower = two_level_tower()
        with pytest.raises(ValueError, match="one endomorphism component"):
            TowerEndo(tower, 1, ())

    def test_component_endpoints(self):
        tower = two_level_tower()
        bad = GroupHom.identity(tower.levels[1])
        with pytest.raises(ValueError, match="component 0 does not map"):
            TowerEndo(tower, 1, (bad,))

    def test_commuting_squares(self):
        # skew the top component so the square over level 0 breaks
        shift = full_shift_tower(2, 3)
        tower = shift.tower
        top = shift.maps[-1]
        skew = IntMatrix.from_rows([[0, 1, 1], [0, 0, 1]])
        broken = (*shift.maps[:-1], GroupHom(top.domain, top.codomain, skew))
        with pytest.raises(ValueError, match="do not commute with projections at level 0"):
            TowerEndo(tower, 1, broken)


class TestWorkingLevel:
    def test_values(self):
        endo = full_shift_tower(2, 6)
        assert endo.working_level(0, 1) == 0
        assert endo.working_level(1, 4) == 4
        assert endo.working_level(2, 4) == 5

    def test_missing_level(self):
        endo = full_shift_tower(2, 3)
        with pytest.raises(ValueError, match="tower has no level 9"):
            endo.working_level(9, 1)

    def test_step_count(self):
        endo = full_shift_tower(2, 3)
        with pytest.raises(ValueError, match="step count must be at least 1"):
            endo.working_level(0, 0)

    def test_too_short(self):
        endo = full_shift_tower(2, 4)
        with pytest.raises(
            ValueError, match=r"tower too short for \(j, n\) = \(1, 5\); need level 5"
        ):
            endo.working_level(1, 5)

    def test_lag_zero_needs_no_depth(self):
        endo = padic_tower(3, 1, [[2]])
        assert endo.working_level(0, 50) == 0


class TestFullShift:
    @pytest.mark.parametrize(
        "modulus,height,j,steps",
        [(2, 5, 0, 5), (3, 4, 1, 3), (4, 6, 2, 4), (6, 8, 1, 7)],
    )
    def test_index_sequences(self, modulus, height, j, steps):
        endo = full_shift_tower(modulus, height)
        expected = tuple(modulus**t for t in range(steps))
        assert endo.cotrajectory_indices(j, steps) == expected
        assert endo.trajectory_indices(j, steps) == expected

    def test_prefix_consistency(self):
        endo = full_shift_tower(3, 6)
        full = endo.cotrajectory_indices(0, 6)
        for n in range(1, 6):
            assert endo.cotrajectory_indices(0, n) == full[:n]

    def test_parameter_validation(self):
        with pytest.raises(ValueError, match="modulus"):
            full_shift_tower(1, 4)
        with pytest.raises(ValueError, match="two levels"):
            full_shift_tower(2, 1)


class TestAnnihilatorIsTrajectory:
    def test_shift_lattices_match(self):
        endo = full_shift_tower(2, 4)
        base_u, cochain = endo.cotrajectory_lattices(0, 4)
        base_t, trchain = endo.trajectory_lattices(0, 4)
        assert annihilator(base_u) == base_t
        for w, t in zip(cochain, trchain):
            assert annihilator(w) == t

    def test_lag_zero_lattices_match(self):
        endo = padic_tower(2, 3, [[3, 1], [0, 1]])
        base_u, cochain = endo.cotrajectory_lattices(1, 3)
        base_t, trchain = endo.trajectory_lattices(1, 3)
        assert annihilator(base_u) == base_t
        for w, t in zip(cochain, trchain):
            assert annihilator(w) == t


class TestPadicTower:
    def test_lag_zero_is_degenerate(self):
        # an integral matrix preserves every level, so all indices collapse
        endo = padic_tower(2, 3, [[3, 1], [0, 1]])
        assert endo.cotrajectory_indices(1, 3) == (1, 1, 1)
        assert endo.trajectory_indices(1, 3) == (1, 1, 1)

    @pytest.mark.parametrize("not_prime", [1, 4, 9, 15])
    def test_requires_prime(self, not_prime):
        with pytest.raises(ValueError, match="prime required"):
            padic_tower(not_prime, 2, [[1]])

    def test_requires_square_matrix(self):
        with pytest.raises(ValueError, match="square"):
            padic_tower(2, 2, [[1, 0]])


class TestConjugation:
    @pytest.mark.parametrize("modulus,j,steps", [(2, 0, 4), (3, 1, 3), (5, 0, 3)])
    def test_sequences_invariant(self, modulus, j, steps):
        rng = random.Random(100 * modulus + j)
        endo = full_shift_tower(modulus, 5)
        unimodulars = [
            random_unimodular(rng, level.rank, 6) for level in endo.tower.levels
        ]
        other = conjugate_tower_endo(endo, unimodulars)
        assert other.cotrajectory_indices(j, steps) == endo.cotrajectory_indices(j, steps)
        assert other.trajectory_indices(j, steps) == endo.trajectory_indices(j, steps)

    def test_lag_zero_invariant(self):
        rng = random.Random(11)
        endo = padic_tower(3, 2, [[2, 1], [1, 1]])
        unimodulars = [
            random_unimodular(rng, level.rank, 5) for level in endo.tower.levels
        ]
        other = conjugate_tower_endo(endo, unimodulars)
        assert other.cotrajectory_indices(0, 4) == endo.cotrajectory_indices(0, 4)

    def test_needs_one_matrix_per_level(self):
        endo = full_shift_tower(2, 3)
        with pytest.raises(ValueError, match="per level"):
            conjugate_tower_endo(endo, [IntMatrix.identity(1)])
