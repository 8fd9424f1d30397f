import random

import pytest

from conftest import (
    closure,
    oracle_cotrajectory,
    oracle_image,
    oracle_kernel,
    oracle_preimage,
    oracle_trajectory,
    subgroup_elements,
)
from entbridge.bridge import random_endomorphism, random_subgroup
from entbridge.exactlinalg import IntMatrix
from entbridge.fingroup import (
    ENUMERATION_LIMIT,
    FinAbGroup,
    GroupHom,
    SubgroupLattice,
    cotrajectory,
    full_subgroup,
    image,
    index,
    kernel,
    preimage,
    subgroup_from_generators,
    trajectory,
    trivial_subgroup,
)

SMALL_MODULI = [(2,), (6,), (2, 2), (4, 2), (2, 4, 2), (8, 3), (9, 3), (4, 4)]


def random_cases(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        group = FinAbGroup(rng.choice(SMALL_MODULI))
        yield rng, group


class TestFinAbGroup:
    def test_basic(self):
        g = FinAbGroup((4, 2))
        assert g.rank == 2
        assert g.order == 8
        assert g.reduce((5, 3)) == (1, 1)
        assert g.add((3, 1), (2, 1)) == (1, 0)
        assert len(list(g.elements())) == 8

    def test_invalid_moduli(self):
        with pytest.raises(ValueError):
            FinAbGroup((0, 2))

    def test_enumeration_gate(self):
        g = FinAbGroup((ENUMERATION_LIMIT + 1,))
        with pytest.raises(ValueError, match="too large"):
            list(g.elements())

    def test_dual_tag_distinguishes(self):
        assert FinAbGroup((2,)) != FinAbGroup((2,), dual=True)


class TestSubgroups:
    def test_generated_matches_closure(self):
        for rng, group in random_cases(11, 60):
            gens = [
                [rng.randrange(d) for d in group.moduli]
                for _ in range(rng.randint(0, 3))
            ]
            sub = subgroup_from_generators(group, gens)
            assert subgroup_elements(sub) == closure(group, gens)
            assert sub.order == len(closure(group, gens))

    def test_sum_and_intersection_match_oracle(self):
        for rng, group in random_cases(12, 60):
            a = random_subgroup(rng, group)
            b = random_subgroup(rng, group)
            ea, eb = subgroup_elements(a), subgroup_elements(b)
            assert subgroup_elements(a.sum(b)) == closure(group, list(ea | eb))
            assert subgroup_elements(a.intersect(b)) == ea & eb

    def test_index(self):
        g = FinAbGroup((4, 2))
        u = subgroup_from_generators(g, [[2, 0], [0, 1]])
        assert index(full_subgroup(g), u) == 2
        assert index(u, trivial_subgroup(g)) == 4

    def test_index_requires_nesting(self):
        g = FinAbGroup((4, 2))
        a = subgroup_from_generators(g, [[1, 0]])
        b = subgroup_from_generators(g, [[0, 1]])
        with pytest.raises(ValueError, match="not a subgroup pair"):
            index(a, b)

    def test_index_requires_same_group(self):
        a = full_subgroup(FinAbGroup((2,)))
        b = full_subgroup(FinAbGroup((3,)))
        with pytest.raises(ValueError, match="different groups"):
            index(a, b)

    def test_basis_must_contain_relations(self):
        g = FinAbGroup((4, 4))
        from entbridge.exactlinalg import HnfBasis

        with pytest.raises(ValueError):
            SubgroupLattice(g, HnfBasis(IntMatrix.from_rows([[8, 0], [0, 1]])))


class TestGroupHom:
    def test_certificate_rejects(self):
        g = FinAbGroup((2, 4))
        with pytest.raises(ValueError, match="homomorphism"):
            GroupHom(g, g, IntMatrix.from_rows([[0, 0], [1, 0]]))

    def test_rows_normalized(self):
        g = FinAbGroup((2, 4))
        a = GroupHom(g, g, IntMatrix.from_rows([[1, 2], [2, 3]]))
        b = GroupHom(g, g, IntMatrix.from_rows([[3, 4], [6, 7]]))
        assert a == b

    def test_apply_consistent_with_enumeration(self):
        for rng, group in random_cases(13, 40):
            f = random_endomorphism(rng, group)
            for x in group.elements():
                y = f.apply(x)
                expected = tuple(
                    sum(f.matrix.entries[i][j] * x[j] for j in range(group.rank)) % d
                    for i, d in enumerate(group.moduli)
                )
                assert y == expected

    def test_compose(self):
        g = FinAbGroup((5, 5))
        f = GroupHom(g, g, IntMatrix.from_rows([[1, 1], [0, 1]]))
        h = GroupHom(g, g, IntMatrix.from_rows([[2, 0], [0, 3]]))
        fh = f.compose(h)
        for x in g.elements():
            assert fh.apply(x) == f.apply(h.apply(x))


class TestHomLattices:
    def test_image_preimage_kernel_match_oracle(self):
        for rng, group in random_cases(14, 60):
            f = random_endomorphism(rng, group)
            u = random_subgroup(rng, group)
            ue = subgroup_elements(u)
            assert subgroup_elements(image(f, u)) == oracle_image(f, ue)
            assert subgroup_elements(preimage(f, u)) == oracle_preimage(f, ue)
            assert subgroup_elements(kernel(f)) == oracle_kernel(f)

    def test_preimage_wrong_side(self):
        g = FinAbGroup((2, 2))
        h = FinAbGroup((2,))
        f = GroupHom(g, h, IntMatrix.from_rows([[1, 0]], cols=2))
        with pytest.raises(ValueError):
            preimage(f, full_subgroup(g))


class TestTrajectories:
    def test_match_oracle(self):
        for rng, group in random_cases(15, 50):
            f = random_endomorphism(rng, group)
            u = random_subgroup(rng, group)
            ue = subgroup_elements(u)
            steps = rng.randint(1, 4)
            assert subgroup_elements(cotrajectory(f, u, steps)) == oracle_cotrajectory(
                f, ue, steps
            )
            assert subgroup_elements(trajectory(f, u, steps)) == oracle_trajectory(
                f, ue, steps
            )

    def test_step_count_validated(self):
        g = FinAbGroup((2, 2))
        f = GroupHom.identity(g)
        with pytest.raises(ValueError, match="at least 1"):
            cotrajectory(f, full_subgroup(g), 0)
        with pytest.raises(ValueError, match="at least 1"):
            trajectory(f, full_subgroup(g), 0)

    def test_needs_endomorphism(self):
        g = FinAbGroup((2, 2))
        h = FinAbGroup((2,))
        f = GroupHom(g, h, IntMatrix.from_rows([[1, 0]], cols=2))
        with pytest.raises(ValueError, match="endomorphism"):
            cotrajectory(f, full_subgroup(g), 2)

    def test_frozen_left_shift(self):
        # left shift on (Z/2)^4 with U = {x : x_1 = 0}; oracle-derived
        g = FinAbGroup((2, 2, 2, 2))
        f = GroupHom(
            g,
            g,
            IntMatrix.from_rows(
                [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]], cols=4
            ),
        )
        u = subgroup_from_generators(g, [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        got = [index(u, cotrajectory(f, u, n)) for n in range(1, 6)]
        assert got == [1, 2, 4, 8, 8]
