import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entbridge.exactlinalg import (
    HnfBasis,
    IntMatrix,
    hnf,
    inverse_unimodular,
    kernel_basis,
    preimage_lattice,
    random_unimodular,
    snf,
)

small_entries = st.integers(min_value=-9, max_value=9)


def square_matrices(max_dim=4, entries=small_entries):
    return st.integers(min_value=1, max_value=max_dim).flatmap(
        lambda n: st.lists(
            st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n
        ).map(lambda rows: IntMatrix.from_rows(rows, cols=n))
    )


def permutation_det(m: IntMatrix) -> int:
    """Leibniz expansion, the slow reference determinant."""
    n = m.rows
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= m.entries[i][perm[i]]
        total += term
    return total


class TestIntMatrix:
    def test_constructors_agree(self):
        m = IntMatrix.from_rows([[1, 2], [3, 4]])
        assert m == IntMatrix.from_columns([[1, 3], [2, 4]])
        assert m.transpose() == IntMatrix.from_rows([[1, 3], [2, 4]])

    def test_matmul_apply(self):
        a = IntMatrix.from_rows([[1, 2], [0, 1]])
        b = IntMatrix.from_rows([[1, 0], [3, 1]])
        assert (a @ b).entries == ((7, 2), (3, 1))
        assert a.apply((5, 7)) == (19, 7)

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[1, 2], [3]])

    @given(square_matrices())
    def test_det_matches_leibniz(self, m):
        assert m.det() == permutation_det(m)

    @given(square_matrices(max_dim=3), square_matrices(max_dim=3))
    def test_det_multiplicative(self, a, b):
        if a.rows == b.rows:
            assert (a @ b).det() == a.det() * b.det()


class TestHnf:
    def test_worked_example(self):
        basis = hnf(IntMatrix.from_columns([[1, 1], [1, -1]], rows=2))
        assert basis.matrix.entries == ((1, 0), (1, 2))

    def test_diagonal_input(self):
        basis = hnf(IntMatrix.from_columns([[2, 0], [0, 3]], rows=2))
        assert basis.matrix.entries == ((2, 0), (0, 3))

    def test_rank_deficient(self):
        with pytest.raises(ValueError, match="lattice not full rank"):
            hnf(IntMatrix.from_columns([[1, 2], [2, 4]], rows=2))
        with pytest.raises(ValueError, match="lattice not full rank"):
            hnf(IntMatrix.from_columns([[1, 0]], rows=2))

    def test_shape_invariants(self):
        rng = random.Random(1)
        for _ in range(50):
            n = rng.randint(1, 4)
            cols = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n + 2)]
            cols.append([0] * (n - 1) + [97])  # keep full rank likely
            try:
                basis = hnf(IntMatrix.from_columns(cols, rows=n))
            except ValueError:
                continue
            h = basis.matrix.entries
            for i in range(n):
                assert h[i][i] > 0
                for j in range(i + 1, n):
                    assert h[i][j] == 0
                for j in range(i):
                    assert 0 <= h[i][j] < h[i][i]

    @given(square_matrices(max_dim=3), st.integers(min_value=0, max_value=2**30))
    @settings(max_examples=100)
    def test_canonical_under_recombination(self, m, seed):
        """Two generating sets of the same lattice hash to the same basis."""
        if m.det() == 0:
            return
        basis = hnf(m)
        u = random_unimodular(random.Random(seed), m.rows)
        assert hnf(m @ u) == basis
        assert hnf(basis.matrix) == basis

    def test_solve_and_contains(self):
        basis = hnf(IntMatrix.from_columns([[2, 1], [0, 3]], rows=2))
        for x in range(-4, 5):
            for y in range(-4, 5):
                v = basis.matrix.apply((x, y))
                assert basis.solve(v) == (x, y)
                assert basis.contains(v)
        assert basis.solve((1, 0)) is None

    def test_contains_lattice(self):
        outer = hnf(IntMatrix.from_columns([[1, 0], [0, 1]], rows=2))
        inner = hnf(IntMatrix.from_columns([[2, 0], [0, 3]], rows=2))
        assert outer.contains_lattice(inner)
        assert not inner.contains_lattice(outer)


class TestKernel:
    @given(
        st.lists(
            st.lists(small_entries, min_size=3, max_size=3), min_size=2, max_size=2
        )
    )
    def test_kernel_annihilates(self, rows):
        m = IntMatrix.from_rows(rows, cols=3)
        k = kernel_basis(m)
        if k.cols:
            assert (m @ k).entries == tuple((0,) * k.cols for _ in range(2))

    def test_kernel_saturated(self):
        # kernel of [2 -2] over Z is spanned by (1, 1), not (2, 2)
        k = kernel_basis(IntMatrix.from_rows([[2, -2]], cols=2))
        assert k.column_list() == [[1, 1]]

    def test_full_rank_matrix_trivial_kernel(self):
        k = kernel_basis(IntMatrix.from_rows([[1, 2], [3, 5]]))
        assert k.cols == 0


class TestPreimageLattice:
    def test_against_enumeration(self):
        m = IntMatrix.from_rows([[1, 2], [0, 2]])
        target = hnf(IntMatrix.from_columns([[2, 0], [0, 4]], rows=2))
        lattice = preimage_lattice(m, target)
        for x in range(-8, 9):
            for y in range(-8, 9):
                expected = target.contains(m.apply((x, y)))
                assert lattice.contains((x, y)) == expected

    def test_always_full_rank(self):
        # even a singular map has a full-rank preimage lattice
        m = IntMatrix.from_rows([[1, 1], [1, 1]])
        target = hnf(IntMatrix.from_columns([[5, 0], [0, 5]], rows=2))
        lattice = preimage_lattice(m, target)
        assert lattice.det() > 0
        assert lattice.contains((1, -1))


class TestSnf:
    def test_worked_example(self):
        d, left, right = snf(IntMatrix.from_rows([[2, 0], [0, 3]]))
        assert d == (1, 6)
        assert (left @ IntMatrix.from_rows([[2, 0], [0, 3]]) @ right).entries == (
            (1, 0),
            (0, 6),
        )

    @given(square_matrices(max_dim=4))
    @settings(max_examples=100)
    def test_transforms_and_divisibility(self, m):
        d, left, right = snf(m)
        product = left @ m @ right
        assert product.entries == tuple(
            tuple(d[i] if i == j else 0 for j in range(m.cols)) for i in range(m.rows)
        )
        assert abs(left.det()) == 1
        assert abs(right.det()) == 1
        nonzero = [x for x in d if x]
        assert all(x > 0 for x in nonzero)
        assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
        assert list(d) == nonzero + [0] * (len(d) - len(nonzero))


class TestUnimodular:
    def test_inverse(self):
        rng = random.Random(7)
        for _ in range(30):
            n = rng.randint(1, 4)
            u = random_unimodular(rng, n)
            assert abs(u.det()) == 1
            assert (u @ inverse_unimodular(u)).entries == IntMatrix.identity(n).entries

    def test_rejects_non_unimodular(self):
        with pytest.raises(ValueError):
            inverse_unimodular(IntMatrix.from_rows([[2, 0], [0, 1]]))


class TestHnfBasisValidation:
    def test_rejects_non_triangular(self):
        with pytest.raises(ValueError):
            HnfBasis(IntMatrix.from_rows([[1, 1], [0, 1]]))

    def test_rejects_unreduced(self):
        with pytest.raises(ValueError):
            HnfBasis(IntMatrix.from_rows([[2, 0], [5, 3]]))

    def test_rejects_nonpositive_diagonal(self):
        with pytest.raises(ValueError):
            HnfBasis(IntMatrix.from_rows([[0, 0], [0, 1]]))
