import pytest

from adapted_basis.basis import action_matrix, intersection_matrix, orbit_block
from adapted_basis.errors import DimensionMismatch, NotSkew, NotUnimodular, OddDimension
from adapted_basis.matrices import IntMatrix
from adapted_basis.symplectic import (
    SymplecticChange,
    check_reference_matrix,
    is_symplectic,
    paired_form,
    paired_to_split,
    preserves_form,
    split_form,
    symplectic_basis,
    transform_action,
)
from test_adapted_basis.conftest import (
    CASES,
    PUBLISHED_SYMPLECTIC_ACTION,
    WORKED_EXAMPLE_INTERSECTIONS,
    BaseWorkedExampleTest,
    build,
)


class TestForms:
    def test_paired_form(self):
        assert paired_form(2) == IntMatrix.from_rows([
            [0, 1, 0, 0],
            [-1, 0, 0, 0],
            [0, 0, 0, 1],
            [0, 0, -1, 0],
        ])

    def test_split_form(self):
        assert split_form(2) == IntMatrix.from_rows([
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [-1, 0, 0, 0],
            [0, -1, 0, 0],
        ])

    @pytest.mark.parametrize('n', [1, 2, 3, 5])
    def test_paired_to_split(self, n: int):
        Q = paired_to_split(n)

        assert Q.T @ paired_form(n) @ Q == split_form(n)


class TestSymplecticBasis:
    def test_symplectic_basis_of_canonical_form_is_identity(self):
        change = symplectic_basis(paired_form(3))

        assert change.P == IntMatrix.identity(6)
        assert change.J == paired_form(3)

    def test_symplectic_basis_of_negated_form_swaps(self):
        change = symplectic_basis(IntMatrix.from_rows([[0, -1], [1, 0]]))

        assert change.P == IntMatrix.from_rows([[0, 1], [1, 0]])

    def test_symplectic_basis_of_worked_example(self):
        B = IntMatrix.from_rows(WORKED_EXAMPLE_INTERSECTIONS)

        change = symplectic_basis(B)

        assert change.P.T @ B @ change.P == change.J
        assert abs(change.P.det()) == 1

    def test_symplectic_basis_is_deterministic(self):
        B = IntMatrix.from_rows(WORKED_EXAMPLE_INTERSECTIONS)

        assert symplectic_basis(B) == symplectic_basis(B)

    def test_symplectic_basis_reduces_non_unit_entries(self):
        B = IntMatrix.from_rows([
            [0, 2, 3, 0],
            [-2, 0, 0, 1],
            [-3, 0, 0, 2],
            [0, -1, -2, 0],
        ])

        change = symplectic_basis(B)

        assert change.P.T @ B @ change.P == paired_form(2)

    def test_symplectic_basis_without_fixed_points_is_permutation(self):
        change = symplectic_basis(intersection_matrix(build(3, None, 2)))

        for column in zip(*change.P.rows):
            assert sorted(abs(entry) for entry in column) == [0] * (len(column) - 1) + [1]

    @pytest.mark.parametrize('B', [
        IntMatrix.from_rows([[0, 1], [1, 0]]),
        IntMatrix.from_rows([[1, 0], [0, -1]]),
        IntMatrix.from_rows([[0, 1, 0], [-1, 0, 0]]),
    ])
    def test_symplectic_basis_of_non_skew_raises_NotSkew(self, B: IntMatrix):
        with pytest.raises(NotSkew):
            symplectic_basis(B)

    @pytest.mark.parametrize('n', [1, 3])
    def test_symplectic_basis_of_odd_dimension_raises_OddDimension(self, n: int):
        with pytest.raises(OddDimension):
            symplectic_basis(IntMatrix.from_rows([[0] * n] * n))

    @pytest.mark.parametrize('B', [
        IntMatrix.from_rows([[0, 2], [-2, 0]]),
        IntMatrix.from_rows([[0, 0], [0, 0]]),
        IntMatrix.block_diagonal([paired_form(1), IntMatrix.from_rows([[0, 3], [-3, 0]])]),
    ])
    def test_symplectic_basis_of_non_unimodular_raises_NotUnimodular(self, B: IntMatrix):
        with pytest.raises(NotUnimodular):
            symplectic_basis(B)

    @pytest.mark.parametrize('p, n, g0', CASES)
    def test_symplectic_basis_of_intersection_matrix(self, p: int, n: tuple, g0: int):
        I = intersection_matrix(build(p, n, g0))

        change = symplectic_basis(I)

        assert change.P.T @ I @ change.P == change.J
        assert abs(change.P.det()) == 1

    def test_to_split(self):
        B = IntMatrix.from_rows(WORKED_EXAMPLE_INTERSECTIONS)

        change = symplectic_basis(B).to_split()

        assert change.J == split_form(3)
        assert change.P.T @ B @ change.P == split_form(3)


class TestTransformAction(BaseWorkedExampleTest):
    def test_transform_identity_is_identity(self):
        change = symplectic_basis(intersection_matrix(self.d))

        assert transform_action(IntMatrix.identity(6), change) == IntMatrix.identity(6)

    def test_transform_action_of_worked_example(self):
        change = symplectic_basis(intersection_matrix(self.d))

        T = transform_action(action_matrix(self.d), change)

        assert is_symplectic(T, change.J)
        assert (T ** 3).is_identity()

    @pytest.mark.parametrize('p, n, g0', CASES)
    def test_transformed_action_is_symplectic_of_order_p(self, p: int, n: tuple, g0: int):
        d = build(p, n, g0)
        change = symplectic_basis(intersection_matrix(d))

        T = transform_action(action_matrix(d), change)

        assert is_symplectic(T, change.J)
        assert (T ** p).is_identity()

    def test_transform_action_with_wrong_size_raises_DimensionMismatch(self):
        change = SymplecticChange(IntMatrix.identity(2), paired_form(1))

        with pytest.raises(DimensionMismatch):
            transform_action(IntMatrix.identity(4), change)

    def test_published_symplectic_action_is_checked(self):
        T = IntMatrix.from_rows(PUBLISHED_SYMPLECTIC_ACTION)

        # The published matrix pairs its second and third rows to -1
        with pytest.warns(UserWarning):
            assert not check_reference_matrix(T, split_form(3), name='published action')

    def test_check_reference_matrix_passes_our_action(self):
        change = symplectic_basis(intersection_matrix(self.d)).to_split()
        T = transform_action(action_matrix(self.d), change)

        assert check_reference_matrix(T, change.J)


class TestIsSymplectic:
    def test_identity_is_symplectic(self):
        assert is_symplectic(IntMatrix.identity(4), paired_form(2))

    def test_scaling_is_not_symplectic(self):
        scaled = IntMatrix.from_rows([[2, 0], [0, 2]])

        assert not is_symplectic(scaled, paired_form(1))

    @pytest.mark.parametrize('p', [2, 3, 5])
    def test_doubled_orbit_block_is_symplectic(self, p: int):
        M = IntMatrix.block_diagonal([orbit_block(p), orbit_block(p)])

        assert is_symplectic(M, split_form(p))

    def test_is_symplectic_with_mismatched_sizes_raises_DimensionMismatch(self):
        with pytest.raises(DimensionMismatch):
            is_symplectic(IntMatrix.identity(4), paired_form(1))


class TestPreservesForm:
    def test_identity_preserves_any_form(self):
        B = IntMatrix.from_rows(WORKED_EXAMPLE_INTERSECTIONS)

        assert preserves_form(IntMatrix.identity(6), B)

    def test_swap_does_not_preserve_canonical_form(self):
        assert not preserves_form(IntMatrix.from_rows([[0, 1], [1, 0]]), paired_form(1))

    def test_orbit_block_against_canonical_form_raises_DimensionMismatch(self):
        with pytest.raises(DimensionMismatch):
            preserves_form(orbit_block(3), paired_form(1))
