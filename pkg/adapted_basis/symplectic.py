"""
Integer normalization of unimodular alternating forms.

`symplectic_basis` finds a unimodular P with P^T B P = J, J the paired form
with blocks ((0, 1), (-1, 0)) down the diagonal, by splitting off one
hyperbolic pair at a time.
"""

import logging
import warnings
from dataclasses import dataclass

from adapted_basis.errors import DimensionMismatch, InvariantViolation, NotSkew, NotUnimodular, OddDimension
from adapted_basis.matrices import IntMatrix, require_same_shape

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymplecticChange:
    """
    A change of basis P (new basis vectors as columns) taking a form B to
    the canonical form J: P^T B P = J.
    """

    P: IntMatrix
    J: IntMatrix

    def to_split(self) -> 'SymplecticChange':
        """The same change of basis, reordered to the ((0, I), (-I, 0)) form."""

        if self.J != paired_form(self.J.size // 2):
            return self
        permutation = paired_to_split(self.J.size // 2)
        return SymplecticChange(self.P @ permutation, split_form(self.J.size // 2))


def paired_form(n: int) -> IntMatrix:
    """The 2n x 2n form with n blocks ((0, 1), (-1, 0)) down the diagonal."""

    block = IntMatrix.from_rows([[0, 1], [-1, 0]])
    return IntMatrix.block_diagonal([block] * n)


def split_form(n: int) -> IntMatrix:
    """The 2n x 2n form ((0, I_n), (-I_n, 0))."""

    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = 1
        rows[n + i][i] = -1
    return IntMatrix.from_rows(rows)


def paired_to_split(n: int) -> IntMatrix:
    """
    The permutation matrix Q taking (e_1, f_1, ..., e_n, f_n) coordinates to
    (e_1, ..., e_n, f_1, ..., f_n) coordinates: Q^T paired_form(n) Q = split_form(n).
    """

    order = [2 * k for k in range(n)] + [2 * k + 1 for k in range(n)]
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for column, row in enumerate(order):
        rows[row][column] = 1
    return IntMatrix.from_rows(rows)


def symplectic_basis(B: IntMatrix) -> SymplecticChange:
    """
    Find a symplectic basis for the alternating form B.

    Pivot choice is deterministic: the smallest nonzero |B_ij| among the
    vectors not yet paired, lowest row then column on ties. The pivot row is
    reduced by Euclid's algorithm until a single entry +1 or -1 remains,
    which gives the partner f of e; every other vector x then becomes
    x - w(x, f) e + w(x, e) f.

    Raises:
        NotSkew: B is not skew-symmetric with a zero diagonal.
        OddDimension: B has odd dimension.
        NotUnimodular: B is degenerate or has an elementary divisor other than 1.
    """

    if not B.is_skew_symmetric():
        raise NotSkew(f'B must be a skew-symmetric square matrix; got\n{B}')
    n = B.size
    if n % 2:
        raise OddDimension(f'B must have even dimension; got {n}.')

    gram = [list(row) for row in B.rows]
    vectors = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_multiple(target: int, source: int, c: int) -> None:
        """vectors[target] += c * vectors[source], updating the Gram matrix."""

        vectors[target] = [t + c * s for t, s in zip(vectors[target], vectors[source])]
        for x in range(n):
            gram[target][x] += c * gram[source][x]
        for x in range(n):
            gram[x][target] += c * gram[x][source]

    remaining = list(range(n))
    pairs = []
    while remaining:
        nonzero = [(abs(gram[i][j]), i, j) for i in remaining for j in remaining if gram[i][j]]
        if not nonzero:
            raise NotUnimodular(f'B is degenerate; vectors {remaining} pair to zero with each other.')
        _, e, _ = min(nonzero)

        while True:
            others = [(abs(gram[e][j]), j) for j in remaining if j != e and gram[e][j]]
            _, f = min(others)
            for _, j in others:
                if j != f:
                    add_multiple(j, f, -(gram[e][j] // gram[e][f]))
            if all(gram[e][j] == 0 for j in remaining if j not in (e, f)):
                break

        if abs(gram[e][f]) != 1:
            raise NotUnimodular(f'B has an elementary divisor {abs(gram[e][f])}; it must be unimodular.')
        if gram[e][f] == -1:
            e, f = f, e
        logger.debug('Pivot pair (%d, %d)', e, f)

        for x in remaining:
            if x in (e, f):
                continue
            along_e, along_f = gram[x][e], gram[x][f]
            if along_f:
                add_multiple(x, e, -along_f)
            if along_e:
                add_multiple(x, f, along_e)

        pairs.append((e, f))
        remaining = [x for x in remaining if x not in (e, f)]

    columns = [vectors[i] for pair in pairs for i in pair]
    P = IntMatrix.from_rows(zip(*columns)) if columns else IntMatrix(())
    J = paired_form(n // 2)

    if P.T @ B @ P != J:
        raise InvariantViolation('Symplectic normalization produced P with P^T B P != J.')

    return SymplecticChange(P, J)


def transform_action(M: IntMatrix, chg: SymplecticChange) -> IntMatrix:
    """
    The action matrix M, written on row vectors over the old basis,
    rewritten over the basis formed by the columns of chg.P:
    T = P^T M (P^T)^-1.

    Raises:
        DimensionMismatch: M and P differ in size.
    """

    if M.shape != chg.P.shape:
        raise DimensionMismatch(f'M has shape {M.shape} but P has shape {chg.P.shape}.')

    P_T = chg.P.T
    return P_T @ M @ P_T.inverse()


def is_symplectic(M: IntMatrix, J: IntMatrix) -> bool:
    """
    M^T J M = J.

    Raises:
        DimensionMismatch: M and J are not square of the same size.
    """

    require_same_shape(M, J)
    return M.T @ J @ M == J


def preserves_form(M: IntMatrix, B: IntMatrix) -> bool:
    """
    Whether the action M (on row vectors) preserves the form B: M B M^T = B.

    Raises:
        DimensionMismatch: M and B are not square of the same size.
    """

    require_same_shape(M, B)
    return M @ B @ M.T == B


def check_reference_matrix(T: IntMatrix, J: IntMatrix, name: str = 'reference matrix') -> bool:
    """
    Check a published action matrix against T^T J T = J without raising.

    A failure is logged and reported with `warnings.warn`.
    """

    try:
        passed = is_symplectic(T, J)
    except DimensionMismatch as e:
        logger.warning('%s cannot be checked: %s', name, e)
        warnings.warn(f'{name} cannot be checked: {e}')
        return False

    if passed:
        logger.info('%s is symplectic', name)
    else:
        logger.warning('%s fails T^T J T = J; it probably contains a typo', name)
        warnings.warn(f'{name} fails T^T J T = J; it probably contains a typo.')

    return passed
