"""
Exact integer matrices with labelled rows and columns.

Arithmetic is delegated to sympy's `DomainMatrix` over ZZ, so products,
powers, determinants and inverses are computed exactly.
"""

import csv
import io
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from adapted_basis.errors import DimensionMismatch, MalformedInput, NotUnimodular


@dataclass(frozen=True)
class IntMatrix:
    """
    An exact integer matrix.

    Attributes:
        rows: The entries, row by row.
        labels:
            One label per row of a square matrix, naming the basis element
            the row and column stand for. May be empty.
    """

    rows: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        widths = {len(row) for row in self.rows}
        if len(widths) > 1:
            raise MalformedInput(f'All rows must have the same length; got lengths {sorted(widths)}.')
        if self.labels and len(self.labels) != len(self.rows):
            raise MalformedInput(
                f'Expected {len(self.rows)} labels, one per row; got {len(self.labels)}.'
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], labels: Sequence[str] = ()) -> 'IntMatrix':
        return cls(tuple(tuple(int(x) for x in row) for row in rows), tuple(labels))

    @classmethod
    def identity(cls, n: int, labels: Sequence[str] = ()) -> 'IntMatrix':
        return cls.from_rows(([int(i == j) for j in range(n)] for i in range(n)), labels)

    @classmethod
    def block_diagonal(cls, blocks: Sequence['IntMatrix'], labels: Sequence[str] = ()) -> 'IntMatrix':
        n = sum(block.size for block in blocks)
        rows = [[0] * n for _ in range(n)]
        offset = 0
        for block in blocks:
            for i, row in enumerate(block.rows):
                rows[offset + i][offset:offset + block.size] = row
            offset += block.size
        return cls.from_rows(rows, labels)

    @classmethod
    def from_domain_matrix(cls, dm: DomainMatrix, labels: Sequence[str] = ()) -> 'IntMatrix':
        return cls.from_rows(dm.to_list(), labels)

    def to_domain_matrix(self) -> DomainMatrix:
        n_rows, n_cols = self.shape
        return DomainMatrix([[ZZ(x) for x in row] for row in self.rows], (n_rows, n_cols), ZZ)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    @property
    def size(self) -> int:
        """The dimension of a square matrix."""
        return len(self.rows)

    def is_square(self) -> bool:
        n_rows, n_cols = self.shape
        return n_rows == n_cols

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.rows[i][j]

    def __eq__(self, other: object) -> bool:
        """Matrices compare by entries only; labels are annotation."""
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __matmul__(self, other: 'IntMatrix') -> 'IntMatrix':
        if self.shape[1] != other.shape[0]:
            raise DimensionMismatch(f'Cannot multiply a {self.shape} matrix by a {other.shape} matrix.')
        if not self.rows or not other.rows:
            return IntMatrix(tuple(() for _ in self.rows))
        product = self.to_domain_matrix().matmul(other.to_domain_matrix())
        labels = self.labels if self.labels and other.labels == self.labels else ()
        return IntMatrix.from_domain_matrix(product, labels)

    def __neg__(self) -> 'IntMatrix':
        return IntMatrix.from_rows(([-x for x in row] for row in self.rows), self.labels)

    def __pow__(self, k: int) -> 'IntMatrix':
        self._require_square('raise to a power')
        if k < 0:
            return self.inverse() ** -k
        result = IntMatrix.identity(self.size, self.labels)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    @property
    def T(self) -> 'IntMatrix':
        return IntMatrix.from_rows(zip(*self.rows), self.labels) if self.rows else self

    def det(self) -> int:
        self._require_square('take the determinant of')
        if not self.rows:
            return 1
        return int(self.to_domain_matrix().det())

    def inverse(self) -> 'IntMatrix':
        """
        The exact inverse of a unimodular matrix.

        Raises:
            NotUnimodular: the determinant is not +1 or -1.
        """

        determinant = self.det()
        if determinant not in (-1, 1):
            raise NotUnimodular(f'Only matrices with determinant +1 or -1 have integer inverses; got {determinant}.')
        if not self.rows:
            return self
        inverse = self.to_domain_matrix().to_field().inv().convert_to(ZZ)
        return IntMatrix.from_domain_matrix(inverse, self.labels)

    def is_identity(self) -> bool:
        return self.is_square() and self == IntMatrix.identity(self.size)

    def is_skew_symmetric(self) -> bool:
        return self.is_square() and all(
            self.rows[i][j] == -self.rows[j][i]
            for i in range(self.size)
            for j in range(i, self.size)
        )

    def permuted(self, order: Sequence[int]) -> 'IntMatrix':
        """
        Reorder rows and columns together: entry (i, j) of the result is
        entry (order[i], order[j]) of this matrix.
        """

        self._require_square('permute')
        if sorted(order) != list(range(self.size)):
            raise MalformedInput(f'order must be a permutation of range({self.size}); got {list(order)}.')
        labels = tuple(self.labels[i] for i in order) if self.labels else ()
        return IntMatrix.from_rows(([self.rows[i][j] for j in order] for i in order), labels)

    def submatrix(self, indices: Sequence[int]) -> 'IntMatrix':
        labels = tuple(self.labels[i] for i in indices) if self.labels else ()
        return IntMatrix.from_rows(([self.rows[i][j] for j in indices] for i in indices), labels)

    def relabelled(self, labels: Sequence[str]) -> 'IntMatrix':
        return IntMatrix(self.rows, tuple(labels))

    def to_json(self) -> dict[str, Any]:
        return {'labels': list(self.labels), 'rows': [list(row) for row in self.rows]}

    def to_text(self) -> str:
        """Aligned table, one row per line, with a label column and header when labels are present."""

        cells = [[str(x) for x in row] for row in self.rows]
        if self.labels:
            cells = [[''] + list(self.labels)] + [[label] + row for label, row in zip(self.labels, cells)]
        if not cells:
            return ''

        widths = [max(len(row[j]) for row in cells) for j in range(len(cells[0]))]
        lines = [
            '  '.join(cell.rjust(width) for cell, width in zip(row, widths)).rstrip()
            for row in cells
        ]
        return '\n'.join(lines)

    def to_csv(self) -> str:
        """CSV with a header row of labels (if any) followed by the rows."""

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        if self.labels:
            writer.writerow(self.labels)
        writer.writerows(self.rows)
        return buffer.getvalue()

    def __str__(self) -> str:
        return self.to_text()

    def _require_square(self, action: str) -> None:
        if not self.is_square():
            raise DimensionMismatch(f'Can only {action} a square matrix; got shape {self.shape}.')


def require_same_shape(*matrices: IntMatrix) -> None:
    """
    Raises:
        DimensionMismatch: the matrices are not all square of the same size.
    """

    shapes = {m.shape for m in matrices}
    if len(shapes) != 1 or not matrices[0].is_square():
        raise DimensionMismatch(f'Expected square matrices of equal size; got shapes {[m.shape for m in matrices]}.')
