from typing import Optional, Sequence

from adapted_basis.invariants import PrimeOrderData, normalize_conjugacy, validate, validate_fixed_point_free
from adapted_basis.words import GeneratorSymbol, SymbolKind

WORKED_EXAMPLE = (3, (1, 1, 2, 1, 1), 0)

# Intersection matrix of the worked example over
# X_{1,3}, h(X_{1,3}), X_{1,4}, h(X_{1,4}), X_{2,1}, h(X_{2,1})
WORKED_EXAMPLE_INTERSECTIONS = [
    [0, 1, 1, 0, 1, -1],
    [-1, 0, -1, 1, 0, 1],
    [-1, 1, 0, 1, 1, -1],
    [0, -1, -1, 0, 0, 1],
    [-1, 0, -1, 0, 0, 0],
    [1, -1, 1, -1, 0, 0],
]

# The symplectic action published alongside the worked example, over the
# rearranged basis with the form ((0, I), (-I, 0))
PUBLISHED_SYMPLECTIC_ACTION = [
    [0, 1, 0, -1, 0, 0],
    [0, -1, 0, 1, 0, -1],
    [1, -1, -1, 0, -1, -1],
    [1, 0, 0, -1, 0, -1],
    [0, 1, 1, -1, 0, -1],
    [0, 1, 0, 0, 0, 0],
]

# (p, n, g0); n=None means no fixed points
CASES = [
    (3, (1, 1, 2, 1, 1), 0),
    (3, (1, 2), 1),
    (2, (1, 1), 1),
    (2, (1, 1, 1, 1, 1, 1), 0),
    (3, (1, 1, 1), 1),
    (3, (2, 2, 2), 1),
    (5, (1, 4), 1),
    (5, (1, 2, 2), 0),
    (5, (2, 4, 4), 0),
    (5, (3, 3, 4), 0),
    (7, (1, 2, 4), 0),
    (2, None, 2),
    (3, None, 2),
    (5, None, 2),
]

CASES_WITH_FIXED_POINTS = [case for case in CASES if case[1] is not None]


def build(p: int, n: Optional[Sequence[int]], g0: int) -> PrimeOrderData:
    """Normalized conjugacy data for a case of `CASES`."""

    if n is None:
        return validate_fixed_point_free(p, g0)
    return normalize_conjugacy(validate(p, n, g0))


def a(index: int, power: int = 0) -> GeneratorSymbol:
    return GeneratorSymbol(SymbolKind.A, index, power)


def b(index: int, power: int = 0) -> GeneratorSymbol:
    return GeneratorSymbol(SymbolKind.B, index, power)


def x(index: int, power: int = 0) -> GeneratorSymbol:
    return GeneratorSymbol(SymbolKind.X, index, power)


class BaseWorkedExampleTest:
    d: PrimeOrderData

    def setup_method(self) -> None:
        self.d = build(*WORKED_EXAMPLE)
