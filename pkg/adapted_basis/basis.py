"""
The adapted homology basis, the action of h on it and its intersection form.

Basis order: for each w, the orbit h^0(A_w) .. h^(p-1)(A_w) followed by the
orbit of B_w; then the exceptional elements h^k(X_{s,v}), k = 0 .. p-2,
for every fixed point pair (s, v) but the two smallest. For t = 0 the lifts
start at w = 2 and alpha, beta come last.

Matrices act on row vectors: row i of the action matrix is the image of the
i-th basis element.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional

from sympy import mod_inverse

from adapted_basis.errors import ContextMismatch, InvariantViolation, OddQ
from adapted_basis.invariants import PrimeOrderData, normalize_conjugacy
from adapted_basis.matrices import IntMatrix
from adapted_basis.rewriter import induced_action_on_generators, single_relator_presentation
from adapted_basis.symplectic import split_form
from adapted_basis.words import ALPHA, BETA, GeneratorSymbol, SymbolKind


class BasisKind(Enum):
    LIFT_A = 'LiftA'
    LIFT_B = 'LiftB'
    EXCEPTIONAL = 'Exceptional'
    ALPHA = 'Alpha'
    BETA = 'Beta'


@dataclass(frozen=True)
class BasisElement:
    """
    One element of the adapted basis.

    Attributes:
        kind: What sort of curve this is.
        power: The h-power j of h^j(A_w), h^j(B_w) or h^j(X_{s,v}).
        w: Index of the lifted handle, for LiftA and LiftB.
        s: Complementary rotation number of the fixed point, for Exceptional.
        v: Which of the fixed points with that rotation number, from 1.
    """

    kind: BasisKind
    power: int = 0
    w: int = 0
    s: int = 0
    v: int = 0

    @property
    def pair(self) -> tuple[int, int]:
        return self.s, self.v

    @property
    def label(self) -> str:
        if self.kind is BasisKind.ALPHA:
            return 'alpha'
        if self.kind is BasisKind.BETA:
            return 'beta'
        if self.kind is BasisKind.EXCEPTIONAL:
            return f'h^{self.power}(X_{{{self.s},{self.v}}})'
        letter = 'A' if self.kind is BasisKind.LIFT_A else 'B'
        return f'h^{self.power}({letter}_{{{self.w}}})'

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class ResidueContext:
    """
    s_hat is the smallest rotation number s with m_s != 0 and q_hat its
    inverse mod p, so that s_hat * [v] = v mod p.
    """

    s_hat: int
    q_hat: int

    @classmethod
    def from_data(cls, d: PrimeOrderData) -> 'ResidueContext':
        if d.is_fixed_point_free:
            return cls(s_hat=1, q_hat=1)
        s_hat = min(d.n)
        return cls(s_hat=s_hat, q_hat=int(mod_inverse(s_hat, d.p)))


def bracket_residue(v: int, ctx: ResidueContext, p: int) -> int:
    """[v]: the least non-negative residue of q_hat * v mod p."""
    return ctx.q_hat * v % p


def fixed_point_pairs(d: PrimeOrderData) -> list[tuple[int, int]]:
    """
    All pairs (s, v), 1 <= v <= m_s, in lexicographic order. The i-th pair
    belongs to the i-th fixed point of the normalized data.
    """
    return [(s, v) for s, count in enumerate(d.m, start=1) for v in range(1, count + 1)]


def input_fixed_point(e: BasisElement, d: PrimeOrderData) -> Optional[int]:
    """
    The position, in the order the caller supplied the fixed points, of the
    fixed point an exceptional element winds around. None for lifts and for
    alpha and beta.
    """

    if e.kind is not BasisKind.EXCEPTIONAL:
        return None
    d = normalize_conjugacy(d)
    return d.permutation[fixed_point_pairs(d).index(e.pair)]


def enumerate_basis(d: PrimeOrderData) -> list[BasisElement]:
    """
    The adapted basis: 2*p*g0 lifts and (p-1)(t-2) exceptional elements.

    Fixed point free data is delegated to `enumerate_basis_t0`.
    """

    if d.is_fixed_point_free:
        return enumerate_basis_t0(d)

    basis = _lifts(d, range(1, d.g0 + 1))
    basis += [
        BasisElement(BasisKind.EXCEPTIONAL, power=k, s=s, v=v)
        for s, v in fixed_point_pairs(d)[2:]
        for k in range(d.p - 1)
    ]
    return basis


def enumerate_basis_t0(d: PrimeOrderData) -> list[BasisElement]:
    """The canonical basis h^j(A_w), h^j(B_w) for w >= 2, then alpha and beta."""
    return _lifts(d, range(2, d.g0 + 1)) + [BasisElement(BasisKind.ALPHA), BasisElement(BasisKind.BETA)]


def intersection_number(
        e1: BasisElement,
        e2: BasisElement,
        d: PrimeOrderData,
        ctx: ResidueContext,
) -> int:
    """
    The algebraic intersection number e1 x e2.

    Exceptional pairs are reduced with e1 x e2 = -(e2 x e1) and
    h^j(C) x h^k(D) = C x h^(k-j)(D) to one of two forms. For distinct
    pairs (r, v_r) < (s, v_s), X_{r,v_r} x h^k(X_{s,v_s}) is

        1 if [k] < [r] <= [k+s],
        -1 if [k+s] < [r] <= [k],
        0 otherwise;

    for the same pair, X_{s,v} x h^k(X_{s,v}) is 1 if [k] <= [s] < [k+s],
    -1 if [k+s] < [s] < [k] and 0 otherwise.

    Raises:
        ContextMismatch: e1 or e2 is not in the basis of d, or ctx is not
            the residue context of d.
    """

    normalized = normalize_conjugacy(d)
    if ctx != ResidueContext.from_data(normalized):
        raise ContextMismatch(f'{ctx} is not the residue context of {d}.')

    members = _basis_members(normalized)
    for e in (e1, e2):
        if e not in members:
            raise ContextMismatch(f'{e} is not an element of the adapted basis of {d}.')

    return _pairing(e1, e2, ctx, d.p)


def intersection_matrix(d: PrimeOrderData) -> IntMatrix:
    """The 2g x 2g matrix of intersection numbers over `enumerate_basis`."""

    d = normalize_conjugacy(d)
    ctx = ResidueContext.from_data(d)
    basis = enumerate_basis(d)
    return IntMatrix.from_rows(
        ([_pairing(e1, e2, ctx, d.p) for e2 in basis] for e1 in basis),
        _labels(basis),
    )


def action_matrix(d: PrimeOrderData) -> IntMatrix:
    """
    The action of h on the adapted basis: a p x p cyclic block M for every
    lifted orbit, a (p-1) x (p-1) block N for every exceptional orbit (and
    a 2 x 2 identity on alpha, beta when t = 0).
    """

    d = normalize_conjugacy(d)
    p = d.p
    if d.is_fixed_point_free:
        blocks = [orbit_block(p)] * (2 * (d.g0 - 1)) + [IntMatrix.identity(2)]
    else:
        blocks = [orbit_block(p)] * (2 * d.g0) + [exceptional_orbit_block(p)] * (d.t - 2)

    return IntMatrix.block_diagonal(blocks, _labels(enumerate_basis(d)))


def orbit_block(p: int) -> IntMatrix:
    """M_pxp: ones on the superdiagonal and a one in the first column of the last row."""

    rows = [[int(j == i + 1) for j in range(p)] for i in range(p - 1)]
    rows.append([int(j == 0) for j in range(p)])
    return IntMatrix.from_rows(rows)


def exceptional_orbit_block(p: int) -> IntMatrix:
    """N_(p-1)x(p-1): ones on the superdiagonal and a last row of -1."""

    rows = [[int(j == i + 1) for j in range(p - 1)] for i in range(p - 2)]
    rows.append([-1] * (p - 1))
    return IntMatrix.from_rows(rows)


def canonical_intersection(d: PrimeOrderData) -> IntMatrix:
    """
    The canonical form ((0, I_pg0), (-I_pg0, 0)) (+) ((0, I_q), (-I_q, 0))
    with q = (p-1)(t-2)/2. For t = 0 the lifted part has size p(g0 - 1) and
    the second part is the single pair alpha, beta.

    Raises:
        OddQ: (p-1)(t-2) is odd.
    """

    if d.is_fixed_point_free:
        return IntMatrix.block_diagonal([split_form(d.p * (d.g0 - 1)), split_form(1)])

    exceptional = (d.p - 1) * (d.t - 2)
    if exceptional % 2:
        raise OddQ(f'(p - 1)(t - 2) must be even; got {exceptional} for p={d.p}, t={d.t}.')

    return IntMatrix.block_diagonal([split_form(d.p * d.g0), split_form(exceptional // 2)])


def tilde_order(d: PrimeOrderData) -> list[int]:
    """
    Positions in `enumerate_basis` order of the rearranged basis: all A
    orbits, then all B orbits, then the rest. Under it the lifted part of
    the intersection matrix is ((0, I), (-I, 0)).
    """

    basis = enumerate_basis(normalize_conjugacy(d))
    a = [i for i, e in enumerate(basis) if e.kind is BasisKind.LIFT_A]
    b = [i for i, e in enumerate(basis) if e.kind is BasisKind.LIFT_B]
    rest = [i for i, e in enumerate(basis) if e.kind not in (BasisKind.LIFT_A, BasisKind.LIFT_B)]
    return a + b + rest


def exceptional_block(d: PrimeOrderData) -> IntMatrix:
    """The intersection matrix restricted to the exceptional elements (alpha, beta when t = 0)."""

    d = normalize_conjugacy(d)
    basis = enumerate_basis(d)
    indices = [i for i, e in enumerate(basis) if e.kind not in (BasisKind.LIFT_A, BasisKind.LIFT_B)]
    return intersection_matrix(d).submatrix(indices)


def homology_action_full(d: PrimeOrderData) -> IntMatrix:
    """
    The action matrix obtained from the rewriting: the image of every
    generator of the one-relator presentation under h, abelianized over
    the adapted basis.
    """

    d = normalize_conjugacy(d)
    basis = enumerate_basis(d)
    position = {e: i for i, e in enumerate(basis)}
    pairs = fixed_point_pairs(d)

    images = induced_action_on_generators(single_relator_presentation(d), d)

    rows = [[0] * len(basis) for _ in basis]
    for symbol, image in images.items():
        row = rows[position[element_of(symbol, pairs)]]
        for generator, count in image.abelianize().items():
            row[position[element_of(generator, pairs)]] += count

    return IntMatrix.from_rows(rows, _labels(basis))


def element_of(symbol: GeneratorSymbol, pairs: Sequence[tuple[int, int]]) -> BasisElement:
    """The basis element a generator of the one-relator presentation represents."""

    if symbol == ALPHA:
        return BasisElement(BasisKind.ALPHA)
    if symbol == BETA:
        return BasisElement(BasisKind.BETA)
    if symbol.kind is SymbolKind.A:
        return BasisElement(BasisKind.LIFT_A, power=symbol.power, w=symbol.index)
    if symbol.kind is SymbolKind.B:
        return BasisElement(BasisKind.LIFT_B, power=symbol.power, w=symbol.index)
    if symbol.kind is SymbolKind.X and 3 <= symbol.index <= len(pairs):
        s, v = pairs[symbol.index - 1]
        return BasisElement(BasisKind.EXCEPTIONAL, power=symbol.power, s=s, v=v)

    raise InvariantViolation(f'{symbol} does not correspond to an element of the adapted basis.')


def _pairing(e1: BasisElement, e2: BasisElement, ctx: ResidueContext, p: int) -> int:
    exceptional = BasisKind.EXCEPTIONAL
    if e1.kind is exceptional and e2.kind is exceptional:
        if e1.pair == e2.pair:
            return _same_pair(e1.s, (e2.power - e1.power) % p, ctx, p)
        if e1.pair < e2.pair:
            return _distinct_pairs(e1.s, e2.s, (e2.power - e1.power) % p, ctx, p)
        return -_distinct_pairs(e2.s, e1.s, (e1.power - e2.power) % p, ctx, p)

    if e1.kind is exceptional or e2.kind is exceptional:
        return 0

    kinds = (e1.kind, e2.kind)
    if kinds in ((BasisKind.ALPHA, BasisKind.BETA), (BasisKind.BETA, BasisKind.ALPHA)):
        return 1 if e1.kind is BasisKind.ALPHA else -1

    if (e1.w, e1.power) != (e2.w, e2.power):
        return 0
    if kinds == (BasisKind.LIFT_A, BasisKind.LIFT_B):
        return 1
    if kinds == (BasisKind.LIFT_B, BasisKind.LIFT_A):
        return -1
    return 0


def _distinct_pairs(r: int, s: int, k: int, ctx: ResidueContext, p: int) -> int:
    low = bracket_residue(k, ctx, p)
    high = bracket_residue(k + s, ctx, p)
    x = bracket_residue(r, ctx, p)
    if low < x <= high:
        return 1
    if high < x <= low:
        return -1
    return 0


def _same_pair(s: int, k: int, ctx: ResidueContext, p: int) -> int:
    low = bracket_residue(k, ctx, p)
    high = bracket_residue(k + s, ctx, p)
    x = bracket_residue(s, ctx, p)
    if low <= x < high:
        return 1
    if high < x < low:
        return -1
    return 0


def _lifts(d: PrimeOrderData, handles: range) -> list[BasisElement]:
    return [
        BasisElement(kind, power=j, w=w)
        for w in handles
        for kind in (BasisKind.LIFT_A, BasisKind.LIFT_B)
        for j in range(d.p)
    ]


@lru_cache(maxsize=64)
def _basis_members(d: PrimeOrderData) -> frozenset[BasisElement]:
    return frozenset(enumerate_basis(d))


def _labels(basis: Sequence[BasisElement]) -> list[str]:
    return [e.label for e in basis]
