"""
Words in free groups (backed by sympy's free groups), generator symbols and
group presentations.
"""

from collections import Counter
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum
from typing import Generic, Literal, TypeVar, Union

from sympy import Symbol
from sympy.combinatorics.free_groups import FreeGroup, FreeGroupElement

from adapted_basis.errors import MalformedInput

T = TypeVar('T', bound=Hashable)
U = TypeVar('U', bound=Hashable)

Sign = Literal[-1, 1]


class SymbolKind(Enum):
    A = 'A'
    B = 'B'
    X = 'X'
    ALPHA_BETA = 'AlphaBeta'


@dataclass(frozen=True, order=True)
class BaseGenerator:
    """A generator a_i, b_i or x_j of the orbifold group F0."""

    kind: Literal['a', 'b', 'x']
    index: int

    def __str__(self) -> str:
        return f'{self.kind}_{self.index}'


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    """
    A generator h^power(A_index), h^power(B_index) or h^power(X_index) of the
    surface group F, or one of the two curves alpha (index 0) and beta
    (index 1) of the fixed point free case.
    """

    kind: SymbolKind
    index: int
    power: int = 0

    def __str__(self) -> str:
        if self.kind is SymbolKind.ALPHA_BETA:
            return 'alpha' if self.index == 0 else 'beta'
        return f'h^{self.power}({self.kind.value}_{self.index})'

    def shifted(self, k: int, p: int) -> 'GeneratorSymbol':
        return GeneratorSymbol(self.kind, self.index, (self.power + k) % p)


ALPHA = GeneratorSymbol(SymbolKind.ALPHA_BETA, 0)
BETA = GeneratorSymbol(SymbolKind.ALPHA_BETA, 1)


class _Alphabet:
    """
    Every generator label seen so far, each standing for one sympy Symbol.

    Words are elements of the free group on all the Symbols issued; the group
    is rebuilt (and cached by sympy) whenever a new label shows up, and older
    elements are lifted into it before any arithmetic.
    """

    def __init__(self):
        self._symbols: dict[Hashable, Symbol] = {}
        self._labels: dict[Symbol, Hashable] = {}
        self.group: FreeGroup = FreeGroup(())

    def symbol(self, label: Hashable) -> Symbol:
        symbol = self._symbols.get(label)
        if symbol is None:
            symbol = Symbol(f'w{len(self._symbols)}')
            self._symbols[label] = symbol
            self._labels[symbol] = label
            self.group = FreeGroup(tuple(self._symbols.values()))
        return symbol

    def label(self, symbol: Symbol) -> Hashable:
        return self._labels[symbol]

    def lift(self, element: FreeGroupElement) -> FreeGroupElement:
        if element.group is self.group:
            return element
        return self.group.dtype(tuple(element))

    def syllable(self, symbol: Symbol, exponent: int) -> FreeGroupElement:
        return self.group.dtype(((symbol, exponent),))


_ALPHABET = _Alphabet()


class FreeWord(Generic[T]):
    """
    An element of a free group on hashable generator labels, read as a
    sequence of (generator, sign) letters with sign +1 or -1.

    The arithmetic is done by a sympy FreeGroupElement; the labels only
    decide which Symbol each letter uses.
    """

    __slots__ = ('_element',)

    def __init__(self, letters: Iterable[tuple[T, int]] = ()):
        syllables = []
        for generator, sign in letters:
            if sign not in (-1, 1):
                raise MalformedInput(f'Letter signs must be +1 or -1; got {sign} on {generator}.')
            syllables.append((_ALPHABET.symbol(generator), sign))

        element = _ALPHABET.group.identity
        for symbol, sign in syllables:
            element *= _ALPHABET.syllable(symbol, sign)
        self._element: FreeGroupElement = element

    @classmethod
    def _wrap(cls, element: FreeGroupElement) -> 'FreeWord':
        word = cls.__new__(cls)
        word._element = element
        return word

    @classmethod
    def generator(cls, generator: T, sign: int = 1) -> 'FreeWord[T]':
        return cls(((generator, sign),))

    @classmethod
    def product(cls, words: Iterable['FreeWord[T]']) -> 'FreeWord[T]':
        result = cls()
        for word in words:
            result = result * word
        return result

    @property
    def element(self) -> FreeGroupElement:
        """The word as an element of the current sympy free group."""
        return _ALPHABET.lift(self._element)

    @property
    def letters(self) -> tuple[tuple[T, int], ...]:
        return tuple(
            (_ALPHABET.label(symbol), 1 if exponent > 0 else -1)
            for symbol, exponent in self._element.array_form
            for _ in range(abs(exponent))
        )

    def __iter__(self) -> Iterator[tuple[T, int]]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self._element)

    def __getitem__(self, i: int) -> tuple[T, int]:
        return self.letters[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeWord):
            return NotImplemented
        return tuple(self._element) == tuple(other._element)

    def __hash__(self) -> int:
        return hash(tuple(self._element))

    def __mul__(self, other: 'FreeWord[T]') -> 'FreeWord[T]':
        return FreeWord._wrap(self.element * other.element)

    def __invert__(self) -> 'FreeWord[T]':
        return FreeWord._wrap(self._element.inverse())

    def inverse(self) -> 'FreeWord[T]':
        return ~self

    def __pow__(self, k: int) -> 'FreeWord[T]':
        return FreeWord._wrap(self._element ** k)

    def __repr__(self) -> str:
        return f'FreeWord({str(self)!r})'

    def __str__(self) -> str:
        if self.is_identity():
            return '1'
        return ' '.join(str(g) if sign == 1 else f'{g}^-1' for g, sign in self)

    def is_identity(self) -> bool:
        return self._element.is_identity

    def conjugate_by(self, other: 'FreeWord[T]') -> 'FreeWord[T]':
        """Return other * self * other^-1."""
        return other * self * ~other

    def cyclically_reduced(self) -> 'FreeWord[T]':
        return FreeWord._wrap(self._element.cyclic_reduction())

    def rotated(self, i: int) -> 'FreeWord[T]':
        """Cyclically rotate so that the letter at position i comes first."""

        letters = self.letters
        if not letters:
            return self
        i %= len(letters)
        return FreeWord(letters[i:] + letters[:i])

    def generators(self) -> list[T]:
        """The distinct generators occurring in the word, in order of first occurrence."""
        return list(dict.fromkeys(_ALPHABET.label(symbol) for symbol, _ in self._element.array_form))

    def occurrences(self, generator: T) -> list[tuple[int, int]]:
        """Positions and signs of every occurrence of the generator."""
        return [(i, sign) for i, (g, sign) in enumerate(self) if g == generator]

    def abelianize(self) -> Counter:
        """Exponent sum of each generator; generators summing to zero are omitted."""

        element = self._element
        counts: Counter = Counter()
        for symbol in dict.fromkeys(symbol for symbol, _ in element.array_form):
            total = element.exponent_sum(element.group.dtype(((symbol, 1),)))
            if total:
                counts[_ALPHABET.label(symbol)] = total
        return counts

    def substitute(self, images: Mapping[T, 'FreeWord[U]']) -> 'FreeWord[Union[T, U]]':
        """Replace every generator found in `images` by its image word."""

        result: FreeWord = FreeWord()
        for symbol, exponent in self._element.array_form:
            image = images.get(_ALPHABET.label(symbol))
            if image is None:
                result = result * FreeWord._wrap(_ALPHABET.syllable(symbol, exponent))
            else:
                result = result * image ** exponent
        return result

    def map_generators(self, fn: Callable[[T], U]) -> 'FreeWord[U]':
        return FreeWord((fn(generator), sign) for generator, sign in self)

    def solve_for(self, generator: T) -> 'FreeWord[T]':
        """
        Treat this word as a relator and solve it for a generator that occurs
        exactly once, returning the word the generator equals.

        Raises:
            MalformedInput: The generator does not occur exactly once.
        """

        occurrences = self.occurrences(generator)
        if len(occurrences) != 1:
            raise MalformedInput(
                f'Can only solve for a generator occurring exactly once; '
                f'{generator} occurs {len(occurrences)} times in {self}.'
            )

        position, sign = occurrences[0]
        rest = FreeWord(self.rotated(position).letters[1:])
        # generator^sign * rest = 1
        return ~rest if sign == 1 else rest


def commutator(a: FreeWord[T], b: FreeWord[T]) -> FreeWord[T]:
    return a * b * ~a * ~b


@dataclass(frozen=True)
class Presentation(Generic[T]):
    """
    A group presentation: generators and named relators.

    Every generator occurring in a relator must be listed.
    """

    generators: tuple[T, ...]
    relators: tuple[tuple[str, FreeWord[T]], ...] = field(default=())

    def __post_init__(self):
        known = set(self.generators)
        for name, word in self.relators:
            unknown = [g for g in word.generators() if g not in known]
            if unknown:
                raise MalformedInput(
                    f'Relator {name!r} uses generators not in the presentation: '
                    f'{", ".join(map(str, unknown))}.'
                )

    def relator(self, name: str) -> FreeWord[T]:
        for relator_name, word in self.relators:
            if relator_name == name:
                return word
        raise MalformedInput(f'Presentation has no relator named {name!r}.')

    def has_relator(self, name: str) -> bool:
        return any(relator_name == name for relator_name, _ in self.relators)

    @property
    def relator_words(self) -> list[FreeWord[T]]:
        return [word for _, word in self.relators]

    def __str__(self) -> str:
        generators = ', '.join(map(str, self.generators))
        relators = '; '.join(f'{word} = 1' for _, word in self.relators)
        return f'<{generators} | {relators}>'
