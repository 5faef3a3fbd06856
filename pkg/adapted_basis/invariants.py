"""
Conjugacy invariants of a prime order automorphism.

A conformal automorphism h of prime order p on a compact Riemann surface of
genus g is determined up to conjugacy by the quotient genus g0 and the
complementary rotation numbers n_1, ..., n_t at its t fixed points
(equivalently, by the multiplicities m_j = #{i : n_i = j}).
"""

from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, replace
from typing import Any

from sympy import isprime, mod_inverse

from adapted_basis.errors import (
    BadExponent,
    GenusTooSmall,
    InvalidT,
    MalformedInput,
    NotPrime,
    OutOfRange,
    RotationSumNonzero,
)


@dataclass(frozen=True)
class PrimeOrderData:
    """
    Validated conjugacy data of a prime order automorphism class.

    Instances are only built by the functions of this module, which enforce
    the Riemann-Hurwitz relation and the rotation sum condition.

    Attributes:
        p: Order of the automorphism (prime).
        t: Number of fixed points.
        n: Complementary rotation numbers, one per fixed point.
        s: Rotation numbers; s_i * n_i = 1 mod p.
        m: Multiplicities; m[j - 1] is the number of n_i equal to j.
        g0: Genus of the quotient surface.
        g: Genus of the surface.
        permutation:
            permutation[i] is the position, in the order the caller supplied
            the fixed points, of the fixed point now stored at position i.
    """

    p: int
    t: int
    n: tuple[int, ...]
    s: tuple[int, ...]
    m: tuple[int, ...]
    g0: int
    g: int
    permutation: tuple[int, ...] = ()

    @classmethod
    def from_multiplicities(cls, p: int, m: Sequence[int], g0: int) -> 'PrimeOrderData':
        """Build the data from the (p-1)-tuple of multiplicities."""

        _validate_p(p)
        if len(m) != p - 1:
            raise MalformedInput(f'm must have p - 1 = {p - 1} entries; got {len(m)}.')
        if any(count < 0 for count in m):
            raise OutOfRange(f'multiplicities must be non-negative; got {tuple(m)}.')

        n = [j for j, count in enumerate(m, start=1) for _ in range(count)]
        return validate(p, n, g0)

    @classmethod
    def from_json(cls, document: Mapping[str, Any]) -> 'PrimeOrderData':
        """
        Build the data from one of the accepted JSON shapes:
        {"p", "n", "g0"}, {"p", "m", "g0"} or {"p", "t": 0, "g0"}.

        Alongside "n", an optional "permutation" restores the fixed point
        order recorded by `to_json`. Every number must be a JSON integer.
        """

        if not isinstance(document, Mapping):
            raise MalformedInput(f'Input must be a JSON object; got {type(document).__name__}.')

        missing = [key for key in ('p', 'g0') if key not in document]
        if missing:
            raise MalformedInput(f'Input must provide integer "p" and "g0"; missing {missing}.')
        p = _json_int(document, 'p')
        g0 = _json_int(document, 'g0')

        if 'n' in document:
            d = validate(p, _json_int_list(document, 'n'), g0)
            if 'permutation' in document:
                d = replace(d, permutation=_json_permutation(document, d.t))
            return d
        if 'm' in document:
            return cls.from_multiplicities(p, _json_int_list(document, 'm'), g0)
        if 't' in document and _json_int(document, 't') == 0:
            return validate_fixed_point_free(p, g0)

        raise MalformedInput(f'Input must provide "n", "m" or "t": 0; got keys {sorted(document)}.')

    def to_json(self) -> dict[str, Any]:
        return {
            'p': self.p,
            't': self.t,
            'n': list(self.n),
            's': list(self.s),
            'm': list(self.m),
            'g0': self.g0,
            'g': self.g,
            'permutation': list(self.permutation),
        }

    @property
    def is_fixed_point_free(self) -> bool:
        return self.t == 0

    def __str__(self) -> str:
        return f'{self.__class__.__name__}(p={self.p}, n={self.n}, g0={self.g0}, g={self.g})'


def validate(p: int, n: Sequence[int], g0: int) -> PrimeOrderData:
    """
    Validate conjugacy data given by its complementary rotation numbers.

    The fixed points keep the order in which they were given; use
    `normalize_conjugacy` to sort them.

    Raises:
        NotPrime: p is not a prime.
        OutOfRange: g0 is negative or some n_i is not in (0, p).
        InvalidT: exactly one fixed point was given.
        RotationSumNonzero: the n_i do not sum to 0 mod p.
        GenusTooSmall: the derived genus is less than 2.
    """

    _validate_p(p)
    _validate_g0(g0)

    n = tuple(n)
    if not n:
        return validate_fixed_point_free(p, g0)

    for value in n:
        if not (0 < value < p):
            raise OutOfRange(f'Every n_i must be in the range (0, {p}); got {value}.')

    t = len(n)
    if t == 1:
        raise InvalidT(f'A prime order automorphism cannot have exactly one fixed point; got n={n}.')

    if sum(n) % p != 0:
        raise RotationSumNonzero(f'The n_i must sum to 0 mod {p}; got sum {sum(n)} for n={n}.')

    # Riemann-Hurwitz: 2g = 2*p*g0 + (p - 1)(t - 2)
    g = p * g0 + (p - 1) * (t - 2) // 2
    if g < 2:
        raise GenusTooSmall(f'The genus must be at least 2; got g={g} for p={p}, n={n}, g0={g0}.')

    counts = Counter(n)
    return PrimeOrderData(
        p=p,
        t=t,
        n=n,
        s=tuple(int(mod_inverse(value, p)) for value in n),
        m=tuple(counts[j] for j in range(1, p)),
        g0=g0,
        g=g,
        permutation=tuple(range(t)),
    )


def validate_fixed_point_free(p: int, g0: int) -> PrimeOrderData:
    """
    Validate conjugacy data of an automorphism without fixed points.

    Raises:
        NotPrime: p is not a prime.
        GenusTooSmall: the derived genus p(g0 - 1) + 1 is less than 2.
    """

    _validate_p(p)

    # 2g = 2p(g0 - 1) + 2
    g = p * (g0 - 1) + 1
    if g < 2:
        raise GenusTooSmall(f'The genus must be at least 2; got g={g} for p={p}, t=0, g0={g0}.')

    return PrimeOrderData(p=p, t=0, n=(), s=(), m=(0,) * (p - 1), g0=g0, g=g)


def normalize_conjugacy(d: PrimeOrderData) -> PrimeOrderData:
    """
    Sort the fixed points so that n is non-decreasing.

    Replacing h by a conjugate allows this; the permutation applied is
    recorded so output can refer back to the caller's fixed point order.
    """

    order = sorted(range(d.t), key=lambda i: d.n[i])
    return replace(
        d,
        n=tuple(d.n[i] for i in order),
        s=tuple(d.s[i] for i in order),
        permutation=tuple(d.permutation[i] for i in order),
    )


def power_class(d: PrimeOrderData, k: int) -> PrimeOrderData:
    """
    Return the normalized conjugacy data of h^k.

    Raises:
        BadExponent: k is divisible by p, so h^k is the identity.
    """

    if k % d.p == 0:
        raise BadExponent(f'k must not be divisible by p={d.p}; got k={k}.')

    if d.is_fixed_point_free:
        return d

    n = tuple(k * value % d.p for value in d.n)
    counts = Counter(n)
    powered = replace(
        d,
        n=n,
        s=tuple(int(mod_inverse(value, d.p)) for value in n),
        m=tuple(counts[j] for j in range(1, d.p)),
    )

    return normalize_conjugacy(powered)


def _validate_p(p: int) -> None:
    if p < 2 or not isprime(p):
        raise NotPrime(f'p must be a prime; got {p}.')


def _validate_g0(g0: int) -> None:
    if g0 < 0:
        raise OutOfRange(f'g0 must be non-negative; got {g0}.')


def _json_int(document: Mapping[str, Any], key: str) -> int:
    value = document[key]
    # bool is an int subclass
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedInput(f'"{key}" must be an integer; got {value!r}.')
    return value


def _json_int_list(document: Mapping[str, Any], key: str) -> list[int]:
    values = document[key]
    if not isinstance(values, list):
        raise MalformedInput(f'"{key}" must be a list of integers; got {values!r}.')
    return [_json_int({key: value}, key) for value in values]


def _json_permutation(document: Mapping[str, Any], t: int) -> tuple[int, ...]:
    permutation = _json_int_list(document, 'permutation')
    if sorted(permutation) != list(range(t)):
        raise MalformedInput(f'"permutation" must be a permutation of 0..{t - 1}; got {permutation}.')
    return tuple(permutation)
