"""
Reidemeister-Schreier rewriting for the surface kernel of a prime order
automorphism.

F0 is the orbifold group

    < a_1..a_g0, b_1..b_g0, x_1..x_t | x_1 ... x_t [a_1,b_1] ... [a_g0,b_g0], x_j^p >

and phi: F0 -> Z_p sends a_i, b_i to 0 and x_j to n_j. Its kernel F is the
surface group, and h acts on F by conjugation by x_1 (by a_1 when t = 0,
where phi(a_1) = 1 instead).

The Schreier transversal is {1, x_1, ..., x_1^(p-1)}. The Schreier generator
S_{K,a} = K a (bar(K a))^-1 with K = x_1^r is labelled h^k(base(a)), where k
is r minus the coset at which a is read in the long relator, so that the
generators occurring in tau(R) are exactly the h^0 images.
"""

import logging
import random
from collections.abc import Iterator

import networkx as nx
from sympy import mod_inverse

from adapted_basis.errors import BadT, MalformedInput, NotEvenlyWorded, NotInKernel
from adapted_basis.invariants import PrimeOrderData
from adapted_basis.words import (
    ALPHA,
    BETA,
    BaseGenerator,
    FreeWord,
    GeneratorSymbol,
    Presentation,
    SymbolKind,
    commutator,
)

logger = logging.getLogger(__name__)

SINGLE_RELATOR = 'R^^'

_SYMBOL_KINDS = {'a': SymbolKind.A, 'b': SymbolKind.B, 'x': SymbolKind.X}
_BASE_KINDS = {kind: letter for letter, kind in _SYMBOL_KINDS.items()}


def stable_generator(d: PrimeOrderData) -> BaseGenerator:
    """The generator whose powers form the Schreier transversal."""
    return BaseGenerator('a', 1) if d.is_fixed_point_free else BaseGenerator('x', 1)


def base_presentation(d: PrimeOrderData) -> Presentation[BaseGenerator]:
    """
    The presentation of F0: 2g0 + t generators, the long relator R and one
    relator x_j^p per fixed point.
    """

    a = [BaseGenerator('a', i) for i in range(1, d.g0 + 1)]
    b = [BaseGenerator('b', i) for i in range(1, d.g0 + 1)]
    x = [BaseGenerator('x', j) for j in range(1, d.t + 1)]

    relators = [('R', long_relator(d))]
    relators += [(f'x{g.index}^p', FreeWord.generator(g) ** d.p) for g in x]

    return Presentation(tuple(a + b + x), tuple(relators))


def long_relator(d: PrimeOrderData) -> FreeWord[BaseGenerator]:
    """x_1 ... x_t [a_1,b_1] ... [a_g0,b_g0]"""

    x_part = FreeWord((BaseGenerator('x', j), 1) for j in range(1, d.t + 1))
    commutators = FreeWord.product(
        commutator(FreeWord.generator(BaseGenerator('a', i)), FreeWord.generator(BaseGenerator('b', i)))
        for i in range(1, d.g0 + 1)
    )
    return x_part * commutators


def phi(generator: BaseGenerator, d: PrimeOrderData) -> int:
    """Image of a generator of F0 in Z_p."""

    if generator.kind == 'x':
        return d.n[generator.index - 1] % d.p
    if d.is_fixed_point_free and generator == BaseGenerator('a', 1):
        return 1
    return 0


def coset_of(w: FreeWord[BaseGenerator], d: PrimeOrderData) -> int:
    """The image phi(w) in [0, p - 1]."""
    return sum(sign * phi(g, d) for g, sign in w) % d.p


def coset_exponent(value: int, d: PrimeOrderData) -> int:
    """The exponent r of the representative x_1^r of the coset with image `value`."""

    stable_image = phi(stable_generator(d), d)
    return value * int(mod_inverse(stable_image, d.p)) % d.p


def coset_offset(generator: BaseGenerator, d: PrimeOrderData) -> int:
    """The coset exponent at which `generator` is read in the long relator."""

    if generator.kind != 'x':
        return 0
    prefix = sum(d.n[:generator.index - 1])
    return coset_exponent(prefix % d.p, d)


def schreier_symbol(r: int, generator: BaseGenerator, d: PrimeOrderData) -> GeneratorSymbol:
    """The label of S_{x_1^r, generator}."""

    power = (r - coset_offset(generator, d)) % d.p
    return GeneratorSymbol(_SYMBOL_KINDS[generator.kind], generator.index, power)


def is_freely_trivial(r: int, generator: BaseGenerator, d: PrimeOrderData) -> bool:
    """S_{K,a} is freely trivial exactly when K a is itself a representative."""
    return generator == stable_generator(d) and r < d.p - 1


def rewrite_tau(
        w: FreeWord[BaseGenerator],
        d: PrimeOrderData,
        free_only: bool = False,
) -> FreeWord[GeneratorSymbol]:
    """
    Reidemeister rewriting of a word of ker(phi) into Schreier generators.

    Args:
        w:
            A word in the generators of F0 with phi(w) = 0.
        d:
            The conjugacy data defining phi.
        free_only:
            If `True`, only delete the generators that are freely trivial,
            so that the result maps back onto w. If `False` (default), also
            delete the generator S_{x_1^(p-1), x_1}, which the relator
            tau(x_1^p) makes trivial; every S_{M,x_1} is then gone.

    Raises:
        NotInKernel: phi(w) is not 0.
    """

    if coset_of(w, d) != 0:
        raise NotInKernel(f'Word {w} has image {coset_of(w, d)} under phi, not 0.')

    stable = stable_generator(d)
    drop_stable = not free_only and not d.is_fixed_point_free

    letters = []
    value = 0
    for generator, sign in w:
        if sign == 1:
            r = coset_exponent(value, d)
            value = (value + phi(generator, d)) % d.p
        else:
            value = (value - phi(generator, d)) % d.p
            r = coset_exponent(value, d)

        if is_freely_trivial(r, generator, d) or (drop_stable and generator == stable):
            continue
        letters.append((schreier_symbol(r, generator, d), sign))

    return FreeWord(letters)


def f0_word_of(symbol: GeneratorSymbol, d: PrimeOrderData) -> FreeWord[BaseGenerator]:
    """The word K a (bar(K a))^-1 in F0 of a Schreier generator."""

    if symbol.kind is SymbolKind.ALPHA_BETA:
        raise MalformedInput(f'{symbol} is not a Schreier generator.')

    generator = BaseGenerator(_BASE_KINDS[symbol.kind], symbol.index)
    r = (symbol.power + coset_offset(generator, d)) % d.p

    stable = stable_generator(d)
    value = (r * phi(stable, d) + phi(generator, d)) % d.p
    r_bar = coset_exponent(value, d)

    return FreeWord.generator(stable) ** r * FreeWord.generator(generator) * ~(FreeWord.generator(stable) ** r_bar)


def subgroup_presentation(d: PrimeOrderData) -> Presentation[GeneratorSymbol]:
    """
    The presentation of F given by the rewriting: generators S_{K,a_i},
    S_{K,b_i}, S_{K,x_j} (the S_{K,x_1} already deleted) and relators
    tau(K R K^-1) for every representative K and tau(x_j^p) for every j.

    Relators are named 'R[k]' for K = x_1^k and 'x{j}^p'.

    Raises:
        BadT: d has no fixed points.
    """

    if d.is_fixed_point_free:
        raise BadT('subgroup_presentation needs t > 0; use t0_presentation for t = 0.')

    p = d.p
    stable = FreeWord.generator(stable_generator(d))
    relator = long_relator(d)

    relators = [
        (f'R[{k}]', rewrite_tau(relator.conjugate_by(stable ** k), d))
        for k in range(p)
    ]
    relators += [
        (f'x{j}^p', rewrite_tau(FreeWord.generator(BaseGenerator('x', j)) ** p, d))
        for j in range(1, d.t + 1)
    ]

    generators = list(_lift_symbols(d, range(1, d.g0 + 1)))
    generators += [
        GeneratorSymbol(SymbolKind.X, j, k)
        for j in range(2, d.t + 1)
        for k in range(p)
    ]

    return Presentation(tuple(generators), tuple(relators))


def simplify_to_single_relator(
        pres: Presentation[GeneratorSymbol],
        d: PrimeOrderData,
) -> Presentation[GeneratorSymbol]:
    """
    Eliminate generators until a single relator remains.

    The conjugates of the power relators are not part of `pres`. Each
    tau(x_1^k R x_1^-k) is solved for h^k(X_2) and substituted into
    tau(x_2^p), giving R^; then each tau(x_j^p), j >= 3, is solved for
    h^(p-1)(X_j) and substituted, giving R^^.

    Raises:
        MalformedInput: pres lacks one of the relator families.
    """

    if d.is_fixed_point_free:
        raise BadT('simplify_to_single_relator needs t > 0; use t0_presentation for t = 0.')

    p = d.p
    missing = [name for name in _expected_relators(d) if not pres.has_relator(name)]
    if missing:
        raise MalformedInput(f'Presentation lacks the relators {", ".join(missing)}.')

    x2_images: dict[GeneratorSymbol, FreeWord[GeneratorSymbol]] = {}
    for k in range(p):
        relator = pres.relator(f'R[{k}]')
        x2 = [g for g in relator.generators() if g.kind is SymbolKind.X and g.index == 2]
        if len(x2) != 1:
            raise MalformedInput(f'Relator R[{k}] must contain exactly one image of X_2; got {relator}.')
        x2_images[x2[0]] = relator.solve_for(x2[0])
        logger.debug('Solved R[%d] for %s', k, x2[0])

    r_hat = ~pres.relator('x2^p').substitute(x2_images)
    logger.debug('R^ = %s', r_hat)

    r_hat_hat = r_hat
    for j in range(3, d.t + 1):
        top = GeneratorSymbol(SymbolKind.X, j, p - 1)
        r_hat_hat = r_hat_hat.substitute({top: pres.relator(f'x{j}^p').solve_for(top)})
        logger.debug('Eliminated %s', top)

    r_hat_hat = r_hat_hat.cyclically_reduced()

    return Presentation(_simplified_generators(d), ((SINGLE_RELATOR, r_hat_hat),))


def single_relator_presentation(d: PrimeOrderData) -> Presentation[GeneratorSymbol]:
    """The one-relator presentation of F, for either t > 0 or t = 0."""

    if d.is_fixed_point_free:
        return t0_presentation(d)
    return simplify_to_single_relator(subgroup_presentation(d), d)


def t0_presentation(d: PrimeOrderData) -> Presentation[GeneratorSymbol]:
    """
    The one-relator presentation of F for a fixed point free automorphism:
    generators alpha, beta and h^k(A_j), h^k(B_j) for j >= 2, and the single
    relator beta alpha beta^-1 = h^(p-1)(P) alpha P h(P) ... h^(p-2)(P) with
    P = [A_2,B_2] ... [A_g0,B_g0].

    Raises:
        BadT: d has fixed points.
    """

    if not d.is_fixed_point_free:
        raise BadT(f't0_presentation needs t = 0; got t={d.t}.')

    p = d.p
    stable = FreeWord.generator(stable_generator(d))
    relator = long_relator(d)

    # tau(a_1^k R a_1^-k) = h^(k+1)(B) h^k(B)^-1 h^k(P) for k < p - 1
    conjugates = [rewrite_tau(relator.conjugate_by(stable ** k), d) for k in range(p)]

    word = conjugates[p - 1]
    for k in range(p - 1):
        b_k = GeneratorSymbol(SymbolKind.B, 1, k)
        word = word.substitute({b_k: conjugates[k].solve_for(b_k)})

    alpha_source = GeneratorSymbol(SymbolKind.A, 1, p - 1)
    beta_source = GeneratorSymbol(SymbolKind.B, 1, p - 1)
    renamed = word.map_generators(lambda g: {alpha_source: ALPHA, beta_source: BETA}.get(g, g))

    inverted = ~renamed
    beta_position = next(i for i, sign in inverted.occurrences(BETA) if sign == 1)
    single = inverted.rotated(beta_position)

    generators = tuple(_lift_symbols(d, range(2, d.g0 + 1))) + (ALPHA, BETA)
    return Presentation(generators, ((SINGLE_RELATOR, single),))


def commutator_product(d: PrimeOrderData, k: int, indices: range) -> FreeWord[GeneratorSymbol]:
    """h^k(P) with P the product of [A_i,B_i] over `indices`."""

    return FreeWord.product(
        commutator(
            FreeWord.generator(GeneratorSymbol(SymbolKind.A, i, k % d.p)),
            FreeWord.generator(GeneratorSymbol(SymbolKind.B, i, k % d.p)),
        )
        for i in indices
    )


def induced_action_on_generators(
        pres: Presentation[GeneratorSymbol],
        d: PrimeOrderData,
) -> dict[GeneratorSymbol, FreeWord[GeneratorSymbol]]:
    """
    The action of h on the generators of the one-relator presentation, as
    words in those generators.

    h raises the h-power by one. The top power of an A or B orbit wraps
    around to h^0; h^(p-2)(X_j) goes to the eliminated h^(p-1)(X_j), written
    through tau(x_j^p). For t = 0, h fixes alpha and sends beta to
    alpha P h(P) ... h^(p-2)(P) beta alpha^-1.

    Raises:
        MalformedInput: pres has a generator outside the one-relator form.
    """

    p = d.p
    images = {}
    for symbol in pres.generators:
        if symbol.kind in (SymbolKind.A, SymbolKind.B):
            images[symbol] = FreeWord.generator(symbol.shifted(1, p))
            if d.is_fixed_point_free and symbol.power == p - 1:
                # x_1^p is trivial in F, a_1^p is alpha
                images[symbol] = images[symbol].conjugate_by(FreeWord.generator(ALPHA))

        elif symbol.kind is SymbolKind.X and not d.is_fixed_point_free:
            if symbol.index < 3 or symbol.power > p - 2:
                raise MalformedInput(f'{symbol} is not a generator of the one-relator presentation.')
            if symbol.power < p - 2:
                images[symbol] = FreeWord.generator(symbol.shifted(1, p))
            else:
                images[symbol] = _top_power_image(symbol.index, d)

        elif symbol == ALPHA and d.is_fixed_point_free:
            images[symbol] = FreeWord.generator(ALPHA)

        elif symbol == BETA and d.is_fixed_point_free:
            q = FreeWord.product(commutator_product(d, k, range(2, d.g0 + 1)) for k in range(p - 1))
            images[symbol] = (q * FreeWord.generator(BETA)).conjugate_by(FreeWord.generator(ALPHA))

        else:
            raise MalformedInput(f'{symbol} is not a generator of the one-relator presentation.')

    return images


def check_evenly_worded(w: FreeWord) -> bool:
    """Each generator occurs exactly once with sign +1 and exactly once with sign -1."""

    signs: dict = {}
    for generator, sign in w:
        signs.setdefault(generator, []).append(sign)
    return all(sorted(s) == [-1, 1] for s in signs.values())


def linking_graph(w: FreeWord) -> nx.Graph:
    """
    The graph on the generators of an evenly worded relator with an edge
    between every linked pair: pairs whose occurrences alternate around the
    cyclic word, as in W0 A W1 B W2 A^-1 W3 B^-1 W4.

    Raises:
        NotEvenlyWorded: w is not evenly worded.
    """

    if not check_evenly_worded(w):
        raise NotEvenlyWorded(f'Relator {w} is not evenly worded.')

    chords = {}
    for position, (generator, _) in enumerate(w):
        chords.setdefault(generator, []).append(position)

    graph = nx.Graph()
    graph.add_nodes_from(chords)
    generators = list(chords)
    for i, a in enumerate(generators):
        start, end = chords[a]
        for b in generators[i + 1:]:
            inside = sum(start < position < end for position in chords[b])
            if inside == 1:
                graph.add_edge(a, b)

    return graph


def check_fully_linked(w: FreeWord) -> bool:
    """
    Each generator is linked to a partner, the partners forming a perfect
    matching of the generators.

    Raises:
        NotEvenlyWorded: w is not evenly worded.
    """

    graph = linking_graph(w)
    matching = nx.max_weight_matching(graph, maxcardinality=True)
    return 2 * len(matching) == graph.number_of_nodes()


def random_kernel_word(
        d: PrimeOrderData,
        rng: random.Random,
        max_length: int = 30,
) -> FreeWord[BaseGenerator]:
    """A random word of ker(phi) with at most `max_length` letters."""

    alphabet = base_presentation(d).generators
    length = rng.randint(0, max(0, max_length - (d.p - 1)))
    word = FreeWord((rng.choice(alphabet), rng.choice((-1, 1))) for _ in range(length))

    correction = coset_exponent(-coset_of(word, d) % d.p, d)
    return word * FreeWord.generator(stable_generator(d)) ** correction


def _top_power_image(j: int, d: PrimeOrderData) -> FreeWord[GeneratorSymbol]:
    top = GeneratorSymbol(SymbolKind.X, j, d.p - 1)
    power_relator = rewrite_tau(FreeWord.generator(BaseGenerator('x', j)) ** d.p, d)
    return power_relator.solve_for(top)


def _expected_relators(d: PrimeOrderData) -> Iterator[str]:
    for k in range(d.p):
        yield f'R[{k}]'
    for j in range(2, d.t + 1):
        yield f'x{j}^p'


def _lift_symbols(d: PrimeOrderData, indices: range) -> Iterator[GeneratorSymbol]:
    for i in indices:
        for kind in (SymbolKind.A, SymbolKind.B):
            for k in range(d.p):
                yield GeneratorSymbol(kind, i, k)


def _simplified_generators(d: PrimeOrderData) -> tuple[GeneratorSymbol, ...]:
    generators = list(_lift_symbols(d, range(1, d.g0 + 1)))
    generators += [
        GeneratorSymbol(SymbolKind.X, j, k)
        for j in range(3, d.t + 1)
        for k in range(d.p - 1)
    ]
    return tuple(generators)
