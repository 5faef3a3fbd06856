"""
Checks of every identity the adapted basis must satisfy, for one conjugacy
class or for all classes within bounds.
"""

import logging
import multiprocessing
import random
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from sympy import primerange

from adapted_basis.basis import (
    BasisKind,
    action_matrix,
    canonical_intersection,
    enumerate_basis,
    homology_action_full,
    intersection_matrix,
    tilde_order,
)
from adapted_basis.errors import AdaptedBasisError, GenusTooSmall, InvariantViolation
from adapted_basis.invariants import PrimeOrderData, normalize_conjugacy, validate, validate_fixed_point_free
from adapted_basis.matrices import IntMatrix
from adapted_basis.rewriter import (
    check_evenly_worded,
    check_fully_linked,
    f0_word_of,
    random_kernel_word,
    rewrite_tau,
    single_relator_presentation,
)
from adapted_basis.symplectic import is_symplectic, preserves_form, split_form, symplectic_basis, transform_action
from adapted_basis.words import FreeWord, SymbolKind

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 500
DEFAULT_MAX_WORD_LENGTH = 30
DEFAULT_SEED = 0


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ''

    def to_json(self) -> dict:
        return {'name': self.name, 'passed': self.passed, 'detail': self.detail}


@dataclass
class SweepReport:
    """The verification results of every conjugacy class a sweep visited."""

    cases: list[tuple[PrimeOrderData, list[CheckResult]]] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(all_passed(results) for _, results in self.cases)

    @property
    def failed(self) -> int:
        return len(self.cases) - self.passed

    def to_json(self) -> dict:
        return {
            'cases': len(self.cases),
            'passed': self.passed,
            'failed': self.failed,
            'failures': [
                {'data': d.to_json(), 'checks': [r.to_json() for r in results if not r.passed]}
                for d, results in self.cases
                if not all_passed(results)
            ],
        }


def all_passed(results: list[CheckResult]) -> bool:
    return all(result.passed for result in results)


def verify(
        d: PrimeOrderData,
        samples: int = DEFAULT_SAMPLES,
        seed: int = DEFAULT_SEED,
        max_length: int = DEFAULT_MAX_WORD_LENGTH,
) -> list[CheckResult]:
    """
    Run every check on one conjugacy class.

    Args:
        d: The conjugacy data; it is normalized first.
        samples: Number of random kernel words for the rewriting round trip.
        seed: Seed of the random kernel words.
        max_length: Maximum length of a random kernel word.
    """

    d = normalize_conjugacy(d)
    p = d.p
    checks: list[tuple[str, Callable[[], tuple[bool, str]]]] = []

    basis = enumerate_basis(d)
    lifts = sum(e.kind in (BasisKind.LIFT_A, BasisKind.LIFT_B) for e in basis)

    def basis_count():
        return len(basis) == 2 * d.g, f'{len(basis)} elements for g={d.g}'

    def basis_types():
        if d.is_fixed_point_free:
            expected = (2 * p * (d.g0 - 1), 2)
        else:
            expected = (2 * p * d.g0, (p - 1) * (d.t - 2))
        got = (lifts, len(basis) - lifts)
        return got == expected, f'(lifts, others) = {got}, expected {expected}'

    checks += [('basis_count', basis_count), ('basis_types', basis_types)]

    presentation = single_relator_presentation(d)
    relator = presentation.relator_words[0]

    def presentation_generators():
        count = len(presentation.generators)
        return count == 2 * d.g, f'{count} generators for g={d.g}'

    def evenly_worded():
        return check_evenly_worded(relator), str(relator)

    def fully_linked():
        return check_evenly_worded(relator) and check_fully_linked(relator), str(relator)

    def relator_homologically_trivial():
        abelianized = relator.abelianize()
        return not abelianized, str(dict(abelianized))

    def exceptional_generators_present():
        present = set(relator.generators())
        missing = [
            str(g) for g in presentation.generators
            if g.kind is SymbolKind.X and g not in present
        ]
        return not missing, f'missing {missing}' if missing else ''

    checks += [
        ('presentation_generators', presentation_generators),
        ('evenly_worded', evenly_worded),
        ('fully_linked', fully_linked),
        ('relator_homologically_trivial', relator_homologically_trivial),
        ('exceptional_generators_present', exceptional_generators_present),
    ]

    M = action_matrix(d)
    I = intersection_matrix(d)
    identity = IntMatrix.identity(M.size)

    def action_order():
        return (M ** p).is_identity() and M != identity, f'order of M must be exactly {p}'

    def intersection_unimodular():
        return I.is_skew_symmetric() and I.det() == 1, f'det = {I.det()}'

    def form_preserved():
        return preserves_form(M, I), ''

    def action_cross_check():
        H = homology_action_full(d)
        return H == M, '' if H == M else f'rewriting gives\n{H}'

    def lift_block_canonical():
        reordered = I.permuted(tilde_order(d))
        if d.is_fixed_point_free:
            return reordered == canonical_intersection(d), ''
        size = 2 * p * d.g0
        return reordered.submatrix(range(size)) == split_form(p * d.g0), ''

    checks += [
        ('action_order', action_order),
        ('intersection_unimodular', intersection_unimodular),
        ('form_preserved', form_preserved),
        ('action_cross_check', action_cross_check),
        ('lift_block_canonical', lift_block_canonical),
    ]

    def symplectic_change():
        change = symplectic_basis(I)
        T = transform_action(M, change)
        passed = (
            change.P.T @ I @ change.P == change.J
            and abs(change.P.det()) == 1
            and is_symplectic(T, change.J)
            and (T ** p).is_identity()
        )
        return passed, ''

    def rewriting_round_trip():
        rng = random.Random(seed)
        for _ in range(samples):
            w = random_kernel_word(d, rng, max_length)
            tau = rewrite_tau(w, d, free_only=True)
            back = FreeWord.product(
                f0_word_of(symbol, d) if sign == 1 else ~f0_word_of(symbol, d)
                for symbol, sign in tau
            )
            if back != w:
                return False, f'{w} rewrites to {tau}, which maps back to {back}'
        return True, f'{samples} words'

    checks += [('symplectic_change', symplectic_change), ('rewriting_round_trip', rewriting_round_trip)]

    results = [_run_check(name, check) for name, check in checks]
    logger.debug('Verified %s: %d/%d checks passed', d, sum(r.passed for r in results), len(results))
    return results


def sweep(
        p_max: int,
        t_max: int,
        g0_max: int,
        samples: int = DEFAULT_SAMPLES,
        seed: int = DEFAULT_SEED,
        workers: int = 1,
) -> SweepReport:
    """
    Verify every conjugacy class with p <= p_max, t <= t_max and
    g0 <= g0_max, up to reordering of the fixed points.

    Args:
        workers: Number of processes verifying classes in parallel. The
            report lists the classes in the same order for any value.
    """

    classes = list(enumerate_classes(p_max, t_max, g0_max))
    jobs = [(d, samples, seed) for d in classes]

    if workers > 1 and len(jobs) > 1:
        logger.info('Sweep: verifying %d cases on %d processes', len(jobs), workers)
        with multiprocessing.Pool(processes=min(workers, len(jobs))) as pool:
            results = pool.map(_verify_case, jobs)
    else:
        results = [_verify_case(job) for job in jobs]

    report = SweepReport(list(zip(classes, results)))
    logger.info('Sweep: %d cases, %d failed', len(report.cases), report.failed)
    return report


def _verify_case(job: tuple[PrimeOrderData, int, int]) -> list[CheckResult]:
    d, samples, seed = job
    return verify(d, samples=samples, seed=seed)


def enumerate_classes(p_max: int, t_max: int, g0_max: int) -> Iterator[PrimeOrderData]:
    """Every valid conjugacy class within the bounds, with n sorted."""

    for p in primerange(2, p_max + 1):
        for g0 in range(g0_max + 1):
            if g0 >= 2:
                yield validate_fixed_point_free(p, g0)

            for t in range(2, t_max + 1):
                for n in combinations_with_replacement(range(1, p), t):
                    if sum(n) % p:
                        continue
                    try:
                        yield validate(p, n, g0)
                    except GenusTooSmall:
                        continue


def _run_check(name: str, check: Callable[[], tuple[bool, str]]) -> CheckResult:
    try:
        passed, detail = check()
    except (AdaptedBasisError, InvariantViolation) as e:
        passed, detail = False, f'{type(e).__name__}: {e}'

    if not passed:
        logger.warning('Check %s failed: %s', name, detail)
    return CheckResult(name, bool(passed), detail)
