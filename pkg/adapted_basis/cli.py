"""
Command-line front end.

Exit status: 0 on success, 1 on invalid input, 2 when an identity that
must always hold fails.
"""

import argparse
import csv
import io
import json
import logging
import sys
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, Optional, TextIO

from adapted_basis.basis import action_matrix, enumerate_basis, input_fixed_point, intersection_matrix
from adapted_basis.errors import AdaptedBasisError, InvariantViolation, MalformedInput
from adapted_basis.invariants import PrimeOrderData, normalize_conjugacy, power_class
from adapted_basis.matrices import IntMatrix
from adapted_basis.rewriter import single_relator_presentation
from adapted_basis.symplectic import symplectic_basis, transform_action
from adapted_basis.verification import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    all_passed,
    sweep,
    verify,
)

logger = logging.getLogger(__name__)

DEFAULT_FORMAT = 'text'
FORMATS = ('text', 'json', 'csv')

# Stages in dependency order
OUTPUTS = ('presentation', 'basis', 'action', 'intersection', 'symplectic', 'verify')

COMMANDS = {
    'rewrite': 'presentation',
    'basis': 'basis',
    'matrix': 'action',
    'intersection': 'intersection',
    'symplectify': 'symplectic',
    'verify': 'verify',
}

EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_INVARIANT_VIOLATION = 2

Document = dict[str, Any]


@dataclass(frozen=True)
class JobSpec:
    """
    One run of the pipeline.

    Attributes:
        data:
            The conjugacy data in one of the JSON shapes accepted by
            `PrimeOrderData.from_json`.
        outputs: The documents to produce; a non-empty subset of `OUTPUTS`.
        format: One of `FORMATS`.
        samples: Random kernel words per verification.
        seed: Seed of the random kernel words.
        power: Run on the data of h^power instead of h.
    """

    data: Mapping[str, Any]
    outputs: tuple[str, ...]
    format: str = DEFAULT_FORMAT
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    power: int = 1

    def __post_init__(self):
        if not self.outputs:
            raise MalformedInput('At least one output must be requested.')

        unknown = [output for output in self.outputs if output not in OUTPUTS]
        if unknown:
            raise MalformedInput(f'Unknown outputs {unknown}; expected a subset of {OUTPUTS}.')

        if self.format not in FORMATS:
            raise MalformedInput(f'format must be one of {FORMATS}; got {self.format!r}.')


@dataclass
class RunResult:
    status: int
    documents: list[Document] = field(default_factory=list)


def run(spec: JobSpec) -> RunResult:
    """Validate the data, then produce the requested documents in stage order."""

    try:
        d = power_class(normalize_conjugacy(PrimeOrderData.from_json(spec.data)), spec.power)
        logger.debug('Running %s on %s (power %d)', spec.outputs, d, spec.power)

        documents = [
            _STAGES[output](d, spec)
            for output in OUTPUTS
            if output in spec.outputs
        ]
    except AdaptedBasisError as e:
        logger.error('Invalid input: %s', e)
        return RunResult(EXIT_INVALID_INPUT)
    except InvariantViolation as e:
        logger.error('Invariant violated: %s', e)
        return RunResult(EXIT_INVARIANT_VIOLATION)

    failed = any(doc['kind'] == 'verify' and not doc['passed'] for doc in documents)
    return RunResult(EXIT_INVARIANT_VIOLATION if failed else EXIT_OK, documents)


def _presentation_document(d: PrimeOrderData, spec: JobSpec) -> Document:
    presentation = single_relator_presentation(d)
    return {
        'kind': 'presentation',
        'generators': [str(g) for g in presentation.generators],
        'relator': [[str(g), sign] for g, sign in presentation.relator_words[0]],
    }


def _basis_document(d: PrimeOrderData, spec: JobSpec) -> Document:
    basis = enumerate_basis(d)
    return {
        'kind': 'basis',
        'power': spec.power,
        'data': d.to_json(),
        'labels': [e.label for e in basis],
        'fixed_points': [input_fixed_point(e, d) for e in basis],
    }


def _action_document(d: PrimeOrderData, spec: JobSpec) -> Document:
    return {'kind': 'action', **action_matrix(d).to_json()}


def _intersection_document(d: PrimeOrderData, spec: JobSpec) -> Document:
    return {'kind': 'intersection', **intersection_matrix(d).to_json()}


def _symplectic_document(d: PrimeOrderData, spec: JobSpec) -> Document:
    change = symplectic_basis(intersection_matrix(d))
    T = transform_action(action_matrix(d), change)
    return {
        'kind': 'symplectic',
        'P': change.P.to_json(),
        'J': change.J.to_json(),
        'T': T.to_json(),
    }


def _verify_document(d: PrimeOrderData, spec: JobSpec) -> Document:
    results = verify(d, samples=spec.samples, seed=spec.seed)
    return {
        'kind': 'verify',
        'passed': all_passed(results),
        'checks': [result.to_json() for result in results],
    }


_STAGES: dict[str, Callable[[PrimeOrderData, JobSpec], Document]] = {
    'presentation': _presentation_document,
    'basis': _basis_document,
    'action': _action_document,
    'intersection': _intersection_document,
    'symplectic': _symplectic_document,
    'verify': _verify_document,
}


def render(documents: Sequence[Document], fmt: str) -> str:
    if fmt == 'json':
        payload = documents[0] if len(documents) == 1 else list(documents)
        return json.dumps(payload, indent=2)
    return '\n\n'.join(_render_document(doc, fmt) for doc in documents)


def _render_document(doc: Document, fmt: str) -> str:
    kind = doc['kind']

    if kind in ('action', 'intersection'):
        matrix = _matrix_of(doc)
        return matrix.to_csv().rstrip('\n') if fmt == 'csv' else matrix.to_text()

    if kind == 'symplectic':
        sections = []
        for name in ('P', 'J', 'T'):
            matrix = _matrix_of(doc[name])
            body = matrix.to_csv().rstrip('\n') if fmt == 'csv' else matrix.to_text()
            sections.append(f'{name}:\n{body}')
        return '\n\n'.join(sections)

    if kind == 'presentation':
        if fmt == 'csv':
            return _csv(doc['relator'])
        relator = ' '.join(symbol if sign == 1 else f'{symbol}^-1' for symbol, sign in doc['relator'])
        return '\n'.join(doc['generators'] + ['', f'{relator} = 1'])

    if kind == 'basis':
        rows = list(zip(doc['labels'], doc['fixed_points']))
        if fmt == 'csv':
            return _csv((label, '' if i is None else i) for label, i in rows)
        return '\n'.join(label if i is None else f'{label}  input position {i}' for label, i in rows)

    if kind == 'verify':
        if fmt == 'csv':
            return _csv((c['name'], c['passed'], c['detail']) for c in doc['checks'])
        lines = [f'{"PASS" if c["passed"] else "FAIL"}  {c["name"]}' for c in doc['checks']]
        return '\n'.join(lines)

    raise ValueError(f'Unknown document kind {kind!r}.')


def _matrix_of(doc: Document) -> IntMatrix:
    return IntMatrix.from_rows(doc['rows'], doc['labels'])


def _csv(rows) -> str:
    out = io.StringIO()
    csv.writer(out, lineterminator='\n').writerows(rows)
    return out.getvalue().rstrip('\n')


def _parse_int_list(value: str) -> list[int]:
    try:
        return [int(item) for item in value.split(',') if item.strip()]
    except ValueError as e:
        raise MalformedInput(f'Expected a comma separated list of integers; got {value!r}.') from e


def data_from_args(args: argparse.Namespace) -> dict[str, Any]:
    """The JSON description of the conjugacy data given on the command line."""

    if args.input is not None:
        try:
            document = json.load(args.input)
        except json.JSONDecodeError as e:
            raise MalformedInput(f'Input is not valid JSON: {e}') from e
        if not isinstance(document, dict):
            raise MalformedInput(f'Input must be a JSON object; got {type(document).__name__}.')
        return document

    if args.p is None or args.g0 is None:
        raise MalformedInput('--p and --g0 are required unless --input is given.')

    data: dict[str, Any] = {'p': args.p, 'g0': args.g0}
    if args.n is not None:
        data['n'] = _parse_int_list(args.n)
    elif args.m is not None:
        data['m'] = _parse_int_list(args.m)
    elif args.t is not None:
        data['t'] = args.t
    else:
        raise MalformedInput('One of --n, --m or --t 0 is required.')
    return data


def _add_data_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--p', type=int, help='The prime order of the automorphism.')
    parser.add_argument('--g0', type=int, help='The genus of the quotient surface.')

    group = parser.add_mutually_exclusive_group()
    group.add_argument('--n', help='Complementary rotation numbers, comma separated. Example: 1,1,2,1,1')
    group.add_argument('--m', help='Multiplicities m_1..m_(p-1), comma separated.')
    group.add_argument('--t', type=int, help='Number of fixed points; only 0 is accepted without --n or --m.')

    parser.add_argument(
        '--input',
        type=argparse.FileType('r'),
        help='Read the data from a JSON file instead ("-" for stdin).',
    )
    parser.add_argument(
        '--format',
        choices=FORMATS,
        default=DEFAULT_FORMAT,
        help=f'Output format. Default: {DEFAULT_FORMAT!r}',
    )
    parser.add_argument(
        '--verify',
        action='store_true',
        help='Also run every check on the data; exit with status 2 if one fails.',
    )
    parser.add_argument(
        '--power',
        type=int,
        default=1,
        help='Run on the conjugacy data of h^k instead of h; k must not be a multiple of p.',
    )
    _add_sampling_arguments(parser)


def _add_sampling_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        '--samples',
        type=int,
        default=DEFAULT_SAMPLES,
        help=f'Random kernel words per rewriting check. Default: {DEFAULT_SAMPLES}',
    )
    parser.add_argument(
        '--seed',
        type=int,
        default=DEFAULT_SEED,
        help=f'Seed of the random kernel words. Default: {DEFAULT_SEED}',
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='adapted-basis',
        description='Adapted homology bases of prime order surface automorphisms.',
    )
    parser.add_argument('-v', '--verbose', action='store_true', help='Log debug output to stderr.')

    subparsers = parser.add_subparsers(dest='command', required=True)
    for command, output in COMMANDS.items():
        _add_data_arguments(subparsers.add_parser(command, help=f'Print the {output}.'))

    sweep_parser = subparsers.add_parser('sweep', help='Verify every conjugacy class within bounds.')
    sweep_parser.add_argument('--p-max', type=int, required=True)
    sweep_parser.add_argument('--t-max', type=int, required=True)
    sweep_parser.add_argument('--g0-max', type=int, required=True)
    sweep_parser.add_argument('--format', choices=FORMATS, default=DEFAULT_FORMAT)
    sweep_parser.add_argument('--workers', type=int, default=1, help='Processes verifying cases in parallel.')
    _add_sampling_arguments(sweep_parser)

    return parser


def main(argv: Optional[Sequence[str]] = None, stdout: TextIO = None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )

    if args.command == 'sweep':
        return _main_sweep(args, stdout)

    try:
        outputs = (COMMANDS[args.command],)
        if args.verify and 'verify' not in outputs:
            outputs += ('verify',)
        spec = JobSpec(data_from_args(args), outputs, args.format, args.samples, args.seed, args.power)
    except AdaptedBasisError as e:
        logger.error('Invalid input: %s', e)
        return EXIT_INVALID_INPUT

    result = run(spec)
    if result.documents:
        print(render(result.documents, spec.format), file=stdout)
    return result.status


def _main_sweep(args: argparse.Namespace, stdout: TextIO) -> int:
    report = sweep(
        args.p_max, args.t_max, args.g0_max, samples=args.samples, seed=args.seed, workers=args.workers,
    )

    if args.format == 'json':
        print(json.dumps(report.to_json(), indent=2), file=stdout)
    else:
        print(f'{len(report.cases)} cases, {report.passed} passed, {report.failed} failed', file=stdout)
        for failure in report.to_json()['failures']:
            names = ', '.join(check['name'] for check in failure['checks'])
            print(f'FAIL  {failure["data"]}: {names}', file=stdout)

    return EXIT_OK if report.failed == 0 else EXIT_INVARIANT_VIOLATION


if __name__ == '__main__':
    sys.exit(main())
