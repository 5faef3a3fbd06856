from adapted_basis.invariants import PrimeOrderData
from adapted_basis.verification import CheckResult, SweepReport, enumerate_classes, sweep
from test_adapted_basis.conftest import build


class TestEnumerateClasses:
    def test_enumerate_classes(self):
        classes = [(d.p, d.n, d.g0) for d in enumerate_classes(3, 4, 1)]

        assert classes == [
            (2, (1, 1), 1),
            (2, (1, 1, 1, 1), 1),
            (3, (1, 1, 2, 2), 0),
            (3, (1, 2), 1),
            (3, (1, 1, 1), 1),
            (3, (2, 2, 2), 1),
            (3, (1, 1, 2, 2), 1),
        ]

    def test_enumerate_classes_includes_fixed_point_free_classes(self):
        classes = list(enumerate_classes(2, 2, 2))

        assert build(2, None, 2) in classes
        assert all(d.g >= 2 for d in classes)

    def test_enumerate_classes_without_primes_is_empty(self):
        assert list(enumerate_classes(1, 4, 2)) == []


class TestSweep:
    def test_sweep(self):
        report = sweep(3, 4, 1, samples=10)

        assert len(report.cases) == 7
        assert report.passed == 7
        assert report.failed == 0
        assert report.to_json() == {'cases': 7, 'passed': 7, 'failed': 0, 'failures': []}

    def test_sweep_in_parallel_matches_serial_sweep(self):
        serial = sweep(3, 4, 1, samples=5)

        parallel = sweep(3, 4, 1, samples=5, workers=3)

        assert parallel.cases == serial.cases

    def test_sweep_at_desk_scale(self):
        report = sweep(7, 5, 2, samples=3, workers=4)

        assert len(report.cases) == 288
        assert report.failed == 0, report.to_json()['failures']
        assert {d.p for d, _ in report.cases} == {2, 3, 5, 7}
        assert any(d.is_fixed_point_free for d, _ in report.cases)

    def test_sweep_without_primes_is_empty(self):
        report = sweep(1, 4, 1)

        assert report.cases == []
        assert report.passed == report.failed == 0

    def test_sweep_report_lists_failures(self):
        d: PrimeOrderData = build(2, (1, 1), 1)
        report = SweepReport([
            (d, [CheckResult('a', True)]),
            (d, [CheckResult('a', True), CheckResult('b', False, 'oops')]),
        ])

        assert report.passed == 1
        assert report.failed == 1
        assert report.to_json()['failures'] == [
            {'data': d.to_json(), 'checks': [{'name': 'b', 'passed': False, 'detail': 'oops'}]},
        ]
