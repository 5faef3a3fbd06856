import pytest

from adapted_basis.errors import BadT, MalformedInput
from adapted_basis.rewriter import (
    SINGLE_RELATOR,
    check_evenly_worded,
    check_fully_linked,
    simplify_to_single_relator,
    single_relator_presentation,
    subgroup_presentation,
)
from adapted_basis.words import FreeWord, Presentation, SymbolKind, commutator
from test_adapted_basis.conftest import CASES_WITH_FIXED_POINTS, BaseWorkedExampleTest, a, b, build, x


class TestSubgroupPresentation(BaseWorkedExampleTest):
    def test_subgroup_presentation_generators(self):
        presentation = subgroup_presentation(self.d)

        assert len(presentation.generators) == 12
        assert all(g.kind is SymbolKind.X and g.index >= 2 for g in presentation.generators)

    def test_subgroup_presentation_relators(self):
        presentation = subgroup_presentation(self.d)

        names = [name for name, _ in presentation.relators]
        assert names == ['R[0]', 'R[1]', 'R[2]', 'x1^p', 'x2^p', 'x3^p', 'x4^p', 'x5^p']
        assert presentation.relator('x1^p').is_identity()

    @pytest.mark.parametrize('p, n, g0', CASES_WITH_FIXED_POINTS)
    def test_subgroup_presentation_has_p_plus_t_relators(self, p: int, n: tuple, g0: int):
        d = build(p, n, g0)

        assert len(subgroup_presentation(d).relators) == d.p + d.t

    def test_subgroup_presentation_with_handle(self):
        presentation = subgroup_presentation(build(2, (1, 1), 1))

        assert set(presentation.generators) == {a(1, 0), a(1, 1), b(1, 0), b(1, 1), x(2, 0), x(2, 1)}

    def test_subgroup_presentation_without_fixed_points_raises_BadT(self):
        with pytest.raises(BadT):
            subgroup_presentation(build(3, None, 2))


class TestSimplifyToSingleRelator(BaseWorkedExampleTest):
    def test_simplify_worked_example_relator(self):
        presentation = simplify_to_single_relator(subgroup_presentation(self.d), self.d)

        # h(a) h(b) h(c) a b c h(a)^-1 a^-1 h(b)^-1 b^-1 c^-1 h(c)^-1
        expected = FreeWord([
            (x(3, 1), 1), (x(4, 1), 1), (x(5, 1), 1),
            (x(3, 0), 1), (x(4, 0), 1), (x(5, 0), 1),
            (x(3, 1), -1), (x(3, 0), -1),
            (x(4, 1), -1), (x(4, 0), -1),
            (x(5, 0), -1), (x(5, 1), -1),
        ])
        assert presentation.relator(SINGLE_RELATOR) == expected

    def test_simplify_worked_example_generators(self):
        presentation = simplify_to_single_relator(subgroup_presentation(self.d), self.d)

        assert presentation.generators == tuple(x(j, k) for j in (3, 4, 5) for k in (0, 1))

    def test_simplify_worked_example_relator_is_evenly_worded_and_fully_linked(self):
        relator = single_relator_presentation(self.d).relator_words[0]

        assert check_evenly_worded(relator)
        assert check_fully_linked(relator)

    def test_simplify_without_fixed_point_families_raises_MalformedInput(self):
        with pytest.raises(MalformedInput):
            simplify_to_single_relator(Presentation(()), self.d)

    def test_simplify_with_only_long_relators_raises_MalformedInput(self):
        full = subgroup_presentation(self.d)
        partial = Presentation(full.generators, tuple(r for r in full.relators if r[0].startswith('R')))

        with pytest.raises(MalformedInput):
            simplify_to_single_relator(partial, self.d)

    def test_simplify_with_two_fixed_points(self):
        d = build(3, (1, 2), 1)

        presentation = simplify_to_single_relator(subgroup_presentation(d), d)

        def handle(k):
            return commutator(FreeWord.generator(a(1, k)), FreeWord.generator(b(1, k)))

        assert presentation.relator_words == [handle(0) * handle(1) * handle(2)]
        assert len(presentation.generators) == 6

    @pytest.mark.parametrize('p, n, g0, expected', [
        (3, (1, 1, 2, 1, 1), 0, 6),
        (2, (1, 1, 1, 1, 1, 1), 0, 4),
        (3, (1, 2), 1, 6),
        (7, (1, 2, 4), 0, 6),
    ])
    def test_simplify_generator_count(self, p: int, n: tuple, g0: int, expected: int):
        d = build(p, n, g0)

        assert len(simplify_to_single_relator(subgroup_presentation(d), d).generators) == expected


class TestSingleRelatorProperties:
    @pytest.mark.parametrize('p, n, g0', CASES_WITH_FIXED_POINTS)
    def test_generator_count_is_twice_genus(self, p: int, n: tuple, g0: int):
        d = build(p, n, g0)

        assert len(single_relator_presentation(d).generators) == 2 * d.g

    @pytest.mark.parametrize('p, n, g0', CASES_WITH_FIXED_POINTS)
    def test_relator_is_evenly_worded_and_fully_linked(self, p: int, n: tuple, g0: int):
        relator = single_relator_presentation(build(p, n, g0)).relator_words[0]

        assert check_evenly_worded(relator)
        assert check_fully_linked(relator)

    @pytest.mark.parametrize('p, n, g0', CASES_WITH_FIXED_POINTS)
    def test_relator_abelianizes_to_zero(self, p: int, n: tuple, g0: int):
        relator = single_relator_presentation(build(p, n, g0)).relator_words[0]

        assert not relator.abelianize()

    @pytest.mark.parametrize('p, n, g0', CASES_WITH_FIXED_POINTS)
    def test_relator_uses_every_generator(self, p: int, n: tuple, g0: int):
        presentation = single_relator_presentation(build(p, n, g0))

        assert set(presentation.relator_words[0].generators()) == set(presentation.generators)
