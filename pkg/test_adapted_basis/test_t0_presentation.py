import pytest

from adapted_basis.errors import BadT
from adapted_basis.rewriter import check_evenly_worded, check_fully_linked, t0_presentation
from adapted_basis.words import ALPHA, BETA, FreeWord, commutator
from test_adapted_basis.conftest import a, b, build


class TestT0Presentation:
    @pytest.mark.parametrize('p, g0, expected', [
        (3, 2, 8),
        (2, 2, 6),
        (5, 2, 12),
        (2, 3, 10),
    ])
    def test_t0_presentation_generator_count(self, p: int, g0: int, expected: int):
        d = build(p, None, g0)

        presentation = t0_presentation(d)

        assert len(presentation.generators) == expected == 2 * d.g
        assert presentation.generators[-2:] == (ALPHA, BETA)

    def test_t0_presentation_relator_for_involution(self):
        presentation = t0_presentation(build(2, None, 2))

        alpha, beta = FreeWord.generator(ALPHA), FreeWord.generator(BETA)
        q = commutator(FreeWord.generator(a(2, 0)), FreeWord.generator(b(2, 0)))
        h_q = commutator(FreeWord.generator(a(2, 1)), FreeWord.generator(b(2, 1)))

        # beta alpha beta^-1 = h(P) alpha P
        assert presentation.relator_words == [beta * alpha * ~beta * ~q * ~alpha * ~h_q]

    @pytest.mark.parametrize('p, g0', [(2, 2), (3, 2), (5, 2), (2, 3), (3, 3)])
    def test_t0_relator_properties(self, p: int, g0: int):
        relator = t0_presentation(build(p, None, g0)).relator_words[0]

        assert relator[0] == (BETA, 1)
        assert not relator.abelianize()
        assert check_evenly_worded(relator)
        assert check_fully_linked(relator)

    def test_t0_presentation_with_fixed_points_raises_BadT(self):
        with pytest.raises(BadT):
            t0_presentation(build(3, (1, 2), 1))
