import itertools

import pytest

from qcurrent.bform import gram, pair, pair_words, rank, rank_without_gamma
from qcurrent.freealg import Element, all_words, serre_element, straighten_single_color, weight_of
from qcurrent.omega import omega_psi
from qcurrent.scalars import Coefficient, ONE, Scalar

from conftest import S, elem


def test_unit(A1):
    assert pair(A1, Element.one(), Element.one()) == Coefficient.scalar(ONE)
    assert not pair(A1, Element.one(), Element.letter(1, 0))


def test_frozen_a1_gram(A1):
    words = [((1, -1), (1, 1)), ((1, 0), (1, 0))]
    G = gram(A1, words)
    expected = [["s^12 - s^4 + 1", "s^8 - 1"], ["s^8 - 1", "s^4 + 1"]]
    assert G == [[Coefficient.scalar(S(t)) for t in row] for row in expected]
    assert rank(G) == 2
    assert rank(G, gamma_value=1) == 2
    assert rank(G, method="field") == 2


def test_symmetry_and_orthogonality(A2):
    ws = [w for L in range(3) for w in all_words(A2.colors, (-1, 1), L)]
    for a, b in itertools.combinations_with_replacement(ws, 2):
        p = pair_words(A2, a, b)
        assert p == pair_words(A2, b, a)
        if weight_of(a, 2) != weight_of(b, 2):
            assert not p


def test_adjunction(A1):
    ws = [w for L in range(3) for w in all_words([1], (-1, 1), L)]
    for a in ws:
        for b in ws:
            for m in range(-2, 3):
                lhs = pair(A1, omega_psi(A1, 1, m, Element.from_word(a)), Element.from_word(b))
                rhs = pair(A1, Element.from_word(a), Element.letter(1, -m) * Element.from_word(b))
                assert lhs == rhs


def test_radical_contains_serre(A1):
    s = serre_element(A1, 1, 1, 0, -1)
    for u in [Element.one(), Element.letter(1, 0), Element.letter(1, -1)]:
        for w in all_words([1], (-2, 2), 2 + (0 if u == Element.one() else 1)):
            assert not pair(A1, u * s, Element.from_word(w))
            assert not pair(A1, s * u, Element.from_word(w))


def test_straightening_preserves_form(A1):
    for a in all_words([1], (-1, 1), 2):
        ea = Element.from_word(a)
        sa = straighten_single_color(A1, ea)
        for b in all_words([1], (-1, 1), 2):
            assert pair(A1, ea, Element.from_word(b)) == pair(A1, sa, Element.from_word(b))


def test_rank_detects_dependency(A1):
    words = [((1, 1), (1, 0)), ((1, 0), (1, 1))]
    # x1 x0 = q^-2 x0 x1 in the quotient, so this Gram matrix is singular
    assert rank(gram(A1, words)) == 1


def test_rank_with_gamma_kept_formal():
    c = Coefficient.c_power
    m = [[c(2) + c(0), c(1)], [c(1), c(0)]]
    # det = c^2 + 1 - c^2 = 1
    assert rank(m) == 2
    m2 = [[c(2), c(1)], [c(1), c(0)]]
    assert rank(m2) == 1
    assert rank(m2, gamma_value=S("q")) == 1
    assert len(rank_without_gamma(m2)) == 2


def test_rank_methods_agree(A2):
    ws = [w for w in all_words(A2.colors, (-1, 1), 2) if weight_of(w, 2) == ((1, 1), 0)]
    G = gram(A2, ws)
    assert rank(G) == rank(G, method="field")
    with pytest.raises(ValueError):
        rank(G, method="nope")
