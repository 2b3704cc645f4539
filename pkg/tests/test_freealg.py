import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcurrent.freealg import (
    Element,
    Letter,
    WindowError,
    all_words,
    ideal_membership,
    is_straight,
    serre_element,
    straighten_single_color,
    weight_of,
)
from qcurrent.scalars import Coefficient

from conftest import S, elem

letters = st.tuples(st.integers(1, 2), st.integers(-2, 2))
words = st.lists(letters, max_size=3).map(lambda ls: tuple(Letter(*l) for l in ls))


@st.composite
def elements(draw):
    out = Element.zero()
    for _ in range(draw(st.integers(0, 3))):
        out = out + Element.from_word(draw(words), S(str(draw(st.integers(-3, 3)))), draw(st.integers(-2, 2)))
    return out


def test_multiply_examples():
    w = (Letter(1, 0), Letter(2, 3))
    assert Element.one() * Element.from_word(w) == Element.from_word(w)
    prod = Element.letter(1, 0) * Element.letter(1, 1)
    assert prod == Element.from_word([(1, 0), (1, 1)])
    assert prod.coefficient([(1, 0), (1, 1)]) == Coefficient.scalar(S("1"))


@settings(max_examples=100, deadline=None)
@given(elements(), elements(), elements())
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Element.zero()


@settings(max_examples=100, deadline=None)
@given(elements())
def test_json_roundtrip(a):
    assert Element.from_json(json.loads(json.dumps(a.to_json()))) == a


def test_weight_examples():
    assert weight_of((), 3) == ((0, 0, 0), 0)
    assert weight_of(((1, -2), (1, 3)), 2) == ((2, 0), 1)


@settings(max_examples=100, deadline=None)
@given(words, words)
def test_weight_additive(u, v):
    wu, wv, wuv = weight_of(u, 2), weight_of(v, 2), weight_of(u + v, 2)
    assert wuv[0] == tuple(a + b for a, b in zip(wu[0], wv[0]))
    assert wuv[1] == wu[1] + wv[1]


def test_serre_examples(A1, A3=None):
    e = serre_element(A1, 1, 1, 0, 0)
    assert e == elem(("2", [(1, 1), (1, 0)]), ("-2*q^-2", [(1, 0), (1, 1)]))
    from qcurrent.cartan import load_cartan

    a3 = load_cartan("A", 3)
    e = serre_element(a3, 1, 3, 2, -1)
    assert e == elem(
        ("1", [(1, 3), (3, -1)]), ("-1", [(3, -1), (1, 3)]), ("-1", [(1, 2), (3, 0)]), ("1", [(3, 0), (1, 2)])
    )


def test_serre_homogeneous(A2):
    for i, j, k, l in itertools.product([1, 2], [1, 2], range(-2, 3), range(-2, 3)):
        e = serre_element(A2, i, j, k, l)
        expected = tuple(int(i == c) + int(j == c) for c in (1, 2))
        for w in e.words():
            assert weight_of(w, 2) == (expected, k + l + 1)


def test_straighten_examples(A1):
    assert straighten_single_color(A1, elem(("1", [(1, 1), (1, 0)]))) == elem(("q^-2", [(1, 0), (1, 1)]))
    assert straighten_single_color(A1, elem(("1", [(1, 2), (1, 0)]))) == elem(
        ("q^-2", [(1, 0), (1, 2)]), ("q^-2 - 1", [(1, 1), (1, 1)])
    )
    w = elem(("1", [(1, -1), (1, 0), (1, 2)]))
    assert straighten_single_color(A1, w) == w


def test_straighten_rejects_mixed(A2):
    with pytest.raises(ValueError):
        straighten_single_color(A2, elem(("1", [(1, 1), (2, 0)])))


def test_straighten_idempotent_and_order_free(A1):
    rng = random.Random(3)
    for L in range(4):
        for w in all_words([1], (-2, 2), L):
            e = Element.from_word(w)
            a = straighten_single_color(A1, e)
            assert all(is_straight(v) for v in a.words())
            assert straighten_single_color(A1, a) == a
            assert straighten_single_color(A1, e, "rightmost") == a
            assert straighten_single_color(A1, e, "random", seed=rng.randrange(10**6)) == a


def test_straighten_other_color_and_type(C2):
    for w in all_words([2], (-1, 1), 3):
        e = Element.from_word(w)
        a = straighten_single_color(C2, e)
        assert straighten_single_color(C2, e, "rightmost") == a
        diff = a - e
        if diff:
            assert ideal_membership(C2, diff, (-2, 2), 3).member


def test_membership_examples(A1):
    s = serre_element(A1, 1, 1, 0, 0)
    res = ideal_membership(A1, s, (-1, 2), 2)
    assert res.member
    assert res.reconstruct(A1) == s
    half = elem(("1", [(1, 1), (1, 0)]), ("-q^-2", [(1, 0), (1, 1)]))
    res = ideal_membership(A1, half, (-1, 2), 2)
    assert res.member and res.reconstruct(A1) == half
    assert not ideal_membership(A1, Element.letter(1, 0), (-1, 2), 2).member
    assert not ideal_membership(A1, elem(("1", [(1, 1), (1, 0)])), (-1, 2), 2).member


def test_membership_window_overflow(A1):
    with pytest.raises(WindowError):
        ideal_membership(A1, elem(("1", [(1, 5), (1, 0)])), (-1, 2), 2)
    with pytest.raises(WindowError):
        ideal_membership(A1, elem(("1", [(1, 0), (1, 0), (1, 0)])), (-1, 2), 2)
