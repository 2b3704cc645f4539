import itertools
import random

import pytest

from qcurrent.freealg import Element, all_words, serre_element
from qcurrent.kashiwara import (
    IDENTITIES,
    FormalExpr,
    O,
    X,
    act,
    alpha_bar,
    alpha_relation_closure,
    kq_relation,
    random_formal_expr,
    verify_operator_identity,
)
from qcurrent.scalars import ONE

from conftest import S


def _words(cd, window=(-2, 2), maxlen=2):
    return [w for L in range(maxlen + 1) for w in all_words(cd.colors, window, L)]


def test_alpha_bar_examples():
    assert alpha_bar(FormalExpr.word([X(1, 3)])) == FormalExpr.word([O(1, -3)])
    assert alpha_bar(FormalExpr.word([X(1, 0), X(2, 5)])) == FormalExpr.word([O(2, -5), O(1, 0)])
    assert alpha_bar(FormalExpr.scalar(S("q"), 3)) == FormalExpr.scalar(S("q"), 3)


def test_alpha_bar_involutive_and_anti(A2):
    rng = random.Random(11)
    for _ in range(100):
        a = random_formal_expr(A2, rng)
        b = random_formal_expr(A2, rng, terms=2, maxlen=2)
        assert alpha_bar(alpha_bar(a)) == a
        assert alpha_bar(a * b) == alpha_bar(b) * alpha_bar(a)


def test_x_x_relation_is_serre(A2):
    for i, j, k, l in itertools.product([1, 2], [1, 2], [-1, 0], [0, 1]):
        assert act(A2, kq_relation(A2, "x_x", i, j, k, l), Element.one()) == serre_element(A2, i, j, k, l)


def test_mixed_delta_term(A1):
    Q = A1.q_pair(1, 1)
    for m, n in itertools.product(range(-2, 3), repeat=2):
        r = kq_relation(A1, "mixed", 1, 1, m, n)
        scalars = {ce: x for (w, ce), x in r.raw().items() if w == ()}
        if m == -n - 1:
            # corrected form of the delta term: (Q - 1) gamma^(m+1)
            assert scalars == {2 * (m + 1): -(Q - ONE)}
        else:
            assert scalars == {}


def test_orthogonal_omega_omega():
    from qcurrent.cartan import load_cartan

    a3 = load_cartan("A", 3)
    r = kq_relation(a3, "omega_omega", 1, 3, 0, 1)
    W = FormalExpr.word
    assert r == W([O(1, 1), O(3, 1)]) - W([O(3, 1), O(1, 1)]) - W([O(1, 0), O(3, 2)]) + W([O(3, 2), O(1, 0)])


def test_relations_annihilate_free_model(A1):
    ws = _words(A1, (-1, 1), 2)
    # x_x is excluded: it vanishes only on the quotient, not on free words
    for kind in ("mixed", "omega_omega"):
        for m, n in itertools.product(range(-2, 2), repeat=2):
            rel = kq_relation(A1, kind, 1, 1, m, n)
            for w in ws:
                assert act(A1, rel, Element.from_word(w)).is_zero(), (kind, m, n, w)


@pytest.mark.parametrize("name", sorted(IDENTITIES))
def test_identities_a1(A1, name):
    ws = _words(A1)
    for m, n in itertools.product(range(-2, 3), repeat=2):
        rep = verify_operator_identity(A1, name, {"i": 1, "j": 1, "m": m, "n": n}, ws)
        assert rep.ok, rep.failures[:3]
        assert rep.checked == len(ws)


@pytest.mark.parametrize("name", ["mixed_psi", "mixed_phi", "psi_phi"])
def test_identities_c2_unequal_lengths(C2, name):
    ws = _words(C2, (-1, 1), 2)
    for i, j in itertools.product(C2.colors, repeat=2):
        rep = verify_operator_identity(C2, name, {"i": i, "j": j, "m": 0, "n": -1}, ws)
        assert rep.ok, rep.failures[:3]


def test_closure(A1):
    rep = alpha_relation_closure(A1, (0, 0))
    assert rep.ok and rep.checked > 0
    rep = alpha_relation_closure(A1, (-1, 1))
    assert rep.ok
