import itertools
import random

import pytest

from qcurrent.freealg import Element, Letter
from qcurrent.omega import xplus_commutator_components
from qcurrent.scalars import ONE, Scalar, quantum_integer
from qcurrent.verma import (
    HighestWeight,
    VermaVector,
    act_D,
    act_h,
    act_K,
    act_xminus,
    act_xplus,
    highest_weight_vector,
    reducibility_witness,
    singular_vector_check,
    specialize_components,
)

from conftest import elem


def vec(cd, lam, *terms):
    return VermaVector(cd, HighestWeight(lam), elem(*terms) if terms else Element.one())


def test_xminus_on_hw(A1):
    v = highest_weight_vector(A1, HighestWeight((1,)))
    assert act_xminus(1, -3, v).element == Element.letter(1, -3)
    w = act_xminus(1, 2, act_xminus(1, -3, v))
    assert w.element == Element.letter(1, 2) * Element.letter(1, -3)


def test_K_and_D(A1, A2):
    v = highest_weight_vector(A1, HighestWeight((3,)))
    assert act_K(1, v) == v.scale(Scalar.q_power(3))
    x = act_xminus(1, 0, v)
    assert act_K(1, x) == x.scale(Scalar.q_power(3 - 2))
    assert act_K(1, act_K(1, x, -1)) == x
    y = act_xminus(1, -3, highest_weight_vector(A1, HighestWeight((0,))))
    assert act_D(y) == y.scale(Scalar.q_power(-3))
    z = act_xminus(2, 0, highest_weight_vector(A2, HighestWeight((1, 1))))
    assert act_K(1, z) == z.scale(Scalar.q_power(2))


def test_xplus_on_hw_is_zero(A2):
    v = highest_weight_vector(A2, HighestWeight((1, -1)))
    for i, k in itertools.product(A2.colors, range(-3, 4)):
        assert act_xplus(i, k, v).is_zero()


@pytest.mark.parametrize("lam", [(1,), (2,), (-1,), (0,)])
def test_drinfeld_commutator_a1(A1, lam):
    v = highest_weight_vector(A1, HighestWeight(lam))
    for k, l in itertools.product(range(-2, 3), repeat=2):
        lhs = act_xplus(1, k, act_xminus(1, l, v))
        expected = v.scale(quantum_integer(lam[0], 1)) if k + l == 0 else v.scale(Scalar.from_int(0))
        assert lhs == expected


def test_drinfeld_commutator_c2(C2):
    lam = (1, 2)
    v = highest_weight_vector(C2, HighestWeight(lam))
    for i, j in itertools.product(C2.colors, repeat=2):
        for k, l in itertools.product(range(-1, 2), repeat=2):
            lhs = act_xplus(i, k, act_xminus(j, l, v))
            if i == j and k + l == 0:
                qi = C2.q_i(i)
                expected = v.scale((Scalar.q_power(lam[i - 1]) - Scalar.q_power(-lam[i - 1])) / (qi - qi.inverse()))
            else:
                expected = v.scale(Scalar.from_int(0))
            assert lhs == expected


def test_lambda_zero_annihilation(A2):
    v = highest_weight_vector(A2, HighestWeight((0, 3)))
    for l in range(-2, 3):
        x = act_xminus(1, l, v)
        for j, k in itertools.product(A2.colors, range(-3, 4)):
            assert act_xplus(j, k, x).is_zero()


def test_known_counterexample_to_naive_formula(A1):
    # x+_{1,1} x_0 x_0 v with lambda = 1 is -(1 + q^-2) x_1 v
    v = vec(A1, (1,), ("1", [(1, 0), (1, 0)]))
    assert act_xplus(1, 1, v).element == elem(("-1 - q^-2", [(1, 1)]))


def test_singular_examples(A1, A2):
    v = highest_weight_vector(A2, HighestWeight((1, 1)))
    rep = singular_vector_check(v, (-2, 2))
    assert rep.singular and rep.exact
    rep = singular_vector_check(act_xminus(1, 2, highest_weight_vector(A2, HighestWeight((0, 1)))), (-1, 1))
    assert rep.singular and rep.exact
    rep = singular_vector_check(act_xminus(1, 2, highest_weight_vector(A1, HighestWeight((1,)))), (0, 1))
    assert not rep.singular
    assert [(i, k) for i, k, _ in rep.witnesses] == [(1, -2)]
    assert rep.witnesses[0][2].element == Element.one()


def test_inexact_check_is_flagged(A1):
    v = vec(A1, (1,), ("1", [(1, 0), (1, 0)]))
    rep = singular_vector_check(v, (-1, 1))
    assert not rep.exact


def test_reducibility_witness(A1, A2):
    wit = reducibility_witness(A2, HighestWeight((0, 5)))
    assert wit is not None and wit[0] == 1 and wit[2].singular and wit[2].exact
    assert reducibility_witness(A2, HighestWeight((1, 1))) is None
    assert reducibility_witness(A2, HighestWeight((0, 0))) is not None
    assert reducibility_witness(A1, HighestWeight((2,))) is None


def test_act_h_derivation(A1):
    v = vec(A1, (1,), ("1", [(1, 0)]))
    # h_{1,1} x_{1,0} v = -[2] x_{1,1} v
    assert act_h(1, 1, v).element == elem(("-q - q^-1", [(1, 1)]))
    with pytest.raises(ValueError):
        act_h(1, 0, v)


def test_components_reproduce_xplus(A1, A2):
    rng = random.Random(5)
    for cd, lams in ((A1, [(1,), (2,)]), (A2, [(1, -1), (0, 2)])):
        for _ in range(25):
            w = tuple(Letter(rng.choice(cd.colors), rng.randint(-2, 2)) for _ in range(rng.randint(0, 3)))
            e = Element.from_word(w)
            i = rng.choice(cd.colors)
            k = rng.randint(-3, 3)
            hw = HighestWeight(rng.choice(lams))
            comps = xplus_commutator_components(cd, i, k, e)
            assert specialize_components(cd, comps, hw) == act_xplus(i, k, VermaVector(cd, hw, e))


def test_bad_weight_length(A2):
    with pytest.raises(ValueError):
        highest_weight_vector(A2, HighestWeight((1,)))
