import pytest

from qcurrent.schur import CommPoly, exp_series, h_var, partitions, s_plus_minus, schur_poly, schur_poly_recursive
from qcurrent.scalars import Coefficient, Scalar

from conftest import S

x = CommPoly.var


def test_small_cases():
    assert schur_poly(0) == CommPoly.const(1)
    assert schur_poly(1) == x(1)
    assert schur_poly(2) == x(2) + x(1) ** 2 * Scalar.from_fraction(1, 2)


@pytest.mark.parametrize("k", range(7))
def test_recursion_matches_direct(k):
    assert schur_poly(k) == schur_poly_recursive(k)
    assert exp_series({l: x(l) for l in range(1, 7)}, 6)[k] == schur_poly(k)


def test_partition_counts():
    assert [len(list(partitions(n))) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_negative_k():
    with pytest.raises(ValueError):
        schur_poly(-1)


def test_s_plus_small(A1, C2):
    assert s_plus_minus(A1, 1, 0, "+") == CommPoly.const(1)
    expected = CommPoly({((h_var(1, 1), 1),): Coefficient.scalar(S("q - q^-1"), -1)})
    assert s_plus_minus(A1, 1, 1, "+") == expected
    # in C2 color 1 is short (q_1 = q) and color 2 is long (q_2 = q^2)
    expected = CommPoly({((h_var(2, 1), 1),): Coefficient.scalar(S("q^2 - q^-2"), -1)})
    assert s_plus_minus(C2, 2, 1, "+") == expected


@pytest.mark.parametrize("k", range(5))
def test_d_degree_homogeneous(A2, k):
    assert s_plus_minus(A2, 2, k, "+").degrees(lambda v: v[2]) <= {k}
    assert s_plus_minus(A2, 2, k, "-").degrees(lambda v: v[2]) <= {-k}


def test_gamma_bookkeeping(A1):
    # every monomial of S+_{i,k} carries c^{-k}, S-_{i,k} carries c^{k}
    for k in range(1, 5):
        for _, c in s_plus_minus(A1, 1, k, "+").monomials():
            assert {e for e, _ in c.items()} == {-k}
        for _, c in s_plus_minus(A1, 1, k, "-").monomials():
            assert set(e for e, _ in c.items()) == {k}
