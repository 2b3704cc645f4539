"""The symmetric bilinear form on the negative current algebra and Gram ranks.

The form is determined by (1, 1) = 1 and the adjunction
(x_{i,m} a, b) = (a, Omega_psi_i(-m) b).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .cartan import CartanData
from .freealg import Element, as_word
from .linalg import bareiss_rank, field_rank
from .omega import _pairing_row, _psi_word
from .scalars import ONE, Coefficient, Scalar

__all__ = ["pair", "pair_words", "gram", "rank", "rank_without_gamma"]


def _acc(acc: dict, key, x):
    y = acc.get(key)
    y = x if y is None else y + x
    if y:
        acc[key] = y
    else:
        acc.pop(key, None)


@lru_cache(maxsize=200_000)
def _pair_word(prows: tuple, a: tuple, b: tuple) -> tuple:
    """(a, b) for words a, b as a sorted tuple of (cexp, Scalar)."""
    if not a:
        return ((0, ONE),) if not b else ()
    if len(a) != len(b):
        return ()
    (i, m), rest = a[0], a[1:]
    acc: dict = {}
    for (w, ce), x in _psi_word(prows[i], i, -m, b).items():
        for ce2, y in _pair_word(prows, rest, w):
            _acc(acc, ce + ce2, x * y)
    return tuple(sorted(acc.items()))


def _prows(cd: CartanData) -> tuple:
    return (None,) + tuple(_pairing_row(cd, i) for i in cd.colors)


def pair(cd: CartanData, a: Element, b: Element) -> Coefficient:
    prows = _prows(cd)
    acc: dict = {}
    for (wa, ea), x in a.raw().items():
        for (wb, eb), y in b.raw().items():
            xy = None
            for ce, z in _pair_word(prows, wa, wb):
                xy = xy or x * y
                _acc(acc, ea + eb + ce, xy * z)
    return Coefficient(acc)


def pair_words(cd: CartanData, a, b) -> Coefficient:
    return Coefficient(dict(_pair_word(_prows(cd), as_word(a), as_word(b))))


def gram(cd: CartanData, words: Sequence) -> list[list[Coefficient]]:
    words = [as_word(w) for w in words]
    prows = _prows(cd)
    return [[Coefficient(dict(_pair_word(prows, a, b))) for b in words] for a in words]


def rank(m: Sequence[Sequence[Coefficient]], gamma_value=None, method: str = "bareiss") -> int:
    """Rank of a matrix of Coefficients.

    With ``gamma_value`` the entries are specialized (c -> gamma_value) and the
    rank is taken over Q(s).  Without it the rank is over Q(s, c): entries are
    made Laurent in s and c, then c is replaced by s^N with N larger than the
    summed per-row s-degree spread.  No nonzero minor can vanish under that
    substitution, so the rank is preserved.
    """
    if gamma_value is not None:
        mat = [[Coefficient.scalar(x) if not isinstance(x, Coefficient) else x for x in row] for row in m]
        scal = [[x.specialize(gamma_value) for x in row] for row in mat]
    else:
        scal = rank_without_gamma(m)
    if method == "bareiss":
        return bareiss_rank(scal)
    if method == "field":
        return field_rank(scal)
    raise ValueError(f"unknown rank method {method!r}")


def rank_without_gamma(m: Sequence[Sequence[Coefficient]]) -> list[list[Scalar]]:
    """Kronecker substitution c -> s^N turning a Coefficient matrix into Scalars of equal rank."""
    rows = [[x if isinstance(x, Coefficient) else Coefficient.scalar(x) for x in row] for row in m]
    # clear s-denominators row by row so every entry is a polynomial in s and c
    cleared = []
    for row in rows:
        den = ONE
        for x in row:
            for _, v in x.items():
                if not v.is_laurent():
                    d = Scalar(v.den)
                    g = _poly_gcd(den, d)
                    den = den * d / g
        cleared.append([x * den for x in row])
    # a minor's c^j coefficient has s-support inside the sum of the row ranges,
    # so N above that sum keeps distinct c-powers in disjoint s-degree bands
    N = 1
    cmin = 0
    for row in cleared:
        exps = [e for x in row for _, v in x.items() for e in v.laurent_terms()]
        cmin = min([cmin] + [ce for x in row for ce, _ in x.items()])
        if exps:
            N += max(exps) - min(exps)
    out = []
    for row in cleared:
        out.append([_kronecker(x, N, cmin) for x in row])
    return out


def _poly_gcd(a: Scalar, b: Scalar) -> Scalar:
    import flint

    g = flint.fmpz_poly(list(a.num)).gcd(flint.fmpz_poly(list(b.num)))
    return Scalar(tuple(int(c) for c in g.coeffs()))


def _kronecker(x: Coefficient, N: int, cmin: int) -> Scalar:
    out = Scalar.from_int(0)
    for ce, v in x.items():
        out = out + v * Scalar.monomial(N * (ce - cmin))
    return out
