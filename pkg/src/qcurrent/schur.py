"""Schur polynomials S_k(x) and their Cartan-current substitutions S^{+-}_{i,k}.

``sum_k S_k(x) z^k = exp(sum_{l>=1} x_l z^l)``.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Callable, Hashable, Iterator, Mapping

from .cartan import CartanData
from .scalars import ONE, Coefficient, Scalar

__all__ = [
    "CommPoly",
    "schur_poly",
    "schur_poly_recursive",
    "s_plus_minus",
    "exp_series",
    "h_var",
    "partitions",
]


def h_var(i: int, l: int) -> tuple:
    """The commuting symbol h_{i,l}."""
    return ("h", i, l)


def _var_text(v) -> str:
    if isinstance(v, tuple) and v and v[0] == "h":
        return f"h({v[1]},{v[2]})"
    return f"x{v}"


def _mono_mul(a: tuple, b: tuple) -> tuple:
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda t: repr(t[0])))


class CommPoly:
    """Polynomial in commuting variables with Coefficient coefficients.

    Monomials are tuples of (variable, exponent) sorted by variable.
    """

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[tuple, Coefficient] | None = None):
        self._t: dict = {}
        for m, c in (terms or {}).items():
            c = c if isinstance(c, Coefficient) else Coefficient.scalar(c)
            if c:
                self._t[tuple(m)] = c

    @classmethod
    def const(cls, c) -> "CommPoly":
        return cls({(): c})

    @classmethod
    def var(cls, v: Hashable) -> "CommPoly":
        return cls({((v, 1),): Coefficient.scalar(ONE)})

    def terms(self) -> dict:
        return dict(self._t)

    def __add__(self, other):
        other = _coerce(other)
        t = dict(self._t)
        for m, c in other._t.items():
            d = t[m] + c if m in t else c
            if d:
                t[m] = d
            else:
                t.pop(m, None)
        out = CommPoly()
        out._t = t
        return out

    __radd__ = __add__

    def __neg__(self):
        out = CommPoly()
        out._t = {m: -c for m, c in self._t.items()}
        return out

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __mul__(self, other):
        other = _coerce(other)
        t: dict = {}
        for m1, c1 in self._t.items():
            for m2, c2 in other._t.items():
                m = _mono_mul(m1, m2)
                d = t[m] + c1 * c2 if m in t else c1 * c2
                if d:
                    t[m] = d
                else:
                    t.pop(m, None)
        out = CommPoly()
        out._t = t
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = CommPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _coerce(other)
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def is_zero(self) -> bool:
        return not self._t

    def substitute(self, mapping: Mapping[Hashable, "CommPoly"]) -> "CommPoly":
        out = CommPoly()
        for m, c in self._t.items():
            term = CommPoly.const(c)
            for v, e in m:
                term = term * (mapping[v] ** e if v in mapping else CommPoly.var(v) ** e)
            out = out + term
        return out

    def degrees(self, weight: Callable[[Hashable], int]) -> set[int]:
        return {sum(weight(v) * e for v, e in m) for m in self._t}

    def monomials(self) -> Iterator[tuple[tuple, Coefficient]]:
        return iter(sorted(self._t.items(), key=lambda t: repr(t[0])))

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for m, c in self.monomials():
            mono = "*".join(_var_text(v) if e == 1 else f"{_var_text(v)}^{e}" for v, e in m)
            if not m:
                parts.append(str(c) if c.is_scalar() else f"({c})")
            elif c == Coefficient.scalar(ONE):
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"CommPoly({self})"


def _coerce(x) -> CommPoly:
    if isinstance(x, CommPoly):
        return x
    return CommPoly.const(x)


def partitions(k: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of k as nonincreasing tuples."""
    if largest is None:
        largest = k
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in partitions(k - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def schur_poly(k: int) -> CommPoly:
    """S_k = sum over partitions 1^{m_1} 2^{m_2} ... of k of prod x_l^{m_l} / m_l!."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = CommPoly()
    for lam in partitions(k):
        mult: dict[int, int] = {}
        for part in lam:
            mult[part] = mult.get(part, 0) + 1
        den = 1
        for m in mult.values():
            den *= factorial(m)
        mono = tuple(sorted(mult.items()))
        out = out + CommPoly({mono: Coefficient.scalar(Scalar.from_fraction(1, den))})
    return out


@lru_cache(maxsize=None)
def schur_poly_recursive(k: int) -> CommPoly:
    """k S_k = sum_{l=1}^k l x_l S_{k-l}."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return CommPoly.const(1)
    acc = CommPoly()
    for l in range(1, k + 1):
        acc = acc + CommPoly.var(l) * schur_poly_recursive(k - l) * l
    return acc * Scalar.from_fraction(1, k)


def exp_series(coeffs: Mapping[int, CommPoly], order: int) -> list[CommPoly]:
    """Coefficients of z^0..z^order in exp(sum_{l>=1} coeffs[l] z^l), via sum_n A^n/n!."""
    zero = CommPoly()
    A = [zero] + [coeffs.get(l, zero) for l in range(1, order + 1)]
    total = [CommPoly.const(1)] + [CommPoly() for _ in range(order)]
    power = [CommPoly.const(1)] + [CommPoly() for _ in range(order)]
    for n in range(1, order + 1):
        nxt = [CommPoly() for _ in range(order + 1)]
        for a in range(order + 1):
            if power[a].is_zero():
                continue
            for b in range(1, order + 1 - a):
                if not A[b].is_zero():
                    nxt[a + b] = nxt[a + b] + power[a] * A[b]
        power = nxt
        inv = Scalar.from_fraction(1, factorial(n))
        for d in range(order + 1):
            if not power[d].is_zero():
                total[d] = total[d] + power[d] * inv
    return total


def _current_symbol(cd: CartanData, i: int, l: int, sign: str) -> CommPoly:
    """(q_i - q_i^{-1}) h_{i,l} gamma^{-l/2} for '+', and -(q_i - q_i^{-1}) h_{i,-l} gamma^{l/2} for '-'."""
    qi = cd.q_i(i)
    diff = qi - qi.inverse()
    if sign == "+":
        return CommPoly({((h_var(i, l), 1),): Coefficient.scalar(diff, -l)})
    return CommPoly({((h_var(i, -l), 1),): Coefficient.scalar(-diff, l)})


def s_plus_minus(cd: CartanData, i: int, k: int, sign: str) -> CommPoly:
    """S_k with x_l replaced by the Cartan-current symbols of color i."""
    cd.check_color(i)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    mapping = {l: _current_symbol(cd, i, l, sign) for l in range(1, k + 1)}
    return schur_poly(k).substitute(mapping)


def d_degree(v) -> int:
    """D-grading of a symbol: h_{i,l} has degree l."""
    return v[2]
