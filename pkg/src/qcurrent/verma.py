"""Reduced imaginary Verma modules at zero central charge.

Vectors are elements P of the free model acting on the highest-weight vector
v_lambda, with gamma specialized to 1.  In the reduced module the modes
h_{i,l} (l != 0) and all x^+ annihilate v_lambda, K_i acts by q^{lambda_i}
on it and D by q^{lambda_d}.

:func:`act_xplus` commutes x^+_{i,k} through each word letter by letter:
[x^+_{i,k}, x^-_{i,n}] = (psi_{i,k+n} - phi_{i,k+n}) / (q_i - q_i^{-1}), and the
Cartan currents psi/phi are then moved onto v_lambda using the exchange
series g_ij.  :func:`specialize_components` evaluates the x^+ commutator
assembled from Omega components instead; the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .cartan import CartanData, _g_by_exp
from .freealg import Element, Letter, as_word
from .omega import CommutatorComponents, _compositions
from .scalars import ONE, ZERO, Scalar, quantum_integer
from .schur import s_plus_minus

__all__ = [
    "HighestWeight",
    "VermaVector",
    "highest_weight_vector",
    "act_xminus",
    "act_xplus",
    "act_K",
    "act_D",
    "act_h",
    "specialize_components",
    "SingularReport",
    "singular_vector_check",
    "reducibility_witness",
]


@dataclass(frozen=True)
class HighestWeight:
    lam: tuple[int, ...]
    lam_d: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))

    def __str__(self):
        return f"lambda={self.lam}, lambda_d={self.lam_d}"


@dataclass(frozen=True)
class VermaVector:
    cd: CartanData
    hw: HighestWeight
    element: Element

    def __post_init__(self):
        if len(self.hw.lam) != self.cd.rank:
            raise ValueError(f"highest weight needs {self.cd.rank} entries")
        if any(ce for (_, ce) in self.element.raw()):
            object.__setattr__(self, "element", self.element.specialize_gamma(ONE))

    def _with(self, e: Element) -> "VermaVector":
        return VermaVector(self.cd, self.hw, e)

    def is_zero(self) -> bool:
        return self.element.is_zero()

    def __add__(self, other: "VermaVector") -> "VermaVector":
        return self._with(self.element + other.element)

    def __sub__(self, other: "VermaVector") -> "VermaVector":
        return self._with(self.element - other.element)

    def scale(self, x) -> "VermaVector":
        return self._with(self.element.scale(x))

    def __eq__(self, other):
        return (
            isinstance(other, VermaVector)
            and self.cd == other.cd
            and self.hw == other.hw
            and self.element == other.element
        )

    def __hash__(self):
        return hash((self.cd, self.hw, self.element))

    def __str__(self):
        return f"({self.element}) v"


def highest_weight_vector(cd: CartanData, hw: HighestWeight) -> VermaVector:
    return VermaVector(cd, hw, Element.one())


def act_xminus(i: int, k: int, v: VermaVector) -> VermaVector:
    v.cd.check_color(i)
    return v._with(v.element.left_letter(Letter(i, k)))


def _k_exponent(cd: CartanData, hw: HighestWeight, i: int, word: Sequence) -> int:
    return hw.lam[i - 1] - sum(cd.pairing(i, j) for j, _ in word)


def act_K(i: int, v: VermaVector, power: int = 1) -> VermaVector:
    """K_i^power: each word w scales by q^{power (lambda_i - sum_j n_j (alpha_i|alpha_j))}."""
    v.cd.check_color(i)
    acc = Element.zero()
    for (w, ce), x in v.element.raw().items():
        acc = acc + Element.from_word(w, x * Scalar.q_power(power * _k_exponent(v.cd, v.hw, i, w)), ce)
    return v._with(acc)


def act_D(v: VermaVector) -> VermaVector:
    acc = Element.zero()
    for (w, ce), x in v.element.raw().items():
        m = sum(k for _, k in w)
        acc = acc + Element.from_word(w, x * Scalar.q_power(v.hw.lam_d + m), ce)
    return v._with(acc)


# ---------------------------------------------------------------------------
# x^+ action, letter by letter


def _psi_on(prow: tuple, lam_i: int, p: int, word: tuple, inverse: bool) -> dict:
    """psi_{i,p} (or phi_{i,-p} when ``inverse``) applied to word * v_lambda, gamma = 1.

    Moving the current to the right past x^-_{j,n} produces the exchange
    series: psi uses g_ij and raises indices, phi uses g_ij at q^{-1} and
    lowers them.  On v_lambda only the zero mode survives, giving q^{+-lambda_i}.
    """
    out: dict = {}
    if p < 0:
        return out
    base = Scalar.q_power(-lam_i if inverse else lam_i)
    for rs in _compositions(p, len(word)):
        coeff = base
        new = []
        for (j, n), r in zip(word, rs):
            e = prow[j]
            coeff = coeff * _g_by_exp(-e if inverse else e, r)
            if not coeff:
                break
            new.append(Letter(j, n - r if inverse else n + r))
        if coeff:
            key = tuple(new)
            y = out.get(key, ZERO) + coeff
            if y:
                out[key] = y
            else:
                out.pop(key, None)
    return out


@lru_cache(maxsize=100_000)
def _xplus_word(prow: tuple, qi_exp: int, lam_i: int, i: int, k: int, word: tuple) -> tuple:
    qi = Scalar.q_power(qi_exp)
    inv = (qi - qi.inverse()).inverse()
    acc: dict = {}
    for l, (j, n) in enumerate(word):
        if j != i:
            continue
        prefix, suffix = word[:l], word[l + 1:]
        p = k + n
        for sgn, res in (
            (ONE, _psi_on(prow, lam_i, p, suffix, False)),
            (-ONE, _psi_on(prow, lam_i, -p, suffix, True)),
        ):
            for w, x in res.items():
                key = prefix + w
                y = acc.get(key, ZERO) + sgn * x * inv
                if y:
                    acc[key] = y
                else:
                    acc.pop(key, None)
    return tuple(sorted(acc.items()))


def _prow(cd: CartanData, i: int) -> tuple:
    return (0,) + tuple(cd.pairing(i, j) for j in cd.colors)


def act_xplus(i: int, k: int, v: VermaVector) -> VermaVector:
    cd, hw = v.cd, v.hw
    cd.check_color(i)
    prow = _prow(cd, i)
    acc = Element.zero()
    for (w, _), x in v.element.raw().items():
        for w2, y in _xplus_word(prow, cd.d[i], hw.lam[i - 1], i, k, w):
            acc = acc + Element.from_word(w2, x * y)
    return v._with(acc)


# ---------------------------------------------------------------------------
# h-action and evaluation of the component assembly


def act_h(i: int, l: int, v: VermaVector) -> VermaVector:
    """h_{i,l} (l != 0) as a derivation at gamma = 1: x^-_{j,n} -> -(1/l)[l a_ij]_i x^-_{j,n+l}."""
    cd = v.cd
    cd.check_color(i)
    if l == 0:
        raise ValueError("h_{i,0} is not a mode of the Heisenberg part")
    acc: dict = {}
    for (w, _), x in v.element.raw().items():
        for pos, (j, n) in enumerate(w):
            c = quantum_integer(l * cd.a(i, j), cd.d[i]) / Scalar.from_int(-l)
            if not c:
                continue
            w2 = w[:pos] + (Letter(j, n + l),) + w[pos + 1:]
            key = (w2, 0)
            y = acc.get(key, ZERO) + x * c
            if y:
                acc[key] = y
            else:
                acc.pop(key, None)
    return v._with(Element._raw(acc))


def _apply_commpoly(poly, v: VermaVector) -> VermaVector:
    """Evaluate a polynomial in commuting h-symbols (gamma = 1) on v."""
    out = v._with(Element.zero())
    for mono, coeff in poly.monomials():
        w = v
        for (tag, i, l), e in mono:
            for _ in range(e):
                w = act_h(i, l, w)
        out = out + w.scale(coeff.specialize(ONE))
    return out


def specialize_components(cd: CartanData, comps: CommutatorComponents, hw: HighestWeight) -> VermaVector:
    """Evaluate the x^+ commutator assembled from Omega components on v_lambda.

    sum_p K_i S+_{i,p} Q_p v + sum_r K_i^{-1} S-_{i,r} R_r v, divided by q_i - q_i^{-1},
    with the Heisenberg symbols acting as derivations and gamma = 1.
    """
    i = comps.color
    qi = cd.q_i(i)
    inv = (qi - qi.inverse()).inverse()
    total = VermaVector(cd, hw, Element.zero())
    for p, Q in comps.psi_terms:
        vec = _apply_commpoly(s_plus_minus(cd, i, p, "+"), VermaVector(cd, hw, Q))
        total = total + act_K(i, vec)
    for r, R in comps.phi_terms:
        vec = _apply_commpoly(s_plus_minus(cd, i, r, "-"), VermaVector(cd, hw, R))
        total = total + act_K(i, vec, -1)
    return total.scale(inv)


# ---------------------------------------------------------------------------
# singular vectors


@dataclass
class SingularReport:
    singular: bool
    exact: bool
    window: tuple[int, int]
    witnesses: list = field(default_factory=list)  # (color, k, image)
    checked: int = 0

    def summary(self) -> str:
        kind = "exact" if self.exact else f"windowed k in {self.window}"
        verdict = "singular" if self.singular else "not singular"
        return f"{verdict} ({kind})"


def _finite_support(v: VermaVector, i: int) -> set[int] | None:
    """Components k where x^+_{i,k} v can be nonzero, if provably finite.

    When every letter after a color-i letter is orthogonal to alpha_i the
    exchange series is trivial, so only p = k + n = 0 contributes.
    """
    cd = v.cd
    ks: set[int] = set()
    for w in v.element.words():
        for l, (j, n) in enumerate(w):
            if j != i:
                continue
            if any(cd.pairing(i, c) != 0 for c, _ in w[l + 1:]):
                return None
            ks.add(-n)
    return ks


def singular_vector_check(v: VermaVector, k_window: tuple[int, int]) -> SingularReport:
    lo, hi = k_window
    if lo > hi:
        raise ValueError("empty k window")
    supports = {i: _finite_support(v, i) for i in v.cd.colors}
    exact = all(s is not None for s in supports.values())
    rep = SingularReport(True, exact, (lo, hi))
    for i in v.cd.colors:
        ks = set(range(lo, hi + 1))
        if supports[i] is not None:
            ks |= supports[i]
        for k in sorted(ks):
            img = act_xplus(i, k, v)
            rep.checked += 1
            if not img.is_zero():
                rep.singular = False
                rep.witnesses.append((i, k, img))
    return rep


def reducibility_witness(cd: CartanData, hw: HighestWeight):
    """(color, x^-_{i,0} v_lambda, report) for the first i with lambda_i = 0, else None."""
    for i in cd.colors:
        if hw.lam[i - 1] == 0:
            vec = act_xminus(i, 0, highest_weight_vector(cd, hw))
            rep = singular_vector_check(vec, (-3, 3))
            if rep.singular:
                return i, vec, rep
    return None
