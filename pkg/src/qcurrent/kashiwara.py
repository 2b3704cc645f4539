"""The Kashiwara algebra of Omega_psi operators: formal expressions, relations,
the anti-automorphism alpha-bar, and operator-identity checks on words.

A :class:`FormalExpr` is a linear combination of words in the generators
``X(i, m)`` (left multiplication by x^-_{i,m}) and ``O(i, m)``
(Omega_psi_i(m)), with Coefficients in Q(s)[c, 1/c].  Words act on the free
model right-to-left, like operator products.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from .cartan import CartanData, g_coeff
from .freealg import Element, Letter, Weight, all_words, as_word, weight_of, word_text
from .linalg import SparseEchelon
from .omega import omega_phi, omega_psi
from .scalars import ONE, ZERO, Coefficient, Scalar

__all__ = [
    "Gen",
    "FormalExpr",
    "kq_relation",
    "alpha_bar",
    "act",
    "IdentityReport",
    "IDENTITIES",
    "verify_operator_identity",
    "ClosureReport",
    "alpha_relation_closure",
    "random_formal_expr",
]


class Gen(NamedTuple):
    kind: str  # "X" or "O"
    color: int
    index: int

    def __str__(self):
        return f"{self.kind}({self.color},{self.index})"


def X(i: int, m: int) -> Gen:
    return Gen("X", i, m)


def O(i: int, m: int) -> Gen:
    return Gen("O", i, m)


class FormalExpr:
    """Finite map {(generator word, cexp): Scalar}."""

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping | None = None):
        self._t: dict = {}
        for (w, ce), x in (terms or {}).items():
            self._iadd(tuple(Gen(*g) for g in w), ce, Scalar.coerce(x))

    def _iadd(self, w, ce, x):
        key = (w, ce)
        y = self._t.get(key)
        y = x if y is None else y + x
        if y:
            self._t[key] = y
        else:
            self._t.pop(key, None)

    @classmethod
    def word(cls, gens: Iterable, coeff=ONE, cexp: int = 0) -> "FormalExpr":
        return cls({(tuple(gens), cexp): coeff})

    @classmethod
    def scalar(cls, coeff, cexp: int = 0) -> "FormalExpr":
        return cls({((), cexp): coeff})

    def raw(self) -> dict:
        return self._t

    def __add__(self, other: "FormalExpr") -> "FormalExpr":
        out = FormalExpr()
        out._t = dict(self._t)
        for (w, ce), x in other._t.items():
            out._iadd(w, ce, x)
        return out

    def __neg__(self):
        out = FormalExpr()
        out._t = {k: -x for k, x in self._t.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FormalExpr):
            out = FormalExpr()
            for (w1, c1), x in self._t.items():
                for (w2, c2), y in other._t.items():
                    out._iadd(w1 + w2, c1 + c2, x * y)
            return out
        other = Scalar.coerce(other)
        out = FormalExpr()
        out._t = {k: x * other for k, x in self._t.items() if x * other}
        return out

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        return isinstance(other, FormalExpr) and self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def is_zero(self) -> bool:
        return not self._t

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for (w, ce), x in sorted(self._t.items()):
            coeff = Coefficient.scalar(x, ce)
            body = "*".join(str(g) for g in w) if w else "1"
            parts.append(f"[{coeff}]*{body}")
        return " + ".join(parts)

    __repr__ = __str__


def kq_relation(cd: CartanData, kind: str, i: int, j: int, m: int, n: int) -> FormalExpr:
    """Defining relation of the Kashiwara algebra, written as LHS - RHS.

    * ``mixed``: Q gamma O(j,m) X(i,n+1) - O(j,m+1) X(i,n)
      - (Q-1) gamma^(m+1) delta_ij delta_{m,-n-1}
      - gamma X(i,n+1) O(j,m) + Q X(i,n) O(j,m+1)
    * ``omega_omega``: with (k, l) = (m, n):
      Q O(i,k+1) O(j,l) - O(j,l) O(i,k+1) - O(i,k) O(j,l+1) + Q O(j,l+1) O(i,k)
    * ``x_x``: with (k, l) = (m, n), the quadratic current relation
      X(i,k+1) X(j,l) - Q^-1 X(j,l) X(i,k+1) - Q^-1 X(i,k) X(j,l+1) + X(j,l+1) X(i,k)

    Q = q^{(alpha_i|alpha_j)}.
    """
    cd.check_color(i)
    cd.check_color(j)
    Q = cd.q_pair(i, j)
    W = FormalExpr.word
    if kind == "mixed":
        out = (
            W([O(j, m), X(i, n + 1)], Q, 2)
            - W([O(j, m + 1), X(i, n)])
            - W([X(i, n + 1), O(j, m)], ONE, 2)
            + W([X(i, n), O(j, m + 1)], Q)
        )
        if i == j and m == -n - 1:
            out = out - FormalExpr.scalar(Q - 1, 2 * (m + 1))
        return out
    k, l = m, n
    if kind == "omega_omega":
        return (
            W([O(i, k + 1), O(j, l)], Q)
            - W([O(j, l), O(i, k + 1)])
            - W([O(i, k), O(j, l + 1)])
            + W([O(j, l + 1), O(i, k)], Q)
        )
    if kind == "x_x":
        Qi = Q.inverse()
        return (
            W([X(i, k + 1), X(j, l)])
            - W([X(j, l), X(i, k + 1)], Qi)
            - W([X(i, k), X(j, l + 1)], Qi)
            + W([X(j, l + 1), X(i, k)])
        )
    raise ValueError(f"unknown relation kind {kind!r}")


def alpha_bar(e: FormalExpr) -> FormalExpr:
    """Anti-automorphism X(i,m) <-> O(i,-m), fixing gamma and reversing products."""
    out = FormalExpr()
    for (w, ce), x in e.raw().items():
        img = tuple(Gen("O" if g.kind == "X" else "X", g.color, -g.index) for g in reversed(w))
        out._iadd(img, ce, x)
    return out


def act(cd: CartanData, expr: FormalExpr, e: Element) -> Element:
    """Apply a formal expression to an element of the free model."""
    total = Element.zero()
    for (w, ce), x in expr.raw().items():
        v = e
        for g in reversed(w):
            if g.kind == "X":
                v = v.left_letter(Letter(g.color, g.index))
            else:
                v = omega_psi(cd, g.color, g.index, v)
            if not v:
                break
        if v:
            total = total + v.scale(x, ce)
    return total


def random_formal_expr(cd: CartanData, rng: random.Random, terms: int = 4, maxlen: int = 4,
                       window: tuple[int, int] = (-3, 3)) -> FormalExpr:
    out = FormalExpr()
    for _ in range(terms):
        L = rng.randint(0, maxlen)
        w = tuple(
            Gen(rng.choice("XO"), rng.choice(list(cd.colors)), rng.randint(*window)) for _ in range(L)
        )
        coeff = Scalar.monomial(rng.randint(-4, 4), rng.choice([-3, -2, -1, 1, 2, 5]))
        out = out + FormalExpr.word(w, coeff, rng.randint(-3, 3))
    return out


# ---------------------------------------------------------------------------
# operator identities checked on words


def _psi(cd, i, k):
    return lambda v: omega_psi(cd, i, k, v)


def _phi(cd, i, k):
    return lambda v: omega_phi(cd, i, k, v)


def _x(i, n):
    return lambda v: v.left_letter(Letter(i, n))


def _side(terms, v):
    """Sum of coeff * (f1 o f2 o ... )(v) for (coeff Coefficient, [f1, f2, ...])."""
    out = Element.zero()
    for coeff, ops in terms:
        w = v
        for f in reversed(ops):
            w = f(w)
            if not w:
                break
        if w:
            out = out + w.scale_coeff(coeff)
    return out


def _C(x, cexp=0) -> Coefficient:
    return Coefficient.scalar(x, cexp)


def _mixed_psi(cd, p, v):
    i, j, m, n = p["i"], p["j"], p["m"], p["n"]
    Q = cd.q_pair(i, j)
    lhs = _side([(_C(Q, 2), [_psi(cd, j, m), _x(i, n + 1)]), (_C(-1), [_psi(cd, j, m + 1), _x(i, n)])], v)
    rhs = _side([(_C(1, 2), [_x(i, n + 1), _psi(cd, j, m)]), (_C(-Q), [_x(i, n), _psi(cd, j, m + 1)])], v)
    if i == j and m == -n - 1:
        rhs = rhs + v.scale(Q - 1, 2 * (m + 1))
    return lhs, rhs


def _mixed_phi(cd, p, v):
    i, j, m, n = p["i"], p["j"], p["m"], p["n"]
    Q = cd.q_pair(i, j)
    lhs = _side([(_C(Q), [_phi(cd, j, m), _x(i, n + 1)]), (_C(-1, 2), [_phi(cd, j, m + 1), _x(i, n)])], v)
    rhs = _side([(_C(1), [_x(i, n + 1), _phi(cd, j, m)]), (_C(-Q, 2), [_x(i, n), _phi(cd, j, m + 1)])], v)
    if i == j and m == -n - 1:
        rhs = rhs + v.scale(Q - 1, -2 * m)
    return lhs, rhs


def _same_kind(op):
    def check(cd, p, v):
        i, j, k, l = p["i"], p["j"], p["m"], p["n"]
        Q = cd.q_pair(i, j)
        lhs = _side([(_C(Q), [op(cd, i, k + 1), op(cd, j, l)]), (_C(-1), [op(cd, j, l), op(cd, i, k + 1)])], v)
        rhs = _side([(_C(1), [op(cd, i, k), op(cd, j, l + 1)]), (_C(-Q), [op(cd, j, l + 1), op(cd, i, k)])], v)
        return lhs, rhs

    return check


def _psi_phi(cd, p, v):
    i, j, k, m = p["i"], p["j"], p["m"], p["n"]
    lhs = omega_psi(cd, i, k, omega_phi(cd, j, m, v))
    rhs = Element.zero()
    # Omega_phi_j(r+m) o Omega_psi_i(k-r) vanishes once k-r drops below -max index of color i
    idx = [n for w in v.words() for c, n in w if c == i]
    if idx:
        for r in range(0, k + max(idx) + 1):
            g = g_coeff(cd, i, j, r)
            if g:
                rhs = rhs + omega_phi(cd, j, r + m, omega_psi(cd, i, k - r, v)).scale(g, 4 * r)
    return lhs, rhs


def _kq(kind):
    def check(cd, p, v):
        rel = kq_relation(cd, kind, p["i"], p["j"], p["m"], p["n"])
        return act(cd, rel, v), Element.zero()

    return check


IDENTITIES: dict[str, Callable] = {
    "mixed_psi": _mixed_psi,
    "mixed_phi": _mixed_phi,
    "psi_psi": _same_kind(_psi),
    "phi_phi": _same_kind(_phi),
    "psi_phi": _psi_phi,
    "kq_mixed": _kq("mixed"),
    "kq_omega_omega": _kq("omega_omega"),
}


@dataclass
class IdentityReport:
    identity: str
    params: dict
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_operator_identity(cd: CartanData, identity: str, params: Mapping, test_set: Iterable) -> IdentityReport:
    """Check LHS(v) == RHS(v) for every word v in ``test_set``.

    ``params`` holds colors ``i, j`` and integers ``m, n`` (for the psi_psi,
    phi_phi and psi_phi identities these play the roles of the two components).
    """
    if identity not in IDENTITIES:
        raise ValueError(f"unknown identity {identity!r}; choose from {sorted(IDENTITIES)}")
    fn = IDENTITIES[identity]
    rep = IdentityReport(identity, dict(params))
    for w in test_set:
        v = w if isinstance(w, Element) else Element.from_word(w)
        lhs, rhs = fn(cd, params, v)
        rep.checked += 1
        if lhs != rhs:
            rep.failures.append((str(v), str(lhs - rhs)))
    return rep


# ---------------------------------------------------------------------------
# alpha-bar maps relations into the relation span


@dataclass
class ClosureReport:
    window: tuple[int, int]
    pad: int
    checked: int = 0
    spanning_size: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _vector(e: FormalExpr) -> dict:
    return dict(e.raw())


def alpha_relation_closure(cd: CartanData, window: tuple[int, int], pad: int = 1) -> ClosureReport:
    """Show alpha_bar(relation) lies in the span of the relations, for relations indexed in window.

    Each relation is parametrized by (kind, i, j, m, n) with m, n in the window;
    the spanning set uses parameters in the window enlarged by ``pad``.
    """
    lo, hi = window
    rep = ClosureReport(window, pad)
    kinds = ("mixed", "omega_omega", "x_x")
    colors = list(cd.colors)
    ech = SparseEchelon(track=False)
    for kind in kinds:
        for i, j in itertools.product(colors, colors):
            for m in range(lo - pad, hi + pad + 1):
                for n in range(lo - pad, hi + pad + 1):
                    if ech.add(_vector(kq_relation(cd, kind, i, j, m, n))):
                        rep.spanning_size += 1
    for kind in kinds:
        for i, j in itertools.product(colors, colors):
            for m in range(lo, hi + 1):
                for n in range(lo, hi + 1):
                    img = alpha_bar(kq_relation(cd, kind, i, j, m, n))
                    rep.checked += 1
                    ok, _ = ech.contains(_vector(img))
                    if not ok:
                        rep.failures.append((kind, i, j, m, n))
    return rep
