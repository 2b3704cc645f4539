"""Free associative model of the negative current algebra.

Words are tuples of letters ``(color, index)`` standing for x^-_{color,index}.
An :class:`Element` is a finite map Word -> Coefficient, stored flat as
``{(word, cexp): Scalar}`` where ``cexp`` is the exponent of c = gamma^(1/2).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from .cartan import CartanData
from .linalg import SparseEchelon
from .scalars import ONE, ZERO, Coefficient, Scalar

__all__ = [
    "Letter",
    "Word",
    "Weight",
    "Element",
    "WindowError",
    "MembershipResult",
    "multiply",
    "weight_of",
    "serre_element",
    "higher_serre_element",
    "straighten_single_color",
    "ideal_membership",
    "words_of_weight",
    "all_words",
]


class Letter(NamedTuple):
    color: int
    index: int

    def __str__(self):
        return f"x({self.color},{self.index})"


Word = tuple  # tuple[Letter, ...]


class Weight(NamedTuple):
    colors: tuple[int, ...]
    degree: int


class WindowError(ValueError):
    """Input does not fit inside the requested index window or length bound."""


def word_text(w: Sequence) -> str:
    if not w:
        return "1"
    return "*".join(f"x({i},{k})" for i, k in w)


def as_word(w: Iterable) -> tuple:
    return tuple(Letter(int(i), int(k)) for i, k in w)


class Element:
    """Finite linear combination of words with Coefficient weights.  Treated as immutable."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping | None = None):
        self._t: dict = {}
        if terms:
            for key, v in terms.items():
                if isinstance(v, Coefficient):
                    w = as_word(key)
                    for e, x in v.terms().items():
                        self._iadd(w, e, x)
                else:
                    w, e = key
                    self._iadd(as_word(w), e, Scalar.coerce(v))
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> "Element":
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    def _iadd(self, w, e, x):
        key = (w, e)
        y = self._t.get(key)
        y = x if y is None else y + x
        if y:
            self._t[key] = y
        else:
            self._t.pop(key, None)

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls) -> "Element":
        return cls._raw({})

    @classmethod
    def one(cls) -> "Element":
        return cls._raw({((), 0): ONE})

    @classmethod
    def from_word(cls, w: Iterable, coeff=ONE, cexp: int = 0) -> "Element":
        coeff = Scalar.coerce(coeff)
        if not coeff:
            return cls.zero()
        return cls._raw({(as_word(w), cexp): coeff})

    @classmethod
    def letter(cls, color: int, index: int) -> "Element":
        return cls._raw({((Letter(color, index),), 0): ONE})

    # access -------------------------------------------------------------------
    def flat_items(self) -> Iterator[tuple[tuple, int, Scalar]]:
        """(word, cexp, scalar) triples in a deterministic order."""
        for (w, e) in sorted(self._t):
            yield w, e, self._t[(w, e)]

    def raw(self) -> dict:
        return self._t

    def items(self) -> Iterator[tuple[tuple, Coefficient]]:
        grouped: dict = {}
        for (w, e), x in self._t.items():
            grouped.setdefault(w, {})[e] = x
        for w in sorted(grouped):
            yield w, Coefficient(grouped[w])

    def coefficient(self, w) -> Coefficient:
        w = as_word(w)
        return Coefficient({e: x for (v, e), x in self._t.items() if v == w})

    def words(self) -> set:
        return {w for (w, _) in self._t}

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    # arithmetic ----------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if len(other._t) > len(self._t):
            self, other = other, self
        t = dict(self._t)
        for k, x in other._t.items():
            y = t.get(k)
            y = x if y is None else y + x
            if y:
                t[k] = y
            else:
                t.pop(k, None)
        return Element._raw(t)

    def __neg__(self):
        return Element._raw({k: -x for k, x in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, x, cexp: int = 0) -> "Element":
        x = Scalar.coerce(x)
        if not x:
            return Element.zero()
        if x.is_one():
            if cexp == 0:
                return self
            return Element._raw({(w, e + cexp): y for (w, e), y in self._t.items()})
        return Element._raw({(w, e + cexp): y * x for (w, e), y in self._t.items()})

    def scale_coeff(self, c: Coefficient) -> "Element":
        out = Element.zero()
        for e, x in c.terms().items():
            out = out + self.scale(x, e)
        return out

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        if isinstance(other, Coefficient):
            return self.scale_coeff(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        if isinstance(other, Coefficient):
            return self.scale_coeff(other)
        return NotImplemented

    def left_letter(self, letter) -> "Element":
        """x_letter * self"""
        letter = Letter(*letter)
        return Element._raw({((letter,) + w, e): x for (w, e), x in self._t.items()})

    def map_words(self, f: Callable[[tuple], "Element"]) -> "Element":
        """Linear extension of a word-level map (f must not depend on the coefficient)."""
        acc: dict = {}
        for (w, e), x in self._t.items():
            for (w2, e2), y in f(w)._t.items():
                key = (w2, e + e2)
                z = acc.get(key)
                z = x * y if z is None else z + x * y
                if z:
                    acc[key] = z
                else:
                    acc.pop(key, None)
        return Element._raw(acc)

    def specialize_gamma(self, value=ONE) -> "Element":
        value = Scalar.coerce(value)
        out: dict = {}
        for (w, e), x in self._t.items():
            key = (w, 0)
            y = x * value**e if e else x
            z = out.get(key)
            z = y if z is None else z + y
            if z:
                out[key] = z
            else:
                out.pop(key, None)
        return Element._raw(out)

    def max_length(self) -> int:
        return max((len(w) for w, _ in self._t), default=0)

    def index_range(self) -> tuple[int, int] | None:
        ks = [k for (w, _) in self._t for _, k in w]
        return (min(ks), max(ks)) if ks else None

    # comparison / text --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for w, c in self.items():
            parts.append(f"[{c}]*{word_text(w)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Element({self})"

    def to_json(self) -> dict:
        """Terms sorted by word; ``gammaexp`` is the exponent of c = gamma^(1/2)."""
        return {
            "terms": [
                {"coeff": str(x), "gammaexp": e, "word": [[i, k] for i, k in w]}
                for w, e, x in self.flat_items()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Element":
        out = cls.zero()
        for t in data["terms"]:
            out = out + cls.from_word(t["word"], Scalar.parse(t["coeff"]), int(t.get("gammaexp", 0)))
        return out


def multiply(a: Element, b: Element) -> Element:
    acc: dict = {}
    for (w1, e1), x in a._t.items():
        for (w2, e2), y in b._t.items():
            key = (w1 + w2, e1 + e2)
            z = acc.get(key)
            z = x * y if z is None else z + x * y
            if z:
                acc[key] = z
            else:
                acc.pop(key, None)
    return Element._raw(acc)


def weight_of(w: Sequence, rank: int) -> Weight:
    n = [0] * rank
    deg = 0
    for i, k in w:
        n[i - 1] += 1
        deg += k
    return Weight(tuple(n), deg)


def serre_element(cd: CartanData, i: int, j: int, k: int, l: int) -> Element:
    """x_{i,k+1}x_{j,l} - Q^{-1} x_{j,l}x_{i,k+1} - Q^{-1} x_{i,k}x_{j,l+1} + x_{j,l+1}x_{i,k}, Q = q^{(a_i|a_j)}."""
    cd.check_color(i)
    cd.check_color(j)
    Qinv = Scalar.q_power(-cd.pairing(i, j))
    X = Letter
    return (
        Element.from_word((X(i, k + 1), X(j, l)))
        - Element.from_word((X(j, l), X(i, k + 1)), Qinv)
        - Element.from_word((X(i, k), X(j, l + 1)), Qinv)
        + Element.from_word((X(j, l + 1), X(i, k)))
    )


# ---------------------------------------------------------------------------
# single-color straightening


def _redexes(word: tuple) -> list[int]:
    return [p for p in range(len(word) - 1) if word[p][1] > word[p + 1][1]]


def _rewrite(word: tuple, p: int, Qinv: Scalar) -> list[tuple[tuple, Scalar]]:
    (i, a), (_, b) = word[p], word[p + 1]
    pre, post = word[:p], word[p + 2:]
    if a == b + 1:
        return [(pre + (Letter(i, b), Letter(i, a)) + post, Qinv)]
    return [
        (pre + (Letter(i, b), Letter(i, a)) + post, Qinv),
        (pre + (Letter(i, a - 1), Letter(i, b + 1)) + post, Qinv),
        (pre + (Letter(i, b + 1), Letter(i, a - 1)) + post, -ONE),
    ]


@lru_cache(maxsize=200_000)
def _normal_form_leftmost(word: tuple, exp: int) -> tuple:
    red = _redexes(word)
    if not red:
        return ((word, ONE),)
    Qinv = Scalar.q_power(-exp)
    acc: dict = {}
    for w2, c in _rewrite(word, red[0], Qinv):
        for w3, d in _normal_form_leftmost(w2, exp):
            z = acc.get(w3, ZERO) + c * d
            if z:
                acc[w3] = z
            else:
                acc.pop(w3, None)
    return tuple(sorted(acc.items()))


def _normal_form_chooser(word: tuple, exp: int, choose: Callable[[list[int]], int]) -> dict:
    Qinv = Scalar.q_power(-exp)
    out: dict = {}
    todo: dict = {word: ONE}
    while todo:
        w, c = todo.popitem()
        red = _redexes(w)
        if not red:
            z = out.get(w, ZERO) + c
            if z:
                out[w] = z
            else:
                out.pop(w, None)
            continue
        for w2, d in _rewrite(w, choose(red), Qinv):
            z = todo.get(w2, ZERO) + c * d
            if z:
                todo[w2] = z
            else:
                todo.pop(w2, None)
    return out


def straighten_single_color(
    cd: CartanData,
    e: Element,
    strategy: str | Callable[[list[int]], int] = "leftmost",
    seed: int | None = None,
) -> Element:
    """Rewrite every word into nondecreasing index order modulo the Serre relations.

    Only words with a single color are accepted.  ``strategy`` selects the
    redex to rewrite: ``"leftmost"`` (memoized), ``"rightmost"``, ``"random"``
    or a callable taking the list of redex positions.
    """
    colors = {i for w in e.words() for i, _ in w}
    if len(colors) > 1:
        raise ValueError("straightening is defined for single-color words only")
    if not colors:
        return e
    (i,) = colors
    exp = cd.pairing(i, i)
    if strategy == "leftmost":
        nf = lambda w: dict(_normal_form_leftmost(w, exp))
    else:
        if strategy == "rightmost":
            choose = lambda red: red[-1]
        elif strategy == "random":
            rng = random.Random(seed)
            choose = lambda red: rng.choice(red)
        elif callable(strategy):
            choose = strategy
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        nf = lambda w: _normal_form_chooser(w, exp, choose)
    acc: dict = {}
    for (w, ce), x in e.raw().items():
        for w2, y in nf(w).items():
            key = (w2, ce)
            z = acc.get(key, ZERO) + x * y
            if z:
                acc[key] = z
            else:
                acc.pop(key, None)
    return Element._raw(acc)


def higher_serre_element(cd: CartanData, i: int, j: int, ks: Sequence[int], l: int) -> Element:
    """Symmetrized q_i-binomial Serre element in 1 - a_ij letters of color i (diagnostic only)."""
    cd.check_color(i)
    cd.check_color(j)
    if i == j:
        raise ValueError("higher Serre relations need distinct colors")
    n = 1 - cd.a(i, j)
    if len(ks) != n:
        raise ValueError(f"need {n} indices for colors ({i},{j})")
    out = Element.zero()
    for perm in itertools.permutations(ks):
        for r in range(n + 1):
            c = _qbinomial(n, r, cd.d[i])
            if r % 2:
                c = -c
            w = tuple(Letter(i, k) for k in perm[:r]) + (Letter(j, l),) + tuple(
                Letter(i, k) for k in perm[r:]
            )
            out = out + Element.from_word(w, c)
    return out


def _qbinomial(n: int, r: int, d: int) -> Scalar:
    from .scalars import quantum_integer

    def fact(m):
        out = ONE
        for t in range(1, m + 1):
            out = out * quantum_integer(t, d)
        return out

    return fact(n) / (fact(r) * fact(n - r))


def is_straight(w: Sequence) -> bool:
    return all(w[p][1] <= w[p + 1][1] for p in range(len(w) - 1))


# ---------------------------------------------------------------------------
# ideal membership


@dataclass
class MembershipResult:
    member: bool
    window: tuple[int, int]
    maxlen: int
    spanning_size: int
    # entries: (coefficient, left word, (i, j, k, l), right word)
    certificate: list = field(default_factory=list)

    def reconstruct(self, cd: CartanData) -> Element:
        out = Element.zero()
        for coeff, u, (i, j, k, l), v in self.certificate:
            term = Element.from_word(u) * serre_element(cd, i, j, k, l) * Element.from_word(v)
            out = out + term.scale_coeff(coeff)
        return out


def all_words(colors: Iterable[int], window: tuple[int, int], length: int) -> Iterator[tuple]:
    letters = [Letter(i, k) for i in colors for k in range(window[0], window[1] + 1)]
    return itertools.product(letters, repeat=length)


def words_of_weight(
    color_counts: Sequence[int], degree: int, window: tuple[int, int]
) -> list[tuple]:
    """All words with the given color multiplicities and total index, indices inside window."""
    lo, hi = window
    colors = [i + 1 for i, n in enumerate(color_counts) for _ in range(n)]
    L = len(colors)
    out = set()
    # choose index sequences summing to degree, then all color arrangements
    for color_seq in set(itertools.permutations(colors)):
        for idx in _index_sequences(L, degree, lo, hi):
            out.add(tuple(Letter(c, k) for c, k in zip(color_seq, idx)))
    return sorted(out)


def _index_sequences(L: int, total: int, lo: int, hi: int) -> Iterator[tuple]:
    if L == 0:
        if total == 0:
            yield ()
        return
    for k in range(lo, hi + 1):
        rest = total - k
        if (L - 1) * lo <= rest <= (L - 1) * hi:
            for tail in _index_sequences(L - 1, rest, lo, hi):
                yield (k,) + tail


def ideal_membership(
    cd: CartanData, e: Element, window: tuple[int, int], maxlen: int
) -> MembershipResult:
    """Decide whether e lies in the span of u * R(i,j,k,l) * v inside the window.

    The spanning set uses all words u, v with indices in ``window`` and all
    relations whose four indices k, k+1, l, l+1 lie in ``window``; the total
    length is at most ``maxlen``.  A negative answer is only relative to this
    truncation.  The computation is split by c-exponent and done over Q(s).
    """
    lo, hi = window
    if lo > hi:
        raise WindowError("empty window")
    for w in e.words():
        if len(w) > maxlen:
            raise WindowError(f"word {word_text(w)} longer than maxlen={maxlen}")
        for _, k in w:
            if not lo <= k <= hi:
                raise WindowError(f"index {k} of {word_text(w)} outside window {window}")
    if e.is_zero():
        return MembershipResult(True, window, maxlen, 0, [])
    rank = cd.rank
    # group words by weight; relations are weight-homogeneous
    targets: dict = {}
    for (w, ce), x in e.raw().items():
        targets.setdefault(weight_of(w, rank), {}).setdefault(ce, {})[w] = x
    certificate = []
    total_span = 0
    member = True
    for wt, by_c in targets.items():
        gens = _relation_products(cd, wt, window)
        total_span += len(gens)
        ech = SparseEchelon(track=True)
        for tag, vec in gens.items():
            ech.add(vec, tag)
        for ce, vec in by_c.items():
            ok, combo = ech.contains(vec)
            if not ok:
                member = False
                continue
            for (u, rel, v), y in sorted(combo.items()):
                certificate.append((Coefficient.scalar(y, ce), u, rel, v))
    return MembershipResult(member, window, maxlen, total_span, certificate if member else [])


def _relation_products(cd: CartanData, wt: Weight, window: tuple[int, int]) -> dict:
    """{(u, (i,j,k,l), v): vector} for all spanning products of the given weight."""
    lo, hi = window
    counts, degree = wt
    L = sum(counts)
    out: dict = {}
    if L < 2:
        return out
    colors = [c for c in cd.colors]
    for i in colors:
        for j in colors:
            rest = list(counts)
            rest[i - 1] -= 1
            rest[j - 1] -= 1
            if min(rest) < 0:
                continue
            for k in range(lo, hi):
                for l in range(lo, hi):
                    rdeg = k + l + 1
                    rel = serre_element(cd, i, j, k, l)
                    # distribute remaining letters between u and v
                    for ucounts in _sub_counts(rest):
                        vcounts = tuple(r - u for r, u in zip(rest, ucounts))
                        for udeg in range(sum(ucounts) * lo, sum(ucounts) * hi + 1):
                            vdeg = degree - rdeg - udeg
                            if not sum(vcounts) * lo <= vdeg <= sum(vcounts) * hi:
                                continue
                            us = words_of_weight(ucounts, udeg, window)
                            vs = words_of_weight(vcounts, vdeg, window)
                            for u in us:
                                for v in vs:
                                    vec = {}
                                    for (w, _), x in rel.raw().items():
                                        vec[u + w + v] = x
                                    out[(u, (i, j, k, l), v)] = vec
    return out


def _sub_counts(counts: Sequence[int]) -> Iterator[tuple]:
    return itertools.product(*(range(n + 1) for n in counts))
