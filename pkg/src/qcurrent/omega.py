"""The operators Omega_psi_i(k) and Omega_phi_i(k) on the negative current algebra.

Two independent evaluations are provided:

* :func:`omega_psi` / :func:`omega_phi` peel off the leftmost letter and
  recurse on the remaining word (memoized per word);
* :func:`omega_oracle` expands the generating-function definition directly as
  a sum over the removed letter and over compositions of the index shift.

Exponents of gamma are stored as exponents of c = gamma^(1/2), so gamma^k is
``cexp = 2k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .cartan import CartanData, _g_by_exp
from .freealg import Element, Letter, as_word
from .scalars import ONE, ZERO, Scalar

__all__ = [
    "OmegaOp",
    "omega_psi",
    "omega_phi",
    "omega_apply",
    "omega_oracle",
    "support_bounds",
    "CommutatorComponents",
    "xplus_commutator_components",
]

PSI, PHI = "psi", "phi"


class OmegaOp(NamedTuple):
    kind: str  # "psi" or "phi"
    color: int
    component: int

    def __str__(self):
        return f"Omega_{self.kind}{self.color}({self.component})"


def _pairing_row(cd: CartanData, i: int) -> tuple:
    """(alpha_j|alpha_i) for j = 0..N, index 0 unused."""
    return (0,) + tuple(cd.pairing(j, i) for j in cd.colors)


def _acc(acc: dict, key, x: Scalar) -> None:
    y = acc.get(key)
    y = x if y is None else y + x
    if y:
        acc[key] = y
    else:
        acc.pop(key, None)


# ---------------------------------------------------------------------------
# recursive evaluation


@lru_cache(maxsize=500_000)
def _psi_word(prow: tuple, i: int, k: int, word: tuple) -> dict:
    if not word:
        return {}
    (j, m), rest = word[0], word[1:]
    out: dict = {}
    if j == i and k == -m:
        out[(rest, 2 * k)] = ONE
    idx = [n for c, n in rest if c == i]
    if idx:
        top = k + max(idx)  # Omega_psi(k')(rest) = 0 for k' < -max(idx)
        e = -prow[j]
        rmax = top if e else min(top, 0)
        for r in range(0, rmax + 1):
            g = _g_by_exp(e, r)
            if not g:
                continue
            letter = Letter(j, m + r)
            for (w, ce), x in _psi_word(prow, i, k - r, rest).items():
                _acc(out, ((letter,) + w, ce + 2 * r), g * x)
    return out


@lru_cache(maxsize=500_000)
def _phi_word(prow: tuple, i: int, k: int, word: tuple) -> dict:
    if not word:
        return {}
    (j, m), rest = word[0], word[1:]
    out: dict = {}
    if j == i and k == -m:
        out[(rest, -2 * k)] = ONE
    idx = [n for c, n in rest if c == i]
    if idx:
        top = -min(idx) - k  # Omega_phi(k')(rest) = 0 for k' > -min(idx)
        e = prow[j]
        rmax = top if e else min(top, 0)
        for r in range(0, rmax + 1):
            g = _g_by_exp(e, r)
            if not g:
                continue
            letter = Letter(j, m - r)
            for (w, ce), x in _phi_word(prow, i, k + r, rest).items():
                _acc(out, ((letter,) + w, ce + 2 * r), g * x)
    return out


def _apply(fn, cd: CartanData, i: int, k: int, e: Element) -> Element:
    cd.check_color(i)
    prow = _pairing_row(cd, i)
    acc: dict = {}
    for (w, ce), x in e.raw().items():
        for (w2, ce2), y in fn(prow, i, k, w).items():
            _acc(acc, (w2, ce + ce2), x * y)
    return Element._raw(acc)


def omega_psi(cd: CartanData, i: int, k: int, e: Element) -> Element:
    return _apply(_psi_word, cd, i, k, e)


def omega_phi(cd: CartanData, i: int, k: int, e: Element) -> Element:
    return _apply(_phi_word, cd, i, k, e)


def omega_apply(cd: CartanData, op: OmegaOp, e: Element) -> Element:
    if op.kind == PSI:
        return omega_psi(cd, op.color, op.component, e)
    if op.kind == PHI:
        return omega_phi(cd, op.color, op.component, e)
    raise ValueError(f"unknown Omega kind {op.kind!r}")


def clear_caches() -> None:
    _psi_word.cache_clear()
    _phi_word.cache_clear()


# ---------------------------------------------------------------------------
# direct expansion


def _compositions(total: int, parts: int):
    """Tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if total < 0:
        return
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cut:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 1 - prev - 1)
        yield tuple(out)


def omega_oracle(cd: CartanData, op: OmegaOp, w) -> Element:
    """Non-recursive expansion over the removed letter and the shift compositions."""
    cd.check_color(op.color)
    w = as_word(w)
    i, k = op.color, op.component
    psi = op.kind == PSI
    if op.kind not in (PSI, PHI):
        raise ValueError(f"unknown Omega kind {op.kind!r}")
    acc: dict = {}
    cexp = 2 * k if psi else -2 * k
    for l, (jl, nl) in enumerate(w):
        if jl != i:
            continue
        total = nl + k if psi else -(nl + k)
        prefix, suffix = w[:l], w[l + 1:]
        for rs in _compositions(total, l):
            coeff = ONE
            shifted = []
            for (jm, nm), r in zip(prefix, rs):
                pr = cd.pairing(i, jm)
                # psi side uses the q^{-1} series, phi side the plain one
                coeff = coeff * _g_by_exp(-pr if psi else pr, r)
                if not coeff:
                    break
                shifted.append(Letter(jm, nm + r if psi else nm - r))
            if not coeff:
                continue
            _acc(acc, (tuple(shifted) + suffix, cexp), coeff)
    return Element._raw(acc)


def support_bounds(cd: CartanData, kind: str, i: int, e: Element) -> tuple[int, int] | None:
    """One-sided vanishing bound (lo, None) for psi or (None, hi) for phi.

    Omega_psi_i(k)(e) = 0 for k < lo and Omega_phi_i(k)(e) = 0 for k > hi.
    Returns None when e has no color-i letter (the operator is then zero).
    """
    idx = [n for w in e.words() for c, n in w if c == i]
    if not idx:
        return None
    if kind == PSI:
        # k >= -max index; upper end from the delta term and shifts: Sum r = n_l + k >= 0
        return (-max(idx), None)
    return (None, -min(idx))


# ---------------------------------------------------------------------------
# x+ commutator components


@dataclass
class CommutatorComponents:
    """Pieces of [x+_{i,k}, e] grouped by the Cartan-current mode that multiplies them.

    ``psi_terms`` holds (p, Q_p) with Q_p = Omega_psi_i(k-p)(e), multiplied by
    gamma^(p) K_i S+_{i,p}; ``phi_terms`` holds (r, R_r) with
    R_r = -Omega_phi_i(k+r)(e), multiplied by K_i^{-1} S-_{i,r}.  The whole sum
    carries the prefactor 1/(q_i - q_i^{-1}).
    """

    color: int
    component: int
    psi_terms: list = field(default_factory=list)
    phi_terms: list = field(default_factory=list)
    prefactor: str = ""
    psi_factor: str = ""
    phi_factor: str = ""


def xplus_commutator_components(cd: CartanData, i: int, k: int, e: Element) -> CommutatorComponents:
    cd.check_color(i)
    out = CommutatorComponents(
        i,
        k,
        prefactor=f"1/(q_{i} - q_{i}^-1)",
        psi_factor=f"gamma^p * K_{i} * S+_{{{i},p}}",
        phi_factor=f"K_{i}^-1 * S-_{{{i},r}}",
    )
    idx = [n for w in e.words() for c, n in w if c == i]
    if not idx:
        return out
    # Omega_psi(k-p) vanishes once k-p < -max(idx); Omega_phi(k+r) once k+r > -min(idx)
    for p in range(0, k + max(idx) + 1):
        Q = omega_psi(cd, i, k - p, e)
        if Q:
            out.psi_terms.append((p, Q))
    for r in range(0, -min(idx) - k + 1):
        R = -omega_phi(cd, i, k + r, e)
        if R:
            out.phi_terms.append((r, R))
    return out
