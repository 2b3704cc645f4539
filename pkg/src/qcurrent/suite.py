"""Acceptance-suite driver shared by the test-suite and the ``suite`` CLI command.

Each ``criterion_N`` function returns a :class:`CriterionResult`; parameters
default to the acceptance grid and can be narrowed through :class:`SuiteConfig`.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from .bform import gram, pair, rank
from .cartan import CartanData, g_coeff, g_series, load_cartan
from .freealg import (
    Element,
    Letter,
    all_words,
    ideal_membership,
    is_straight,
    serre_element,
    straighten_single_color,
    weight_of,
    words_of_weight,
)
from .kashiwara import alpha_bar, alpha_relation_closure, random_formal_expr, verify_operator_identity
from .omega import OmegaOp, omega_oracle, omega_phi, omega_psi, xplus_commutator_components
from .scalars import ONE, ZERO, Coefficient, Scalar, q
from .schur import CommPoly, exp_series, h_var, s_plus_minus, schur_poly, schur_poly_recursive
from .verma import (
    HighestWeight,
    VermaVector,
    act_xminus,
    act_xplus,
    highest_weight_vector,
    reducibility_witness,
    singular_vector_check,
    specialize_components,
)

__all__ = ["SuiteConfig", "CriterionResult", "CRITERIA", "run_suite", "run_criterion", "parse_type"]

# Gram ranks on sorted A1 monomials of length <= 2, indices in [-1, 1], keyed by
# delta-degree.  Produced once by sparse field elimination and Bareiss
# elimination (both agree) and frozen here.
FROZEN_A1_GRAM_RANKS = {-2: 1, -1: 2, 0: 4, 1: 2, 2: 1}


def parse_type(text: str) -> CartanData:
    text = text.strip().upper()
    return load_cartan(text[0], int(text[1:]))


@dataclass
class SuiteConfig:
    types: list[str] | None = None  # overrides each criterion's default type list
    window: tuple[int, int] | None = None  # overrides the word index window
    maxlen: int | None = None  # overrides the word length bound
    seed: int = 20240101

    def pick_types(self, default: list[str]) -> list[CartanData]:
        return [parse_type(t) for t in (self.types or default)]

    def pick_window(self, default: tuple[int, int]) -> tuple[int, int]:
        return self.window or default

    def pick_maxlen(self, default: int) -> int:
        return default if self.maxlen is None else self.maxlen


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool = True
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    def fail(self, what) -> None:
        self.passed = False
        if len(self.failures) < 20:
            self.failures.append(str(what))

    def check(self, cond: bool, what) -> None:
        self.checked += 1
        if not cond:
            self.fail(what)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.checked} checks, {self.seconds:.1f}s)"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["seconds"] = round(self.seconds, 3)
        return d


def _words(cd: CartanData, window, maxlen):
    return [w for L in range(maxlen + 1) for w in all_words(cd.colors, window, L)]


# ---------------------------------------------------------------------------


def criterion_1(cfg: SuiteConfig) -> CriterionResult:
    res = CriterionResult(1, "Omega recursion equals direct expansion")
    window, maxlen = cfg.pick_window((-2, 2)), cfg.pick_maxlen(3)
    for cd in cfg.pick_types(["A1", "A2", "C2"]):
        for w in _words(cd, window, maxlen):
            e = Element.from_word(w)
            for i in cd.colors:
                for k in range(-6, 7):
                    for kind, fn in (("psi", omega_psi), ("phi", omega_phi)):
                        got = fn(cd, i, k, e)
                        res.check(got == omega_oracle(cd, OmegaOp(kind, i, k), w), (cd.name(), kind, i, k, w))
    return res


IDENTITY_NAMES = ["mixed_psi", "mixed_phi", "psi_psi", "phi_phi", "psi_phi", "kq_mixed", "kq_omega_omega"]


def criterion_2(cfg: SuiteConfig) -> CriterionResult:
    res = CriterionResult(2, "Omega operator identities on words")
    window, maxlen = cfg.pick_window((-2, 2)), cfg.pick_maxlen(2)
    for cd in cfg.pick_types(["A1", "A2"]):
        words = _words(cd, window, maxlen)
        for name in IDENTITY_NAMES:
            for i, j in itertools.product(cd.colors, cd.colors):
                for m, n in itertools.product(range(-3, 4), repeat=2):
                    rep = verify_operator_identity(cd, name, dict(i=i, j=j, m=m, n=n), words)
                    res.checked += rep.checked
                    for f in rep.failures:
                        res.fail((cd.name(), name, i, j, m, n, f[0]))
    return res


def criterion_3(cfg: SuiteConfig) -> CriterionResult:
    res = CriterionResult(3, "bilinear form: normalization, symmetry, adjunction, radical")
    window, maxlen = cfg.pick_window((-2, 2)), cfg.pick_maxlen(2)
    for cd in cfg.pick_types(["A1", "A2"]):
        one = Element.one()
        res.check(pair(cd, one, one) == Coefficient.scalar(ONE), (cd.name(), "(1,1)"))
        words = _words(cd, window, maxlen)
        elems = {w: Element.from_word(w) for w in words}
        for a, b in itertools.product(words, words):
            pab = pair(cd, elems[a], elems[b])
            if weight_of(a, cd.rank) == weight_of(b, cd.rank):
                res.check(pab == pair(cd, elems[b], elems[a]), (cd.name(), "symmetry", a, b))
            else:
                res.check(pab.is_zero(), (cd.name(), "orthogonality", a, b))
        # adjunction: (Omega_psi_i(m) a, b) = (a, x_{i,-m} b)
        short = [w for w in words if len(w) <= 1]
        for a in words:
            for b in short:
                for i in cd.colors:
                    for m in range(-3, 4):
                        lhs = pair(cd, omega_psi(cd, i, m, elems[a]), elems[b])
                        rhs = pair(cd, elems[a], elems[b].left_letter(Letter(i, -m)))
                        res.check(lhs == rhs, (cd.name(), "adjunction", i, m, a, b))
        # radical: pair(u R v, w) = 0
        uv_window = (-1, 1)
        uv = [()] + [w for w in all_words(cd.colors, uv_window, 1)]
        kl = range(-1, 1) if cd.rank > 1 else range(-1, 2)
        for i, j in itertools.product(cd.colors, cd.colors):
            for k, l in itertools.product(kl, kl):
                rel = serre_element(cd, i, j, k, l)
                for u, v in itertools.product(uv, uv):
                    e = Element.from_word(u) * rel * Element.from_word(v)
                    some = next(iter(e.words()))
                    wt = weight_of(some, cd.rank)
                    for w in words_of_weight(wt.colors, wt.degree, (-3, 3)):
                        res.check(pair(cd, e, Element.from_word(w)).is_zero(), (cd.name(), "radical", u, (i, j, k, l), v, w))
    return res


def criterion_4(cfg: SuiteConfig) -> CriterionResult:
    res = CriterionResult(4, "single-color straightening")
    cd = load_cartan("A", 1)
    Q2 = q**-2
    x = lambda *ks: Element.from_word([(1, k) for k in ks])
    res.check(straighten_single_color(cd, x(1, 0)) == x(0, 1).scale(Q2), "x1 x0")
    res.check(
        straighten_single_color(cd, x(2, 0)) == x(0, 2).scale(Q2) + x(1, 1).scale(Q2 - 1), "x2 x0"
    )
    window, maxlen = cfg.pick_window((-2, 2)), cfg.pick_maxlen(3)
    pad = (window[0] - 1, window[1] + 1)
    words = _words(cd, window, maxlen)
    rng = random.Random(cfg.seed)
    for w in words:
        e = Element.from_word(w)
        s = straighten_single_color(cd, e)
        res.check(all(is_straight(v) for v in s.words()), ("not straight", w))
        res.check(straighten_single_color(cd, s) == s, ("idempotence", w))
        res.check(straighten_single_color(cd, e, "rightmost") == s, ("rightmost order", w))
        for _ in range(2):
            res.check(
                straighten_single_color(cd, e, "random", seed=rng.randrange(1 << 30)) == s, ("random order", w)
            )
        d = s - e
        if not d:
            continue
        mem = ideal_membership(cd, d, pad, len(w))
        res.check(mem.member and mem.reconstruct(cd) == d, ("difference not in ideal", w))
        wt = weight_of(w, cd.rank)
        for u in words_of_weight(wt.colors, wt.degree, pad):
            res.check(pair(cd, d, Element.from_word(u)).is_zero(), ("form sees difference", w, u))
        for k in range(-4, 5):
            for fn in (omega_psi, omega_phi):
                od = fn(cd, 1, k, d)
                if not od:
                    res.checked += 1
                    continue
                lo, hi = od.index_range()
                mem = ideal_membership(cd, od, (min(lo, pad[0]) - 1, max(hi, pad[1]) + 1), od.max_length())
                res.check(mem.member, ("Omega of difference not in ideal", fn.__name__, k, w))
    return res


def _gram_blocks_a1(cd: CartanData) -> dict[int, list]:
    blocks: dict[int, list] = {}
    for L in range(0, 3):
        for ks in itertools.combinations_with_replacement(range(-1, 2), L):
            blocks.setdefault(sum(ks), []).append(tuple(Letter(1, k) for k in ks))
    return blocks


def criterion_5(cfg: SuiteConfig) -> CriterionResult:
    res = CriterionResult(5, "reduced Verma module checks")
    cases = [("A1", (1,)), ("A1", (2,)), ("A2", (1, 1)), ("A2", (1, -1))]
    for tname, lam in cases:
        cd = parse_type(tname)
        hw = HighestWeight(lam)
        v0 = highest_weight_vector(cd, hw)
        for i, j in itertools.product(cd.colors, cd.colors):
            qi = cd.q_i(i)
            expected = (Scalar.q_power(lam[i - 1]) - Scalar.q_power(-lam[i - 1])) / (qi - qi.inverse())
            for k, l in itertools.product(range(-2, 3), repeat=2):
                lhs = act_xplus(i, k, act_xminus(j, l, v0)) - act_xminus(j, l, act_xplus(i, k, v0))
                want = v0.scale(expected) if (i == j and k + l == 0) else v0.scale(ZERO)
                res.check(lhs == want, (tname, lam, "drinfeld", i, j, k, l))
        # no windowed singular vector among single letters when all lambda_i != 0
        for i in cd.colors:
            for l in range(-2, 3):
                rep = singular_vector_check(act_xminus(i, l, v0), (-3, 3))
                res.check(not rep.singular, (tname, lam, "unexpected singular", i, l))
    for tname, lam in [("A1", (0,)), ("A2", (0, 5)), ("A2", (3, 0)), ("A2", (0, 0)), ("A2", (0, -1))]:
        cd = parse_type(tname)
        wit = reducibility_witness(cd, HighestWeight(lam))
        ok = wit is not None and wit[2].singular and wit[2].exact and lam[wit[0] - 1] == 0
        res.check(ok, (tname, lam, "reducibility witness"))
    for tname, lam in [("A1", (1,)), ("A2", (1, 1)), ("A2", (2, -3))]:
        res.check(reducibility_witness(parse_type(tname), HighestWeight(lam)) is None, (tname, lam, "spurious witness"))
    # simplicity evidence: full-rank Gram blocks at gamma = 1 for lambda = (1)
    cd = load_cartan("A", 1)
    for deg, ws in sorted(_gram_blocks_a1(cd).items()):
        if deg not in FROZEN_A1_GRAM_RANKS:
            continue
        G = gram(cd, ws)
        r1 = rank(G, gamma_value=ONE)
        r2 = rank(G, gamma_value=ONE, method="field")
        res.check(r1 == r2 == FROZEN_A1_GRAM_RANKS[deg] == len(ws), ("gram rank", deg, r1, r2, len(ws)))
    return res


def criterion_6(cfg: SuiteConfig) -> CriterionResult:
    res = CriterionResult(6, "alpha-bar involution and relation closure")
    rng = random.Random(cfg.seed)
    types = cfg.pick_types(["A1", "A2"])
    for t in range(200):
        cd = types[t % len(types)]
        e = random_formal_expr(cd, rng)
        res.check(alpha_bar(alpha_bar(e)) == e, ("involution", str(e)))
    window = cfg.pick_window((-2, 2))
    for cd in types:
        rep = alpha_relation_closure(cd, window)
        res.checked += rep.checked
        for f in rep.failures:
            res.fail((cd.name(), f))
        res.notes.append(f"{cd.name()}: {rep.checked} relation images, spanning rank {rep.spanning_size}")
    return res


def criterion_7(cfg: SuiteConfig) -> CriterionResult:
    res = CriterionResult(7, "Schur polynomials and x+ commutator assembly")
    for k in range(0, 7):
        res.check(schur_poly(k) == schur_poly_recursive(k), ("schur recursion", k))
    coeffs = {l: CommPoly.var(l) for l in range(1, 7)}
    series = exp_series(coeffs, 6)
    for k in range(0, 7):
        res.check(series[k] == schur_poly(k), ("schur exp series", k))
    # S+ generating function against an exp-series of the current symbols
    for tname in ["A1", "C2"]:
        cd = parse_type(tname)
        for i in cd.colors:
            qi = cd.q_i(i)
            diff = qi - qi.inverse()
            for sign in "+-":
                gen = {}
                for l in range(1, 5):
                    if sign == "+":
                        gen[l] = CommPoly({((h_var(i, l), 1),): Coefficient.scalar(diff, -l)})
                    else:
                        gen[l] = CommPoly({((h_var(i, -l), 1),): Coefficient.scalar(-diff, l)})
                ser = exp_series(gen, 4)
                for k in range(0, 5):
                    res.check(ser[k] == s_plus_minus(cd, i, k, sign), (tname, i, sign, k, "generating identity"))
    rng = random.Random(cfg.seed)
    samples = 0
    for tname, lam in [("A1", (1,)), ("A1", (-2,)), ("A2", (1, 0)), ("C2", (2, -1))]:
        cd = parse_type(tname)
        hw = HighestWeight(lam)
        for _ in range(20):
            L = rng.randint(1, 3)
            w = tuple(Letter(rng.choice(list(cd.colors)), rng.randint(-2, 2)) for _ in range(L))
            e = Element.from_word(w)
            if rng.random() < 0.3:
                w2 = tuple(Letter(rng.choice(list(cd.colors)), rng.randint(-2, 2)) for _ in range(L))
                e = e + Element.from_word(w2, Scalar.monomial(rng.randint(-2, 2), rng.choice([-2, 1, 3])))
            i = rng.choice(list(cd.colors))
            k = rng.randint(-3, 3)
            comps = xplus_commutator_components(cd, i, k, e)
            got = specialize_components(cd, comps, hw)
            want = act_xplus(i, k, VermaVector(cd, hw, e))
            samples += 1
            res.check(got == want, (tname, lam, i, k, str(e)))
    res.notes.append(f"{samples} sampled (color, component, element) triples")
    return res


def criterion_8(cfg: SuiteConfig) -> CriterionResult:
    res = CriterionResult(8, "g-series product identity")
    for cd in cfg.pick_types(["A1", "A2", "C2"]):
        for i, j in itertools.product(cd.colors, cd.colors):
            for inv in (False, True):
                ser = g_series(cd, i, j, 10, inv)
                res.check(ser.check_product_identity(cd), (cd.name(), i, j, inv))
                for r in range(0, 11):
                    res.check(g_coeff(cd, i, j, r, inv) == ser.coeffs[r], (cd.name(), i, j, r, inv, "g_coeff"))
    cd = load_cartan("A", 3)
    for inv in (False, True):
        ser = g_series(cd, 1, 3, 10, inv)
        res.check(ser.coeffs[0] == ONE and all(not c for c in ser.coeffs[1:]), ("orthogonal", inv))
    return res


CRITERIA: dict[int, Callable[[SuiteConfig], CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
}


def run_criterion(n: int, cfg: SuiteConfig | None = None) -> CriterionResult:
    cfg = cfg or SuiteConfig()
    t = time.perf_counter()
    res = CRITERIA[n](cfg)
    res.seconds = time.perf_counter() - t
    return res


def run_suite(cfg: SuiteConfig | None = None, only: list[int] | None = None) -> list[CriterionResult]:
    cfg = cfg or SuiteConfig()
    return [run_criterion(n, cfg) for n in (only or sorted(CRITERIA))]
