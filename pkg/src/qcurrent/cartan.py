"""Untwisted affine Cartan data and the g_ij Taylor coefficients.

Finite Cartan matrices use Bourbaki numbering and the convention
``a_ij = <alpha_i^vee, alpha_j>``.  The affine node 0 is added from the
highest-root marks.  Everything is validated at load time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .scalars import ONE, ZERO, Scalar

__all__ = ["CartanData", "CartanError", "GSeries", "load_cartan", "g_coeff", "g_series"]


class CartanError(ValueError):
    pass


def _finite_matrix(label: str, n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2

    def link(i, j, aij=-1, aji=-1):
        # 1-based node numbers
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji

    if label in "ABCD":
        for i in range(1, n):
            link(i, i + 1)
    if label == "B":
        link(n - 1, n, -1, -2)
    elif label == "C":
        link(n - 1, n, -2, -1)
    elif label == "D":
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        link(n - 2, n)
    elif label == "E":
        link(1, 3)
        link(3, 4)
        link(4, 5)
        link(2, 4)
        for i in range(5, n):
            link(i, i + 1)
    elif label == "F":
        link(1, 2)
        link(2, 3, -1, -2)
        link(3, 4)
    elif label == "G":
        link(1, 2, -3, -1)
    return a


def _marks(label: str, n: int) -> list[int]:
    """Coefficients of the highest root in the simple roots."""
    if label == "A":
        return [1] * n
    if label == "B":
        return [1] + [2] * (n - 1)
    if label == "C":
        return [2] * (n - 1) + [1]
    if label == "D":
        return [1] + [2] * (n - 3) + [1, 1]
    return {
        ("E", 6): [1, 2, 2, 3, 2, 1],
        ("E", 7): [2, 2, 3, 4, 3, 2, 1],
        ("E", 8): [2, 3, 4, 6, 5, 4, 3, 2],
        ("F", 4): [2, 3, 4, 2],
        ("G", 2): [3, 2],
    }[(label, n)]


def _check_rank(label: str, n: int) -> None:
    rules = {
        "A": (lambda n: n >= 1, "type A needs rank >= 1"),
        "B": (lambda n: n >= 3, "type B needs rank >= 3"),
        "C": (lambda n: n >= 2, "type C needs rank >= 2"),
        "D": (lambda n: n >= 4, "type D needs rank >= 4"),
        "E": (lambda n: n in (6, 7, 8), "type E needs rank 6, 7 or 8"),
        "F": (lambda n: n == 4, "type F needs rank 4"),
        "G": (lambda n: n == 2, "type G needs rank 2"),
    }
    if label not in rules:
        raise CartanError(f"unknown type label {label!r}; expected one of A-G")
    ok, msg = rules[label]
    if not isinstance(n, int) or not ok(n):
        raise CartanError(f"invalid rank {n!r}: {msg}")


def _symmetrizer(a: list[list[int]]) -> list[int]:
    """Smallest positive integers d with d_i a_ij = d_j a_ji (connected diagram)."""
    size = len(a)
    d: list[Fraction | None] = [None] * size
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(size):
            if j != i and a[i][j] != 0 and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                stack.append(j)
    if any(x is None for x in d):
        raise CartanError("Dynkin diagram is not connected")
    den = lcm(*(x.denominator for x in d))
    ints = [int(x * den) for x in d]
    g = gcd(*ints)
    return [x // g for x in ints]


@dataclass(frozen=True)
class CartanData:
    label: str
    rank: int
    matrix: tuple[tuple[int, ...], ...]  # (N+1) x (N+1), node 0 affine
    d: tuple[int, ...]  # length N+1
    marks: tuple[int, ...] = field(default=(), compare=False)

    @property
    def colors(self) -> range:
        return range(1, self.rank + 1)

    def check_color(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.rank:
            raise CartanError(f"color {i!r} outside 1..{self.rank}")

    def a(self, i: int, j: int) -> int:
        return self.matrix[i][j]

    def pairing(self, i: int, j: int) -> int:
        """(alpha_i|alpha_j) = d_i a_ij."""
        return self.d[i] * self.matrix[i][j]

    def pairing_table(self) -> list[list[int]]:
        return [[self.pairing(i, j) for j in self.colors] for i in self.colors]

    def q_pair(self, i: int, j: int) -> Scalar:
        return Scalar.q_power(self.pairing(i, j))

    def q_i(self, i: int) -> Scalar:
        return Scalar.q_power(self.d[i])

    def name(self) -> str:
        return f"{self.label}{self.rank}"

    def __str__(self):
        return self.name()


def _validate(cd: CartanData) -> None:
    a, d, n = cd.matrix, cd.d, cd.rank
    for i in range(n + 1):
        if a[i][i] != 2:
            raise CartanError(f"diagonal entry a[{i}][{i}] = {a[i][i]} != 2")
        if d[i] <= 0:
            raise CartanError("symmetrizer must be positive")
        for j in range(n + 1):
            if i != j and a[i][j] > 0:
                raise CartanError(f"positive off-diagonal entry a[{i}][{j}]")
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise CartanError(f"a[{i}][{j}] and a[{j}][{i}] not simultaneously zero")
            if d[i] * a[i][j] != d[j] * a[j][i]:
                raise CartanError(f"DA not symmetric at ({i},{j})")
    if gcd(*d) != 1:
        raise CartanError("symmetrizers not relatively prime")
    # null vector: delta = alpha_0 + sum marks_k alpha_k lies in the kernel of A
    null = (1,) + cd.marks
    for i in range(n + 1):
        if sum(a[i][k] * null[k] for k in range(n + 1)) != 0:
            raise CartanError(f"row {i} does not annihilate the null root")


@lru_cache(maxsize=None)
def load_cartan(label: str, rank: int) -> CartanData:
    label = str(label).upper()
    _check_rank(label, rank)
    fin = _finite_matrix(label, rank)
    marks = _marks(label, rank)
    # alpha_0 = delta - theta with theta = sum marks_k alpha_k
    row0 = [-sum(marks[k] * fin[i][k] for k in range(rank)) for i in range(rank)]
    size = rank + 1
    a = [[0] * size for _ in range(size)]
    a[0][0] = 2
    for i in range(rank):
        for j in range(rank):
            a[i + 1][j + 1] = fin[i][j]
        a[i + 1][0] = row0[i]
    # finite symmetrizer fixes a_0j through symmetry of DA
    dfin = _symmetrizer(fin) if rank > 1 else [1]
    # (theta|theta) = 2 d_0 with d_0 = (theta|theta)/2 in units of the finite form
    theta_norm = sum(
        marks[i] * marks[j] * dfin[i] * fin[i][j] for i in range(rank) for j in range(rank)
    )
    d0 = Fraction(theta_norm, 2)
    # a_0j = -(theta|alpha_j)/d_0
    for j in range(rank):
        th_aj = sum(marks[i] * dfin[i] * fin[i][j] for i in range(rank))
        val = Fraction(-th_aj) / d0
        if val.denominator != 1:
            raise CartanError("non-integral affine row")
        a[0][j + 1] = int(val)
    d = _symmetrizer(a)
    cd = CartanData(label, rank, tuple(tuple(r) for r in a), tuple(d), tuple(marks))
    _validate(cd)
    return cd


# ---------------------------------------------------------------------------
# g-series


@dataclass(frozen=True)
class GSeries:
    i: int
    j: int
    inverse_q: bool
    coeffs: tuple[Scalar, ...]

    def check_product_identity(self, cd: CartanData) -> bool:
        """g(t) (t - C) == C t - 1 up to the truncation order."""
        e = cd.pairing(self.i, self.j)
        C = Scalar.q_power(-e if self.inverse_q else e)
        g = self.coeffs
        for n in range(len(g)):
            lhs = (g[n - 1] if n >= 1 else ZERO) - C * g[n]
            rhs = -ONE if n == 0 else (C if n == 1 else ZERO)
            if lhs != rhs:
                return False
        return True


@lru_cache(maxsize=None)
def _series(exp: int, order: int) -> tuple[Scalar, ...]:
    """Taylor coefficients of (C t - 1)/(t - C), C = q^exp, by long division."""
    C = Scalar.q_power(exp)
    num = [-ONE, C]
    den0 = -C  # den = -C + t
    inv0 = den0.inverse()
    out: list[Scalar] = []
    for n in range(order + 1):
        acc = num[n] if n < len(num) else ZERO
        if n >= 1:
            acc = acc - out[n - 1]  # den[1] = 1
        out.append(acc * inv0)
    return tuple(out)


@lru_cache(maxsize=None)
def _g_by_exp(exp: int, r: int) -> Scalar:
    order = max(16, 1 << (r.bit_length()))
    return _series(exp, order)[r]


def g_coeff(cd: CartanData, i: int, j: int, r: int, inverse_q: bool = False) -> Scalar:
    cd.check_color(i)
    cd.check_color(j)
    if r < 0:
        raise CartanError("Taylor index must be nonnegative")
    e = cd.pairing(i, j)
    return _g_by_exp(-e if inverse_q else e, r)


def g_series(cd: CartanData, i: int, j: int, order: int, inverse_q: bool = False) -> GSeries:
    cd.check_color(i)
    cd.check_color(j)
    e = cd.pairing(i, j)
    return GSeries(i, j, inverse_q, _series(-e if inverse_q else e, order))
