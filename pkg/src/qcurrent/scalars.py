"""Exact arithmetic in Q(s), s = q^(1/2), and Laurent polynomials in c = gamma^(1/2).

A :class:`Scalar` is stored as ``s^shift * num(s) / den(s)`` where ``num`` and
``den`` are integer polynomials given by coefficient tuples (lowest degree
first).  The canonical form is unique, so equality and hashing are
structural:

* ``num[0] != 0`` and ``den[0] != 0`` (all powers of s live in ``shift``),
* ``gcd(num, den) = 1`` over Z[s] including integer content,
* the leading coefficient of ``den`` is positive.

Laurent polynomials (``den == (1,)``) take a fast path that never calls gcd.
Polynomial gcd and exact division are delegated to python-flint.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Iterator, Mapping

import flint

__all__ = [
    "Scalar",
    "Coefficient",
    "ScalarError",
    "ParseError",
    "scalar_arith",
    "quantum_integer",
    "specialize_gamma",
    "parse_scalar",
    "parse_coefficient",
    "ZERO",
    "ONE",
    "s",
    "q",
]


class ScalarError(ArithmeticError):
    """Raised for division by zero and similar undefined operations."""


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer polynomial helpers on tuples


def _strip_high(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _padd(a: tuple, ashift: int, b: tuple, bshift: int) -> tuple[list[int], int]:
    """Return (a*s^ashift + b*s^bshift) as (coeffs, shift)."""
    m = min(ashift, bshift)
    oa, ob = ashift - m, bshift - m
    n = max(oa + len(a), ob + len(b))
    out = [0] * n
    for k, x in enumerate(a):
        out[oa + k] += x
    for k, x in enumerate(b):
        out[ob + k] += x
    return out, m


def _pmul(a: tuple, b: tuple) -> list[int]:
    if len(a) == 1:
        x = a[0]
        return [x * y for y in b]
    if len(b) == 1:
        y = b[0]
        return [x * y for x in a]
    if len(a) * len(b) > 400:
        return [int(x) for x in (flint.fmpz_poly(list(a)) * flint.fmpz_poly(list(b))).coeffs()]
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _normalize_low(p: list[int], shift: int) -> tuple[tuple, int]:
    """Move leading zero coefficients into the shift; strip high zeros."""
    _strip_high(p)
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    return tuple(p[k:]), shift + k


def _content(p: Iterable[int]) -> int:
    g = 0
    for x in p:
        g = math.gcd(g, x)
        if g == 1:
            break
    return g


class Scalar:
    """Element of Q(s) in canonical form.  Immutable."""

    __slots__ = ("num", "den", "shift", "_hash")

    def __init__(self, num=(0,), den=(1,), shift=0, _canonical=False):
        if _canonical:
            self.num, self.den, self.shift = num, den, shift
            self._hash = None
            return
        n, sh = _normalize_low(list(num), shift)
        if not n:
            self.num, self.den, self.shift = (), (1,), 0
            self._hash = None
            return
        d, dsh = _normalize_low(list(den), 0)
        if not d:
            raise ScalarError("zero denominator")
        sh -= dsh
        n, d = _reduce(n, d)
        self.num, self.den, self.shift = n, d, sh
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def from_int(cls, n: int) -> "Scalar":
        n = int(n)
        if n == 0:
            return ZERO
        return cls((n,), (1,), 0, _canonical=True)

    @classmethod
    def from_fraction(cls, a: int, b: int) -> "Scalar":
        if b == 0:
            raise ScalarError("division by zero")
        g = math.gcd(a, b)
        a, b = a // g, b // g
        if b < 0:
            a, b = -a, -b
        if a == 0:
            return ZERO
        return cls((a,), (b,), 0, _canonical=True)

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "Scalar":
        """coeff * s^exp"""
        if coeff == 0:
            return ZERO
        return cls((int(coeff),), (1,), int(exp), _canonical=True)

    @classmethod
    def q_power(cls, exp: int) -> "Scalar":
        return cls((1,), (1,), 2 * int(exp), _canonical=True)

    @classmethod
    def from_laurent(cls, terms: Mapping[int, int]) -> "Scalar":
        """Build from {exponent of s: integer coefficient}."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo, hi = min(terms), max(terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] = c
        return cls(tuple(coeffs), (1,), lo, _canonical=True)

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return Scalar.from_int(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_laurent(self) -> bool:
        return self.den == (1,)

    def is_one(self) -> bool:
        return self.num == (1,) and self.den == (1,) and self.shift == 0

    def laurent_terms(self) -> dict[int, int]:
        if not self.is_laurent():
            raise ScalarError("not a Laurent polynomial")
        return {self.shift + k: c for k, c in enumerate(self.num) if c}

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            n, sh = _padd(self.num, self.shift, other.num, other.shift)
            n, sh = _normalize_low(n, sh)
            if not n:
                return ZERO
            if self.den == (1,):
                return Scalar(n, (1,), sh, _canonical=True)
            n, d = _reduce(n, self.den)
            return Scalar(n, d, sh, _canonical=True)
        a = _pmul(self.num, other.den)
        b = _pmul(other.num, self.den)
        n, sh = _padd(tuple(a), self.shift, tuple(b), other.shift)
        n, sh = _normalize_low(n, sh)
        if not n:
            return ZERO
        n, d = _reduce(n, tuple(_pmul(self.den, other.den)))
        return Scalar(n, d, sh, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return Scalar(tuple(-x for x in self.num), self.den, self.shift, _canonical=True)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        sh = self.shift + other.shift
        if self.den == (1,) and other.den == (1,):
            return Scalar(tuple(_pmul(self.num, other.num)), (1,), sh, _canonical=True)
        # cross-cancel before multiplying keeps sizes small
        n1, d2 = _reduce(self.num, other.den)
        n2, d1 = _reduce(other.num, self.den)
        n = tuple(_pmul(n1, n2))
        d = tuple(_pmul(d1, d2))
        if d[-1] < 0:
            n = tuple(-x for x in n)
            d = tuple(-x for x in d)
        return Scalar(n, d, sh, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ScalarError("division by zero")
        n, d = self.den, self.num
        if d[-1] < 0:
            n = tuple(-x for x in n)
            d = tuple(-x for x in d)
        return Scalar(n, d, -self.shift, _canonical=True)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return ONE
        if self.den == (1,) and len(self.num) == 1:
            return Scalar((self.num[0] ** e,), (1,), self.shift * e, _canonical=True)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def invert_s(self) -> "Scalar":
        """Apply the field automorphism s -> 1/s."""
        if not self.num:
            return self
        # s^a N(s)/D(s) -> s^-a N(1/s)/D(1/s) = s^(-a - degN + degD) rev(N)/rev(D)
        n = tuple(reversed(self.num))
        d = tuple(reversed(self.den))
        sh = -self.shift - (len(self.num) - 1) + (len(self.den) - 1)
        if d[-1] < 0:
            n = tuple(-x for x in n)
            d = tuple(-x for x in d)
        return Scalar(n, d, sh, _canonical=True)

    def evaluate(self, value):
        """Evaluate at s = value (a Python number or Fraction)."""
        from fractions import Fraction

        v = Fraction(value)
        num = sum(Fraction(c) * v**k for k, c in enumerate(self.num))
        den = sum(Fraction(c) * v**k for k, c in enumerate(self.den))
        return num / den * v**self.shift

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den and self.shift == other.shift

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den, self.shift))
        return self._hash

    # text -----------------------------------------------------------------
    def __str__(self):
        if not self.num:
            return "0"
        numtxt = _laurent_text(self.num, self.shift, "s")
        if self.den == (1,):
            return numtxt
        if len(self.den) == 1:
            single = sum(1 for x in self.num if x) == 1
            return f"{numtxt}/{self.den[0]}" if single else f"({numtxt})/{self.den[0]}"
        return f"({numtxt})/({_laurent_text(self.den, 0, 's')})"

    def __repr__(self):
        return f"Scalar({self})"

    @staticmethod
    def parse(text: str) -> "Scalar":
        return parse_scalar(text)


def _reduce(n: tuple, d: tuple) -> tuple[tuple, tuple]:
    """Cancel gcd and content of n/d; make the leading coefficient of d positive."""
    if d == (1,):
        return n, d
    if len(d) == 1:
        g = math.gcd(_content(n), d[0])
        if d[0] < 0:
            g = -g
        return tuple(x // g for x in n), (d[0] // g,)
    fn, fd = flint.fmpz_poly(list(n)), flint.fmpz_poly(list(d))
    g = fn.gcd(fd)
    if g.degree() > 0:
        fn = fn // g
        fd = fd // g
    n = tuple(int(x) for x in fn.coeffs())
    d = tuple(int(x) for x in fd.coeffs())
    c = math.gcd(_content(n), _content(d))
    if d[-1] < 0:
        c = -c
    if c != 1:
        n = tuple(x // c for x in n)
        d = tuple(x // c for x in d)
    return n, d


def _laurent_text(coeffs: tuple, shift: int, var: str) -> str:
    parts: list[str] = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        e = shift + k
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            pw = var if e == 1 else f"{var}^{e}"
            body = pw if mag == 1 else f"{mag}*{pw}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) if parts else "0"


ZERO = Scalar((), (1,), 0, _canonical=True)
ONE = Scalar((1,), (1,), 0, _canonical=True)
s = Scalar((1,), (1,), 1, _canonical=True)
q = Scalar((1,), (1,), 2, _canonical=True)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def quantum_integer(n: int, d: int = 1) -> Scalar:
    """[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d}), computed by exact division."""
    if d <= 0:
        raise ValueError("d must be a positive integer")
    top = Scalar.q_power(d * n) - Scalar.q_power(-d * n)
    bottom = Scalar.q_power(d) - Scalar.q_power(-d)
    return top / bottom


# ---------------------------------------------------------------------------
# Coefficient: Laurent polynomial in c with Scalar coefficients


class Coefficient:
    """Finite map {exponent of c: nonzero Scalar}.  Immutable."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        t = {}
        if terms:
            for e, v in terms.items():
                v = Scalar.coerce(v)
                if v:
                    t[int(e)] = v
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> "Coefficient":
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def scalar(cls, x, cexp: int = 0) -> "Coefficient":
        x = Scalar.coerce(x)
        return cls._raw({cexp: x} if x else {})

    @classmethod
    def c_power(cls, e: int) -> "Coefficient":
        return cls._raw({e: ONE})

    @classmethod
    def gamma_power(cls, e: int) -> "Coefficient":
        return cls._raw({2 * e: ONE})

    def terms(self) -> dict[int, Scalar]:
        return dict(self._t)

    def items(self) -> Iterator[tuple[int, Scalar]]:
        return iter(sorted(self._t.items()))

    def __getitem__(self, e: int) -> Scalar:
        return self._t.get(e, ZERO)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def is_scalar(self) -> bool:
        return not self._t or set(self._t) == {0}

    def __add__(self, other):
        other = _coerce_coeff(other)
        if other is None:
            return NotImplemented
        t = dict(self._t)
        for e, v in other._t.items():
            w = t.get(e)
            w = v if w is None else w + v
            if w:
                t[e] = w
            else:
                t.pop(e, None)
        return Coefficient._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient._raw({e: -v for e, v in self._t.items()})

    def __sub__(self, other):
        other = _coerce_coeff(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_coeff(other)
        if other is None:
            return NotImplemented
        t: dict[int, Scalar] = {}
        for e1, v1 in self._t.items():
            for e2, v2 in other._t.items():
                e = e1 + e2
                w = v1 * v2
                w = t[e] + w if e in t else w
                if w:
                    t[e] = w
                else:
                    t.pop(e, None)
        return Coefficient._raw(t)

    __rmul__ = __mul__

    def shift_c(self, k: int) -> "Coefficient":
        return Coefficient._raw({e + k: v for e, v in self._t.items()})

    def specialize(self, value) -> Scalar:
        return specialize_gamma(self, value)

    def __eq__(self, other):
        other = _coerce_coeff(other)
        if other is None:
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __str__(self):
        if not self._t:
            return "0"
        if set(self._t) == {0}:
            return str(self._t[0])
        parts = []
        for e, v in sorted(self._t.items(), reverse=True):
            if e == 0:
                parts.append(f"({v})")
            else:
                cpow = "c" if e == 1 else f"c^{e}"
                parts.append(cpow if v.is_one() else f"({v})*{cpow}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Coefficient({self})"

    @staticmethod
    def parse(text: str) -> "Coefficient":
        return parse_coefficient(text)


def _coerce_coeff(x):
    if isinstance(x, Coefficient):
        return x
    if isinstance(x, (Scalar, int)):
        return Coefficient.scalar(x)
    return None


def specialize_gamma(x: Coefficient, value) -> Scalar:
    """Substitute c -> value (value is the image of c = gamma^(1/2)) and sum."""
    value = Scalar.coerce(value)
    if not value:
        raise ScalarError("c must be specialized to a nonzero value")
    if isinstance(x, (Scalar, int)):
        return Scalar.coerce(x)
    total = ZERO
    for e, v in x._t.items():
        total = total + v * value**e
    return total


# ---------------------------------------------------------------------------
# parser for the text grammar (s, q, c, integers, + - * / ^, parentheses)

_TOKEN = re.compile(r"\s*(?:(\d+)|([sqc])|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        tok = m.group(1) or m.group(2) or m.group(3)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> Coefficient:
        val = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input at token {self.peek()!r}")
        return val

    def expr(self) -> Coefficient:
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> Coefficient:
        val = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            val = val * rhs if op == "*" else _coeff_div(val, rhs)
        return val

    def unary(self) -> Coefficient:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Coefficient:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            e = self.exponent()
            if e < 0:
                base = _coeff_div(Coefficient.scalar(ONE), base)
                e = -e
            out = Coefficient.scalar(ONE)
            for _ in range(e):
                out = out * base
            return out
        return base

    def exponent(self) -> int:
        sign = 1
        while self.peek() in ("-", "+"):
            if self.take() == "-":
                sign = -sign
        if self.peek() == "(":
            self.take()
            e = self.exponent()
            self.take(")")
            return sign * e
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"exponent must be an integer, got {tok!r}")
        return sign * int(tok)

    def atom(self) -> Coefficient:
        tok = self.take()
        if tok.isdigit():
            return Coefficient.scalar(int(tok))
        if tok == "s":
            return Coefficient.scalar(s)
        if tok == "q":
            return Coefficient.scalar(q)
        if tok == "c":
            return Coefficient.c_power(1)
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        raise ParseError(f"unexpected token {tok!r}")


def _coeff_div(a: Coefficient, b: Coefficient) -> Coefficient:
    t = b.terms()
    if len(t) != 1:
        raise ParseError("division by a Coefficient with several c-powers is not representable")
    (e, v), = t.items()
    inv = v.inverse()
    return Coefficient._raw({k - e: w * inv for k, w in a.terms().items()})


def parse_coefficient(text: str) -> Coefficient:
    return _Parser(text).parse()


def parse_scalar(text: str) -> Scalar:
    val = parse_coefficient(text)
    if not val.is_scalar():
        raise ParseError("expression depends on c")
    return val[0]
