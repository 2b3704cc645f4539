"""Exact linear algebra over Q(s).

Two independent routes are provided so results can be cross-checked:

* :class:`SparseEchelon` performs incremental Gaussian elimination on sparse
  vectors with field arithmetic and tracks how each basis row was built.
* :func:`bareiss_rank` clears denominators and runs fraction-free Bareiss
  elimination on integer polynomials (python-flint ``fmpz_poly``).
"""

from __future__ import annotations

import heapq
from math import lcm
from typing import Hashable, Iterable, Mapping, Sequence

import flint

from .scalars import ONE, ZERO, Scalar

__all__ = ["SparseEchelon", "bareiss_rank", "field_rank", "scalar_to_poly_pair"]

Vector = dict  # column -> Scalar


class SparseEchelon:
    """Row-echelon basis of a subspace of Q(s)^(columns).

    Each stored row has pivot coefficient 1 on its smallest column.  If
    ``track`` is set, every row also stores a combination
    ``{tag: Scalar}`` of the input vectors that produces it.
    """

    def __init__(self, track: bool = True):
        self.rows: dict[Hashable, tuple[Vector, dict]] = {}
        self.track = track

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: Mapping, combo: dict | None = None) -> tuple[Vector, dict]:
        """Return (remainder, combination) with vec = remainder + sum combo*inputs."""
        v = {k: x for k, x in vec.items() if x}
        combo = dict(combo) if combo else {}
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        while heap:
            col = heapq.heappop(heap)
            if col in seen:
                continue
            seen.add(col)
            x = v.get(col)
            if x is None or col not in self.rows:
                continue
            row, rcombo = self.rows[col]
            for k, y in row.items():
                w = v.get(k)
                w = -x * y if w is None else w - x * y
                if w:
                    if k not in v and k not in seen:
                        heapq.heappush(heap, k)
                    v[k] = w
                else:
                    v.pop(k, None)
            if self.track:
                for t, y in rcombo.items():
                    w = combo.get(t, ZERO) + x * y
                    if w:
                        combo[t] = w
                    else:
                        combo.pop(t, None)
        return v, combo

    def add(self, vec: Mapping, tag: Hashable = None) -> bool:
        """Insert a vector; return True if it enlarged the span."""
        rem, combo = self.reduce(vec)
        if not rem:
            return False
        if self.track:
            # rem = vec - sum combo*inputs, so rem corresponds to tag - combo
            combo = {t: -y for t, y in combo.items()}
            combo[tag] = combo.get(tag, ZERO) + ONE
        piv = min(rem)
        inv = rem[piv].inverse()
        row = {k: x * inv for k, x in rem.items()}
        combo = {t: y * inv for t, y in combo.items() if y} if self.track else {}
        self.rows[piv] = (row, combo)
        return True

    def contains(self, vec: Mapping) -> tuple[bool, dict]:
        """Membership test; on success the combination of tagged inputs equals vec."""
        rem, combo = self.reduce(vec)
        return (not rem), combo


def field_rank(matrix: Sequence[Sequence[Scalar]]) -> int:
    ech = SparseEchelon(track=False)
    for row in matrix:
        ech.add({j: x for j, x in enumerate(row) if x})
    return len(ech)


def scalar_to_poly_pair(x: Scalar) -> tuple[list[int], list[int], int]:
    return list(x.num), list(x.den), x.shift


def _row_to_polys(row: Sequence[Scalar]) -> list[flint.fmpz_poly]:
    """Scale a row of Scalars by a common factor so all entries are integer polynomials."""
    nz = [x for x in row if x]
    if not nz:
        return [flint.fmpz_poly(0) for _ in row]
    # common denominator: lcm of the denominator polynomials
    den = flint.fmpz_poly(1)
    for x in nz:
        d = flint.fmpz_poly(list(x.den))
        g = den.gcd(d)
        den = den * (d // g)
    lo = min(x.shift for x in nz)
    out = []
    for x in row:
        if not x:
            out.append(flint.fmpz_poly(0))
            continue
        n = flint.fmpz_poly([0] * (x.shift - lo) + list(x.num))
        out.append(n * (den // flint.fmpz_poly(list(x.den))))
    return out


def bareiss_rank(matrix: Sequence[Sequence[Scalar]]) -> int:
    """Rank over Q(s) by fraction-free elimination on integer polynomials."""
    rows = [_row_to_polys(r) for r in matrix]
    rows = [r for r in rows if any(not p.is_zero() for p in r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    m = len(rows)
    prev = flint.fmpz_poly(1)
    rank = 0
    for col in range(ncols):
        if rank == m:
            break
        piv = next((r for r in range(rank, m) if not rows[r][col].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, m):
            a = rows[r][col]
            new = []
            for c in range(ncols):
                val = p * rows[r][c] - a * rows[rank][c]
                new.append(val // prev if not val.is_zero() else val)
            rows[r] = new
        prev = p
        rank += 1
    return rank
