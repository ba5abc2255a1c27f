"""Exact elimination: Smith normal form, invariant factors and ranks.

Homology only needs invariant factors (over Z) or ranks (over a field), so
the workhorse is a sparse elimination that pivots on units first and hands
the small leftover block to a dense routine.  ``smith_normal_form`` is the
dense, transform-tracking version used when the unimodular matrices matter.
"""

from __future__ import annotations

from fractions import Fraction

from .coefficients import Coefficients, Z, as_coefficients
from .matrix import Matrix


def _require_int(m: Matrix) -> list[list[int]]:
    dense = m.to_dense()
    for row in dense:
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integral entry {x}")
            elif not isinstance(x, int):
                raise TypeError(f"integer matrix expected, found {type(x).__name__}")
    return [[int(x) for x in row] for row in dense]


def _dense_snf(a: list[list[int]], u: list[list[int]] | None = None, v: list[list[int]] | None = None) -> list[int]:
    """Diagonalize ``a`` in place; optionally mirror row ops on u, column ops on v.

    Returns the diagonal (including zeros) of length min(rows, cols).
    """
    nr = len(a)
    nc = len(a[0]) if nr else 0

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if u is not None:
            u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        if v is not None:
            for row in v:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        ra, rs = a[dst], a[src]
        for j in range(nc):
            if rs[j]:
                ra[j] += q * rs[j]
        if u is not None:
            ud, us = u[dst], u[src]
            for j in range(len(ud)):
                if us[j]:
                    ud[j] += q * us[j]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if v is not None:
            for row in v:
                if row[src]:
                    row[dst] += q * row[src]

    diag = []
    for t in range(min(nr, nc)):
        best = None
        for i in range(t, nr):
            row = a[i]
            for j in range(t, nc):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            diag.extend([0] * (min(nr, nc) - t))
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        clean = False
            if not clean:
                # a remainder smaller than the pivot appeared; move it in
                best = (abs(p), t, t)
                for i in range(t + 1, nr):
                    if a[i][t] and abs(a[i][t]) < best[0]:
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, nc):
                    if a[t][j] and abs(a[t][j]) < best[0]:
                        best = (abs(a[t][j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]
        diag.append(a[t][t])
    return diag


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(s, u, v)`` with ``u @ m @ v == s`` and s in Smith form.

    >>> s, u, v = smith_normal_form(Matrix.from_dense([[2, 4], [6, 8]]))
    >>> s.to_dense()
    [[2, 0], [0, 4]]
    >>> (u @ Matrix.from_dense([[2, 4], [6, 8]]) @ v) == s
    True
    """
    a = _require_int(m)
    nr, nc = m.shape
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]
    _dense_snf(a, u, v)
    return (Matrix.from_dense(a, nc), Matrix.from_dense(u, nr), Matrix.from_dense(v, nc))


class _Eliminator:
    """Sparse row-major elimination on unit pivots."""

    def __init__(self, m: Matrix, coeff: Coefficients):
        self.coeff = coeff
        self.rows: dict[int, dict[int, object]] = {}
        self.cols: dict[int, set[int]] = {}
        p = coeff.p
        for j, col in enumerate(m.columns()):
            for i, x in col.items():
                if p is not None:
                    x = coeff.reduce(x)
                    if not x:
                        continue
                elif coeff.ring == "Z" and not isinstance(x, int):
                    x = coeff.reduce(x)
                self.rows.setdefault(i, {})[j] = x
                self.cols.setdefault(j, set()).add(i)
        self.pivots = 0

    def _is_unit(self, x) -> bool:
        if self.coeff.p is not None:
            return True
        return x == 1 or x == -1

    def _pivot(self, r: int, c: int) -> None:
        rows, cols, coeff = self.rows, self.cols, self.coeff
        prow = rows.pop(r)
        inv = coeff.div(1, prow[c]) if coeff.p is not None else prow[c]
        p = coeff.p
        for c2 in prow:
            cols[c2].discard(r)
        for r2 in list(cols[c]):
            row = rows[r2]
            f = row[c] * inv
            for c2, x in prow.items():
                y = row.get(c2, 0) - f * x
                if p is not None:
                    y %= p
                if y:
                    if c2 not in row:
                        cols[c2].add(r2)
                    row[c2] = y
                else:
                    if c2 in row:
                        del row[c2]
                        cols[c2].discard(r2)
            if not row:
                del rows[r2]
        del cols[c]
        self.pivots += 1

    def run(self) -> None:
        progress = True
        while progress:
            progress = False
            for r in sorted(self.rows, key=lambda k: len(self.rows[k])):
                row = self.rows.get(r)
                if not row:
                    continue
                best = None
                for c, x in row.items():
                    if self._is_unit(x):
                        n = len(self.cols[c])
                        if best is None or n < best[0]:
                            best = (n, c)
                            if n == 1:
                                break
                if best is not None:
                    self._pivot(r, best[1])
                    progress = True

    def remainder(self) -> list[list]:
        live_cols = sorted(c for c, rs in self.cols.items() if rs)
        pos = {c: k for k, c in enumerate(live_cols)}
        out = []
        for r in sorted(self.rows):
            row = self.rows[r]
            dense = [0] * len(live_cols)
            for c, x in row.items():
                dense[pos[c]] = x
            out.append(dense)
        return out


def _dense_field_rank(a: list[list], coeff: Coefficients) -> int:
    a = [list(r) for r in a]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    rank = 0
    for j in range(nc):
        piv = next((i for i in range(rank, nr) if a[i][j]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pr = a[rank]
        for i in range(rank + 1, nr):
            if a[i][j]:
                f = coeff.div(a[i][j], pr[j])
                row = a[i]
                for k in range(j, nc):
                    if pr[k]:
                        row[k] = coeff.reduce(row[k] - f * pr[k])
        rank += 1
    return rank


def invariant_factors(m: Matrix) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order.

    >>> invariant_factors(Matrix.from_dense([[2, 4], [6, 8]]))
    [2, 4]
    """
    e = _Eliminator(m, Z)
    e.run()
    rest = e.remainder()
    factors = [1] * e.pivots
    if rest and rest[0]:
        factors.extend(d for d in _dense_snf(rest) if d)
    return factors


def rank(m: Matrix, coeff: Coefficients | str | None = None) -> int:
    """Rank over the field of fractions (Z, Q) or over Z/p."""
    coeff = as_coefficients(coeff)
    field = coeff if coeff.is_field else Coefficients("Q")
    e = _Eliminator(m, field)
    e.run()
    rest = e.remainder()
    extra = 0
    if rest and rest[0]:
        extra = _dense_field_rank(rest, field)
    return e.pivots + extra
