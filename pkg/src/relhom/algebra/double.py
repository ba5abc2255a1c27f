"""Double complexes, their total complexes, and spectral-sequence pages.

Sign convention: the vertical maps already carry whatever twist is needed
for the two differentials to anticommute, so the total differential is the
plain sum d = δ + ∂.

Page dimensions come from ranks alone.  For the filtration F_s of the
total complex (columns ``p <= s`` or rows ``q <= s``) put

    Z^r_s(n) = dim F_s(n) - rank(d_n : F_s(n) -> C(n-1) / F_{s-r}(n-1))

so that Z^r_s is the space of chains in F_s whose boundary lies r steps
deeper.  Then

    dim E^r_s = Z^r_s(n) - Z^{r-1}_{s-1}(n) - Z^{r-1}_{s+r-1}(n+1) + Z^r_{s+r-1}(n+1)

which is the usual subquotient Z^r_s / (Z^{r-1}_{s-1} + d Z^{r-1}_{s+r-1})
with the intersection term rewritten via d Z^r_{s+r-1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from .chain import ChainComplex, homology
from .coefficients import Coefficients, as_coefficients
from .matrix import Matrix

Cell = tuple[int, int]

ORIENTATIONS = ("columns-first", "rows-first")


class DoubleComplexError(ValueError):
    def __init__(self, cell: Cell, message: str):
        self.cell = cell
        super().__init__(f"{message} at {cell}")


class DoubleComplex:
    """Bigraded free module with horizontal δ_{p,q} and vertical ∂_{p,q}.

    ``horizontal[(p, q)]`` maps cell (p, q) to (p-1, q); ``vertical[(p, q)]``
    maps (p, q) to (p, q-1).  Missing maps are zero.
    """

    def __init__(
        self,
        cells: Mapping[Cell, Sequence[Hashable]],
        horizontal: Mapping[Cell, Matrix] | None = None,
        vertical: Mapping[Cell, Matrix] | None = None,
        *,
        check: bool = True,
    ):
        self.cells = {pq: tuple(labels) for pq, labels in cells.items()}
        ps = [p for p, _ in self.cells] or [0]
        qs = [q for _, q in self.cells] or [0]
        self.p_range = range(min(ps), max(ps) + 1)
        self.q_range = range(min(qs), max(qs) + 1)
        self.horizontal: dict[Cell, Matrix] = {}
        self.vertical: dict[Cell, Matrix] = {}
        for store, given, shift in ((self.horizontal, horizontal, (-1, 0)), (self.vertical, vertical, (0, -1))):
            for (p, q), m in (given or {}).items():
                want = (self.size((p + shift[0], q + shift[1])), self.size((p, q)))
                if m.shape != want:
                    raise DoubleComplexError((p, q), f"map has shape {m.shape}, expected {want}")
                if not m.is_zero():
                    store[(p, q)] = m
        if check:
            self.validate()

    def size(self, pq: Cell) -> int:
        return len(self.cells.get(pq, ()))

    def labels(self, pq: Cell) -> tuple:
        return self.cells.get(pq, ())

    def delta(self, pq: Cell) -> Matrix:
        p, q = pq
        return self.horizontal.get(pq) or Matrix.zeros(self.size((p - 1, q)), self.size(pq))

    def partial(self, pq: Cell) -> Matrix:
        p, q = pq
        return self.vertical.get(pq) or Matrix.zeros(self.size((p, q - 1)), self.size(pq))

    def grid(self) -> dict[Cell, int]:
        return {(p, q): self.size((p, q)) for p in self.p_range for q in self.q_range}

    def validate(self) -> None:
        for p in self.p_range:
            for q in self.q_range:
                pq = (p, q)
                if (p - 1, q) in self.horizontal and pq in self.horizontal:
                    if not (self.horizontal[(p - 1, q)] @ self.horizontal[pq]).is_zero():
                        raise DoubleComplexError(pq, "horizontal maps do not square to zero")
                if (p, q - 1) in self.vertical and pq in self.vertical:
                    if not (self.vertical[(p, q - 1)] @ self.vertical[pq]).is_zero():
                        raise DoubleComplexError(pq, "vertical maps do not square to zero")
                a = self.delta((p, q - 1)) @ self.partial(pq)
                b = self.partial((p - 1, q)) @ self.delta(pq)
                if not (a + b).is_zero():
                    raise DoubleComplexError(pq, "horizontal and vertical maps do not anticommute")

    def transpose(self) -> "DoubleComplex":
        """Swap the roles of p and q (and of the two differentials)."""
        cells = {(q, p): labels for (p, q), labels in self.cells.items()}
        return DoubleComplex(
            cells,
            {(q, p): m for (p, q), m in self.vertical.items()},
            {(q, p): m for (p, q), m in self.horizontal.items()},
            check=False,
        )

    def __repr__(self) -> str:
        return f"<DoubleComplex p{list(self.p_range)} q{list(self.q_range)}>"


def total_complex(dc: DoubleComplex) -> ChainComplex:
    """Tot_n = ⊕_{p+q=n} C_{p,q}, basis labels ((p, q), label), p ascending."""
    lo = dc.p_range.start + dc.q_range.start
    hi = dc.p_range.stop - 1 + dc.q_range.stop - 1
    bases: dict[int, list] = {}
    offsets: dict[Cell, int] = {}
    for n in range(lo, hi + 1):
        labels: list = []
        for p in dc.p_range:
            q = n - p
            if q in dc.q_range:
                offsets[(p, q)] = len(labels)
                labels.extend(((p, q), x) for x in dc.labels((p, q)))
        bases[n] = labels
    mats = {}
    for n in range(lo + 1, hi + 1):
        cols: list[dict] = [{} for _ in bases[n]]
        for (p, q), off in offsets.items():
            if p + q != n:
                continue
            for m, target in ((dc.horizontal.get((p, q)), (p - 1, q)), (dc.vertical.get((p, q)), (p, q - 1))):
                if m is None:
                    continue
                toff = offsets[target]
                for j, col in enumerate(m.columns()):
                    dst = cols[off + j]
                    for i, x in col.items():
                        dst[toff + i] = dst.get(toff + i, 0) + x
        mats[n] = Matrix(len(bases[n - 1]), len(bases[n]), cols)
    return ChainComplex(bases, mats)


@dataclass(frozen=True)
class SSPage:
    r: int
    orientation: str
    coefficients: Coefficients
    cells: dict

    def __getitem__(self, pq: Cell) -> int:
        return self.cells.get(pq, 0)

    def nonzero(self) -> dict[Cell, int]:
        return {pq: d for pq, d in self.cells.items() if d}

    def antidiagonal_sums(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (p, q), d in self.cells.items():
            out[p + q] = out.get(p + q, 0) + d
        return out

    def as_grid(self, p_range: range, q_range: range) -> list[list[int]]:
        """Rows indexed by q (top row = largest q), columns by p."""
        return [[self[(p, q)] for p in p_range] for q in reversed(q_range)]


class _FiltrationRanks:
    """Cached rank data for one filtration of the total complex."""

    def __init__(self, dc: DoubleComplex, orientation: str, coeff: Coefficients):
        if orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")
        if not coeff.is_field:
            raise ValueError("spectral-sequence pages are computed over a field")
        self.dc = dc
        self.coeff = coeff
        self.by_columns = orientation == "columns-first"
        self.tot = total_complex(dc)
        self.filt = {
            n: [pq[0] if self.by_columns else pq[1] for pq, _ in self.tot.basis(n)] for n in self.tot.degrees
        }
        rng = dc.p_range if self.by_columns else dc.q_range
        self.s_lo, self.s_hi = rng.start, rng.stop - 1
        self._prefix: dict[tuple[int, int], list[int]] = {}

    def f(self, n: int, s: int) -> int:
        return sum(1 for x in self.filt.get(n, ()) if x <= s)

    def _rank_profile(self, n: int, t: int) -> list[int]:
        """ranks of d_n on columns with filtration <= s (s = s_lo..s_hi), rows > t."""
        key = (n, t)
        if key in self._prefix:
            return self._prefix[key]
        coeff = self.coeff
        d = self.tot.boundary(n)
        col_f = self.filt.get(n, [])
        row_f = self.filt.get(n - 1, [])
        order = sorted(range(len(col_f)), key=lambda j: col_f[j])
        pivots: dict[int, dict] = {}
        profile = []
        k = 0
        for s in range(self.s_lo, self.s_hi + 1):
            while k < len(order) and col_f[order[k]] <= s:
                col = {}
                for i, x in d.column(order[k]).items():
                    if row_f[i] > t:
                        y = coeff.reduce(x)
                        if y:
                            col[i] = y
                while col:
                    low = max(col)
                    hit = pivots.get(low)
                    if hit is None:
                        pivots[low] = col
                        break
                    fac = coeff.div(col[low], hit[low])
                    for i, x in hit.items():
                        y = coeff.reduce(col.get(i, 0) - fac * x)
                        if y:
                            col[i] = y
                        else:
                            col.pop(i, None)
                k += 1
            profile.append(len(pivots))
        self._prefix[key] = profile
        return profile

    def rho(self, n: int, s: int, t: int) -> int:
        if t >= s or n - 1 not in self.filt or n not in self.filt:
            return 0
        s = min(s, self.s_hi)
        if s < self.s_lo:
            return 0
        t = max(t, self.s_lo - 1)
        return self._rank_profile(n, t)[s - self.s_lo]

    def z(self, r: int, n: int, s: int) -> int:
        return self.f(n, s) - self.rho(n, s, s - r)

    def dim(self, r: int, p: int, q: int) -> int:
        n = p + q
        s = p if self.by_columns else q
        return self.z(r, n, s) - self.z(r - 1, n, s - 1) - self.z(r - 1, n + 1, s + r - 1) + self.z(r, n + 1, s + r - 1)

    def page(self, r: int) -> SSPage:
        cells = {(p, q): self.dim(r, p, q) for p in self.dc.p_range for q in self.dc.q_range}
        return SSPage(r, "columns-first" if self.by_columns else "rows-first", self.coeff, cells)

    @property
    def stable_page(self) -> int:
        """Beyond this page index every differential leaves the window."""
        return self.s_hi - self.s_lo + 1


def ss_page(dc: DoubleComplex, r: int, orientation: str = "columns-first", coeff: Coefficients | str = "Q") -> SSPage:
    """Dimensions of E^r for the filtration by columns or by rows.

    ``columns-first`` filters by p, so E^1 is vertical homology;
    ``rows-first`` filters by q, so E^1 is horizontal homology.
    """
    if r < 0:
        raise ValueError(f"page index must be nonnegative, got {r}")
    return _FiltrationRanks(dc, orientation, as_coefficients(coeff)).page(r)


@dataclass(frozen=True)
class ConvergenceReport:
    orientation: str
    coefficients: Coefficients
    infinity_page: int
    e_infinity: SSPage
    e_infinity_sums: dict
    total_dims: dict
    converges: bool

    def summary(self) -> dict:
        return {
            "orientation": self.orientation,
            "coefficients": str(self.coefficients),
            "stable_page": self.infinity_page,
            "e_infinity_sums": {str(n): d for n, d in sorted(self.e_infinity_sums.items())},
            "total_homology": {str(n): d for n, d in sorted(self.total_dims.items())},
            "converges": self.converges,
        }


def ss_converges(dc: DoubleComplex, coeff: Coefficients | str = "Q", orientation: str = "columns-first") -> ConvergenceReport:
    """Compare Σ_{p+q=n} dim E^∞_{p,q} with dim H_n(Tot) over a field."""
    coeff = as_coefficients(coeff)
    fr = _FiltrationRanks(dc, orientation, coeff)
    r = max(fr.stable_page, 2)
    e_inf = fr.page(r)
    if fr.page(r + 1).cells != e_inf.cells:
        raise AssertionError("pages failed to stabilise inside the window")
    sums = e_inf.antidiagonal_sums()
    h = homology(fr.tot, coeff)
    degrees = set(sums) | set(fr.tot.degrees)
    sums = {n: sums.get(n, 0) for n in sorted(degrees)}
    tot = {n: h.betti_at(n) for n in sorted(degrees)}
    return ConvergenceReport(orientation, coeff, r, e_inf, sums, tot, sums == tot)
