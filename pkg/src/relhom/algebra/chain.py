"""Chain complexes of free modules, their homology, and induced maps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .coefficients import Coefficients, as_coefficients
from .linalg import invariant_factors, rank
from .matrix import Matrix


class ChainComplexError(ValueError):
    """Raised when a boundary fails to square to zero."""

    def __init__(self, degree: int, message: str | None = None):
        self.degree = degree
        super().__init__(message or f"d_{degree - 1} . d_{degree} != 0")


class ChainMapError(ValueError):
    """Raised when a family of maps does not commute with the boundaries."""

    def __init__(self, degree: int, message: str | None = None):
        self.degree = degree
        super().__init__(message or f"chain map condition fails in degree {degree}")


class ChainComplex:
    """Free chain complex on labelled bases over a contiguous degree range.

    ``boundary(n)`` is the matrix of d_n : C_n -> C_{n-1}; its rows are indexed
    by ``basis(n - 1)`` and its columns by ``basis(n)``.  Degrees outside the
    range carry the zero module.
    """

    def __init__(
        self,
        bases: Mapping[int, Sequence[Hashable]],
        boundaries: Mapping[int, Matrix] | None = None,
        *,
        check: bool = True,
    ):
        if bases:
            lo, hi = min(bases), max(bases)
        else:
            lo, hi = 0, 0
        self.lo = lo
        self.hi = hi
        self._bases = {n: tuple(bases.get(n, ())) for n in range(lo, hi + 1)}
        self._index = {n: {b: k for k, b in enumerate(labels)} for n, labels in self._bases.items()}
        for n, labels in self._bases.items():
            if len(self._index[n]) != len(labels):
                raise ValueError(f"duplicate basis labels in degree {n}")
        self._d: dict[int, Matrix] = {}
        self._valid = False
        for n, m in (boundaries or {}).items():
            want = (self.rank(n - 1), self.rank(n))
            if m.shape != want:
                raise ValueError(f"d_{n} has shape {m.shape}, expected {want}")
            if not m.is_zero():
                self._d[n] = m
        if check:
            self.validate()

    @classmethod
    def from_boundary(
        cls,
        cells: Mapping[int, Sequence[Hashable]],
        boundary: Callable[[int, Hashable], Iterable[tuple[Hashable, int]]],
        *,
        check: bool = True,
    ) -> "ChainComplex":
        """Build from a function giving ``(face, coefficient)`` pairs of a cell."""
        tmp = cls(cells, check=False)
        mats = {}
        for n in tmp.degrees:
            if n - 1 not in tmp._index or not tmp._bases[n]:
                continue
            idx = tmp._index[n - 1]
            cols = []
            for cell in tmp._bases[n]:
                col: dict[int, int] = {}
                for face, c in boundary(n, cell):
                    k = idx[face]
                    col[k] = col.get(k, 0) + c
                cols.append(col)
            mats[n] = Matrix(len(idx), len(cols), cols)
        return cls(tmp._bases, mats, check=check)

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def basis(self, n: int) -> tuple:
        return self._bases.get(n, ())

    def index(self, n: int) -> dict:
        return self._index.get(n, {})

    def rank(self, n: int) -> int:
        return len(self._bases.get(n, ()))

    def boundary(self, n: int) -> Matrix:
        m = self._d.get(n)
        if m is None:
            return Matrix.zeros(self.rank(n - 1), self.rank(n))
        return m

    def validate(self) -> None:
        """Check d∘d = 0; the result is cached since boundaries never change."""
        if self._valid:
            return
        for n in range(self.lo + 1, self.hi + 1):
            if n in self._d and n - 1 in self._d:
                if not (self._d[n - 1] @ self._d[n]).is_zero():
                    raise ChainComplexError(n)
        self._valid = True

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * self.rank(n) for n in self.degrees)

    def __repr__(self) -> str:
        ranks = ", ".join(f"{n}:{self.rank(n)}" for n in self.degrees)
        return f"<ChainComplex ranks {{{ranks}}}>"


def direct_sum(a: ChainComplex, b: ChainComplex, tags: tuple[Hashable, Hashable] = (0, 1)) -> ChainComplex:
    """A ⊕ B with basis labels ``(tag, label)``."""
    lo = min(a.lo, b.lo)
    hi = max(a.hi, b.hi)
    bases = {n: [(tags[0], x) for x in a.basis(n)] + [(tags[1], y) for y in b.basis(n)] for n in range(lo, hi + 1)}
    mats = {}
    for n in range(lo, hi + 1):
        da, db = a.boundary(n), b.boundary(n)
        cols = [dict(c) for c in da.columns()]
        off = a.rank(n - 1)
        cols += [{i + off: x for i, x in c.items()} for c in db.columns()]
        mats[n] = Matrix(a.rank(n - 1) + b.rank(n - 1), a.rank(n) + b.rank(n), cols)
    return ChainComplex(bases, mats, check=False)


@dataclass(frozen=True)
class HomologyResult:
    """Homology per degree: betti numbers and torsion invariant factors.

    Degrees outside ``start .. start + len(betti) - 1`` are zero, except
    when ``approximate`` is set: then the listed degrees are exact and the
    degrees above them were not computed.
    """

    coefficients: Coefficients
    start: int
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...] = field(default=())
    approximate: bool = False

    def __post_init__(self) -> None:
        if not self.torsion:
            object.__setattr__(self, "torsion", tuple(() for _ in self.betti))
        if len(self.torsion) != len(self.betti):
            raise ValueError("betti and torsion lengths differ")
        if self.coefficients.is_field and any(self.torsion):
            raise ValueError("torsion over a field")

    def betti_at(self, n: int) -> int:
        k = n - self.start
        return self.betti[k] if 0 <= k < len(self.betti) else 0

    def torsion_at(self, n: int) -> tuple[int, ...]:
        k = n - self.start
        return self.torsion[k] if 0 <= k < len(self.torsion) else ()

    def nonzero(self) -> dict[int, tuple[int, tuple[int, ...]]]:
        """Degrees with nontrivial homology mapped to (betti, torsion)."""
        out = {}
        for k, (b, t) in enumerate(zip(self.betti, self.torsion)):
            if b or t:
                out[self.start + k] = (b, t)
        return out

    def betti_numbers(self) -> tuple[int, ...]:
        """Betti numbers from degree 0 up to the last nonzero one."""
        nz = [n for n, (b, _) in self.nonzero().items() if b and n >= 0]
        top = max(nz) if nz else -1
        return tuple(self.betti_at(n) for n in range(0, top + 1))

    def dims(self) -> dict[int, int]:
        return {n: b for n, (b, _) in self.nonzero().items() if b}

    def shifted(self, k: int) -> "HomologyResult":
        return HomologyResult(self.coefficients, self.start + k, self.betti, self.torsion, self.approximate)

    def same_as(self, other: "HomologyResult") -> bool:
        return self.coefficients == other.coefficients and self.nonzero() == other.nonzero()

    def __str__(self) -> str:
        parts = []
        for n in range(self.start, self.start + len(self.betti)):
            b, t = self.betti_at(n), self.torsion_at(n)
            term = f"{self.coefficients}^{b}" if b else "0"
            if t:
                tors = " + ".join(f"Z/{d}" for d in t)
                term = tors if not b else f"{term} + {tors}"
            parts.append(f"H_{n} = {term}")
        if self.approximate:
            parts.append("higher degrees not computed")
        return "; ".join(parts)


def homology(cc: ChainComplex, coeff: Coefficients | str | None = None) -> HomologyResult:
    """Homology of ``cc``; over Z via invariant factors, over a field via ranks.

    >>> from relhom.algebra.matrix import Matrix
    >>> circle = ChainComplex({0: "abc", 1: ["ab", "bc", "ac"]},
    ...     {1: Matrix.from_dense([[-1, 0, -1], [1, -1, 0], [0, 1, 1]])})
    >>> homology(circle).betti
    (1, 1)
    """
    coeff = as_coefficients(coeff)
    cc.validate()
    ranks: dict[int, int] = {}
    torsion: dict[int, tuple[int, ...]] = {}
    for n in range(cc.lo, cc.hi + 2):
        m = cc.boundary(n) if n <= cc.hi else None
        if m is None or m.is_zero():
            ranks[n] = 0
            torsion[n - 1] = ()
            continue
        if coeff.is_field:
            ranks[n] = rank(m, coeff)
            torsion[n - 1] = ()
        else:
            fac = invariant_factors(m)
            ranks[n] = len(fac)
            torsion[n - 1] = tuple(abs(d) for d in fac if abs(d) != 1)
    betti = tuple(cc.rank(n) - ranks[n] - ranks[n + 1] for n in cc.degrees)
    tors = tuple(torsion.get(n, ()) for n in cc.degrees)
    return HomologyResult(coeff, cc.lo, betti, tors)


def _reduce_vector(vec: dict, coeff: Coefficients) -> dict:
    out = {}
    for i, x in vec.items():
        y = coeff.reduce(x)
        if y:
            out[i] = y
    return out


def _axpy(y: dict, a, x: dict, coeff: Coefficients) -> None:
    """y += a * x in place, keeping canonical nonzero entries."""
    for i, v in x.items():
        w = coeff.reduce(y.get(i, 0) + a * v)
        if w:
            y[i] = w
        else:
            y.pop(i, None)


class HomologyBasis:
    """Deterministic homology basis in one degree over a field.

    Cycles come from a column reduction of d_n that tracks the column
    operations; boundaries come from the reduced columns of d_{n+1}.  Every
    pivot (largest row index) is distinct, which lets ``coordinates`` peel a
    cycle apart greedily.
    """

    def __init__(self, cc: ChainComplex, n: int, coeff: Coefficients):
        if not coeff.is_field:
            raise ValueError("homology bases are computed over a field")
        self.coeff = coeff
        self.degree = n
        size = cc.rank(n)
        d_n = cc.boundary(n)
        pivots: dict[int, tuple[dict, dict]] = {}
        cycles: dict[int, dict] = {}
        for j in range(size):
            col = _reduce_vector(d_n.column(j), coeff)
            v = {j: 1}
            while col:
                low = max(col)
                hit = pivots.get(low)
                if hit is None:
                    break
                f = coeff.div(col[low], hit[0][low])
                _axpy(col, -f, hit[0], coeff)
                _axpy(v, -f, hit[1], coeff)
            if col:
                pivots[max(col)] = (col, v)
            else:
                cycles[j] = v
        self._boundary_cols: dict[int, dict] = {}
        d_up = cc.boundary(n + 1)
        for j in range(d_up.ncols):
            col = _reduce_vector(d_up.column(j), coeff)
            while col:
                low = max(col)
                hit = self._boundary_cols.get(low)
                if hit is None:
                    break
                _axpy(col, -coeff.div(col[low], hit[low]), hit, coeff)
            if col:
                self._boundary_cols[max(col)] = col
        self._cycles = {j: v for j, v in cycles.items() if j not in self._boundary_cols}
        self.keys = sorted(self._cycles)
        self._pos = {j: k for k, j in enumerate(self.keys)}

    @property
    def dimension(self) -> int:
        return len(self.keys)

    def representatives(self) -> list[dict]:
        return [self._cycles[j] for j in self.keys]

    def coordinates(self, cycle: Mapping[int, object]) -> list:
        """Coefficients of the class of ``cycle`` in this basis."""
        c = _reduce_vector(dict(cycle), self.coeff)
        out = [0] * len(self.keys)
        while c:
            low = max(c)
            if low in self._boundary_cols:
                b = self._boundary_cols[low]
                _axpy(c, -self.coeff.div(c[low], b[low]), b, self.coeff)
            elif low in self._cycles:
                a = c[low]
                out[self._pos[low]] = a
                _axpy(c, -a, self._cycles[low], self.coeff)
            else:
                raise ValueError(f"vector is not a cycle in degree {self.degree}")
        return out


def check_chain_map(f: Mapping[int, Matrix], src: ChainComplex, dst: ChainComplex, coeff: Coefficients | None = None) -> None:
    """Raise ChainMapError at the first degree where d f != f d."""
    coeff = as_coefficients(coeff)
    lo = min(src.lo, dst.lo)
    hi = max(src.hi, dst.hi)

    def fmat(n):
        m = f.get(n)
        if m is None:
            return Matrix.zeros(dst.rank(n), src.rank(n))
        if m.shape != (dst.rank(n), src.rank(n)):
            raise ChainMapError(n, f"f_{n} has shape {m.shape}, expected {(dst.rank(n), src.rank(n))}")
        return m

    for n in range(lo, hi + 1):
        fn = fmat(n)
        left = dst.boundary(n) @ fn
        right = fmat(n - 1) @ src.boundary(n)
        diff = left - right
        if coeff.p is not None:
            diff = diff.map_entries(coeff.reduce)
        if not diff.is_zero():
            raise ChainMapError(n)


def induced_map(
    f: Mapping[int, Matrix],
    src: ChainComplex,
    dst: ChainComplex,
    coeff: Coefficients | str,
    *,
    bases: tuple[Mapping[int, HomologyBasis], Mapping[int, HomologyBasis]] | None = None,
) -> dict[int, Matrix]:
    """Matrices of H_n(src) -> H_n(dst) in the deterministic homology bases."""
    coeff = as_coefficients(coeff)
    if not coeff.is_field:
        raise ValueError("induced maps are computed over a field")
    check_chain_map(f, src, dst, coeff)
    out = {}
    for n in src.degrees:
        hs = bases[0].get(n) if bases else None
        hd = bases[1].get(n) if bases else None
        hs = hs or HomologyBasis(src, n, coeff)
        hd = hd or HomologyBasis(dst, n, coeff)
        fn = f.get(n)
        cols = []
        for z in hs.representatives():
            image = fn.apply(z) if fn is not None else {}
            coords = hd.coordinates(image)
            cols.append({i: x for i, x in enumerate(coords) if x})
        out[n] = Matrix(hd.dimension, hs.dimension, cols)
    return out


def homology_bases(cc: ChainComplex, coeff: Coefficients) -> dict[int, HomologyBasis]:
    return {n: HomologyBasis(cc, n, coeff) for n in cc.degrees}
