"""Cellular cosheaves with subcomplex sections, their homology, and the
double complex of a complex relation.

>>> from relhom.relational import Relation, induced_complex_relation
>>> r = Relation.from_matrix("ab", "xy", [[1, 1], [1, 1]])
>>> dc = relational_double_complex(induced_complex_relation(r))
>>> dc.as_rows()
[[4, 2], [2, 1]]
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .algebra import (
    ChainComplex,
    Coefficients,
    DoubleComplex,
    HomologyBasis,
    HomologyResult,
    Matrix,
    as_coefficients,
    homology,
    induced_map,
)
from .relational import ComplexRelation
from .simplicial import (
    Simplex,
    SimplicialComplex,
    as_simplex,
    simplicial_chain_map,
    vertex_key,
)


def _facets_of(s: Simplex) -> list[tuple[int, Simplex]]:
    """Codimension-one faces with the position of the removed vertex."""
    if len(s) < 2:
        return []
    return [(i, s[:i] + s[i + 1:]) for i in range(len(s))]


class CellularCosheaf:
    """Subcomplex-valued cosheaf: σ ⊆ τ forces section(τ) ⊆ section(σ)."""

    def __init__(
        self,
        base: SimplicialComplex,
        ambient: SimplicialComplex,
        sections: Mapping[Simplex, SimplicialComplex],
        *,
        check: bool = True,
    ):
        empty = SimplicialComplex()
        self.base = base
        self.ambient = ambient
        self._sections = {s: sections.get(s, empty) for s in base.simplices()}
        extra = set(map(as_simplex, sections)) - set(self._sections)
        if extra:
            raise ValueError(f"section given on {min(extra, key=lambda s: tuple(map(vertex_key, s)))}, which is not in the base")
        if check:
            for s, sec in self._sections.items():
                if not sec.is_subcomplex_of(ambient):
                    raise ValueError(f"section over {s} is not a subcomplex of the ambient complex")
                for _, face in _facets_of(s):
                    if not sec.is_subcomplex_of(self._sections[face]):
                        raise ValueError(f"section over {s} is not contained in the section over its face {face}")

    def section(self, s: Iterable) -> SimplicialComplex:
        return self._sections[as_simplex(s)]

    def items(self):
        return self._sections.items()

    def __repr__(self) -> str:
        return f"<CellularCosheaf over {len(self.base)} simplices>"


def relation_cosheaf(cr: ComplexRelation, base: str = "K") -> CellularCosheaf:
    """Section over σ is the subcomplex of simplices related to σ."""
    if base == "K":
        sections = {s: SimplicialComplex.from_simplices(cr.related_to_source(s), check=False) for s in cr.K}
        return CellularCosheaf(cr.K, cr.M, sections)
    if base == "M":
        sections = {t: SimplicialComplex.from_simplices(cr.related_to_target(t), check=False) for t in cr.M}
        return CellularCosheaf(cr.M, cr.K, sections)
    raise ValueError(f"base must be 'K' or 'M', got {base!r}")


def global_cosection(f: CellularCosheaf) -> SimplicialComplex:
    """Colimit of an inclusion diagram: the union of all sections."""
    found: set = set()
    for _, sec in f.items():
        found |= sec.simplex_set()
    return SimplicialComplex.from_simplices(found, check=False)


class GroupCosheaf:
    """Cosheaf of free modules: a basis per simplex and extension matrices.

    ``extensions[(tau, sigma)]`` maps the module over τ to the module over
    its codimension-one face σ.
    """

    def __init__(
        self,
        base: SimplicialComplex,
        bases: Mapping[Simplex, tuple],
        extensions: Mapping[tuple[Simplex, Simplex], Matrix],
        coeff: Coefficients,
        *,
        check: bool = True,
    ):
        self.base = base
        self.coefficients = coeff
        self.bases = {s: tuple(bases.get(s, ())) for s in base.simplices()}
        self.extensions: dict = {}
        for t in base.simplices():
            for _, s in _facets_of(t):
                m = extensions.get((t, s))
                shape = (len(self.bases[s]), len(self.bases[t]))
                if m is None:
                    m = Matrix.zeros(*shape)
                if m.shape != shape:
                    raise ValueError(f"extension {t} -> {s} has shape {m.shape}, expected {shape}")
                self.extensions[(t, s)] = m
        if check:
            self.validate()

    def dim(self, s: Simplex) -> int:
        return len(self.bases[s])

    def validate(self) -> None:
        """Path independence on every codimension-two square."""
        red = self.coefficients.reduce
        for t in self.base.simplices():
            if len(t) < 3:
                continue
            composites: dict = {}
            for _, s in _facets_of(t):
                for _, r in _facets_of(s):
                    m = (self.extensions[(s, r)] @ self.extensions[(t, s)]).map_entries(red)
                    if r in composites and composites[r] != m:
                        raise ValueError(f"extension maps do not compose consistently from {t} to {r}")
                    composites[r] = m

    def chain_complex(self) -> ChainComplex:
        top = max(self.base.dimension, 0)
        cells = {n: [(s, x) for s in self.base.simplices(n) for x in self.bases[s]] for n in range(top + 1)}
        mats = {}
        for n in range(1, top + 1):
            row_idx = {c: k for k, c in enumerate(cells[n - 1])}
            offsets = {}
            for k, (s, _) in enumerate(cells[n - 1]):
                offsets.setdefault(s, k)
            cols = []
            for t in self.base.simplices(n):
                for j in range(len(self.bases[t])):
                    col: dict = {}
                    for i, s in _facets_of(t):
                        sign = -1 if i % 2 else 1
                        for row, x in self.extensions[(t, s)].column(j).items():
                            k = offsets[s] + row
                            col[k] = col.get(k, 0) + sign * x
                    cols.append(col)
            mats[n] = Matrix(len(row_idx), len(cols), cols)
        return ChainComplex(cells, mats)

    def __repr__(self) -> str:
        return f"<GroupCosheaf over {len(self.base)} simplices, total rank {sum(map(len, self.bases.values()))}>"


def _components(k: SimplicialComplex) -> list[tuple]:
    parent = {v: v for v in k.vertices()}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in k.simplices(1):
        a, b = find(e[0]), find(e[1])
        if a != b:
            parent[a] = b
    groups: dict = {}
    for v in k.vertices():
        groups.setdefault(find(v), []).append(v)
    return sorted((tuple(sorted(g, key=vertex_key)) for g in groups.values()), key=lambda g: vertex_key(g[0]))


def homology_cosheaf(f: CellularCosheaf, p: int, coeff: Coefficients | str | None = None) -> GroupCosheaf:
    """Apply H_p to every section; extensions are induced by inclusions.

    Degree 0 uses connected components as the basis and works over any
    coefficients; higher degrees need a field.
    """
    coeff = as_coefficients(coeff)
    if p < 0:
        raise ValueError("homology degree must be nonnegative")
    bases: dict = {}
    ext: dict = {}
    if p == 0:
        comps = {s: _components(sec) for s, sec in f.items()}
        for s, cs in comps.items():
            bases[s] = tuple(c[0] for c in cs)
        for t in f.base.simplices():
            for _, s in _facets_of(t):
                where = {v: k for k, c in enumerate(comps[s]) for v in c}
                cols = [{where[c[0]]: 1} for c in comps[t]]
                ext[(t, s)] = Matrix(len(comps[s]), len(cols), cols)
        return GroupCosheaf(f.base, bases, ext, coeff)
    if not coeff.is_field:
        raise ValueError("cosheaf homology in positive degrees is computed over a field")
    ccs = {s: sec.chain_complex() for s, sec in f.items()}
    hb = {s: HomologyBasis(ccs[s], p, coeff) for s in ccs}
    for s, b in hb.items():
        bases[s] = tuple(("H", p, k) for k in range(b.dimension))
    for t in f.base.simplices():
        for _, s in _facets_of(t):
            if not hb[t].dimension:
                ext[(t, s)] = Matrix.zeros(hb[s].dimension, 0)
                continue
            chain = simplicial_chain_map(f.section(t), f.section(s), lambda v: v)
            ext[(t, s)] = induced_map(chain, ccs[t], ccs[s], coeff, bases=({p: hb[t]}, {p: hb[s]}))[p]
    return GroupCosheaf(f.base, bases, ext, coeff)


def cosheaf_homology(g: GroupCosheaf, coeff: Coefficients | str | None = None) -> HomologyResult:
    coeff = as_coefficients(coeff) if coeff is not None else g.coefficients
    g.validate()
    return homology(g.chain_complex(), coeff)


class RelationalDoubleComplex(DoubleComplex):
    """Double complex of a complex relation, optionally augmented."""

    def as_rows(self) -> list[list[int]]:
        """Grid sizes, row q = 0 first, column p = 0 first."""
        return [[self.size((p, q)) for p in self.p_range] for q in self.q_range]


def relational_double_complex(cr: ComplexRelation, augmented: bool = False) -> RelationalDoubleComplex:
    """Cells (σ, τ) at (dim σ, dim τ), δ = ∂_K ⊗ 1, ∂ = (-1)^p 1 ⊗ ∂_M.

    The augmented version adds K in row -1 and M in column -1 with
    ∂_{p,0}(σ × v) = (-1)^p σ, δ_{0,q}(v × τ) = τ, δ_{p,-1} = d_K and
    ∂_{-1,q} = -d_M, the last sign being the (-1)^p rule at p = -1.
    """
    cells: dict = {}
    for s, t in cr.pairs:
        cells.setdefault((len(s) - 1, len(t) - 1), []).append((s, t))
    key = lambda st: (tuple(map(vertex_key, st[0])), tuple(map(vertex_key, st[1])))
    cells = {pq: sorted(v, key=key) for pq, v in cells.items()}
    if augmented:
        for s in cr.K:
            cells.setdefault((len(s) - 1, -1), []).append(s)
        for t in cr.M:
            cells.setdefault((-1, len(t) - 1), []).append(t)
    if not cells:
        return RelationalDoubleComplex({(0, 0): ()})
    idx = {pq: {c: k for k, c in enumerate(v)} for pq, v in cells.items()}

    def build(src, dst, terms):
        if src not in cells or dst not in cells:
            return None
        cols = []
        for c in cells[src]:
            col: dict = {}
            for face, x in terms(c):
                k = idx[dst][face]
                col[k] = col.get(k, 0) + x
            cols.append(col)
        return Matrix(len(cells[dst]), len(cols), cols)

    horizontal, vertical = {}, {}
    for (p, q) in list(cells):
        if p >= 1 and q >= 0:
            m = build((p, q), (p - 1, q), lambda c: (((f, c[1]), (-1) ** i) for i, f in _facets_of(c[0])))
        elif p == 0 and q >= 0 and augmented:
            m = build((p, q), (-1, q), lambda c: [(c[1], 1)])
        elif p >= 1 and q == -1:
            m = build((p, q), (p - 1, q), lambda s: (((f), (-1) ** i) for i, f in _facets_of(s)))
        else:
            m = None
        if m is not None:
            horizontal[(p, q)] = m
        if q >= 1 and p >= 0:
            m = build((p, q), (p, q - 1), lambda c, p=p: (((c[0], f), (-1) ** (p + i)) for i, f in _facets_of(c[1])))
        elif q == 0 and p >= 0 and augmented:
            m = build((p, q), (p, -1), lambda c, p=p: [(c[0], (-1) ** p)])
        elif q >= 1 and p == -1:
            m = build((p, q), (p, q - 1), lambda t: ((f, -((-1) ** i)) for i, f in _facets_of(t)))
        else:
            m = None
        if m is not None:
            vertical[(p, q)] = m
    return RelationalDoubleComplex(cells, horizontal, vertical)
