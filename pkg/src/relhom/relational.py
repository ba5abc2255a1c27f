"""Relations, Dowker complexes, relational join and product complexes, covers.

The running example relation::

    >>> r = Relation.from_matrix("abcd", "wxyz", [[0, 1, 0, 1], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 1, 0]])
    >>> sorted(dowker_complex(r, "A").facets())
    [('a', 'b'), ('a', 'c'), ('b', 'c', 'd')]
    >>> relational_product(induced_complex_relation(r)).homology().betti_numbers()
    (1, 1)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .algebra import (
    ChainComplex,
    Coefficients,
    HomologyResult,
    LESReport,
    Matrix,
    as_coefficients,
    direct_sum,
    homology,
    homology_bases,
    induced_map,
    les_from_chain_maps,
)
from .simplicial import (
    ContractibilityCertificate,
    Poset,
    PosetMap,
    Simplex,
    SimplicialComplex,
    as_simplex,
    contractibility_certificate,
    face_poset,
    faces,
    order_complex,
    permutation_sign,
    simplicial_chain_map,
    vertex_key,
)


class Relation:
    """Binary relation R ⊆ A × X between finite labelled sets."""

    __slots__ = ("rows", "cols", "pairs", "_row_sets", "_col_sets")

    def __init__(self, rows: Iterable[Hashable], cols: Iterable[Hashable], pairs: Iterable[tuple[Hashable, Hashable]]):
        self.rows = tuple(dict.fromkeys(rows))
        self.cols = tuple(dict.fromkeys(cols))
        row_set, col_set = set(self.rows), set(self.cols)
        ps = frozenset(pairs)
        for a, x in ps:
            if a not in row_set:
                raise ValueError(f"pair ({a!r}, {x!r}) uses unknown row {a!r}")
            if x not in col_set:
                raise ValueError(f"pair ({a!r}, {x!r}) uses unknown column {x!r}")
        self.pairs = ps
        self._row_sets = {a: frozenset(x for b, x in ps if b == a) for a in self.rows}
        self._col_sets = {x: frozenset(a for a, y in ps if y == x) for x in self.cols}

    @classmethod
    def from_matrix(cls, rows: Sequence[Hashable], cols: Sequence[Hashable], matrix: Sequence[Sequence[int]]) -> "Relation":
        rows, cols = list(rows), list(cols)
        if len(matrix) != len(rows):
            raise ValueError("matrix height differs from the number of rows")
        pairs = []
        for a, line in zip(rows, matrix):
            if len(line) != len(cols):
                raise ValueError(f"row {a!r} has {len(line)} entries, expected {len(cols)}")
            pairs.extend((a, x) for x, e in zip(cols, line) if e)
        return cls(rows, cols, pairs)

    def to_matrix(self) -> list[list[int]]:
        return [[int((a, x) in self.pairs) for x in self.cols] for a in self.rows]

    def related(self, a, x) -> bool:
        return (a, x) in self.pairs

    def neighbours_of_row(self, a) -> frozenset:
        return self._row_sets[a]

    def neighbours_of_col(self, x) -> frozenset:
        return self._col_sets[x]

    def common_cols(self, rows: Iterable[Hashable]) -> frozenset:
        out = None
        for a in rows:
            out = self._row_sets[a] if out is None else out & self._row_sets[a]
        return out if out is not None else frozenset(self.cols)

    def common_rows(self, cols: Iterable[Hashable]) -> frozenset:
        out = None
        for x in cols:
            out = self._col_sets[x] if out is None else out & self._col_sets[x]
        return out if out is not None else frozenset(self.rows)

    def transpose(self) -> "Relation":
        return Relation(self.cols, self.rows, ((x, a) for a, x in self.pairs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return set(self.rows) == set(other.rows) and set(self.cols) == set(other.cols) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash((frozenset(self.rows), frozenset(self.cols), self.pairs))

    def __repr__(self) -> str:
        return f"<Relation {len(self.rows)}x{len(self.cols)}, {len(self.pairs)} pairs>"


def _close_pairs(pairs: Iterable[tuple[Simplex, Simplex]]) -> set[tuple[Simplex, Simplex]]:
    out: set = set()
    for s, t in pairs:
        for a in faces(s):
            for b in faces(t):
                out.add((a, b))
    return out


class ComplexRelation:
    """Downward-closed relation R̃ ⊆ K × M between simplicial complexes."""

    __slots__ = ("K", "M", "pairs", "_by_source", "_by_target")

    def __init__(self, K: SimplicialComplex, M: SimplicialComplex, pairs: Iterable[tuple[Iterable, Iterable]], *, close: bool = False):
        norm = {(as_simplex(s), as_simplex(t)) for s, t in pairs}
        for s, t in norm:
            if not s or not t:
                raise ValueError("the empty simplex takes no part in a complex relation")
            if s not in K:
                raise ValueError(f"{s} is not a simplex of the source complex")
            if t not in M:
                raise ValueError(f"{t} is not a simplex of the target complex")
        if close:
            norm = _close_pairs(norm)
        else:
            for s, t in norm:
                for i in range(len(s) if len(s) > 1 else 0):
                    if (s[:i] + s[i + 1:], t) not in norm:
                        raise ValueError(f"relation is not downward closed at ({s}, {t})")
                for j in range(len(t) if len(t) > 1 else 0):
                    if (s, t[:j] + t[j + 1:]) not in norm:
                        raise ValueError(f"relation is not downward closed at ({s}, {t})")
        self.K = K
        self.M = M
        self.pairs = frozenset(norm)
        by_s: dict = {}
        by_t: dict = {}
        for s, t in self.pairs:
            by_s.setdefault(s, set()).add(t)
            by_t.setdefault(t, set()).add(s)
        self._by_source = {s: frozenset(v) for s, v in by_s.items()}
        self._by_target = {t: frozenset(v) for t, v in by_t.items()}

    def related_to_source(self, s: Simplex) -> frozenset:
        """All τ with s R̃ τ."""
        return self._by_source.get(as_simplex(s), frozenset())

    def related_to_target(self, t: Simplex) -> frozenset:
        """All σ with σ R̃ t."""
        return self._by_target.get(as_simplex(t), frozenset())

    def transpose(self) -> "ComplexRelation":
        return ComplexRelation(self.M, self.K, ((t, s) for s, t in self.pairs))

    def __contains__(self, pair) -> bool:
        s, t = pair
        return (as_simplex(s), as_simplex(t)) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __repr__(self) -> str:
        return f"<ComplexRelation {len(self.pairs)} pairs>"


def dowker_complex(r: Relation, base: str = "A") -> SimplicialComplex:
    """Subsets of one side that share a related element on the other side."""
    if base == "A":
        return SimplicialComplex(r.neighbours_of_col(x) for x in r.cols)
    if base == "X":
        return SimplicialComplex(r.neighbours_of_row(a) for a in r.rows)
    raise ValueError(f"base must be 'A' or 'X', got {base!r}")


def induced_complex_relation(r: Relation) -> ComplexRelation:
    """σ_A R̃ σ_X iff every a in σ_A is related to every x in σ_X."""
    da, dx = dowker_complex(r, "A"), dowker_complex(r, "X")
    pairs = []
    for s in da.simplices():
        common = as_simplex(r.common_cols(s))
        pairs.extend((s, t) for t in faces(common))
    return ComplexRelation(da, dx, pairs)


def dowker_galois(r: Relation) -> tuple[PosetMap, PosetMap]:
    """The Galois connection L: P_A ⇄ P_X^op: U of a relation."""
    da, dx = dowker_complex(r, "A"), dowker_complex(r, "X")
    if not len(da) or not len(dx):
        raise ValueError("both Dowker complexes must be nonempty")
    pa = face_poset(da)
    px_op = face_poset(dx).op()
    l = PosetMap(pa, px_op, {s: as_simplex(r.common_cols(s)) for s in pa})
    u = PosetMap(px_op, pa, {t: as_simplex(r.common_rows(t)) for t in px_op})
    return l, u


def disjoint_labels(left: Iterable[Hashable], right: Iterable[Hashable], tags: tuple[str, str] = ("K", "M")) -> tuple[Callable, Callable]:
    """Relabelling functions making two vertex sets disjoint.

    Labels are kept when the sets are already disjoint.  On a collision,
    strings get ``"K:"``/``"M:"`` prefixes and other labels become
    ``("K", v)`` / ``("M", v)``; both preserve the relative order of each side.
    """
    left, right = set(left), set(right)
    if not left & right:
        return (lambda v: v), (lambda v: v)
    all_str = all(isinstance(v, str) for v in left | right)

    def tagger(tag):
        if all_str:
            return lambda v: f"{tag}:{v}"
        return lambda v: (tag, v)

    return tagger(tags[0]), tagger(tags[1])


def relational_join(cr: ComplexRelation) -> SimplicialComplex:
    """K ∪ M ∪ {σ ∪ τ : σ R̃ τ} on disjoint vertex sets."""
    fk, fm = disjoint_labels(cr.K.vertices(), cr.M.vertices())
    simplices = [tuple(fk(v) for v in s) for s in cr.K]
    simplices += [tuple(fm(v) for v in t) for t in cr.M]
    simplices += [tuple(fk(v) for v in s) + tuple(fm(v) for v in t) for s, t in cr.pairs]
    return SimplicialComplex.from_simplices(simplices, check=False)


def relational_join_poset(p: Poset, q: Poset, rel: Iterable[tuple[Hashable, Hashable]]) -> Poset:
    """Disjoint union of P and Q^op with p < q whenever (p, q) is related.

    ``rel`` must be downward closed in P × Q.  Labels are namespaced like
    :func:`disjoint_labels` only when P and Q share elements.
    """
    rel = set(rel)
    for a, b in rel:
        if a not in p or b not in q:
            raise ValueError(f"pair ({a!r}, {b!r}) is not in P x Q")
    for a, b in rel:
        for a2 in p.down(a):
            if (a2, b) not in rel:
                raise ValueError(f"relation is not downward closed: ({a2!r}, {b!r}) missing")
        for b2 in q.down(b):
            if (a, b2) not in rel:
                raise ValueError(f"relation is not downward closed: ({a!r}, {b2!r}) missing")
    fp, fq = disjoint_labels(p.elements, q.elements, ("K", "M"))
    related: dict = {}
    for a, b in rel:
        related.setdefault(a, set()).add(fq(b))
    up = {}
    for a in p:
        up[fp(a)] = {fp(x) for x in p.up(a)} | related.get(a, set())
    for b in q:
        up[fq(b)] = {fq(y) for y in q.down(b)}
    return Poset._from_up(up.keys(), up, check=False)


class ProductCWComplex:
    """Regular CW complex with one cell σ × τ per related pair.

    Cell dimension is dim σ + dim τ and
    ∂(σ × τ) = ∂σ × τ + (-1)^{dim σ} σ × ∂τ, with vertex boundaries zero.
    """

    def __init__(self, cr: ComplexRelation):
        self.relation = cr
        cells: dict[int, list] = {}
        for s, t in cr.pairs:
            cells.setdefault(len(s) + len(t) - 2, []).append((s, t))
        self._cells = {
            d: tuple(sorted(cs, key=lambda st: (tuple(map(vertex_key, st[0])), tuple(map(vertex_key, st[1])))))
            for d, cs in cells.items()
        }
        self._cc: ChainComplex | None = None

    @property
    def dimension(self) -> int:
        return max(self._cells, default=-1)

    def cells(self, dim: int | None = None) -> tuple:
        if dim is not None:
            return self._cells.get(dim, ())
        return tuple(c for d in sorted(self._cells) for c in self._cells[d])

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self._cells.get(d, ())) for d in range(self.dimension + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector()))

    def __len__(self) -> int:
        return len(self.relation.pairs)

    def chain_complex(self) -> ChainComplex:
        if self._cc is None:
            top = max(self.dimension, 0)
            cells = {d: self._cells.get(d, ()) for d in range(top + 1)}

            def boundary(n, cell):
                s, t = cell
                if len(s) > 1:
                    for i in range(len(s)):
                        yield (s[:i] + s[i + 1:], t), (-1) ** i
                if len(t) > 1:
                    sign = (-1) ** (len(s) - 1)
                    for j in range(len(t)):
                        yield (s, t[:j] + t[j + 1:]), sign * (-1) ** j

            self._cc = ChainComplex.from_boundary(cells, boundary)
        return self._cc

    def homology(self, coeff: Coefficients | str | None = None) -> HomologyResult:
        return homology(self.chain_complex(), coeff)

    def face_poset(self) -> Poset:
        """The relation read as a subposet of P_K × P_M."""
        up: dict = {c: set() for c in self.relation.pairs}
        for s, t in self.relation.pairs:
            for a in faces(s):
                for b in faces(t):
                    up[(a, b)].add((s, t))
        return Poset._from_up(up.keys(), up, check=False)

    def __repr__(self) -> str:
        return f"ProductCWComplex(f_vector={self.f_vector()})"


def relational_product(cr: ComplexRelation) -> ProductCWComplex:
    return ProductCWComplex(cr)


class Cover:
    """Named subcomplexes covering a base complex."""

    def __init__(self, members: Mapping[Hashable, SimplicialComplex | Iterable[Iterable]], base: SimplicialComplex | None = None):
        if not members:
            raise ValueError("a cover needs at least one member")
        mem = {}
        for name, u in members.items():
            mem[name] = u if isinstance(u, SimplicialComplex) else SimplicialComplex(u)
        union = SimplicialComplex.from_simplices(set().union(*(u.simplex_set() for u in mem.values())), check=False)
        if base is None:
            base = union
        for name, u in mem.items():
            if not u.is_subcomplex_of(base):
                raise ValueError(f"cover member {name!r} is not a subcomplex of the base")
        missing = base.simplex_set() - union.simplex_set()
        if missing:
            s = min(missing, key=lambda x: (len(x), tuple(map(vertex_key, x))))
            raise ValueError(f"cover misses the simplex {s}")
        self.base = base
        self.names = tuple(sorted(mem, key=vertex_key))
        self.members = {n: mem[n] for n in self.names}

    def intersection(self, names: Iterable[Hashable]) -> SimplicialComplex:
        sets = [self.members[n].simplex_set() for n in names]
        return SimplicialComplex.from_simplices(frozenset.intersection(*sets), check=False)

    def __repr__(self) -> str:
        return f"<Cover of {len(self.base)} simplices by {len(self.names)} members>"


def cover_nerve(c: Cover) -> tuple[SimplicialComplex, ComplexRelation]:
    """Nerve of the cover and the relation σ R τ iff σ lies in every U_i, i ∈ τ."""
    containing = {s: [n for n in c.names if s in c.members[n]] for s in c.base}
    nerve = SimplicialComplex(containing[s] for s in c.base.simplices(0))
    pairs = [(s, t) for s, ns in containing.items() for t in faces(as_simplex(ns))]
    return nerve, ComplexRelation(c.base, nerve, pairs)


@dataclass(frozen=True)
class GoodCoverReport:
    entries: tuple[tuple[Simplex, ContractibilityCertificate], ...]

    @property
    def good(self) -> bool:
        return all(cert.kind == "cone" for _, cert in self.entries)

    @property
    def refuted(self) -> bool:
        return any(cert.kind == "not-contractible" for _, cert in self.entries)


def good_cover_check(c: Cover) -> GoodCoverReport:
    """Contractibility certificate for every nonempty intersection."""
    nerve, _ = cover_nerve(c)
    entries = []
    for t in nerve.simplices():
        entries.append((t, contractibility_certificate(face_poset(c.intersection(t)))))
    return GoodCoverReport(tuple(entries))


def les_chain_maps(cr: ComplexRelation) -> tuple[ChainComplex, ChainComplex, ChainComplex, dict, dict]:
    """Chain complexes P, K ⊕ M, J and the maps α: P -> K ⊕ M, β: K ⊕ M -> J.

    α(σ × τ) = σ when τ is a vertex, plus τ when σ is a vertex;
    β = (inclusion of K, minus inclusion of M).
    """
    p_cc = relational_product(cr).chain_complex()
    k_cc, m_cc = cr.K.chain_complex(), cr.M.chain_complex()
    s_cc = direct_sum(k_cc, m_cc, ("K", "M"))
    join = relational_join(cr)
    j_cc = join.chain_complex()
    fk, fm = disjoint_labels(cr.K.vertices(), cr.M.vertices())
    alpha = {}
    for n in p_cc.degrees:
        idx = s_cc.index(n)
        cols = []
        for s, t in p_cc.basis(n):
            col = {}
            if len(t) == 1:
                col[idx[("K", s)]] = 1
            if len(s) == 1:
                col[idx[("M", t)]] = col.get(idx[("M", t)], 0) + 1
            cols.append(col)
        alpha[n] = Matrix(s_cc.rank(n), len(cols), cols)
    beta = {}
    for n in s_cc.degrees:
        idx = j_cc.index(n)
        cols = []
        for tag, s in s_cc.basis(n):
            f, sign = (fk, 1) if tag == "K" else (fm, -1)
            image = [f(v) for v in s]
            target = as_simplex(image)
            cols.append({idx[target]: sign * permutation_sign(image, target)})
        beta[n] = Matrix(j_cc.rank(n), len(cols), cols)
    return p_cc, s_cc, j_cc, alpha, beta


def verify_les_relational(cr: ComplexRelation, coeff: Coefficients | str = "Q") -> LESReport:
    """Check the long exact sequence of a complex relation over a field."""
    coeff = as_coefficients(coeff)
    p_cc, s_cc, j_cc, alpha, beta = les_chain_maps(cr)
    return les_from_chain_maps(p_cc, s_cc, j_cc, alpha, beta, coeff)


@dataclass(frozen=True)
class SquareVerdict:
    commutes: bool
    left_square: dict
    right_square: dict
    first_failure: tuple[str, int] | None = None


def _injective(mapping: Mapping, domain: Iterable, codomain: Iterable, what: str) -> dict:
    table = {}
    codomain = set(codomain)
    for v in domain:
        if v not in mapping:
            raise ValueError(f"{what} is undefined at {v!r}")
        if mapping[v] not in codomain:
            raise ValueError(f"{what} sends {v!r} outside the target")
        table[v] = mapping[v]
    if len(set(table.values())) != len(table):
        raise ValueError(f"{what} is not injective")
    return table


def functorial_square_check(
    r: Relation,
    r2: Relation,
    incl_a: Mapping[Hashable, Hashable],
    incl_x: Mapping[Hashable, Hashable],
    coeff: Coefficients | str = "Q",
) -> SquareVerdict:
    """Compare H(L' ∘ α) with H(β ∘ L), and H(α ∘ U) with H(U' ∘ β)."""
    coeff = as_coefficients(coeff)
    ia = _injective(incl_a, r.rows, r2.rows, "incl_a")
    ix = _injective(incl_x, r.cols, r2.cols, "incl_x")
    for a, x in sorted(r.pairs, key=vertex_key):
        if not r2.related(ia[a], ix[x]):
            raise ValueError(f"inclusions do not carry ({a!r}, {x!r}) into the second relation")
    l, u = dowker_galois(r)
    l2, u2 = dowker_galois(r2)
    alpha = PosetMap(l.source, l2.source, lambda s: as_simplex(ia[v] for v in s))
    beta = PosetMap(l.target, l2.target, lambda t: as_simplex(ix[v] for v in t))
    d_pa, d_px = order_complex(l.source), order_complex(l.target)
    d_pa2, d_px2 = order_complex(l2.source), order_complex(l2.target)

    def compare(src, dst, f, g):
        src_cc, dst_cc = src.chain_complex(), dst.chain_complex()
        bases = (homology_bases(src_cc, coeff), homology_bases(dst_cc, coeff))
        hf = induced_map(simplicial_chain_map(src, dst, f), src_cc, dst_cc, coeff, bases=bases)
        hg = induced_map(simplicial_chain_map(src, dst, g), src_cc, dst_cc, coeff, bases=bases)
        bad = next((n for n in sorted(hf) if hf[n] != hg[n]), None)
        return {n: hf[n].to_dense() for n in hf}, bad

    left, bad_l = compare(d_pa, d_px2, lambda s: l2(alpha(s)), lambda s: beta(l(s)))
    right, bad_r = compare(d_px, d_pa2, lambda t: alpha(u(t)), lambda t: u2(beta(t)))
    failure = ("L", bad_l) if bad_l is not None else (("U", bad_r) if bad_r is not None else None)
    return SquareVerdict(failure is None, left, right, failure)
