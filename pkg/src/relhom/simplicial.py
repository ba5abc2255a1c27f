"""Finite simplicial complexes, posets, order complexes and fiber diagnostics.

Vertex labels are opaque hashables (usually strings).  Simplices are tuples
of vertices sorted by :func:`vertex_key`, which gives a deterministic total
order even when labels of different types are mixed.

>>> k = SimplicialComplex([("a", "b", "c")])
>>> len(k), k.dimension
(7, 2)
>>> order_complex(face_poset(SimplicialComplex(["ab", "bc", "ca"]))).homology().betti_numbers()
(1, 1)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Hashable, Iterable, Iterator, Mapping

from .algebra import ChainComplex, Coefficients, HomologyResult, Matrix, homology

Vertex = Hashable
Simplex = tuple


def vertex_key(v) -> tuple:
    """Sort key that totally orders ints, strings, tuples and frozensets."""
    if isinstance(v, bool):
        return (0, int(v), "")
    if isinstance(v, int):
        return (0, v, "")
    if isinstance(v, str):
        return (1, 0, v)
    if isinstance(v, tuple):
        return (2, tuple(vertex_key(x) for x in v))
    if isinstance(v, frozenset):
        return (3, tuple(sorted(vertex_key(x) for x in v)))
    return (4, repr(v))


def simplex_key(s: Simplex) -> tuple:
    return (len(s), tuple(vertex_key(v) for v in s))


def as_simplex(vertices: Iterable[Vertex]) -> Simplex:
    return tuple(sorted(set(vertices), key=vertex_key))


def faces(s: Simplex) -> Iterator[Simplex]:
    """All nonempty faces of s, s included."""
    for k in range(1, len(s) + 1):
        yield from combinations(s, k)


def _vertex_ranks(simplices: Iterable[set]) -> dict:
    """Position of each vertex in the :func:`vertex_key` order."""
    verts = set().union(*simplices) if simplices else set()
    return {v: i for i, v in enumerate(sorted(verts, key=vertex_key))}


class SimplicialComplex:
    """Downward-closed family of nonempty simplices.

    Facets may be given in any order and with repeated or unsorted vertices;
    the face closure is computed eagerly.  Strings count as vertex sequences,
    so ``SimplicialComplex(["ab"])`` is an edge.
    """

    __slots__ = ("_by_dim", "_set", "_hash")

    def __init__(self, facets: Iterable[Iterable[Vertex]] = ()):
        facets = [set(f) for f in facets]
        rank = _vertex_ranks(facets)
        found: set[Simplex] = set()
        for f in facets:
            s = tuple(sorted(f, key=rank.__getitem__))
            if not s or s in found:
                continue
            found.update(faces(s))
        self._finish(found, rank)

    @classmethod
    def from_simplices(cls, simplices: Iterable[Iterable[Vertex]], *, check: bool = True) -> "SimplicialComplex":
        """Wrap a family that is already closed under faces."""
        simplices = [set(s) for s in simplices]
        rank = _vertex_ranks(simplices)
        found = {tuple(sorted(s, key=rank.__getitem__)) for s in simplices}
        found.discard(())
        if check:
            for s in found:
                if len(s) > 1:
                    for i in range(len(s)):
                        if s[:i] + s[i + 1:] not in found:
                            raise ValueError(f"family is not closed: face of {s} missing")
        obj = cls.__new__(cls)
        obj._finish(found, rank)
        return obj

    def _finish(self, found: set[Simplex], rank: dict) -> None:
        by_dim: dict[int, list[Simplex]] = {}
        for s in found:
            by_dim.setdefault(len(s) - 1, []).append(s)
        key = lambda s: tuple(map(rank.__getitem__, s))
        self._by_dim = {d: tuple(sorted(ss, key=key)) for d, ss in sorted(by_dim.items())}
        self._set = frozenset(found)
        self._hash = None

    @property
    def dimension(self) -> int:
        return max(self._by_dim, default=-1)

    def simplices(self, dim: int | None = None) -> tuple[Simplex, ...]:
        if dim is not None:
            return self._by_dim.get(dim, ())
        return tuple(s for d in sorted(self._by_dim) for s in self._by_dim[d])

    def vertices(self) -> tuple[Vertex, ...]:
        return tuple(s[0] for s in self._by_dim.get(0, ()))

    def facets(self) -> tuple[Simplex, ...]:
        out = []
        for s in self.simplices():
            if not any(s != t and set(s) <= set(t) for t in self._cofaces_candidates(s)):
                out.append(s)
        return tuple(out)

    def _cofaces_candidates(self, s: Simplex) -> Iterator[Simplex]:
        for t in self._by_dim.get(len(s), ()):
            yield t

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self._by_dim.get(d, ())) for d in range(self.dimension + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector()))

    def __contains__(self, s) -> bool:
        return as_simplex(s) in self._set

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.simplices())

    def __len__(self) -> int:
        return len(self._set)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._set == other._set

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._set)
        return self._hash

    def __repr__(self) -> str:
        return f"SimplicialComplex(f_vector={self.f_vector()})"

    def simplex_set(self) -> frozenset[Simplex]:
        return self._set

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self._set <= other._set

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex.from_simplices(self._set | other._set, check=False)

    def intersection(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex.from_simplices(self._set & other._set, check=False)

    def relabel(self, mapping: Mapping[Vertex, Vertex] | Callable[[Vertex], Vertex]) -> "SimplicialComplex":
        """Apply an injective vertex relabelling."""
        f = mapping if callable(mapping) else mapping.__getitem__
        images = {v: f(v) for v in self.vertices()}
        if len(set(images.values())) != len(images):
            raise ValueError("relabelling is not injective")
        return SimplicialComplex.from_simplices((tuple(images[v] for v in s) for s in self._set), check=False)

    def chain_complex(self) -> ChainComplex:
        """Oriented simplicial chains, degrees 0 .. dim."""
        top = max(self.dimension, 0)
        cells = {d: self._by_dim.get(d, ()) for d in range(top + 1)}

        def boundary(n, s):
            for i in range(len(s)):
                yield s[:i] + s[i + 1:], (-1) ** i

        return ChainComplex.from_boundary(cells, boundary)

    def homology(self, coeff: Coefficients | str | None = None) -> HomologyResult:
        return homology(self.chain_complex(), coeff)


def simplicial_chain_map(
    src: SimplicialComplex,
    dst: SimplicialComplex,
    vertex_map: Mapping[Vertex, Vertex] | Callable[[Vertex], Vertex],
) -> dict[int, Matrix]:
    """Chain map of a simplicial map; degenerate images go to zero."""
    f = vertex_map if callable(vertex_map) else vertex_map.__getitem__
    src_cc = src.chain_complex()
    dst_cc = dst.chain_complex()
    out = {}
    for n in src_cc.degrees:
        idx = dst_cc.index(n)
        cols = []
        for s in src_cc.basis(n):
            image = [f(v) for v in s]
            if len(set(image)) < len(image):
                cols.append({})
                continue
            target = as_simplex(image)
            if target not in idx:
                raise ValueError(f"image of {s} is not a simplex of the target")
            cols.append({idx[target]: permutation_sign(image, target)})
        out[n] = Matrix(dst_cc.rank(n), len(cols), cols)
    return out


def permutation_sign(seq: list, ordered: Simplex) -> int:
    pos = {v: i for i, v in enumerate(ordered)}
    perm = [pos[v] for v in seq]
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class Poset:
    """Finite partial order.

    ``relations`` are pairs ``(a, b)`` meaning a <= b; the reflexive and
    transitive closure is taken and antisymmetry is enforced.

    >>> p = Poset("abc", [("a", "b"), ("b", "c")])
    >>> p.le("a", "c"), p.le("c", "a")
    (True, False)
    """

    __slots__ = ("elements", "_up", "_down", "_pos")

    def __init__(self, elements: Iterable[Hashable], relations: Iterable[tuple[Hashable, Hashable]] = ()):
        elems = list(dict.fromkeys(elements))
        known = set(elems)
        succ: dict[Hashable, set] = {e: set() for e in elems}
        for a, b in relations:
            for x in (a, b):
                if x not in known:
                    raise ValueError(f"relation mentions unknown element {x!r}")
            succ[a].add(b)
        up = {}
        for e in elems:
            seen = {e}
            stack = [e]
            while stack:
                x = stack.pop()
                for y in succ[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            up[e] = seen
        self._setup(elems, up)
        self._check_antisymmetry()

    @classmethod
    def from_leq(cls, elements: Iterable[Hashable], leq: Callable[[Hashable, Hashable], bool], *, check: bool = True) -> "Poset":
        elems = list(dict.fromkeys(elements))
        up = {a: {b for b in elems if leq(a, b)} for a in elems}
        return cls._from_up(elems, up, check=check)

    @classmethod
    def _from_up(cls, elems, up, *, check: bool = True) -> "Poset":
        obj = cls.__new__(cls)
        obj._setup(list(elems), up)
        if check:
            for a in obj.elements:
                if a not in obj._up[a]:
                    raise ValueError(f"order is not reflexive at {a!r}")
                for b in obj._up[a]:
                    if not obj._up[b] <= obj._up[a]:
                        raise ValueError(f"order is not transitive through {b!r}")
            obj._check_antisymmetry()
        return obj

    def _setup(self, elems, up) -> None:
        self.elements = tuple(sorted(elems, key=vertex_key))
        self._pos = {e: i for i, e in enumerate(self.elements)}
        self._up = {e: frozenset(up[e]) for e in self.elements}
        down: dict[Hashable, set] = {e: set() for e in self.elements}
        for a, ups in self._up.items():
            for b in ups:
                down[b].add(a)
        self._down = {e: frozenset(s) for e, s in down.items()}

    def _check_antisymmetry(self) -> None:
        for a in self.elements:
            for b in self._up[a]:
                if b != a and a in self._up[b]:
                    raise ValueError(f"order is not antisymmetric: {a!r} and {b!r}")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._up

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self._up == other._up

    def __hash__(self) -> int:
        return hash(frozenset(self._up.items()))

    def __repr__(self) -> str:
        return f"<Poset with {len(self)} elements>"

    def le(self, a, b) -> bool:
        return b in self._up[a]

    def lt(self, a, b) -> bool:
        return a != b and b in self._up[a]

    def comparable(self, a, b) -> bool:
        return b in self._up[a] or a in self._up[b]

    def up(self, a) -> frozenset:
        return self._up[a]

    def down(self, a) -> frozenset:
        return self._down[a]

    def relations(self) -> Iterator[tuple]:
        for a in self.elements:
            for b in sorted(self._up[a], key=vertex_key):
                yield (a, b)

    def covers(self) -> list[tuple]:
        """Hasse diagram edges (a, b) with a < b and nothing in between."""
        out = []
        for a in self.elements:
            above = self._up[a] - {a}
            for b in above:
                if not any(c != b and b in self._up[c] for c in above):
                    out.append((a, b))
        return sorted(out, key=vertex_key)

    def op(self) -> "Poset":
        obj = Poset.__new__(Poset)
        obj.elements = self.elements
        obj._pos = self._pos
        obj._up = self._down
        obj._down = self._up
        return obj

    def subposet(self, elements: Iterable[Hashable]) -> "Poset":
        keep = set(elements)
        for e in keep:
            if e not in self._up:
                raise ValueError(f"{e!r} is not an element")
        return Poset._from_up(keep, {e: self._up[e] & keep for e in keep}, check=False)

    def maximal(self) -> tuple:
        return tuple(e for e in self.elements if len(self._up[e]) == 1)

    def minimal(self) -> tuple:
        return tuple(e for e in self.elements if len(self._down[e]) == 1)

    def top(self):
        m = self.maximal()
        return m[0] if len(m) == 1 and len(self._down[m[0]]) == len(self) else None

    def bottom(self):
        m = self.minimal()
        return m[0] if len(m) == 1 and len(self._up[m[0]]) == len(self) else None

    def chains(self) -> Iterator[tuple]:
        """All nonempty chains, each listed bottom to top."""
        order = sorted(self.elements, key=lambda e: (-len(self._up[e]), vertex_key(e)))
        rank = {e: i for i, e in enumerate(order)}
        strictly_above = {e: sorted(self._up[e] - {e}, key=rank.__getitem__) for e in order}

        def extend(chain):
            yield chain
            for b in strictly_above[chain[-1]]:
                yield from extend(chain + (b,))

        for e in order:
            yield from extend((e,))


class PosetMap:
    """Order-preserving map between posets, validated on construction."""

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source: Poset, target: Poset, mapping: Mapping[Hashable, Hashable] | Callable[[Hashable], Hashable]):
        f = mapping if callable(mapping) else mapping.__getitem__
        table = {}
        for a in source:
            try:
                fa = f(a)
            except KeyError:
                raise ValueError(f"map is undefined at {a!r}") from None
            if fa not in target:
                raise ValueError(f"image {fa!r} of {a!r} is not in the target")
            table[a] = fa
        for a in source:
            for b in source.up(a):
                if not target.le(table[a], table[b]):
                    raise ValueError(f"map is not order-preserving: {a!r} <= {b!r}")
        self.source = source
        self.target = target
        self.mapping = table

    def __call__(self, x):
        return self.mapping[x]

    def compose(self, inner: "PosetMap") -> "PosetMap":
        """self ∘ inner."""
        if inner.target != self.source:
            raise ValueError("maps are not composable")
        return PosetMap(inner.source, self.target, {a: self.mapping[b] for a, b in inner.mapping.items()})

    def __repr__(self) -> str:
        return f"<PosetMap {len(self.source)} -> {len(self.target)} elements>"


def identity_map(p: Poset) -> PosetMap:
    return PosetMap(p, p, {x: x for x in p})


def face_poset(k: SimplicialComplex) -> Poset:
    """Nonempty simplices of k ordered by inclusion."""
    up: dict[Simplex, set] = {s: set() for s in k.simplices()}
    for t in k.simplices():
        for s in faces(t):
            up[s].add(t)
    return Poset._from_up(up.keys(), up, check=False)


def order_complex(p: Poset) -> SimplicialComplex:
    """Complex of chains of p; identical for p and p.op()."""
    return SimplicialComplex.from_simplices(p.chains(), check=False)


def barycentric_subdivision(k: SimplicialComplex) -> SimplicialComplex:
    return order_complex(face_poset(k))


def order_complex_chain_map(f: PosetMap, src: SimplicialComplex | None = None, dst: SimplicialComplex | None = None) -> dict[int, Matrix]:
    """Chain map Δ(f) between order complexes."""
    src = src if src is not None else order_complex(f.source)
    dst = dst if dst is not None else order_complex(f.target)
    return simplicial_chain_map(src, dst, f.mapping)


def fiber(f: PosetMap, q: Hashable, side: str = "below") -> Poset:
    """The subposet {p | f(p) <= q} (``below``) or {p | f(p) >= q} (``above``)."""
    if q not in f.target:
        raise ValueError(f"{q!r} is not an element of the target")
    if side == "below":
        keep = [p for p in f.source if f.target.le(f(p), q)]
    elif side == "above":
        keep = [p for p in f.source if f.target.le(q, f(p))]
    else:
        raise ValueError(f"side must be 'below' or 'above', got {side!r}")
    return f.source.subposet(keep)


@dataclass(frozen=True)
class ConeCertificate:
    apex: Hashable
    kind: str = "cone"


@dataclass(frozen=True)
class NotContractible:
    degree: int
    kind: str = "not-contractible"


@dataclass(frozen=True)
class AcyclicUndetermined:
    kind: str = "acyclic-undetermined"


ContractibilityCertificate = ConeCertificate | NotContractible | AcyclicUndetermined


def reduced_nonzero_degree(h: HomologyResult) -> int | None:
    """Lowest degree of nonzero reduced homology of a nonempty space."""
    for n in sorted(h.nonzero()):
        b, t = h.nonzero()[n]
        if n == 0:
            b -= 1
        if b or t:
            return n
    return None


def contractibility_certificate(p: Poset) -> ContractibilityCertificate:
    """Cone apex, a homology witness against contractibility, or neither."""
    if len(p) == 0:
        return NotContractible(-1)
    n = len(p)
    for e in p.elements:
        if len(p.up(e)) + len(p.down(e)) - 1 == n:
            return ConeCertificate(e)
    deg = reduced_nonzero_degree(order_complex(p).homology())
    if deg is not None:
        return NotContractible(deg)
    return AcyclicUndetermined()


@dataclass(frozen=True)
class GaloisVerdict:
    holds: bool
    witness: Hashable | None = None
    condition: str | None = None


def galois_check(l: PosetMap, u: PosetMap) -> GaloisVerdict:
    """Check p <= u(l(p)) on the source and l(u(q)) <= q on the target."""
    if l.source != u.target or l.target != u.source:
        raise ValueError("l: P -> Q and u: Q -> P must have matching endpoints")
    for p in l.source:
        if not l.source.le(p, u(l(p))):
            return GaloisVerdict(False, p, "p <= u(l(p))")
    for q in l.target:
        if not l.target.le(l(u(q)), q):
            return GaloisVerdict(False, q, "l(u(q)) <= q")
    return GaloisVerdict(True)


def galois_morphism_check(l: PosetMap, u: PosetMap, l2: PosetMap, u2: PosetMap, alpha: PosetMap, beta: PosetMap) -> GaloisVerdict:
    """Check that (alpha, beta) is a morphism from (l, u) to (l2, u2).

    Conditions: l2(alpha(p)) <= beta(l(p)) for every p, and
    alpha(u(q)) <= u2(beta(q)) for every q.
    """
    if alpha.source != l.source or alpha.target != l2.source or beta.source != l.target or beta.target != l2.target:
        raise ValueError("alpha and beta must connect the two Galois connections")
    for p in l.source:
        if not l2.target.le(l2(alpha(p)), beta(l(p))):
            return GaloisVerdict(False, p, "l2(alpha(p)) <= beta(l(p))")
    for q in l.target:
        if not l2.source.le(alpha(u(q)), u2(beta(q))):
            return GaloisVerdict(False, q, "alpha(u(q)) <= u2(beta(q))")
    return GaloisVerdict(True)
