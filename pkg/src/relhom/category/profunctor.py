"""Profunctors between finite categories: cograph, graph, fibers, the double
complex of heteromorphism strings and the long exact sequence.

A heteromorphism φ: c ⇝ d is acted on by f: c' -> c on the left (φ∘f)
and by g: d -> d' on the right (g∘φ).

>>> from relhom.simplicial import Poset
>>> p = profunctor_from_relation(Poset("a"), Poset("x"), [("a", "x")])
>>> j, _, _ = cograph(p)
>>> len(j.objects), len(j.morphisms)
(2, 3)
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping

from ..algebra import (
    ChainComplex,
    Coefficients,
    DoubleComplex,
    HomologyBasis,
    HomologyResult,
    LESReport,
    Matrix,
    as_coefficients,
    direct_sum,
    homology,
    induced_map,
    les_from_chain_maps,
)
from ..simplicial import Poset, PosetMap, galois_check
from .core import (
    CategoryError,
    FiniteCategory,
    FunctorData,
    _require_loop_free,
    _sorted,
    map_string,
    nerve_chain_complex,
    nerve_chain_map,
    nerve_face,
    nerve_strings,
    poset_as_category,
)


class ProfunctorData:
    """Heteromorphisms with endpoints and left/right action tables.

    ``left[(phi, f)]`` is φ∘f and ``right[(g, phi)]`` is g∘φ.  Actions by
    identities may be omitted.
    """

    def __init__(
        self,
        c: FiniteCategory,
        d: FiniteCategory,
        hets: Mapping[Hashable, tuple[Hashable, Hashable]],
        left: Mapping[tuple[Hashable, Hashable], Hashable] = (),
        right: Mapping[tuple[Hashable, Hashable], Hashable] = (),
        *,
        check: bool = True,
    ):
        self.C, self.D = c, d
        self._src = {h: st[0] for h, st in hets.items()}
        self._tgt = {h: st[1] for h, st in hets.items()}
        self.hets = _sorted(self._src)
        for h in self.hets:
            if self._src[h] not in c or self._tgt[h] not in d:
                raise CategoryError(f"heteromorphism {h!r} has an endpoint outside C or D")
        self._left = dict(left)
        self._right = dict(right)
        for h in self.hets:
            self._left.setdefault((h, c.identity(self._src[h])), h)
            self._right.setdefault((d.identity(self._tgt[h]), h), h)
        self._between: dict = {}
        self._from: dict = {x: [] for x in c.objects}
        self._to: dict = {y: [] for y in d.objects}
        for h in self.hets:
            self._between.setdefault((self._src[h], self._tgt[h]), []).append(h)
            self._from[self._src[h]].append(h)
            self._to[self._tgt[h]].append(h)
        if check:
            self.validate()

    def source(self, h) -> Hashable:
        return self._src[h]

    def target(self, h) -> Hashable:
        return self._tgt[h]

    def het(self, c, d) -> tuple:
        return tuple(self._between.get((c, d), ()))

    def hets_from(self, c) -> tuple:
        return tuple(self._from[c])

    def hets_to(self, d) -> tuple:
        return tuple(self._to[d])

    def act_left(self, h, f) -> Hashable:
        """h∘f."""
        return self._left[(h, f)]

    def act_right(self, g, h) -> Hashable:
        """g∘h."""
        return self._right[(g, h)]

    def left_table(self) -> dict:
        return dict(self._left)

    def right_table(self) -> dict:
        return dict(self._right)

    def __repr__(self) -> str:
        return f"<ProfunctorData: {len(self.hets)} heteromorphisms>"

    def validate(self) -> None:
        c, d = self.C, self.D
        for (h, f), h2 in self._left.items():
            if h not in self._src or f not in c._src or c.target(f) != self._src[h]:
                raise CategoryError(f"left action entry ({h!r}, {f!r}) is not composable")
            if h2 not in self._src or (self._src[h2], self._tgt[h2]) != (c.source(f), self._tgt[h]):
                raise CategoryError(f"{h!r}∘{f!r} = {h2!r} has the wrong endpoints")
        for (g, h), h2 in self._right.items():
            if h not in self._src or g not in d._src or d.source(g) != self._tgt[h]:
                raise CategoryError(f"right action entry ({g!r}, {h!r}) is not composable")
            if h2 not in self._src or (self._src[h2], self._tgt[h2]) != (self._src[h], d.target(g)):
                raise CategoryError(f"{g!r}∘{h!r} = {h2!r} has the wrong endpoints")
        for h in self.hets:
            x, y = self._src[h], self._tgt[h]
            if self._left[(h, c.identity(x))] != h or self._right[(d.identity(y), h)] != h:
                raise CategoryError(f"identity acts nontrivially on {h!r}")
            for f in c.in_arrows(x):
                if (h, f) not in self._left:
                    raise CategoryError(f"left action of {f!r} on {h!r} is missing")
            for g in d.out_arrows(y):
                if (g, h) not in self._right:
                    raise CategoryError(f"right action of {g!r} on {h!r} is missing")
        for h in self.hets:
            x, y = self._src[h], self._tgt[h]
            for f in c.in_arrows(x):
                hf = self._left[(h, f)]
                for f2 in c.in_arrows(c.source(f)):
                    if self._left[(hf, f2)] != self._left[(h, c.compose(f, f2))]:
                        raise CategoryError(f"left action is not functorial at ({h!r}, {f!r}, {f2!r})")
                for g in d.out_arrows(y):
                    if self._right[(g, hf)] != self._left[(self._right[(g, h)], f)]:
                        raise CategoryError(f"actions do not commute at ({g!r}, {h!r}, {f!r})")
            for g in d.out_arrows(y):
                gh = self._right[(g, h)]
                for g2 in d.out_arrows(d.target(g)):
                    if self._right[(g2, gh)] != self._right[(d.compose(g2, g), h)]:
                        raise CategoryError(f"right action is not functorial at ({g2!r}, {g!r}, {h!r})")


def profunctor_from_relation(p: Poset, q: Poset, rel: Iterable[tuple[Hashable, Hashable]]) -> ProfunctorData:
    """Posetal profunctor cat(P)^op × cat(Q^op) -> Set of a downward-closed R ⊆ P × Q.

    Heteromorphisms are the related pairs; p' <= p acts on the left and
    q' <= q (an arrow q -> q' of Q^op) on the right.
    """
    rel = set(rel)
    for a, b in rel:
        if a not in p or b not in q:
            raise ValueError(f"pair ({a!r}, {b!r}) is not in P x Q")
        for a2 in p.down(a):
            if (a2, b) not in rel:
                raise ValueError(f"relation is not downward closed: ({a2!r}, {b!r}) missing")
        for b2 in q.down(b):
            if (a, b2) not in rel:
                raise ValueError(f"relation is not downward closed: ({a!r}, {b2!r}) missing")
    c, d = poset_as_category(p), poset_as_category(q.op())
    left, right = {}, {}
    for a, b in rel:
        for a2 in p.down(a):
            left[((a, b), (a2, a))] = (a2, b)
        for b2 in q.down(b):
            right[((b, b2), (a, b))] = (a, b2)
    return ProfunctorData(c, d, {h: h for h in rel}, left, right, check=False)


# -- adjunctions -------------------------------------------------------------


class AdjunctionData:
    """L: C -> D, U: D -> C and hom bijections ``phi[(c, d, k)]`` for k: Lc -> d."""

    def __init__(self, l: FunctorData, u: FunctorData, phi: Mapping[tuple, Hashable], *, check: bool = True):
        self.L, self.U = l, u
        self.C, self.D = l.source, l.target
        self.phi = dict(phi)
        if check:
            self.validate()

    def validate(self) -> None:
        l, u, c, d = self.L, self.U, self.C, self.D
        if u.source is not d and u.source != d or u.target is not c and u.target != c:
            raise CategoryError("U must go from the target of L back to its source")
        for x in c.objects:
            for y in d.objects:
                ks = d.hom(l.obj(x), y)
                images = []
                for k in ks:
                    m = self.phi.get((x, y, k))
                    if m is None:
                        raise CategoryError(f"Φ is missing at ({x!r}, {y!r}, {k!r})")
                    if (c.source(m), c.target(m)) != (x, u.obj(y)):
                        raise CategoryError(f"Φ({k!r}) is not a morphism {x!r} -> U{y!r}")
                    images.append(m)
                if len(set(images)) != len(images) or set(images) != set(c.hom(x, u.obj(y))):
                    raise CategoryError(f"Φ is not a bijection at ({x!r}, {y!r})")
        for (x, y, k), m in self.phi.items():
            for f in c.in_arrows(x):
                x2 = c.source(f)
                if self.phi[(x2, y, d.compose(k, l(f)))] != c.compose(m, f):
                    raise CategoryError(f"Φ is not natural in C at ({x!r}, {y!r}, {k!r}) along {f!r}")
            for g in d.out_arrows(y):
                y2 = d.target(g)
                if self.phi[(x, y2, d.compose(g, k))] != c.compose(u(g), m):
                    raise CategoryError(f"Φ is not natural in D at ({x!r}, {y!r}, {k!r}) along {g!r}")


def adjunction_from_galois(l: PosetMap, u: PosetMap) -> AdjunctionData:
    """Galois connection l ⊣ u as an adjunction of poset categories."""
    v = galois_check(l, u)
    if not v.holds:
        raise ValueError(f"not a Galois connection: {v.condition} fails at {v.witness!r}")
    c, d = poset_as_category(l.source), poset_as_category(l.target)
    lf = FunctorData(c, d, {x: l(x) for x in c.objects}, {(x, y): (l(x), l(y)) for x, y in c.morphisms}, check=False)
    uf = FunctorData(d, c, {y: u(y) for y in d.objects}, {(x, y): (u(x), u(y)) for x, y in d.morphisms}, check=False)
    phi = {}
    for x in c.objects:
        for y in l.target.up(l(x)):
            phi[(x, y, (l(x), y))] = (x, u(y))
    return AdjunctionData(lf, uf, phi, check=False)


def profunctor_from_adjunction(a: AdjunctionData) -> ProfunctorData:
    """Heteromorphisms ``(c, d, k)`` for k ∈ hom_D(Lc, d)."""
    c, d, l = a.C, a.D, a.L
    hets, left, right = {}, {}, {}
    for x in c.objects:
        for y in d.objects:
            for k in d.hom(l.obj(x), y):
                hets[(x, y, k)] = (x, y)
    for x, y, k in hets:
        for f in c.in_arrows(x):
            left[((x, y, k), f)] = (c.source(f), y, d.compose(k, l(f)))
        for g in d.out_arrows(y):
            right[(g, (x, y, k))] = (x, d.target(g), d.compose(g, k))
    return ProfunctorData(c, d, hets, left, right, check=False)


# -- cograph and graph ---------------------------------------------------------


def cograph(p: ProfunctorData) -> tuple[FiniteCategory, FunctorData, FunctorData]:
    """Collage J with objects ("C", c), ("D", d) and its inclusions ι_C, ι_D.

    Morphisms are ("C", f), ("D", g) and ("P", φ); nothing goes from D to C.
    """
    c, d = p.C, p.D
    morphisms, identities, comp = {}, {}, {}
    for f in c.morphisms:
        morphisms[("C", f)] = (("C", c.source(f)), ("C", c.target(f)))
    for g in d.morphisms:
        morphisms[("D", g)] = (("D", d.source(g)), ("D", d.target(g)))
    for h in p.hets:
        morphisms[("P", h)] = (("C", p.source(h)), ("D", p.target(h)))
    for x in c.objects:
        identities[("C", x)] = ("C", c.identity(x))
    for y in d.objects:
        identities[("D", y)] = ("D", d.identity(y))
    for (g, f), h in c.composition_table().items():
        comp[(("C", g), ("C", f))] = ("C", h)
    for (g, f), h in d.composition_table().items():
        comp[(("D", g), ("D", f))] = ("D", h)
    for (h, f), h2 in p.left_table().items():
        comp[(("P", h), ("C", f))] = ("P", h2)
    for (g, h), h2 in p.right_table().items():
        comp[(("D", g), ("P", h))] = ("P", h2)
    j = FiniteCategory([("C", x) for x in c.objects] + [("D", y) for y in d.objects], morphisms, identities, comp, check=False)
    iota_c = FunctorData(c, j, {x: ("C", x) for x in c.objects}, {f: ("C", f) for f in c.morphisms}, check=False)
    iota_d = FunctorData(d, j, {y: ("D", y) for y in d.objects}, {g: ("D", g) for g in d.morphisms}, check=False)
    return j, iota_c, iota_d


def graph(p: ProfunctorData) -> tuple[FiniteCategory, FunctorData, FunctorData]:
    """Category G of heteromorphisms and its projections ρ_C, ρ_D.

    A morphism ``(phi, f, g, phi2)`` is a pair f: c -> c2, g: d -> d2 with
    g∘φ = φ2∘f.
    """
    c, d = p.C, p.D
    inverse_left: dict = {}
    for (h, f), h2 in p.left_table().items():
        inverse_left.setdefault((f, h2), []).append(h)
    morphisms, identities = {}, {}
    for h in p.hets:
        x, y = p.source(h), p.target(h)
        identities[h] = (h, c.identity(x), d.identity(y), h)
        for f in (c.identity(x),) + c.out_arrows(x):
            for g in (d.identity(y),) + d.out_arrows(y):
                for h2 in inverse_left.get((f, p.act_right(g, h)), ()):
                    morphisms[(h, f, g, h2)] = (h, h2)
    outgoing: dict = {}
    for m in morphisms:
        outgoing.setdefault(m[0], []).append(m)
    comp = {}
    for m1 in morphisms:
        for m2 in outgoing[m1[3]]:
            comp[(m2, m1)] = (m1[0], c.compose(m2[1], m1[1]), d.compose(m2[2], m1[2]), m2[3])
    g_cat = FiniteCategory(p.hets, morphisms, identities, comp, check=False)
    rho_c = FunctorData(g_cat, c, {h: p.source(h) for h in p.hets}, {m: m[1] for m in morphisms}, check=False)
    rho_d = FunctorData(g_cat, d, {h: p.target(h) for h in p.hets}, {m: m[2] for m in morphisms}, check=False)
    return g_cat, rho_c, rho_d


# -- fibers ------------------------------------------------------------------------


def _resolve_side(p: ProfunctorData, anchor, side: str | None) -> str:
    in_c, in_d = anchor in p.C, anchor in p.D
    if side is None:
        if in_c and in_d:
            raise ValueError(f"{anchor!r} is an object of both C and D; pass side='C' or side='D'")
        if not in_c and not in_d:
            raise ValueError(f"{anchor!r} is not an object of C or D")
        return "C" if in_c else "D"
    if side not in ("C", "D"):
        raise ValueError(f"side must be 'C' or 'D', got {side!r}")
    if not (in_c if side == "C" else in_d):
        raise ValueError(f"{anchor!r} is not an object of {side}")
    return side


def fiber_category(p: ProfunctorData, anchor: Hashable, side: str | None = None) -> FiniteCategory:
    """P(c, D) for an object c of C, or P(C, d) for an object d of D.

    In P(c, D) a morphism ``(phi, g, phi2)`` has φ2 = g∘φ; in P(C, d) a
    morphism ``(phi, f, phi2)`` has φ = φ2∘f.
    """
    side = _resolve_side(p, anchor, side)
    morphisms, identities = {}, {}
    if side == "C":
        objects = p.hets_from(anchor)
        cat = p.D
        for h in objects:
            y = p.target(h)
            identities[h] = (h, cat.identity(y), h)
            for g in (cat.identity(y),) + cat.out_arrows(y):
                morphisms[(h, g, p.act_right(g, h))] = (h, p.act_right(g, h))
    else:
        objects = p.hets_to(anchor)
        cat = p.C
        for h2 in objects:
            x = p.source(h2)
            identities[h2] = (h2, cat.identity(x), h2)
            for f in (cat.identity(x),) + cat.in_arrows(x):
                morphisms[(p.act_left(h2, f), f, h2)] = (p.act_left(h2, f), h2)
    outgoing: dict = {}
    for m in morphisms:
        outgoing.setdefault(m[0], []).append(m)
    comp = {}
    for m1 in morphisms:
        for m2 in outgoing[m1[2]]:
            comp[(m2, m1)] = (m1[0], cat.compose(m2[1], m1[1]), m2[2])
    return FiniteCategory(objects, morphisms, identities, comp, check=False)


def _fiber_pullback(p: ProfunctorData, f, src: FiniteCategory, dst: FiniteCategory) -> FunctorData:
    """f: c -> c2 gives P(c2, D) -> P(c, D), φ ↦ φ∘f."""
    return FunctorData(
        src, dst,
        {h: p.act_left(h, f) for h in src.objects},
        {m: (p.act_left(m[0], f), m[1], p.act_left(m[2], f)) for m in src.morphisms},
        check=False,
    )


def _fiber_pushforward(p: ProfunctorData, g, src: FiniteCategory, dst: FiniteCategory) -> FunctorData:
    """g: d -> d2 gives P(C, d) -> P(C, d2), φ ↦ g∘φ."""
    return FunctorData(
        src, dst,
        {h: p.act_right(g, h) for h in src.objects},
        {m: (p.act_right(g, m[0]), m[1], p.act_right(g, m[2])) for m in src.morphisms},
        check=False,
    )


def fiber_coefficient_complex(p: ProfunctorData, degree: int, side: str = "C", coeff: Coefficients | str = "Q") -> ChainComplex:
    """C_•(C, F_C^q) with F_C^q(c) = H_q(P(c, D)), or C_•(D, F_D^p) dually.

    Side "C": a string c_0 -> ... -> c_n carries F at c_n; the last face
    acts through the map induced by its final arrow.  Side "D": a string
    d_0 -> ... -> d_n carries F at d_0; the first face pushes forward along
    its first arrow.  Entries live in the coefficient field.
    """
    coeff = as_coefficients(coeff)
    if not coeff.is_field:
        raise ValueError("fiber coefficients are computed over a field")
    base = p.C if side == "C" else p.D
    if side not in ("C", "D"):
        raise ValueError(f"side must be 'C' or 'D', got {side!r}")
    _require_loop_free(base, side)
    fibers = {x: fiber_category(p, x, side) for x in base.objects}
    ccs = {x: nerve_chain_complex(fib) for x, fib in fibers.items()}
    hb = {x: HomologyBasis(cc, degree, coeff) if degree in cc.degrees else None for x, cc in ccs.items()}
    dim = {x: (b.dimension if b is not None else 0) for x, b in hb.items()}
    transport: dict = {}
    for m in base.morphisms:
        if base.is_identity(m):
            continue
        a, b = base.source(m), base.target(m)
        if side == "C":
            src, dst = b, a
            func = _fiber_pullback(p, m, fibers[b], fibers[a])
        else:
            src, dst = a, b
            func = _fiber_pushforward(p, m, fibers[a], fibers[b])
        if not dim[src] or not dim[dst]:
            transport[m] = Matrix.zeros(dim[dst], dim[src])
            continue
        chain = nerve_chain_map(func, ccs[src], ccs[dst])
        transport[m] = induced_map(chain, ccs[src], ccs[dst], coeff, bases=({degree: hb[src]}, {degree: hb[dst]}))[degree]
    strings = nerve_strings(base, len(base.objects))

    def anchor(s):
        start, arrows = s
        if side == "D" or not arrows:
            return start
        return base.target(arrows[-1])

    cells = {n: [(s, k) for s in ss for k in range(dim[anchor(s)])] for n, ss in strings.items()}

    def boundary(n, cell):
        s, k = cell
        for i in range(n + 1):
            face = nerve_face(base, s, i)
            if face is None:
                continue
            sign = (-1) ** i
            twisted = (side == "C" and i == n) or (side == "D" and i == 0)
            if not twisted:
                yield (face, k), sign
                continue
            arrow = s[1][-1] if side == "C" else s[1][0]
            for row, x in transport[arrow].column(k).items():
                yield (face, row), sign * x

    return ChainComplex.from_boundary(cells, boundary)


def fiber_coefficient_homology(p: ProfunctorData, degree: int, side: str = "C", coeff: Coefficients | str = "Q") -> HomologyResult:
    """H_•(C, F_C^degree) for side "C", H_•(D, F_D^degree) for side "D"."""
    coeff = as_coefficients(coeff)
    return homology(fiber_coefficient_complex(p, degree, side, coeff), coeff)


# -- double complex and long exact sequence ----------------------------------------------


def _strings_ending(c: FiniteCategory, length: int) -> dict:
    """Arrow tuples of non-identity strings by (end object, length)."""
    out: dict = {(x, 0): [()] for x in c.objects}
    for n in range(1, length + 1):
        found = False
        for x in c.objects:
            acc = []
            for f in c.in_arrows(x):
                acc.extend(s + (f,) for s in out.get((c.source(f), n - 1), ()))
            if acc:
                out[(x, n)] = acc
                found = True
        if not found:
            break
    return out


def _strings_starting(d: FiniteCategory, length: int) -> dict:
    out: dict = {(y, 0): [()] for y in d.objects}
    for n in range(1, length + 1):
        found = False
        for y in d.objects:
            acc = []
            for g in d.out_arrows(y):
                acc.extend((g,) + s for s in out.get((d.target(g), n - 1), ()))
            if acc:
                out[(y, n)] = acc
                found = True
        if not found:
            break
    return out


def profunctor_double_complex(p: ProfunctorData, coeff: Coefficients | str | None = None, *, augmented: bool = False) -> DoubleComplex:
    """Cells ``(cs, phi, ds)`` at (len cs, len ds): strings c_0 -> ... -> c_p ⇝ d_0 -> ... -> d_q.

    Horizontal δ = Σ (-1)^i u_i over the faces in C, the last one acting on
    φ from the left; vertical ∂ = (-1)^p Σ (-1)^j v_j over the faces in D,
    the first one acting on φ from the right.  The augmented version adds
    normalized chains of C in row -1 and of D in column -1, with
    ∂_{p,0} = (-1)^p (drop φ), δ_{0,q} = (drop φ), δ_{p,-1} = d_C and
    ∂_{-1,q} = -d_D.  Chains are integral; ``coeff`` is accepted for symmetry.
    """
    c, d = p.C, p.D
    _require_loop_free(c, "C")
    _require_loop_free(d, "D")
    ends = _strings_ending(c, len(c.objects))
    starts = _strings_starting(d, len(d.objects))
    cells: dict = {}
    for h in p.hets:
        x, y = p.source(h), p.target(h)
        pl = 0
        while (x, pl) in ends:
            ql = 0
            while (y, ql) in starts:
                bucket = cells.setdefault((pl, ql), [])
                bucket.extend((cs, h, ds) for cs in ends[(x, pl)] for ds in starts[(y, ql)])
                ql += 1
            pl += 1
    if augmented:
        for n, ss in nerve_strings(c, len(c.objects)).items():
            if ss:
                cells[(n, -1)] = list(ss)
        for n, ss in nerve_strings(d, len(d.objects)).items():
            if ss:
                cells[(-1, n)] = list(ss)
    cells = {pq: v for pq, v in cells.items() if v}
    if not cells:
        return DoubleComplex({(0, 0): ()})
    idx = {pq: {cell: k for k, cell in enumerate(v)} for pq, v in cells.items()}

    def build(src, dst, terms):
        if dst not in cells:
            return None
        cols = []
        for cell in cells[src]:
            col: dict = {}
            for face, x in terms(cell):
                k = idx[dst][face]
                col[k] = col.get(k, 0) + x
            cols.append(col)
        return Matrix(len(cells[dst]), len(cols), cols)

    def delta(cell):
        cs, h, ds = cell
        n = len(cs)
        for i in range(n + 1):
            if i == 0:
                yield (cs[1:], h, ds), 1
            elif i == n:
                yield (cs[:-1], p.act_left(h, cs[-1]), ds), (-1) ** n
            else:
                comp = c.compose(cs[i], cs[i - 1])
                if not c.is_identity(comp):
                    yield (cs[: i - 1] + (comp,) + cs[i + 1:], h, ds), (-1) ** i

    def partial(cell, pp):
        cs, h, ds = cell
        n = len(ds)
        sign = (-1) ** pp
        for j in range(n + 1):
            if j == 0:
                yield (cs, p.act_right(ds[0], h), ds[1:]), sign
            elif j == n:
                yield (cs, h, ds[:-1]), sign * (-1) ** n
            else:
                comp = d.compose(ds[j], ds[j - 1])
                if not d.is_identity(comp):
                    yield (cs, h, ds[: j - 1] + (comp,) + ds[j + 1:]), sign * (-1) ** j

    def nerve_terms(cat, sign):
        def terms(s):
            for i in range(len(s[1]) + 1):
                face = nerve_face(cat, s, i)
                if face is not None:
                    yield face, sign * (-1) ** i
        return terms

    horizontal, vertical = {}, {}
    for (pp, qq) in cells:
        m = None
        if pp >= 1 and qq >= 0:
            m = build((pp, qq), (pp - 1, qq), delta)
        elif pp == 0 and qq >= 0 and augmented:
            m = build((pp, qq), (-1, qq), lambda cell: [((p.target(cell[1]), cell[2]), 1)])
        elif pp >= 1 and qq == -1:
            m = build((pp, qq), (pp - 1, qq), nerve_terms(c, 1))
        if m is not None:
            horizontal[(pp, qq)] = m
        m = None
        if qq >= 1 and pp >= 0:
            m = build((pp, qq), (pp, qq - 1), lambda cell, pp=pp: partial(cell, pp))
        elif qq == 0 and pp >= 0 and augmented:
            m = build(
                (pp, qq), (pp, -1),
                lambda cell, pp=pp: [((c.source(cell[0][0]) if cell[0] else p.source(cell[1]), cell[0]), (-1) ** pp)],
            )
        elif qq >= 1 and pp == -1:
            m = build((pp, qq), (pp, qq - 1), nerve_terms(d, -1))
        if m is not None:
            vertical[(pp, qq)] = m
    return DoubleComplex(cells, horizontal, vertical)


def les_chain_maps_profunctor(p: ProfunctorData) -> tuple[ChainComplex, ChainComplex, ChainComplex, dict, dict]:
    """N(G), N(C) ⊕ N(D), N(J) with α = (ρ_C, ρ_D) and β = (ι_C, -ι_D)."""
    c, d = p.C, p.D
    _require_loop_free(c, "C")
    _require_loop_free(d, "D")
    g_cat, rho_c, rho_d = graph(p)
    j_cat, iota_c, iota_d = cograph(p)
    g_cc, c_cc, d_cc, j_cc = (nerve_chain_complex(x) for x in (g_cat, c, d, j_cat))
    s_cc = direct_sum(c_cc, d_cc, ("C", "D"))
    alpha = {}
    for n in g_cc.degrees:
        idx = s_cc.index(n) if n in s_cc.degrees else {}
        cols = []
        for s in g_cc.basis(n):
            col: dict = {}
            for tag, func in (("C", rho_c), ("D", rho_d)):
                t = map_string(func, s)
                if t is not None:
                    col[idx[(tag, t)]] = 1
            cols.append(col)
        alpha[n] = Matrix(len(idx), len(cols), cols)
    beta = {}
    for n in s_cc.degrees:
        idx = j_cc.index(n)
        cols = []
        for tag, s in s_cc.basis(n):
            func, sign = (iota_c, 1) if tag == "C" else (iota_d, -1)
            cols.append({idx[map_string(func, s)]: sign})
        beta[n] = Matrix(len(idx), len(cols), cols)
    return g_cc, s_cc, j_cc, alpha, beta


def verify_les_profunctor(p: ProfunctorData, coeff: Coefficients | str = "Q") -> LESReport:
    """Long exact sequence H(G) -> H(C) ⊕ H(D) -> H(J) -> over a field."""
    coeff = as_coefficients(coeff)
    g_cc, s_cc, j_cc, alpha, beta = les_chain_maps_profunctor(p)
    return les_from_chain_maps(g_cc, s_cc, j_cc, alpha, beta, coeff)
