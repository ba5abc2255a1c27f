"""Finite categories, functors, normalized nerves and constant-coefficient homology.

A nerve string is ``(start, arrows)``: a start object and a tuple of
composable non-identity morphisms.  Degree 0 strings have no arrows.

>>> from relhom.simplicial import Poset
>>> c = poset_as_category(Poset("ab", [("a", "b")]))
>>> len(c.morphisms), category_homology(c).betti_numbers()
(3, (1,))
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

from ..algebra import (
    ChainComplex,
    Coefficients,
    HomologyResult,
    Matrix,
    as_coefficients,
    homology,
)
from ..simplicial import Poset, vertex_key

Chain = tuple  # (start object, tuple of arrows)


class CategoryError(ValueError):
    """A category, functor or profunctor violates one of its laws."""


def _sorted(xs: Iterable) -> tuple:
    return tuple(sorted(xs, key=vertex_key))


class FiniteCategory:
    """Objects, morphisms with endpoints, identities and a total composition table.

    ``composition[(g, f)]`` is g∘f, defined for f: a -> b and g: b -> c.
    Composites with identities may be omitted; they are filled in.
    """

    def __init__(
        self,
        objects: Iterable[Hashable],
        morphisms: Mapping[Hashable, tuple[Hashable, Hashable]],
        identities: Mapping[Hashable, Hashable],
        composition: Mapping[tuple[Hashable, Hashable], Hashable] = (),
        *,
        check: bool = True,
    ):
        self.objects = _sorted(set(objects))
        self._src = {m: st[0] for m, st in morphisms.items()}
        self._tgt = {m: st[1] for m, st in morphisms.items()}
        self.morphisms = _sorted(self._src)
        obj_set = set(self.objects)
        for m in self.morphisms:
            if self._src[m] not in obj_set or self._tgt[m] not in obj_set:
                raise CategoryError(f"morphism {m!r} has an endpoint outside the objects")
        self._id = dict(identities)
        for x in self.objects:
            i = self._id.get(x)
            if i is None:
                raise CategoryError(f"object {x!r} has no identity")
            if i not in self._src or self._src[i] != x or self._tgt[i] != x:
                raise CategoryError(f"identity of {x!r} is not an endomorphism of {x!r}")
        if set(self._id) - obj_set:
            raise CategoryError("identity given for an unknown object")
        self._ids = frozenset(self._id.values())
        self._comp = dict(composition)
        for m in self.morphisms:
            self._comp.setdefault((m, self._id[self._src[m]]), m)
            self._comp.setdefault((self._id[self._tgt[m]], m), m)
        out: dict = {x: [] for x in self.objects}
        inc: dict = {x: [] for x in self.objects}
        hom: dict = {}
        for m in self.morphisms:
            hom.setdefault((self._src[m], self._tgt[m]), []).append(m)
            if m not in self._ids:
                out[self._src[m]].append(m)
                inc[self._tgt[m]].append(m)
        self._out = {x: tuple(v) for x, v in out.items()}
        self._in = {x: tuple(v) for x, v in inc.items()}
        self._hom = {k: tuple(v) for k, v in hom.items()}
        if check:
            self.validate()

    # -- accessors -------------------------------------------------------

    def source(self, m) -> Hashable:
        return self._src[m]

    def target(self, m) -> Hashable:
        return self._tgt[m]

    def identity(self, x) -> Hashable:
        return self._id[x]

    def is_identity(self, m) -> bool:
        return m in self._ids

    def compose(self, g, f) -> Hashable:
        """g∘f."""
        try:
            return self._comp[(g, f)]
        except KeyError:
            if self._tgt[f] != self._src[g]:
                raise CategoryError(f"{g!r} and {f!r} are not composable") from None
            raise

    def hom(self, a, b) -> tuple:
        return self._hom.get((a, b), ())

    def out_arrows(self, x) -> tuple:
        """Non-identity morphisms with source x."""
        return self._out[x]

    def in_arrows(self, x) -> tuple:
        """Non-identity morphisms with target x."""
        return self._in[x]

    def composition_table(self) -> dict:
        return dict(self._comp)

    def __contains__(self, x) -> bool:
        return x in self._id

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return (self.objects, self._src, self._tgt, self._id, self._comp) == (
            other.objects, other._src, other._tgt, other._id, other._comp
        )

    def __repr__(self) -> str:
        return f"<FiniteCategory: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    # -- laws ------------------------------------------------------------

    def validate(self) -> None:
        """Composition total on composable pairs, identity laws, associativity."""
        for (g, f), h in self._comp.items():
            if f not in self._src or g not in self._src:
                raise CategoryError(f"composite {g!r}∘{f!r} names an unknown morphism")
            if self._tgt[f] != self._src[g]:
                raise CategoryError(f"composite given for non-composable pair ({g!r}, {f!r})")
            if h not in self._src or self._src[h] != self._src[f] or self._tgt[h] != self._tgt[g]:
                raise CategoryError(f"{g!r}∘{f!r} = {h!r} has the wrong endpoints")
        for m in self.morphisms:
            if self._comp[(m, self._id[self._src[m]])] != m or self._comp[(self._id[self._tgt[m]], m)] != m:
                raise CategoryError(f"identity law fails for {m!r}")
        for f in self.morphisms:
            for g in self._out[self._tgt[f]]:
                if (g, f) not in self._comp:
                    raise CategoryError(f"composite {g!r}∘{f!r} is missing")
        for f in self.morphisms:
            if f in self._ids:
                continue
            for g in self._out[self._tgt[f]]:
                gf = self._comp[(g, f)]
                for h in self._out[self._tgt[g]]:
                    if self._comp[(h, gf)] != self._comp[(self._comp[(h, g)], f)]:
                        raise CategoryError(f"associativity fails for ({h!r}, {g!r}, {f!r})")


def discrete_category(objects: Iterable[Hashable]) -> FiniteCategory:
    objs = list(objects)
    return FiniteCategory(objs, {("id", x): (x, x) for x in objs}, {x: ("id", x) for x in objs})


def poset_as_category(p: Poset) -> FiniteCategory:
    """One morphism ``(x, y)`` for each x <= y; identities are ``(x, x)``."""
    morphisms = {(x, y): (x, y) for x, y in p.relations()}
    composition = {}
    for y in p:
        for x in p.down(y):
            for z in p.up(y):
                composition[((y, z), (x, y))] = (x, z)
    return FiniteCategory(p.elements, morphisms, {x: (x, x) for x in p}, composition, check=False)


def monoid_category(elements: Iterable[Hashable], unit: Hashable, product: Mapping[tuple, Hashable], obj: Hashable = "*") -> FiniteCategory:
    """One-object category; ``product[(g, f)]`` is g∘f."""
    elems = list(elements)
    return FiniteCategory([obj], {m: (obj, obj) for m in elems}, {obj: unit}, product)


@dataclass(frozen=True)
class LoopFreeVerdict:
    holds: bool
    witness: tuple | None = None
    reason: str | None = None


def loop_free_check(c: FiniteCategory) -> LoopFreeVerdict:
    """Only identity endomorphisms and no two-way hom sets between distinct objects."""
    for m in c.morphisms:
        if not c.is_identity(m) and c.source(m) == c.target(m):
            return LoopFreeVerdict(False, (m,), "non-identity endomorphism")
    for m in c.morphisms:
        a, b = c.source(m), c.target(m)
        if a != b and c.hom(b, a):
            return LoopFreeVerdict(False, (m, c.hom(b, a)[0]), "morphisms in both directions")
    return LoopFreeVerdict(True)


# -- nerves ---------------------------------------------------------------


def nerve_strings(c: FiniteCategory, max_length: int) -> dict[int, list[Chain]]:
    """Strings of non-identity composable arrows, by length, up to ``max_length``."""
    out: dict[int, list[Chain]] = {0: [(x, ()) for x in c.objects]}
    frontier = [(x, (), x) for x in c.objects]
    for n in range(1, max_length + 1):
        nxt = []
        for start, arrows, end in frontier:
            for f in c.out_arrows(end):
                nxt.append((start, arrows + (f,), c.target(f)))
        if not nxt:
            break
        out[n] = [(s, a) for s, a, _ in nxt]
        frontier = nxt
    return out


def chain_end(c: FiniteCategory, s: Chain) -> Hashable:
    start, arrows = s
    return c.target(arrows[-1]) if arrows else start


def nerve_face(c: FiniteCategory, s: Chain, i: int) -> Chain | None:
    """Face d_i of a nondegenerate string; None when it becomes degenerate."""
    start, arrows = s
    n = len(arrows)
    if i == 0:
        return (c.target(arrows[0]), arrows[1:])
    if i == n:
        return (start, arrows[:-1])
    h = c.compose(arrows[i], arrows[i - 1])
    if c.is_identity(h):
        return None
    return (start, arrows[: i - 1] + (h,) + arrows[i + 1:])


def _require_loop_free(c: FiniteCategory, what: str) -> None:
    v = loop_free_check(c)
    if not v.holds:
        raise CategoryError(
            f"{what} is not loop-free ({v.reason}: {v.witness!r}); its normalized nerve may be "
            "infinite, pass max_degree for a truncated computation"
        )


def nerve_chain_complex(c: FiniteCategory, coeff: Coefficients | str | None = None, *, max_degree: int | None = None) -> ChainComplex:
    """Normalized chains of the nerve.

    Loop-free categories give the full complex.  With ``max_degree`` the
    strings stop at length ``max_degree + 1``, which keeps degrees up to
    ``max_degree`` exact.  The coefficient argument is accepted for symmetry;
    chains are integral.
    """
    if max_degree is None:
        _require_loop_free(c, "category")
        strings = nerve_strings(c, len(c.objects))
    else:
        if max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        strings = nerve_strings(c, max_degree + 1)
    return ChainComplex.from_boundary(strings, lambda n, s: _nerve_boundary(c, s))


def _nerve_boundary(c: FiniteCategory, s: Chain):
    n = len(s[1])
    for i in range(n + 1):
        face = nerve_face(c, s, i)
        if face is not None:
            yield face, (-1) ** i


def category_homology(c: FiniteCategory, coeff: Coefficients | str | None = None, max_degree: int | None = None) -> HomologyResult:
    """Homology of the normalized nerve.

    Without ``max_degree`` the category must be loop-free.  With it, the
    result lists degrees ``0 .. max_degree``; it is flagged approximate when
    the category is not loop-free, since higher degrees may be nonzero.
    """
    coeff = as_coefficients(coeff)
    if max_degree is None:
        return homology(nerve_chain_complex(c), coeff)
    h = homology(nerve_chain_complex(c, max_degree=max_degree), coeff)
    approx = not loop_free_check(c).holds
    top = min(max_degree, h.start + len(h.betti) - 1)
    keep = max(top - h.start + 1, 0)
    return HomologyResult(coeff, h.start, h.betti[:keep], h.torsion[:keep], approx)


# -- functors ---------------------------------------------------------------


class FunctorData:
    """Object and morphism assignments between finite categories."""

    def __init__(
        self,
        source: FiniteCategory,
        target: FiniteCategory,
        on_objects: Mapping[Hashable, Hashable],
        on_morphisms: Mapping[Hashable, Hashable],
        *,
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)
        if check:
            self.validate()

    def obj(self, x) -> Hashable:
        return self.on_objects[x]

    def __call__(self, m) -> Hashable:
        return self.on_morphisms[m]

    def validate(self) -> None:
        s, t = self.source, self.target
        for x in s.objects:
            if x not in self.on_objects:
                raise CategoryError(f"object {x!r} is not mapped")
            if self.on_objects[x] not in t:
                raise CategoryError(f"object {x!r} maps outside the target")
        for m in s.morphisms:
            if m not in self.on_morphisms:
                raise CategoryError(f"morphism {m!r} is not mapped")
            fm = self.on_morphisms[m]
            if fm not in t._src:
                raise CategoryError(f"morphism {m!r} maps outside the target")
            if t.source(fm) != self.on_objects[s.source(m)] or t.target(fm) != self.on_objects[s.target(m)]:
                raise CategoryError(f"functor does not preserve the endpoints of {m!r}")
        for x in s.objects:
            if self.on_morphisms[s.identity(x)] != t.identity(self.on_objects[x]):
                raise CategoryError(f"functor does not preserve the identity of {x!r}")
        for (g, f), h in s.composition_table().items():
            if t.compose(self.on_morphisms[g], self.on_morphisms[f]) != self.on_morphisms[h]:
                raise CategoryError(f"functor does not preserve the composite {g!r}∘{f!r}")

    def compose(self, inner: "FunctorData") -> "FunctorData":
        """self ∘ inner."""
        return FunctorData(
            inner.source,
            self.target,
            {x: self.on_objects[y] for x, y in inner.on_objects.items()},
            {m: self.on_morphisms[n] for m, n in inner.on_morphisms.items()},
            check=False,
        )

    def __repr__(self) -> str:
        return f"<FunctorData {self.source!r} -> {self.target!r}>"


def identity_functor(c: FiniteCategory) -> FunctorData:
    return FunctorData(c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms}, check=False)


def map_string(f: FunctorData, s: Chain) -> Chain | None:
    """Image of a nerve string; None when an arrow goes to an identity."""
    start, arrows = s
    image = tuple(f(a) for a in arrows)
    if any(f.target.is_identity(a) for a in image):
        return None
    return (f.obj(start), image)


def nerve_chain_map(f: FunctorData, src: ChainComplex, dst: ChainComplex) -> dict[int, Matrix]:
    """Matrices of the induced map on normalized chains."""
    out = {}
    for n in src.degrees:
        idx = dst.index(n) if n in dst.degrees else {}
        cols = []
        for s in src.basis(n):
            t = map_string(f, s)
            cols.append({idx[t]: 1} if t is not None else {})
        out[n] = Matrix(len(idx), len(cols), cols)
    return out


# -- comma categories and fibrations ---------------------------------------------


def comma_category(f: FunctorData, d: Hashable, side: str = "over") -> FiniteCategory:
    """(F ↓ d) for side "over", (d ↓ F) for side "under".

    Objects are pairs ``(c, h)`` with h: Fc -> d (or d -> Fc); a morphism
    ``((c, h), k, (c2, h2))`` is a k: c -> c2 making the triangle commute.
    """
    src, tgt = f.source, f.target
    if d not in tgt:
        raise ValueError(f"{d!r} is not an object of the target category")
    if side not in ("over", "under"):
        raise ValueError(f"side must be 'over' or 'under', got {side!r}")
    objects = []
    for c in src.objects:
        hs = tgt.hom(f.obj(c), d) if side == "over" else tgt.hom(d, f.obj(c))
        objects.extend((c, h) for h in hs)
    by_c: dict = {}
    for o in objects:
        by_c.setdefault(o[0], []).append(o)

    def commutes(o1, k, o2):
        if side == "over":
            return tgt.compose(o2[1], f(k)) == o1[1]
        return tgt.compose(f(k), o1[1]) == o2[1]

    morphisms, identities = {}, {}
    for o1 in objects:
        for k in (src.identity(o1[0]),) + src.out_arrows(o1[0]):
            for o2 in by_c.get(src.target(k), ()):
                if commutes(o1, k, o2):
                    morphisms[(o1, k, o2)] = (o1, o2)
        identities[o1] = (o1, src.identity(o1[0]), o1)
    outgoing: dict = {}
    for m in morphisms:
        outgoing.setdefault(m[0], []).append(m)
    composition = {}
    for m1 in morphisms:
        for m2 in outgoing.get(m1[2], ()):
            composition[(m2, m1)] = (m1[0], src.compose(m2[1], m1[1]), m2[2])
    return FiniteCategory(objects, morphisms, identities, composition, check=False)


def terminal_objects(c: FiniteCategory) -> tuple:
    return tuple(x for x in c.objects if all(len(c.hom(y, x)) == 1 for y in c.objects))


def initial_objects(c: FiniteCategory) -> tuple:
    return tuple(x for x in c.objects if all(len(c.hom(x, y)) == 1 for y in c.objects))


@dataclass(frozen=True)
class FibrationVerdict:
    holds: bool
    witness: tuple | None = None
    reason: str | None = None


def discrete_fibration_check(
    rho: FunctorData,
    direction: str = "fibration",
    vertical: FunctorData | None = None,
) -> FibrationVerdict:
    """Unique lifting of arrows along ``rho``.

    "fibration": every f: b -> rho(e) has exactly one lift ending at e.
    "opfibration": every f: rho(e) -> b has exactly one lift starting at e.
    When ``vertical`` is given only lifts that ``vertical`` sends to
    identities count, which is the two-sided notion used for the graph of
    a profunctor.  The witness is ``(e, f)``.
    """
    if direction not in ("fibration", "opfibration"):
        raise ValueError(f"direction must be 'fibration' or 'opfibration', got {direction!r}")
    e_cat, b_cat = rho.source, rho.target
    fib = direction == "fibration"
    for e in e_cat.objects:
        be = rho.obj(e)
        arrows = (b_cat.identity(be),) + (b_cat.in_arrows(be) if fib else b_cat.out_arrows(be))
        candidates = e_cat.in_arrows(e) if fib else e_cat.out_arrows(e)
        candidates = (e_cat.identity(e),) + candidates
        if vertical is not None:
            candidates = tuple(m for m in candidates if vertical.target.is_identity(vertical(m)))
        for f in arrows:
            lifts = [m for m in candidates if rho(m) == f]
            if len(lifts) != 1:
                return FibrationVerdict(False, (e, f), "no lift" if not lifts else "lift not unique")
    return FibrationVerdict(True)
