import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relhom.algebra import Q, Z, homology, ss_converges, ss_page, total_complex
from relhom.category import (
    AdjunctionData,
    CategoryError,
    FiniteCategory,
    FunctorData,
    ProfunctorData,
    adjunction_from_galois,
    category_homology,
    cograph,
    comma_category,
    discrete_category,
    discrete_fibration_check,
    fiber_category,
    fiber_coefficient_homology,
    graph,
    identity_functor,
    loop_free_check,
    monoid_category,
    nerve_chain_complex,
    poset_as_category,
    profunctor_double_complex,
    profunctor_from_adjunction,
    profunctor_from_relation,
    terminal_objects,
    verify_les_profunctor,
)
from relhom.relational import dowker_galois, induced_complex_relation, relational_join_poset
from relhom.sampling import random_poset, random_relation
from relhom.simplicial import Poset, PosetMap, face_poset, identity_map, order_complex

seeds = st.integers(0, 2**32 - 1)


def interval():
    return poset_as_category(Poset("ab", [("a", "b")]))


def hollow_triangle_poset():
    return Poset(["a", "b", "c", "ab", "bc", "ac"], [("a", "ab"), ("b", "ab"), ("b", "bc"), ("c", "bc"), ("a", "ac"), ("c", "ac")])


def z2():
    return monoid_category(["1", "s"], "1", {("s", "s"): "1"})


def terminal():
    return discrete_category(["*"])


def single_het():
    return ProfunctorData(discrete_category(["c"]), discrete_category(["d"]), {"h": ("c", "d")})


def empty_profunctor():
    return ProfunctorData(interval(), discrete_category(["d"]), {})


def galois_profunctor(r):
    return profunctor_from_adjunction(adjunction_from_galois(*dowker_galois(r)))


def test_poset_categories():
    c = interval()
    assert (len(c.objects), len(c.morphisms)) == (2, 3)
    anti = poset_as_category(Poset("xyz"))
    assert (len(anti.objects), len(anti.morphisms)) == (3, 3)
    assert all(anti.is_identity(m) for m in anti.morphisms)
    edge = poset_as_category(Poset(["a", "b", "ab"], [("a", "ab"), ("b", "ab")]))
    assert (len(edge.objects), len(edge.morphisms)) == (3, 5)


def test_validation_catches_broken_associativity():
    objects = ["x", "y"]
    morphisms = {"1x": ("x", "x"), "1y": ("y", "y"), "f": ("x", "y"), "g": ("x", "y"), "e": ("y", "y")}
    identities = {"x": "1x", "y": "1y"}
    with pytest.raises(CategoryError, match="missing"):
        FiniteCategory(objects, morphisms, identities, {})
    # e is an involution but sends both f and g to g
    table = {("e", "e"): "1y", ("e", "f"): "g", ("e", "g"): "g"}
    with pytest.raises(CategoryError, match="associativity"):
        FiniteCategory(objects, morphisms, identities, table)


def test_functor_validation():
    c = interval()
    with pytest.raises(CategoryError):
        FunctorData(c, c, {"a": "b", "b": "a"}, {m: m for m in c.morphisms})


def test_loop_free_check():
    assert loop_free_check(interval()).holds
    v = loop_free_check(z2())
    assert not v.holds and v.witness == ("s",)
    p = Poset(["p"])
    j, _, _ = cograph(profunctor_from_relation(p, p, [("p", "p")]))
    assert loop_free_check(j).holds


def test_nerve_homology_examples():
    assert category_homology(terminal()).betti_numbers() == (1,)
    assert category_homology(interval()).betti_numbers() == (1,)
    assert category_homology(poset_as_category(hollow_triangle_poset())).betti_numbers() == (1, 1)
    assert category_homology(discrete_category("pqrs")).betti_numbers() == (4,)


def test_nerve_strings_are_nondegenerate():
    cc = nerve_chain_complex(poset_as_category(Poset("abc", [("a", "b"), ("b", "c")])))
    assert [cc.rank(n) for n in cc.degrees] == [3, 3, 1]


def test_running_face_poset_category(running):
    pa = face_poset(induced_complex_relation(running).K)
    assert category_homology(poset_as_category(pa)).betti_numbers() == (1, 1)


def test_non_loop_free_needs_truncation():
    with pytest.raises(CategoryError, match="max_degree"):
        category_homology(z2())
    h = category_homology(z2(), Z, max_degree=3)
    assert h.approximate
    assert h.nonzero() == {0: (1, ()), 1: (0, (2,)), 3: (0, (2,))}
    assert "higher degrees not computed" in str(h)


def test_truncation_of_loop_free_category_is_exact():
    h = category_homology(poset_as_category(hollow_triangle_poset()), max_degree=5)
    assert not h.approximate and h.betti_numbers() == (1, 1)


def test_slice_has_identity_as_terminal_object():
    c = interval()
    slice_b = comma_category(identity_functor(c), "b", "over")
    assert terminal_objects(slice_b) == (("b", ("b", "b")),)


def test_comma_of_left_adjoint_has_counit_terminal(running):
    l, u = dowker_galois(running)
    a = adjunction_from_galois(l, u)
    for d in a.D.objects:
        comma = comma_category(a.L, d, "over")
        ud = u(d)
        assert terminal_objects(comma) == ((ud, (l(ud), d)),)


def test_comma_of_empty_functor_and_unknown_object():
    empty = FiniteCategory([], {}, {})
    f = FunctorData(empty, interval(), {}, {})
    assert comma_category(f, "a").objects == ()
    with pytest.raises(ValueError):
        comma_category(f, "zzz")


def test_adjunction_from_galois(running):
    p = Poset("ab", [("a", "b")])
    ident = adjunction_from_galois(identity_map(p), identity_map(p))
    ident.validate()
    assert all(ident.L.obj(x) == x for x in ident.C.objects)
    adj = adjunction_from_galois(*dowker_galois(running))
    adj.validate()
    assert isinstance(adj, AdjunctionData)
    bad = PosetMap(p, p, {"a": "a", "b": "a"})
    with pytest.raises(ValueError):
        adjunction_from_galois(bad, bad)


def test_profunctor_from_adjunction(running):
    one = profunctor_from_adjunction(adjunction_from_galois(identity_map(Poset(["*"])), identity_map(Poset(["*"]))))
    assert len(one.hets) == 1
    l, u = dowker_galois(running)
    prof = galois_profunctor(running)
    for c in prof.C.objects:
        for d in prof.D.objects:
            nonempty = bool(prof.het(c, d))
            assert nonempty == l.target.le(l(c), d)
            assert nonempty == all(running.related(a, x) for a in c for x in d)


def test_cograph_of_single_het_is_interval():
    j, _, _ = cograph(single_het())
    assert (len(j.objects), len(j.morphisms)) == (2, 3)
    assert category_homology(j).betti_numbers() == (1,)


def test_cograph_matches_join_poset(running):
    cr = induced_complex_relation(running)
    pa, px = face_poset(cr.K), face_poset(cr.M)
    j, _, _ = cograph(profunctor_from_relation(pa, px, cr.pairs))
    jp = relational_join_poset(pa, px, cr.pairs)
    for x in j.objects:
        for y in j.objects:
            assert len(j.hom(x, y)) == int(jp.le(x[1], y[1]))
    assert category_homology(j).nonzero() == order_complex(jp).homology().nonzero()


def test_cograph_of_empty_profunctor_is_disjoint_union():
    j, _, _ = cograph(empty_profunctor())
    assert len(j.objects) == 3
    assert category_homology(j).betti_numbers() == (2,)


def test_graph_examples():
    g, _, _ = graph(single_het())
    assert (len(g.objects), len(g.morphisms)) == (1, 1)
    g, _, _ = graph(empty_profunctor())
    assert g.objects == ()


def test_graph_of_posetal_profunctor_is_relation_poset(running):
    cr = induced_complex_relation(running)
    pa, px = face_poset(cr.K), face_poset(cr.M)
    g, _, _ = graph(profunctor_from_relation(pa, px, cr.pairs))
    # morphisms (s, t) -> (s2, t2) need s <= s2 in P and t2 <= t in Q
    for x in g.objects:
        for y in g.objects:
            assert len(g.hom(x, y)) == int(pa.le(x[0], y[0]) and px.le(y[1], x[1]))
    assert category_homology(g).betti_numbers() == (1, 1)


def test_graph_projections_are_two_sided_fibrations(running):
    g, rho_c, rho_d = graph(galois_profunctor(running))
    assert discrete_fibration_check(rho_c, "fibration", vertical=rho_d).holds
    assert discrete_fibration_check(rho_d, "opfibration", vertical=rho_c).holds
    assert not discrete_fibration_check(rho_c, "fibration").holds


def test_identity_is_discrete_fibration():
    c = poset_as_category(hollow_triangle_poset())
    assert discrete_fibration_check(identity_functor(c)).holds
    assert discrete_fibration_check(identity_functor(c), "opfibration").holds


def test_constant_functor_has_no_lift():
    two = discrete_category(["e1", "e2"])
    target = interval()
    const = FunctorData(two, target, {"e1": "b", "e2": "b"}, {("id", "e1"): ("b", "b"), ("id", "e2"): ("b", "b")})
    v = discrete_fibration_check(const)
    assert not v.holds
    assert v.witness == ("e1", ("a", "b")) and v.reason == "no lift"


def test_double_complex_examples(running):
    dc = profunctor_double_complex(single_het())
    assert {pq: n for pq, n in dc.grid().items() if n} == {(0, 0): 1}
    dc = profunctor_double_complex(galois_profunctor(running))
    assert homology(total_complex(dc)).betti_numbers() == (1, 1)
    dc = profunctor_double_complex(empty_profunctor())
    assert all(n == 0 for n in dc.grid().values())


def test_les_examples(running):
    rep = verify_les_profunctor(single_het())
    assert rep.exact and rep.summary()["dims"] == {"0": [1, 2, 1]}
    rep = verify_les_profunctor(galois_profunctor(running))
    assert rep.exact and rep.summary()["dims"] == {"0": [1, 2, 1], "1": [1, 2, 1]}
    rep = verify_les_profunctor(empty_profunctor())
    assert rep.exact and rep.summary()["dims"] == {"0": [0, 2, 2]}


def test_fiber_category_examples(running):
    assert len(fiber_category(single_het(), "c").objects) == 1
    prof = galois_profunctor(running)
    fib = fiber_category(prof, ("b",))
    assert {x[1] for x in fib.objects} == {("x",), ("y",), ("x", "y")}
    assert category_homology(fib).betti_numbers() == (1,)
    lonely = ProfunctorData(discrete_category(["c", "c2"]), discrete_category(["d"]), {"h": ("c", "d")})
    assert fiber_category(lonely, "c2").objects == ()
    with pytest.raises(ValueError):
        fiber_category(lonely, "nowhere")


def test_running_fiber_coefficients(running):
    prof = galois_profunctor(running)
    for side in ("C", "D"):
        assert fiber_coefficient_homology(prof, 0, side).betti_numbers() == (1, 1)
        assert fiber_coefficient_homology(prof, 1, side).nonzero() == {}


def random_posetal_profunctor(rng):
    p = random_poset(rng, 4)
    q = random_poset(rng, 4)
    rel = set()
    for a in p:
        for b in q:
            if rng.random() < 0.3:
                rel.update((a2, b2) for a2 in p.down(a) for b2 in q.down(b))
    return profunctor_from_relation(p, q, rel)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_poset_bridge(seed):
    p = random_poset(random.Random(seed))
    assert category_homology(poset_as_category(p)).nonzero() == order_complex(p).homology().nonzero()


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_adjunction_equivalences(seed):
    prof = galois_profunctor(random_relation(random.Random(seed), 4))
    h = category_homology(prof.C).nonzero()
    assert category_homology(prof.D).nonzero() == h
    assert category_homology(cograph(prof)[0]).nonzero() == h
    assert category_homology(graph(prof)[0]).nonzero() == h


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_cograph_join_coherence(seed):
    rng = random.Random(seed)
    prof = random_posetal_profunctor(rng)
    p, q = (Poset.from_leq(c.objects, lambda a, b, c=c: bool(c.hom(a, b))) for c in (prof.C, prof.D))
    j, _, _ = cograph(prof)
    jp = relational_join_poset(p, q.op(), prof.hets)
    assert category_homology(j).nonzero() == order_complex(jp).homology().nonzero()


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_profunctor_les_and_spectral_sequences(seed):
    prof = random_posetal_profunctor(random.Random(seed))
    assert verify_les_profunctor(prof, Q).exact
    dc = profunctor_double_complex(prof)
    h_graph = category_homology(graph(prof)[0], Q)
    for orientation in ("columns-first", "rows-first"):
        rep = ss_converges(dc, Q, orientation)
        assert rep.converges
        assert {n: d for n, d in rep.total_dims.items() if d} == h_graph.dims()
    for side, orientation in (("C", "columns-first"), ("D", "rows-first")):
        e2 = ss_page(dc, 2, orientation, Q).nonzero()
        expected = {}
        for k in range(len(prof.C.objects) + len(prof.D.objects)):
            for n, d in fiber_coefficient_homology(prof, k, side, Q).dims().items():
                expected[(n, k) if side == "C" else (k, n)] = d
        assert e2 == expected
