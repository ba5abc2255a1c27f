import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_dowker, simplicial_homology

from relhom.relational import (
    ComplexRelation,
    Cover,
    Relation,
    cover_nerve,
    dowker_complex,
    dowker_galois,
    functorial_square_check,
    good_cover_check,
    induced_complex_relation,
    relational_join,
    relational_join_poset,
    relational_product,
    verify_les_relational,
)
from relhom.sampling import random_complex_relation, random_cover, random_relation
from relhom.simplicial import (
    ConeCertificate,
    NotContractible,
    Poset,
    SimplicialComplex,
    face_poset,
    order_complex,
)

seeds = st.integers(0, 2**32 - 1)


def empty_relation():
    return Relation(["a"], ["x"], [])


def points_unrelated():
    return ComplexRelation(SimplicialComplex(["k"]), SimplicialComplex(["m"]), [])


def test_dowker_facets(running):
    assert set(dowker_complex(running, "A").facets()) == {("a", "b"), ("a", "c"), ("b", "c", "d")}
    assert set(dowker_complex(running, "X").facets()) == {("x", "y"), ("x", "z"), ("y", "z"), ("w", "y")}


def test_dowker_matches_subset_enumeration(running):
    for base in ("A", "X"):
        want = brute_dowker(running.rows, running.cols, running.pairs, base)
        assert {frozenset(s) for s in dowker_complex(running, base).simplices()} == want


def test_dowker_of_empty_relation():
    assert len(dowker_complex(empty_relation(), "A")) == 0
    assert len(dowker_complex(empty_relation(), "X")) == 0


def test_relation_rejects_unknown_labels():
    with pytest.raises(ValueError):
        Relation(["a"], ["x"], [("a", "y")])


def test_induced_relation_examples(running, full2x2):
    assert len(induced_complex_relation(full2x2)) == 9
    cr = induced_complex_relation(running)
    assert (("b", "c", "d"), ("y",)) in cr
    assert (("b", "c", "d"), ("x", "y")) not in cr
    assert len(induced_complex_relation(empty_relation())) == 0


def test_complex_relation_must_be_downward_closed():
    k, m = SimplicialComplex(["ab"]), SimplicialComplex(["x"])
    with pytest.raises(ValueError):
        ComplexRelation(k, m, [(("a", "b"), ("x",))])
    closed = ComplexRelation(k, m, [(("a", "b"), ("x",))], close=True)
    assert len(closed) == 3


def test_dowker_galois_values(running, full2x2):
    l, u = dowker_galois(running)
    assert l(("b",)) == ("x", "y")
    assert u(("y",)) == ("b", "c", "d")
    l, u = dowker_galois(Relation(["a"], ["x"], [("a", "x")]))
    assert l(("a",)) == ("x",) and u(("x",)) == ("a",)
    l, u = dowker_galois(full2x2)
    assert set(l.mapping.values()) == {("x", "y")}
    assert set(u.mapping.values()) == {("a", "b")}


def test_dowker_galois_needs_nonempty_complexes():
    with pytest.raises(ValueError):
        dowker_galois(empty_relation())


def test_join_examples(running):
    edge = relational_join(ComplexRelation(SimplicialComplex(["k"]), SimplicialComplex(["m"]), [(("k",), ("m",))]))
    assert edge.f_vector() == (2, 1)
    assert edge.homology().betti_numbers() == (1,)
    assert relational_join(induced_complex_relation(running)).homology().betti_numbers() == (1, 1)
    assert relational_join(points_unrelated()).homology().betti_numbers() == (2,)


def test_join_namespaces_shared_vertices():
    k = SimplicialComplex(["v"])
    j = relational_join(ComplexRelation(k, k, [(("v",), ("v",))]))
    assert j.f_vector() == (2, 1)


def test_join_contains_both_sides(running):
    cr = induced_complex_relation(running)
    j = relational_join(cr)
    assert len(j) == len(cr.K) + len(cr.M) + len(cr)


def test_join_poset_examples(running):
    chain = relational_join_poset(Poset(["p"]), Poset(["q"]), [("p", "q")])
    assert chain.lt("p", "q")
    cr = induced_complex_relation(running)
    pa, px = face_poset(cr.K), face_poset(cr.M)
    j = relational_join_poset(pa, px, cr.pairs)
    path = [("b",), ("b", "d"), ("b", "c", "d"), ("y",)]
    assert all(j.lt(a, b) for a, b in zip(path, path[1:]))
    union = relational_join_poset(Poset(["p"]), Poset(["q"]), [])
    assert not union.comparable("p", "q") and len(union) == 2


def test_join_poset_rejects_open_relation():
    p = Poset(["p0", "p1"], [("p0", "p1")])
    with pytest.raises(ValueError):
        relational_join_poset(p, Poset(["q"]), [("p1", "q")])


def order_level_relation(cr):
    """Chains of P_K and P_M related when every pair of their elements is."""
    pa, px = face_poset(cr.K), face_poset(cr.M)
    da, dx = order_complex(pa), order_complex(px)
    pairs = [
        (s, t)
        for s in da.simplices()
        for t in dx.simplices()
        if all((a, b) in cr.pairs for a in s for b in t)
    ]
    return pa, px, ComplexRelation(da, dx, pairs)


def test_join_poset_order_complex_is_relational_join(running):
    cr = induced_complex_relation(running)
    pa, px, lifted = order_level_relation(cr)
    left = order_complex(relational_join_poset(pa, px, cr.pairs))
    assert left.simplex_set() == relational_join(lifted).simplex_set()


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_join_poset_order_complex_random(seed):
    cr = induced_complex_relation(random_relation(random.Random(seed), 4))
    pa, px, lifted = order_level_relation(cr)
    left = order_complex(relational_join_poset(pa, px, cr.pairs))
    assert left.simplex_set() == relational_join(lifted).simplex_set()


def test_product_of_full_square(full2x2):
    prod = relational_product(induced_complex_relation(full2x2))
    assert prod.f_vector() == (4, 4, 1)
    assert prod.euler_characteristic() == 1
    assert prod.homology().betti_numbers() == (1,)


def test_product_of_running_example(running):
    prod = relational_product(induced_complex_relation(running))
    assert prod.homology().nonzero() == {0: (1, ()), 1: (1, ())}
    assert simplicial_homology(order_complex(prod.face_poset()).simplices()) == {0: (1, ()), 1: (1, ())}


def test_product_of_empty_relation():
    prod = relational_product(induced_complex_relation(empty_relation()))
    assert prod.f_vector() == ()
    assert prod.homology().nonzero() == {}


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_product_cells_match_order_complex_of_face_poset(seed):
    prod = relational_product(random_complex_relation(random.Random(seed)))
    prod.chain_complex().validate()
    assert prod.homology().nonzero() == order_complex(prod.face_poset()).homology().nonzero()


def path_cover():
    return Cover({"U1": ["ab"], "U2": ["bc"]})


def circle_cover():
    return Cover({"U1": ["ab", "bc"], "U2": ["ca"]})


def test_nerve_of_path_cover():
    nerve, rel = cover_nerve(path_cover())
    assert nerve.facets() == (("U1", "U2"),)
    assert (("b",), ("U1", "U2")) in rel
    assert (("a", "b"), ("U1", "U2")) not in rel
    report = good_cover_check(path_cover())
    assert report.good
    assert all(isinstance(c, ConeCertificate) for _, c in report.entries)


def test_nerve_of_circle_cover():
    cover = circle_cover()
    nerve, _ = cover_nerve(cover)
    assert nerve.facets() == (("U1", "U2"),)
    assert cover.base.homology().betti_numbers() == (1, 1)
    assert nerve.homology().betti_numbers() == (1,)
    entries = dict(good_cover_check(cover).entries)
    assert entries[("U1", "U2")] == NotContractible(0)


def test_single_member_cover():
    k = SimplicialComplex(["ab", "bc"])
    cover = Cover({"U": k})
    nerve, _ = cover_nerve(cover)
    assert nerve.f_vector() == (1,)
    assert len(good_cover_check(cover).entries) == 1


def test_cover_must_cover_base():
    with pytest.raises(ValueError):
        Cover({"U": ["ab"]}, SimplicialComplex(["abc"]))


def test_les_running_example(running):
    rep = verify_les_relational(induced_complex_relation(running))
    assert rep.exact
    dims = rep.summary()["dims"]
    assert dims == {"0": [1, 2, 1], "1": [1, 2, 1]}


def test_les_disjoint_points():
    rep = verify_les_relational(points_unrelated())
    assert rep.exact
    assert rep.summary()["dims"] == {"0": [0, 2, 2]}


def test_les_over_prime_field(running):
    assert verify_les_relational(induced_complex_relation(running), "Zp:2").exact


def test_les_needs_field(running):
    with pytest.raises(ValueError):
        verify_les_relational(induced_complex_relation(running), "Z")


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_euler_characteristic_identity(seed):
    cr = random_complex_relation(random.Random(seed))
    chi_join = relational_join(cr).euler_characteristic()
    chi_prod = relational_product(cr).euler_characteristic()
    assert chi_join == cr.K.euler_characteristic() + cr.M.euler_characteristic() - chi_prod


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_good_covers_preserve_homology(seed):
    cover = random_cover(random.Random(seed), good=True)
    nerve, _ = cover_nerve(cover)
    assert good_cover_check(cover).good
    assert nerve.homology().nonzero() == cover.base.homology().nonzero()


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_non_good_covers_still_exact(seed):
    cover = random_cover(random.Random(seed), good=False)
    assert not good_cover_check(cover).good
    assert verify_les_relational(cover_nerve(cover)[1]).exact


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_dowker_duality_small(seed):
    cr = induced_complex_relation(random_relation(random.Random(seed), 5))
    h = cr.K.homology().nonzero()
    assert cr.M.homology().nonzero() == h
    assert relational_join(cr).homology().nonzero() == h
    assert relational_product(cr).homology().nonzero() == h


def identity(xs):
    return {x: x for x in xs}


def test_functorial_square_identity(running):
    v = functorial_square_check(running, running, identity(running.rows), identity(running.cols))
    assert v.commutes


def test_functorial_square_with_extra_pair(running):
    bigger = Relation(running.rows, running.cols, set(running.pairs) | {("d", "z")})
    v = functorial_square_check(running, bigger, identity(running.rows), identity(running.cols))
    assert v.commutes and v.first_failure is None


def test_functorial_square_rejects_uncarried_relation():
    r = Relation(["p1"], ["q1"], [("p1", "q1")])
    r2 = Relation(["p1", "p2"], ["q1", "q2"], [("p1", "q1"), ("p2", "q2")])
    with pytest.raises(ValueError, match="do not carry"):
        functorial_square_check(r, r2, {"p1": "p1"}, {"q1": "q2"})
