import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import det

from relhom.algebra import (
    ChainComplex,
    ChainComplexError,
    ChainMapError,
    DoubleComplex,
    Matrix,
    Q,
    Z,
    Zp,
    homology,
    induced_map,
    invariant_factors,
    rank,
    smith_normal_form,
    ss_converges,
    ss_page,
    total_complex,
    verify_exact_sequence,
)
from relhom.cosheaf import relational_double_complex
from relhom.relational import induced_complex_relation, relational_product
from relhom.sampling import random_complex, random_complex_relation
from relhom.simplicial import SimplicialComplex


def is_smith(s):
    rows = s.to_dense()
    diag = []
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if i != j and x:
                return False
        if i < len(row):
            diag.append(row[i])
    nonzero = [d for d in diag if d]
    if any(d < 0 for d in nonzero) or diag[: len(nonzero)] != nonzero:
        return False
    return all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def test_snf_two_by_two():
    m = Matrix.from_dense([[2, 4], [6, 8]])
    s, u, v = smith_normal_form(m)
    assert s.to_dense() == [[2, 0], [0, 4]]
    assert u @ m @ v == s
    assert abs(det(u.to_dense())) == 1
    assert abs(det(v.to_dense())) == 1


def test_snf_zero_and_identity():
    s, _, _ = smith_normal_form(Matrix.zeros(3, 2))
    assert s.is_zero() and s.shape == (3, 2)
    s, _, _ = smith_normal_form(Matrix.identity(4))
    assert s == Matrix.identity(4)


def test_snf_large_entries_do_not_overflow():
    big = 10**40
    m = Matrix.from_dense([[big, 0], [0, big * 3]])
    s, u, v = smith_normal_form(m)
    assert s.to_dense() == [[big, 0], [0, 3 * big]]
    assert u @ m @ v == s


matrices = st.integers(1, 40).flatmap(
    lambda r: st.integers(1, 40).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_snf_round_trip(rows):
    m = Matrix.from_dense(rows)
    s, u, v = smith_normal_form(m)
    assert u @ m @ v == s
    assert is_smith(s)
    assert abs(det(u.to_dense())) == 1
    assert abs(det(v.to_dense())) == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=5, max_size=5), min_size=1, max_size=6))
def test_invariant_factors_match_sympy(rows):
    from sympy import ZZ
    from sympy import Matrix as SMatrix
    from sympy.matrices.normalforms import invariant_factors as sym_factors

    want = [abs(int(x)) for x in sym_factors(SMatrix(rows), domain=ZZ) if x != 0]
    assert invariant_factors(Matrix.from_dense(rows)) == want


def test_point_homology():
    assert homology(SimplicialComplex(["a"]).chain_complex()).betti_numbers() == (1,)


def test_hollow_triangle_homology():
    h = SimplicialComplex(["ab", "bc", "ac"]).homology()
    assert h.betti_numbers() == (1, 1)
    assert not any(h.torsion)


def test_projective_plane_torsion():
    rp2 = SimplicialComplex(["124", "126", "135", "136", "145", "234", "235", "256", "346", "456"])
    h = rp2.homology()
    assert h.nonzero() == {0: (1, ()), 1: (0, (2,))}
    assert rp2.homology(Zp(2)).betti_numbers() == (1, 1, 1)
    assert rp2.homology(Q).betti_numbers() == (1,)


def test_rejects_non_complex():
    d1 = Matrix.from_dense([[1]])
    d2 = Matrix.from_dense([[1]])
    with pytest.raises(ChainComplexError) as err:
        ChainComplex({0: ["v"], 1: ["e"], 2: ["t"]}, {1: d1, 2: d2})
    assert err.value.degree == 2


def uct_prediction(hz, p, n):
    tors = sum(1 for d in hz.torsion_at(n) if d % p == 0)
    below = sum(1 for d in hz.torsion_at(n - 1) if d % p == 0)
    return hz.betti_at(n) + tors + below


def test_universal_coefficients_on_random_complexes():
    rng = random.Random(11)
    for _ in range(40):
        cc = random_complex(rng, "v", rng.randint(2, 7), rng.randint(1, 6), max_dim=3).chain_complex()
        hz = homology(cc, Z)
        assert homology(cc, Q).betti == hz.betti
        for p in (2, 3, 5):
            hp = homology(cc, Zp(p))
            for n in cc.degrees:
                assert hp.betti_at(n) == uct_prediction(hz, p, n)


def test_universal_coefficients_with_torsion():
    rng = random.Random(5)
    for _ in range(40):
        n1, n2 = rng.randint(1, 5), rng.randint(1, 5)
        d2 = Matrix.from_dense([[rng.randint(-6, 6) for _ in range(n2)] for _ in range(n1)])
        cc = ChainComplex({1: range(n1), 2: range(n2)}, {2: d2})
        hz = homology(cc, Z)
        for p in (2, 3):
            hp = homology(cc, Zp(p))
            for n in (1, 2):
                assert hp.betti_at(n) == uct_prediction(hz, p, n)


def edge_and_vertex():
    edge = SimplicialComplex(["ab"]).chain_complex()
    vertex = SimplicialComplex(["a"]).chain_complex()
    return vertex, edge


def test_identity_induces_identity():
    cc = SimplicialComplex(["ab", "bc", "ac"]).chain_complex()
    ident = {n: Matrix.identity(cc.rank(n)) for n in cc.degrees}
    h = induced_map(ident, cc, cc, Q)
    assert h[0] == Matrix.identity(1)
    assert h[1] == Matrix.identity(1)


def test_vertex_into_edge_is_iso_on_h0():
    vertex, edge = edge_and_vertex()
    incl = {0: Matrix.from_dense([[1], [0]])}
    h = induced_map(incl, vertex, edge, Q)
    assert h[0].to_dense() == [[1]]


def test_projection_of_full_square_onto_first_factor(full2x2):
    cr = induced_complex_relation(full2x2)
    prod = relational_product(cr).chain_complex()
    k = cr.K.chain_complex()
    cols0 = [{k.index(0)[s]: 1} for s, t in prod.basis(0)]
    cols1 = [{k.index(1)[s]: 1} if len(t) == 1 else {} for s, t in prod.basis(1)]
    proj = {0: Matrix(k.rank(0), len(cols0), cols0), 1: Matrix(k.rank(1), len(cols1), cols1)}
    h = induced_map(proj, prod, k, Q)
    assert rank(h[0], Q) == 1 and h[0].shape == (1, 1)


def test_induced_map_rejects_non_chain_map():
    vertex, edge = edge_and_vertex()
    bad = {0: Matrix.zeros(1, 2), 1: Matrix.from_dense([[0]])}
    with pytest.raises(ChainMapError) as err:
        induced_map(bad, edge, vertex, Q)
    assert err.value.degree == 1


def test_exactness_trivial_cases():
    assert verify_exact_sequence({}, {}, {}).exact
    assert verify_exact_sequence({0: (0, 0, 0), 1: (0, 0, 0)}, {}, {}).exact
    split = verify_exact_sequence(
        {0: (1, 2, 1)},
        {0: Matrix.from_dense([[1], [1]])},
        {0: Matrix.from_dense([[1, -1]])},
    )
    assert split.exact


def test_exactness_detects_failure():
    rep = verify_exact_sequence({0: (1, 2, 1)}, {0: Matrix.from_dense([[1], [0]])}, {0: Matrix.from_dense([[1, 0]])})
    assert not rep.exact
    assert not rep.first_failure().composite_zero


def test_exactness_shape_mismatch():
    with pytest.raises(ValueError):
        verify_exact_sequence({0: (1, 2, 1)}, {0: Matrix.from_dense([[1]])}, {})


def test_single_cell_double_complex():
    dc = DoubleComplex({(0, 0): ["x"]})
    tot = total_complex(dc)
    assert homology(tot).nonzero() == {0: (1, ())}
    assert ss_page(dc, 0).nonzero() == {(0, 0): 1}
    assert ss_converges(dc).converges


def test_negative_page_rejected():
    with pytest.raises(ValueError):
        ss_page(DoubleComplex({(0, 0): ["x"]}), -1)


def test_e0_is_grid(running):
    dc = relational_double_complex(induced_complex_relation(running))
    assert ss_page(dc, 0).cells == dc.grid()


def negated(cc):
    return ChainComplex({n: cc.basis(n) for n in cc.degrees}, {n: -cc.boundary(n) for n in cc.degrees if n > cc.lo}, check=False)


def direct_pages(dc):
    """E^1 and E^2 of the column filtration from column homology and induced maps."""
    cols = {}
    for p in dc.p_range:
        labels = {q: dc.labels((p, q)) for q in dc.q_range}
        bounds = {q: dc.partial((p, q)) for q in dc.q_range if q > dc.q_range.start}
        cols[p] = ChainComplex(labels, bounds)
    e1 = {(p, q): homology(cols[p], Q).betti_at(q) for p in dc.p_range for q in dc.q_range}
    d1 = {}
    for p in dc.p_range:
        if p - 1 not in cols:
            continue
        f = {q: dc.delta((p, q)) for q in dc.q_range}
        h = induced_map(f, cols[p], negated(cols[p - 1]), Q)
        for q in dc.q_range:
            d1[(p, q)] = rank(h[q], Q)
    e2 = {(p, q): e1[(p, q)] - d1.get((p, q), 0) - d1.get((p + 1, q), 0) for (p, q) in e1}
    return e1, e2


def test_pages_one_and_two_match_direct_computation():
    rng = random.Random(3)
    for _ in range(25):
        dc = relational_double_complex(random_complex_relation(rng))
        e1, e2 = direct_pages(dc)
        assert ss_page(dc, 1).cells == e1
        assert ss_page(dc, 2).cells == e2
        tr = dc.transpose()
        e1t, e2t = direct_pages(tr)
        assert ss_page(dc, 1, "rows-first").cells == {(q, p): d for (p, q), d in e1t.items()}
        assert ss_page(dc, 2, "rows-first").cells == {(q, p): d for (p, q), d in e2t.items()}


def test_pages_never_grow():
    rng = random.Random(8)
    for _ in range(20):
        dc = relational_double_complex(random_complex_relation(rng))
        for orientation in ("columns-first", "rows-first"):
            pages = [ss_page(dc, r, orientation).cells for r in range(5)]
            for a, b in zip(pages, pages[1:]):
                assert all(b[pq] <= a[pq] for pq in a)


def test_running_example_pages(running):
    dc = relational_double_complex(induced_complex_relation(running))
    assert ss_page(dc, 2, "columns-first").nonzero() == {(0, 0): 1, (1, 0): 1}
    assert ss_page(dc, 2, "rows-first").nonzero() == {(0, 0): 1, (0, 1): 1}
    rep = ss_converges(dc)
    assert rep.converges
    assert {n: d for n, d in rep.e_infinity_sums.items() if d} == {0: 1, 1: 1}
