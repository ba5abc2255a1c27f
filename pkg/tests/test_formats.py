from pathlib import Path

import pytest

from relhom.category import category_homology
from relhom.formats import (
    InputError,
    load_category,
    load_complex_relation,
    load_cover,
    load_profunctor,
    load_relation,
    parse_category,
    parse_complex_relation,
    parse_profunctor,
    parse_relation,
)

FIX = Path(__file__).parent / "fixtures"


def test_running_csv(running):
    r = load_relation(FIX / "running.csv")
    assert r.rows == running.rows and r.cols == running.cols
    assert set(r.pairs) == set(running.pairs)


def test_relation_comments_and_blank_lines():
    r = parse_relation("# note\n,x,y\n\na,1,0\n")
    assert set(r.pairs) == {("a", "x")}


def test_bad_entry_position():
    with pytest.raises(InputError) as err:
        load_relation(FIX / "bad_entry.csv")
    assert (err.value.line, err.value.column) == (2, 5)
    assert "'2'" in str(err.value)


def test_relation_shape_errors():
    with pytest.raises(InputError) as err:
        parse_relation(",x,y\na,1\n")
    assert err.value.line == 2
    with pytest.raises(InputError):
        parse_relation("")
    with pytest.raises(InputError, match="duplicate row"):
        parse_relation(",x\na,1\na,0\n")


def test_missing_file():
    with pytest.raises(InputError, match="cannot read"):
        load_relation(FIX / "absent.csv")


def test_complex_relation_blocks():
    cr = load_complex_relation(FIX / "edge_relation.txt")
    assert cr.K.facets() == (("a", "b"),)
    assert cr.M.f_vector() == (2,)
    assert (("a", "b"), ("x",)) in cr
    assert (("a",), ("y",)) in cr
    assert (("b",), ("y",)) not in cr


def test_complex_relation_must_be_closed():
    text = "[K]\na b\n[M]\nx\n[R]\na b | x\nb | y\n"
    with pytest.raises(InputError) as err:
        parse_complex_relation(text)
    assert err.value.line == 7


def test_cover_file():
    cover = load_cover(FIX / "circle_cover.txt")
    assert set(cover.members) == {"U1", "U2"}
    assert cover.base.homology().betti_numbers() == (1, 1)


def test_json_positions():
    with pytest.raises(InputError) as err:
        load_category(FIX / "empty.json")
    assert (err.value.line, err.value.column) == (1, 1)
    with pytest.raises(InputError) as err:
        load_category(FIX / "bad_syntax.json")
    assert (err.value.line, err.value.column) == (3, 1)


def test_interval_and_monoid_categories():
    c = load_category(FIX / "interval.json")
    assert len(c.objects) == 2 and len(c.morphisms) == 3
    m = load_category(FIX / "monoid.json")
    assert tuple(m.morphisms) == ("1", "s")
    assert m.compose("s", "s") == "1"


def test_poset_shorthand():
    c = load_category(FIX / "hollow_triangle_poset.json")
    assert category_homology(c).betti_numbers() == (1, 1)


def test_category_semantic_errors_point_at_token():
    text = '{"objects": ["a"],\n "morphisms": [{"id": "f", "source": "a", "target": "zz"}]}'
    with pytest.raises(InputError) as err:
        parse_category(text)
    assert err.value.line == 2


def test_single_heteromorphism():
    prof = load_profunctor(FIX / "single_het.json")
    assert tuple(prof.hets) == ("h",)


def test_profunctor_from_relation_json():
    text = '{"relation": {"P": {"elements": ["p"]}, "Q": {"elements": ["q"]}, "pairs": [["p", "q"]]}}'
    prof = parse_profunctor(text)
    assert len(prof.hets) == 1


def test_profunctor_relation_must_be_closed():
    text = (
        '{"relation": {"P": {"elements": ["p0", "p1"], "relations": [["p0", "p1"]]},'
        ' "Q": {"elements": ["q"]}, "pairs": [["p1", "q"]]}}'
    )
    with pytest.raises(InputError):
        parse_profunctor(text)
