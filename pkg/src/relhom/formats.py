"""Text formats for relations, complex relations, covers, categories and profunctors.

Every parser raises :class:`InputError` with a 1-based line and column.

Relation CSV: a header row of X labels (its first cell is ignored) and
one row per A label with 0/1 entries::

    ,w,x
    a,0,1
    b,1,1

Block files: ``[name]`` headers followed by facets, one per line, vertices
separated by whitespace; ``#`` starts a comment.  A complex relation has
blocks ``[K]``, ``[M]`` and ``[R]``, where each ``[R]`` line reads
``a b | x y`` and the relation is closed downward.  A cover file has one
block per member.

Category JSON::

    {"objects": ["a", "b"],
     "morphisms": [{"id": "f", "source": "a", "target": "b"}],
     "identities": {"a": "1a", "b": "1b"},
     "compose": [["g", "f", "gf"]]}

``identities`` may be omitted (they become ``"id:<object>"``) and
``compose`` lists only composites of non-identity morphisms, ``[g, f, g∘f]``.
``{"poset": {"elements": [...], "relations": [[x, y], ...]}}`` is the
poset shorthand.  Profunctor JSON has categories ``C`` and ``D``, a list of
``heteromorphisms`` like morphisms, ``left`` triples ``[h, f, h∘f]`` and
``right`` triples ``[g, h, g∘h]``; alternatively
``{"relation": {"P": poset, "Q": poset, "pairs": [[p, q], ...]}}``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .category import (
    CategoryError,
    FiniteCategory,
    ProfunctorData,
    poset_as_category,
    profunctor_from_relation,
)
from .relational import ComplexRelation, Cover, Relation
from .simplicial import Poset, SimplicialComplex


class InputError(ValueError):
    """Malformed input with a source position."""

    def __init__(self, message: str, line: int = 1, column: int = 1, path: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        where = f"{path}:" if path else ""
        super().__init__(f"{where}{line}:{column}: {message}")


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read file: {e.strerror}", path=str(path)) from None


# -- relations ----------------------------------------------------------------


def _split_cells(line: str) -> list[tuple[str, int]]:
    """Comma-separated cells with their 1-based start columns."""
    cells, start = [], 0
    for part in line.split(","):
        lead = len(part) - len(part.lstrip())
        cells.append((part.strip(), start + lead + 1))
        start += len(part) + 1
    return cells


def parse_relation(text: str, path: str | None = None) -> Relation:
    lines = [(k + 1, ln) for k, ln in enumerate(text.splitlines()) if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise InputError("empty relation file", path=path)
    header_no, header = lines[0]
    cols = [c for c, _ in _split_cells(header)[1:]]
    if not cols:
        raise InputError("header needs at least one column label", header_no, 1, path)
    for k, (c, col) in enumerate(_split_cells(header)[1:]):
        if not c:
            raise InputError("empty column label", header_no, col, path)
        if c in cols[:k]:
            raise InputError(f"duplicate column label {c!r}", header_no, col, path)
    rows, pairs = [], []
    for no, line in lines[1:]:
        cells = _split_cells(line)
        label, lcol = cells[0]
        if not label:
            raise InputError("empty row label", no, lcol, path)
        if label in rows:
            raise InputError(f"duplicate row label {label!r}", no, lcol, path)
        if len(cells) - 1 != len(cols):
            col = cells[len(cols) + 1][1] if len(cells) > len(cols) + 1 else len(line.rstrip()) + 1
            raise InputError(f"expected {len(cols)} entries, found {len(cells) - 1}", no, col, path)
        rows.append(label)
        for x, (v, col) in zip(cols, cells[1:]):
            if v not in ("0", "1"):
                raise InputError(f"entry must be 0 or 1, found {v!r}", no, col, path)
            if v == "1":
                pairs.append((label, x))
    if not rows:
        raise InputError("relation has no rows", header_no, 1, path)
    return Relation(rows, cols, pairs)


def load_relation(path) -> Relation:
    return parse_relation(_read(path), str(path))


# -- block files --------------------------------------------------------------------


def _blocks(text: str, path: str | None) -> dict[str, list[tuple[int, int, str]]]:
    """Block name -> (line, column, content) of its nonblank lines."""
    blocks: dict[str, list] = {}
    current = None
    for k, raw in enumerate(text.splitlines()):
        no = k + 1
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        if body.startswith("["):
            if not body.endswith("]") or len(body) < 3:
                raise InputError("malformed block header, expected [name]", no, col, path)
            current = body[1:-1].strip()
            if current in blocks:
                raise InputError(f"block [{current}] appears twice", no, col, path)
            blocks[current] = []
            continue
        if current is None:
            raise InputError("content before the first [block] header", no, col, path)
        blocks[current].append((no, col, body))
    if not blocks:
        raise InputError("no [block] headers found", path=path)
    return blocks


def _complex(entries) -> SimplicialComplex:
    return SimplicialComplex(body.split() for _, _, body in entries)


def parse_complex(text: str, path: str | None = None) -> SimplicialComplex:
    """One facet per line, no block headers."""
    facets = []
    for k, raw in enumerate(text.splitlines()):
        line = raw.split("#", 1)[0]
        if line.strip():
            facets.append(line.split())
    if not facets:
        raise InputError("no facets found", path=path)
    return SimplicialComplex(facets)


def parse_complex_relation(text: str, path: str | None = None) -> ComplexRelation:
    blocks = _blocks(text, path)
    for name in ("K", "M", "R"):
        if name not in blocks:
            raise InputError(f"missing block [{name}]", path=path)
    extra = sorted(set(blocks) - {"K", "M", "R"})
    if extra:
        raise InputError(f"unexpected block [{extra[0]}]", path=path)
    k, m = _complex(blocks["K"]), _complex(blocks["M"])
    pairs = []
    for no, col, body in blocks["R"]:
        if body.count("|") != 1:
            raise InputError("relation lines read 'a b | x y'", no, col, path)
        left, right = body.split("|")
        s, t = tuple(left.split()), tuple(right.split())
        if not s or not t:
            raise InputError("both sides of '|' need at least one vertex", no, col, path)
        if tuple(sorted(set(s))) not in {tuple(sorted(x)) for x in k}:
            raise InputError(f"{' '.join(s)} is not a simplex of K", no, col, path)
        if tuple(sorted(set(t))) not in {tuple(sorted(x)) for x in m}:
            raise InputError(f"{' '.join(t)} is not a simplex of M", no, col + body.index("|") + 1, path)
        pairs.append((s, t))
    return ComplexRelation(k, m, pairs, close=True)


def load_complex_relation(path) -> ComplexRelation:
    return parse_complex_relation(_read(path), str(path))


def parse_cover(text: str, path: str | None = None) -> Cover:
    blocks = _blocks(text, path)
    members = {}
    for name, entries in blocks.items():
        if not entries:
            raise InputError(f"cover member [{name}] is empty", path=path)
        members[name] = _complex(entries)
    return Cover(members)


def load_cover(path) -> Cover:
    return parse_cover(_read(path), str(path))


# -- JSON ---------------------------------------------------------------------------


def _hashable(x):
    if isinstance(x, list):
        return tuple(_hashable(y) for y in x)
    if isinstance(x, dict):
        raise TypeError("objects are not valid labels")
    return x


def _locate(text: str, token) -> tuple[int, int]:
    """Line and column of the first occurrence of a JSON token, else 1:1."""
    try:
        needle = json.dumps(token)
    except TypeError:
        return 1, 1
    pos = text.find(needle)
    if pos < 0:
        return 1, 1
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


class _Json:
    def __init__(self, text: str, path: str | None):
        self.text, self.path = text, path
        try:
            self.data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(e.msg, e.lineno, e.colno, path) from None

    def fail(self, message: str, token=None):
        line, col = _locate(self.text, token) if token is not None else (1, 1)
        raise InputError(message, line, col, self.path)

    def field(self, obj, key, kind, where):
        if not isinstance(obj, dict):
            self.fail(f"{where} must be a JSON object")
        if key not in obj:
            self.fail(f"{where} is missing {key!r}")
        value = obj[key]
        if not isinstance(value, kind):
            self.fail(f"{where}.{key} has the wrong type", key)
        return value

    def label(self, x, where):
        try:
            return _hashable(x)
        except TypeError:
            self.fail(f"{where} must be a string, number or list")

    def triples(self, obj, key, where):
        out = []
        for t in obj.get(key, []):
            if not isinstance(t, list) or len(t) != 3:
                self.fail(f"{where}.{key} entries must be [x, y, z] triples", t)
            out.append(tuple(self.label(x, where) for x in t))
        return out

    def poset(self, obj, where) -> Poset:
        elems = [self.label(x, where) for x in self.field(obj, "elements", list, where)]
        rels = []
        for r in obj.get("relations", []):
            if not isinstance(r, list) or len(r) != 2:
                self.fail(f"{where}.relations entries must be [x, y] pairs", r)
            rels.append((self.label(r[0], where), self.label(r[1], where)))
        try:
            return Poset(elems, rels)
        except ValueError as e:
            self.fail(f"{where}: {e}", "relations")

    def records(self, obj, key, where):
        out = {}
        for rec in self.field(obj, key, list, where):
            if not isinstance(rec, dict):
                self.fail(f"{where}.{key} entries must be objects", rec)
            rid = self.label(self.field(rec, "id", (str, int, list), f"{where}.{key} entry"), where)
            if rid in out:
                self.fail(f"duplicate id {rid!r}", rec["id"])
            src = self.label(self.field(rec, "source", (str, int, list), f"{key} {rid!r}"), where)
            tgt = self.label(self.field(rec, "target", (str, int, list), f"{key} {rid!r}"), where)
            out[rid] = (src, tgt)
        return out

    def category(self, obj, where) -> FiniteCategory:
        if isinstance(obj, dict) and "poset" in obj:
            return poset_as_category(self.poset(obj["poset"], f"{where}.poset"))
        objects = [self.label(x, where) for x in self.field(obj, "objects", list, where)]
        if not objects:
            self.fail(f"{where} has no objects", "objects")
        morphisms = self.records(obj, "morphisms", where) if "morphisms" in obj else {}
        known = set(objects)
        for m, ends in morphisms.items():
            for end in ends:
                if end not in known:
                    self.fail(f"{where}: morphism {m!r} has unknown endpoint {end!r}", end)
        ids = obj.get("identities")
        if ids is None:
            identities = {}
            for x in objects:
                i = f"id:{x}"
                identities[x] = i
                morphisms[i] = (x, x)
        else:
            if not isinstance(ids, dict):
                self.fail(f"{where}.identities must map objects to morphism ids", "identities")
            identities = {self.label(_key(k, objects), where): self.label(v, where) for k, v in ids.items()}
        comp = {(g, f): h for g, f, h in self.triples(obj, "compose", where)}
        try:
            return FiniteCategory(objects, morphisms, identities, comp)
        except CategoryError as e:
            self.fail(f"{where}: {e}", "compose" if "compose" in obj else "objects")


def _key(k: str, objects: list):
    """JSON object keys are strings; match them back to non-string objects."""
    for x in objects:
        if str(x) == k or json.dumps(x) == k:
            return x
    return k


def parse_category(text: str, path: str | None = None) -> FiniteCategory:
    j = _Json(text, path)
    if not isinstance(j.data, dict):
        j.fail("a category is a JSON object")
    return j.category(j.data, "category")


def load_category(path) -> FiniteCategory:
    return parse_category(_read(path), str(path))


def parse_profunctor(text: str, path: str | None = None) -> ProfunctorData:
    j = _Json(text, path)
    data = j.data
    if not isinstance(data, dict):
        j.fail("a profunctor is a JSON object")
    if "relation" in data:
        rel = data["relation"]
        p = j.poset(j.field(rel, "P", dict, "relation"), "relation.P")
        q = j.poset(j.field(rel, "Q", dict, "relation"), "relation.Q")
        pairs = []
        for pr in j.field(rel, "pairs", list, "relation"):
            if not isinstance(pr, list) or len(pr) != 2:
                j.fail("relation.pairs entries must be [p, q] pairs", pr)
            pairs.append((j.label(pr[0], "pairs"), j.label(pr[1], "pairs")))
        try:
            return profunctor_from_relation(p, q, pairs)
        except ValueError as e:
            j.fail(f"relation: {e}", "pairs")
    c = j.category(j.field(data, "C", dict, "profunctor"), "C")
    d = j.category(j.field(data, "D", dict, "profunctor"), "D")
    hets = j.records(data, "heteromorphisms", "profunctor")
    left = {(h, f): h2 for h, f, h2 in j.triples(data, "left", "profunctor")}
    right = {(g, h): h2 for g, h, h2 in j.triples(data, "right", "profunctor")}
    try:
        return ProfunctorData(c, d, hets, left, right)
    except CategoryError as e:
        j.fail(f"profunctor: {e}", "heteromorphisms")


def load_profunctor(path) -> ProfunctorData:
    return parse_profunctor(_read(path), str(path))
