"""Command-line front end.

Exit status: 0 when the reported verdict holds, 1 when it fails and 2 for
input errors.  Commands that read a relation or complex relation fall back
to a seeded random instance when no input is given.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Callable

from . import __version__
from .algebra import (
    Coefficients,
    DoubleComplex,
    HomologyResult,
    ss_converges,
    ss_page,
)
from .category import (
    CategoryError,
    adjunction_from_galois,
    category_homology,
    cograph,
    fiber_coefficient_homology,
    graph,
    loop_free_check,
    profunctor_double_complex,
    profunctor_from_adjunction,
    verify_les_profunctor,
)
from .cosheaf import (
    cosheaf_homology,
    global_cosection,
    homology_cosheaf,
    relation_cosheaf,
    relational_double_complex,
)
from .formats import (
    InputError,
    load_category,
    load_complex_relation,
    load_cover,
    load_profunctor,
    load_relation,
)
from .relational import (
    ComplexRelation,
    cover_nerve,
    dowker_complex,
    dowker_galois,
    good_cover_check,
    induced_complex_relation,
    relational_join,
    relational_product,
    verify_les_relational,
)
from .sampling import random_complex_relation, random_cover, random_relation
from .simplicial import SimplicialComplex, galois_check, vertex_key


def _label(x) -> str:
    if isinstance(x, tuple):
        return "(" + ", ".join(_label(y) for y in x) + ")"
    return str(x)


def _simplex(s) -> str:
    return "{" + " ".join(_label(v) for v in s) + "}"


def _homology(h: HomologyResult) -> dict:
    out = {
        "betti": list(h.betti_numbers()),
        "dims": {str(n): b for n, b in sorted(h.dims().items())},
        "torsion": {str(n): list(t) for n, (_, t) in sorted(h.nonzero().items()) if t},
    }
    if h.approximate:
        out["approximate"] = True
        out["computed_through"] = h.start + len(h.betti) - 1
    return out


def _complex(k: SimplicialComplex, coeff: Coefficients) -> dict:
    return {
        "f_vector": list(k.f_vector()),
        "facets": [_simplex(f) for f in k.facets()],
        "homology": _homology(k.homology(coeff)),
    }


def _cells(cells: dict) -> dict:
    return {f"{p},{q}": d for (p, q), d in sorted(cells.items()) if d}


# -- input helpers ----------------------------------------------------------------


def _rng(args) -> random.Random:
    return random.Random(args.seed)


def _relation(args):
    if args.input:
        return load_relation(args.input)
    return random_relation(_rng(args))


def _complex_relation(args) -> ComplexRelation:
    if args.relation:
        return induced_complex_relation(load_relation(args.relation))
    if args.input:
        return load_complex_relation(args.input)
    return random_complex_relation(_rng(args))


def _describe_relation(cr: ComplexRelation) -> dict:
    return {"K": list(cr.K.f_vector()), "M": list(cr.M.f_vector()), "pairs": len(cr.pairs)}


# -- commands -------------------------------------------------------------------------


def cmd_dowker(args, coeff):
    r = _relation(args)
    da, dx = dowker_complex(r, "A"), dowker_complex(r, "X")
    ha, hx = da.homology(coeff), dx.homology(coeff)
    return {"D_A": _complex(da, coeff), "D_X": _complex(dx, coeff)}, ha.same_as(hx)


def cmd_galois(args, coeff):
    r = _relation(args)
    l, u = dowker_galois(r)
    v = galois_check(l, u)
    report = {
        "L": {_simplex(s): _simplex(l(s)) for s in sorted(l.source, key=lambda s: tuple(map(vertex_key, s)))},
        "U": {_simplex(t): _simplex(u(t)) for t in sorted(u.source, key=lambda s: tuple(map(vertex_key, s)))},
        "galois": v.holds,
    }
    if not v.holds:
        report["witness"] = {"element": _label(v.witness), "condition": v.condition}
    return report, v.holds


def cmd_join(args, coeff):
    cr = _complex_relation(args)
    j = relational_join(cr)
    report = {"relation": _describe_relation(cr), "join": _complex(j, coeff)}
    return report, True


def cmd_product(args, coeff):
    cr = _complex_relation(args)
    p = relational_product(cr)
    report = {
        "relation": _describe_relation(cr),
        "product": {
            "f_vector": list(p.f_vector()),
            "euler_characteristic": p.euler_characteristic(),
            "homology": _homology(p.homology(coeff)),
        },
    }
    return report, True


def _field(coeff: Coefficients) -> Coefficients:
    return coeff if coeff.is_field else Coefficients("Q")


def cmd_les(args, coeff):
    cr = _complex_relation(args)
    rep = verify_les_relational(cr, _field(coeff))
    out = rep.summary()
    out["relation"] = _describe_relation(cr)
    out["product"] = _homology(rep.source)
    out["join"] = _homology(rep.target)
    return out, rep.exact


def _pages(dc: DoubleComplex, coeff: Coefficients) -> tuple[dict, bool]:
    out, ok = {}, True
    for orientation in ("columns-first", "rows-first"):
        conv = ss_converges(dc, coeff, orientation)
        pages = {str(r): _cells(ss_page(dc, r, orientation, coeff).cells) for r in range(conv.infinity_page + 1)}
        out[orientation] = {"pages": pages, "e_infinity": _cells(conv.e_infinity.cells), **conv.summary()}
        ok = ok and conv.converges
    return out, ok


def cmd_ss(args, coeff):
    cr = _complex_relation(args)
    dc = relational_double_complex(cr, augmented=args.augmented)
    out, ok = _pages(dc, _field(coeff))
    out["relation"] = _describe_relation(cr)
    out["grid"] = _cells({pq: dc.size(pq) for pq in dc.cells})
    return out, ok


def cmd_cosheaf(args, coeff):
    cr = _complex_relation(args)
    f = relation_cosheaf(cr, "K")
    sections = {_simplex(s): [_simplex(t) for t in sec.facets()] for s, sec in f.items()}
    field = _field(coeff)
    top = max(cr.M.dimension, 0)
    hom = {}
    for q in range(top + 1):
        g = homology_cosheaf(f, q, field)
        hom[str(q)] = _homology(cosheaf_homology(g, field))
    glob = global_cosection(f)
    same = glob == cr.M
    report = {
        "relation": _describe_relation(cr),
        "sections": sections,
        "cosheaf_homology": hom,
        "global_cosection": [_simplex(t) for t in glob.facets()],
        "global_cosection_equals_M": same,
    }
    return report, same


def cmd_nerve(args, coeff):
    cover = load_cover(args.input) if args.input else random_cover(_rng(args))
    nerve, cr = cover_nerve(cover)
    good = good_cover_check(cover)
    les = verify_les_relational(cr, _field(coeff))
    report = {
        "base": _complex(cover.base, coeff),
        "nerve": _complex(nerve, coeff),
        "good_cover": {
            "good": good.good,
            "refuted": good.refuted,
            "certificates": {_simplex(t): _certificate(c) for t, c in good.entries},
        },
        "les": les.summary(),
    }
    return report, les.exact


def _certificate(c) -> dict:
    out = {"kind": c.kind}
    for key in ("apex", "degree"):
        if hasattr(c, key):
            value = getattr(c, key)
            out[key] = _label(value) if key == "apex" else value
    return out


def cmd_cat(args, coeff):
    c = load_category(args.input)
    lf = loop_free_check(c)
    if not lf.holds and args.max_degree is None:
        raise InputError(f"category is not loop-free ({lf.reason}); pass --max-degree for a truncated computation", path=args.input)
    h = category_homology(c, coeff, args.max_degree)
    report = {
        "objects": len(c.objects),
        "morphisms": len(c.morphisms),
        "loop_free": lf.holds,
        "homology": _homology(h),
    }
    return report, True


def cmd_prof(args, coeff):
    if args.relation:
        p = profunctor_from_adjunction(adjunction_from_galois(*dowker_galois(load_relation(args.relation))))
    elif args.input:
        p = load_profunctor(args.input)
    else:
        p = profunctor_from_adjunction(adjunction_from_galois(*dowker_galois(random_relation(_rng(args), 4))))
    for name, cat in (("C", p.C), ("D", p.D)):
        v = loop_free_check(cat)
        if not v.holds:
            raise InputError(f"category {name} is not loop-free ({v.reason})", path=args.input)
    field = _field(coeff)
    j, _, _ = cograph(p)
    g, _, _ = graph(p)
    les = verify_les_profunctor(p, field)
    dc = profunctor_double_complex(p)
    ss, ok = _pages(dc, field)
    fc = {}
    for q in range(max(dc.q_range.stop, 1)):
        fc[str(q)] = _homology(fiber_coefficient_homology(p, q, "C", field))
    report = {
        "heteromorphisms": len(p.hets),
        "homology": {
            "C": _homology(category_homology(p.C, coeff)),
            "D": _homology(category_homology(p.D, coeff)),
            "cograph": _homology(category_homology(j, coeff)),
            "graph": _homology(category_homology(g, coeff)),
        },
        "les": les.summary(),
        "ss": ss,
        "fiber_coefficients_C": fc,
    }
    return report, les.exact and ok


COMMANDS: dict[str, tuple[Callable, str]] = {
    "dowker": (cmd_dowker, "relation CSV -> both Dowker complexes and their homology"),
    "galois": (cmd_galois, "relation CSV -> the Galois connection L, U and its check"),
    "join": (cmd_join, "complex relation -> relational join complex"),
    "product": (cmd_product, "complex relation -> relational product complex"),
    "les": (cmd_les, "complex relation -> long exact sequence report"),
    "ss": (cmd_ss, "complex relation -> spectral-sequence pages and convergence"),
    "cosheaf": (cmd_cosheaf, "complex relation -> sections, cosheaf homology, global cosection"),
    "nerve": (cmd_nerve, "cover file -> nerve, good-cover report, long exact sequence"),
    "cat": (cmd_cat, "category JSON -> category homology"),
    "prof": (cmd_prof, "profunctor JSON -> graph/cograph homology, LES, spectral sequences"),
}

_TAKES_RELATION = {"join", "product", "les", "ss", "cosheaf", "prof"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relhom", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"relhom {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("input", nargs="?" if name != "cat" else None, help="input file")
        if name in _TAKES_RELATION:
            p.add_argument("--relation", metavar="CSV", help="use the relation induced by a relation CSV")
        if name == "ss":
            p.add_argument("--augmented", action="store_true", help="add the row and column -1")
        p.add_argument("--coeff", default="Z", help="Z, Q or Zp:<p> (default Z; field-only reports use Q for Z)")
        p.add_argument("--seed", type=int, default=0, help="seed for the random instance used without input")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("--max-degree", type=int, default=None, help="truncate nerves of categories that are not loop-free")
        p.add_argument("--out", help="write the report here instead of stdout")
    return parser


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key in sorted(obj):
        value = obj[key]
        if isinstance(value, dict) and value:
            lines.append(f"{pad}{key}:")
            lines.extend(_render_text(value, indent + 1))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{pad}{key}:")
            for k, v in enumerate(value):
                lines.append(f"{pad}  - [{k}]")
                lines.extend(_render_text(v, indent + 2))
        else:
            lines.append(f"{pad}{key}: {json.dumps(value, sort_keys=True)}")
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    return "\n".join(_render_text(report)) + "\n"


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        coeff = Coefficients.parse(args.coeff)
    except ValueError as e:
        print(f"relhom: error: {e}", file=stderr)
        return 2
    func = COMMANDS[args.command][0]
    try:
        report, verdict = func(args, coeff)
    except InputError as e:
        print(f"relhom: input error: {e}", file=stderr)
        return 2
    except (ValueError, CategoryError) as e:
        print(f"relhom: error: {e}", file=stderr)
        return 2
    report = {"command": args.command, "coefficients": str(coeff), "verdict": bool(verdict), **report}
    text = render(report, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return 0 if verdict else 1


def main() -> None:
    sys.exit(run())
