"""Seeded random instances for the property suites and the CLI.

Every generator takes a :class:`random.Random` so runs are reproducible.

>>> import random
>>> r = random_relation(random.Random(0))
>>> 1 <= len(r.rows) <= 6 and 1 <= len(r.cols) <= 6
True
"""

from __future__ import annotations

import random

from .relational import (
    ComplexRelation,
    Cover,
    Relation,
    cover_nerve,
    good_cover_check,
    induced_complex_relation,
)
from .simplicial import Poset, SimplicialComplex

DENSITIES = (0.2, 0.4, 0.6)
COMPLEX_RELATION_KINDS = ("dowker", "generated", "cover")


def random_relation(rng: random.Random, max_size: int = 6, densities: tuple[float, ...] = DENSITIES) -> Relation:
    """Sizes uniform in 1..max_size, entries Bernoulli(density); never empty."""
    while True:
        na, nx = rng.randint(1, max_size), rng.randint(1, max_size)
        density = rng.choice(densities)
        rows = [f"a{i}" for i in range(1, na + 1)]
        cols = [f"x{j}" for j in range(1, nx + 1)]
        pairs = [(a, x) for a in rows for x in cols if rng.random() < density]
        if pairs:
            return Relation(rows, cols, pairs)


def random_complex(rng: random.Random, prefix: str, n_vertices: int, n_facets: int, max_dim: int = 2) -> SimplicialComplex:
    verts = [f"{prefix}{i}" for i in range(1, n_vertices + 1)]
    facets = [rng.sample(verts, rng.randint(1, min(max_dim + 1, n_vertices))) for _ in range(n_facets)]
    return SimplicialComplex(facets + [[v] for v in verts])


def _generated_relation(rng: random.Random) -> ComplexRelation:
    k = random_complex(rng, "k", rng.randint(1, 5), rng.randint(1, 4))
    m = random_complex(rng, "m", rng.randint(1, 5), rng.randint(1, 4))
    ks, ms = k.simplices(), m.simplices()
    gens = [(rng.choice(ks), rng.choice(ms)) for _ in range(rng.randint(1, 5))]
    return ComplexRelation(k, m, gens, close=True)


def random_cover(rng: random.Random, good: bool | None = False, attempts: int = 50) -> Cover:
    """Cover of a random complex by 2-4 unions of facets.

    With ``good=False`` the sampler retries until some intersection is
    certified non-contractible, falling back to a two-arc cover of a circle.
    """
    for _ in range(attempts):
        base = random_complex(rng, "v", rng.randint(3, 6), rng.randint(2, 5))
        facets = base.facets()
        n = rng.randint(2, 4)
        groups: list[list] = [[] for _ in range(n)]
        for f in facets:
            groups[rng.randrange(n)].append(f)
            if rng.random() < 0.3:
                groups[rng.randrange(n)].append(f)
        members = {f"U{i + 1}": g for i, g in enumerate(groups) if g}
        cover = Cover(members, base)
        if good is None or good_cover_check(cover).good == good:
            return cover
    if good:
        return Cover({"U1": [("v1", "v2")], "U2": [("v2", "v3")]})
    return Cover({"U1": [("v1", "v2")], "U2": [("v2", "v3"), ("v3", "v1")]})


def random_complex_relation(rng: random.Random, kind: str | None = None) -> ComplexRelation:
    """Dowker-induced, generator-closed or non-good-cover relation."""
    kind = kind or rng.choice(COMPLEX_RELATION_KINDS)
    if kind == "dowker":
        return induced_complex_relation(random_relation(rng))
    if kind == "generated":
        return _generated_relation(rng)
    if kind == "cover":
        return cover_nerve(random_cover(rng, good=False))[1]
    raise ValueError(f"unknown kind {kind!r}; expected one of {COMPLEX_RELATION_KINDS}")


def random_poset(rng: random.Random, max_elements: int = 7, density: float | None = None) -> Poset:
    """Transitive closure of a random DAG on 1..max_elements elements."""
    n = rng.randint(1, max_elements)
    density = rng.choice(DENSITIES) if density is None else density
    order = rng.sample(range(n), n)
    names = [f"p{i}" for i in range(1, n + 1)]
    rel = [(names[order[i]], names[order[j]]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return Poset(names, rel)
