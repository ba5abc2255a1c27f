"""Independent oracles used to derive golden values.

Nothing here imports relhom: boundary matrices are assembled directly and
reduced with sympy, and combinatorial objects are enumerated by brute force.
"""

from itertools import combinations

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors


def closure(facets):
    out = set()
    for f in facets:
        f = tuple(sorted(set(f), key=str))
        for k in range(1, len(f) + 1):
            out.update(combinations(f, k))
    return out


def simplicial_homology(simplices):
    """{degree: (betti, torsion)} of a face-closed simplex family over Z."""
    simplices = {tuple(sorted(s, key=str)) for s in simplices}
    by_dim = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    for d in by_dim:
        by_dim[d].sort(key=lambda s: tuple(map(str, s)))
    top = max(by_dim, default=-1)
    ranks, factors = {}, {}
    for d in range(1, top + 1):
        rows = {s: i for i, s in enumerate(by_dim[d - 1])}
        m = Matrix.zeros(len(rows), len(by_dim[d]))
        for j, s in enumerate(by_dim[d]):
            for i in range(len(s)):
                m[rows[s[:i] + s[i + 1:]], j] = (-1) ** i
        inv = [int(x) for x in invariant_factors(m, domain=ZZ) if x != 0] if min(m.shape) else []
        ranks[d] = len(inv)
        factors[d] = tuple(sorted(abs(x) for x in inv if abs(x) > 1))
    out = {}
    for d in range(top + 1):
        betti = len(by_dim[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        tors = factors.get(d + 1, ())
        if betti or tors:
            out[d] = (betti, tors)
    return out


def brute_dowker(rows, cols, pairs, base="A"):
    """All nonempty subsets of one side with a common witness on the other."""
    pairs = set(pairs)
    side, other = (rows, cols) if base == "A" else (cols, rows)
    rel = (lambda s, w: (s, w) in pairs) if base == "A" else (lambda s, w: (w, s) in pairs)
    out = set()
    for k in range(1, len(side) + 1):
        for sub in combinations(side, k):
            if any(all(rel(s, w) for s in sub) for w in other):
                out.add(frozenset(sub))
    return out


def brute_chains(elements, le):
    """All nonempty chains of a finite order given by a predicate."""
    elements = list(elements)
    out = set()
    for k in range(1, len(elements) + 1):
        for sub in combinations(elements, k):
            if all(le(a, b) or le(b, a) for a, b in combinations(sub, 2)):
                out.add(frozenset(sub))
    return out


def det(rows):
    """Exact determinant by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1
