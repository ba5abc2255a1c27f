"""Rank bookkeeping for long exact sequences of the shape

    ... -> A_n --α_n--> B_n --β_n--> C_n --> A_{n-1} -> ...

with the connecting maps left implicit.  Such maps exist making the whole
sequence exact exactly when, in every degree,

* β_n ∘ α_n = 0,
* dim ker β_n = rank α_n          (exactness at B_n),
* dim ker α_n = dim C_{n+1} - rank β_{n+1}   (room for the connecting map).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .chain import ChainComplex, HomologyResult, homology, homology_bases, induced_map
from .coefficients import Coefficients, as_coefficients
from .linalg import rank
from .matrix import Matrix


@dataclass(frozen=True)
class DegreeCheck:
    degree: int
    dims: tuple[int, int, int]
    rank_alpha: int
    rank_beta: int
    composite_zero: bool
    exact_at_middle: bool
    connecting_fits: bool

    @property
    def ok(self) -> bool:
        return self.composite_zero and self.exact_at_middle and self.connecting_fits


@dataclass(frozen=True)
class ExactnessReport:
    coefficients: Coefficients
    degrees: tuple[DegreeCheck, ...]

    @property
    def exact(self) -> bool:
        return all(d.ok for d in self.degrees)

    def first_failure(self) -> DegreeCheck | None:
        return next((d for d in self.degrees if not d.ok), None)

    def summary(self) -> dict:
        return {
            "coefficients": str(self.coefficients),
            "exact": self.exact,
            "degrees": [
                {
                    "n": d.degree,
                    "dims": list(d.dims),
                    "rank_alpha": d.rank_alpha,
                    "rank_beta": d.rank_beta,
                    "composite_zero": d.composite_zero,
                    "exact_at_middle": d.exact_at_middle,
                    "connecting_fits": d.connecting_fits,
                }
                for d in self.degrees
            ],
        }


def verify_exact_sequence(
    dims: Mapping[int, tuple[int, int, int]],
    alpha: Mapping[int, Matrix],
    beta: Mapping[int, Matrix],
    coeff: Coefficients | str = "Q",
) -> ExactnessReport:
    """Check the three rank conditions degree by degree.

    ``dims[n] = (dim A_n, dim B_n, dim C_n)``; missing degrees are zero and
    missing maps are zero maps.

    >>> from relhom.algebra.matrix import Matrix
    >>> r = verify_exact_sequence({0: (1, 2, 1)},
    ...     {0: Matrix.from_dense([[1], [1]])}, {0: Matrix.from_dense([[1, -1]])})
    >>> r.exact
    True
    """
    coeff = as_coefficients(coeff)
    if not coeff.is_field:
        raise ValueError("exactness is checked over a field")
    keys = set(dims) | set(alpha) | set(beta)
    if not keys:
        return ExactnessReport(coeff, ())

    def d(n):
        return tuple(dims.get(n, (0, 0, 0)))

    def get(maps, n, shape, name):
        m = maps.get(n)
        if m is None:
            return Matrix.zeros(*shape)
        if m.shape != shape:
            raise ValueError(f"{name}_{n} has shape {m.shape} but the spaces give {shape}")
        return m

    lo, hi = min(keys) - 1, max(keys) + 1
    checks = []
    ranks_beta = {}
    for n in range(lo, hi + 2):
        a, b, c = d(n)
        ranks_beta[n] = rank(get(beta, n, (c, b), "beta"), coeff)
    for n in range(lo, hi + 1):
        a, b, c = d(n)
        al = get(alpha, n, (b, a), "alpha")
        be = get(beta, n, (c, b), "beta")
        ra, rb = rank(al, coeff), ranks_beta[n]
        comp = (be @ al).map_entries(coeff.reduce)
        checks.append(
            DegreeCheck(
                degree=n,
                dims=(a, b, c),
                rank_alpha=ra,
                rank_beta=rb,
                composite_zero=comp.is_zero(),
                exact_at_middle=(b - rb) == ra,
                connecting_fits=(a - ra) == d(n + 1)[2] - ranks_beta[n + 1],
            )
        )
    return ExactnessReport(coeff, tuple(checks))


@dataclass(frozen=True)
class LESReport:
    """Homology of A -> B -> C with the exactness bookkeeping of the induced maps."""

    coefficients: Coefficients
    source: HomologyResult
    middle: HomologyResult
    target: HomologyResult
    exactness: ExactnessReport

    @property
    def exact(self) -> bool:
        return self.exactness.exact

    def summary(self) -> dict:
        degrees = sorted(set(self.source.dims()) | set(self.middle.dims()) | set(self.target.dims()) | {0})
        return {
            "coefficients": str(self.coefficients),
            "dims": {str(n): [self.source.betti_at(n), self.middle.betti_at(n), self.target.betti_at(n)] for n in degrees},
            "exact": self.exact,
            "checks": self.exactness.summary()["degrees"],
        }


def les_from_chain_maps(
    a_cc: ChainComplex,
    b_cc: ChainComplex,
    c_cc: ChainComplex,
    alpha: Mapping[int, Matrix],
    beta: Mapping[int, Matrix],
    coeff: Coefficients | str = "Q",
) -> LESReport:
    """Pass chain maps A -> B -> C to homology and check the rank conditions."""
    coeff = as_coefficients(coeff)
    ba = homology_bases(a_cc, coeff)
    bb = homology_bases(b_cc, coeff)
    bc = homology_bases(c_cc, coeff)
    a_h = induced_map(alpha, a_cc, b_cc, coeff, bases=(ba, bb))
    b_h = induced_map(beta, b_cc, c_cc, coeff, bases=(bb, bc))
    ha, hb, hc = homology(a_cc, coeff), homology(b_cc, coeff), homology(c_cc, coeff)
    degrees = set(a_cc.degrees) | set(b_cc.degrees) | set(c_cc.degrees)
    dims = {n: (ha.betti_at(n), hb.betti_at(n), hc.betti_at(n)) for n in degrees}
    return LESReport(coeff, ha, hb, hc, verify_exact_sequence(dims, a_h, b_h, coeff))
