"""Exact linear algebra: Smith form, homology, double complexes, exactness."""

from .chain import (
    ChainComplex,
    ChainComplexError,
    ChainMapError,
    HomologyBasis,
    HomologyResult,
    check_chain_map,
    direct_sum,
    homology,
    homology_bases,
    induced_map,
)
from .coefficients import Coefficients, Q, Z, Zp, as_coefficients
from .double import (
    ConvergenceReport,
    DoubleComplex,
    DoubleComplexError,
    SSPage,
    ss_converges,
    ss_page,
    total_complex,
)
from .exact import (
    ExactnessReport,
    LESReport,
    les_from_chain_maps,
    verify_exact_sequence,
)
from .linalg import invariant_factors, rank, smith_normal_form
from .matrix import Matrix, block_matrix

IntMatrix = Matrix

__all__ = [
    "ChainComplex",
    "ChainComplexError",
    "ChainMapError",
    "Coefficients",
    "ConvergenceReport",
    "DoubleComplex",
    "DoubleComplexError",
    "ExactnessReport",
    "HomologyBasis",
    "HomologyResult",
    "IntMatrix",
    "LESReport",
    "Matrix",
    "Q",
    "SSPage",
    "Z",
    "Zp",
    "as_coefficients",
    "block_matrix",
    "check_chain_map",
    "direct_sum",
    "homology",
    "homology_bases",
    "induced_map",
    "invariant_factors",
    "les_from_chain_maps",
    "rank",
    "smith_normal_form",
    "ss_converges",
    "ss_page",
    "total_complex",
    "verify_exact_sequence",
]
