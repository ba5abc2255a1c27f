"""Finite categories, nerves, adjunctions and profunctors."""

from .core import (
    CategoryError,
    FibrationVerdict,
    FiniteCategory,
    FunctorData,
    LoopFreeVerdict,
    category_homology,
    comma_category,
    discrete_category,
    discrete_fibration_check,
    identity_functor,
    initial_objects,
    loop_free_check,
    monoid_category,
    nerve_chain_complex,
    nerve_chain_map,
    nerve_strings,
    poset_as_category,
    terminal_objects,
)
from .profunctor import (
    AdjunctionData,
    ProfunctorData,
    adjunction_from_galois,
    cograph,
    fiber_category,
    fiber_coefficient_complex,
    fiber_coefficient_homology,
    graph,
    les_chain_maps_profunctor,
    profunctor_double_complex,
    profunctor_from_adjunction,
    profunctor_from_relation,
    verify_les_profunctor,
)

__all__ = [
    "AdjunctionData",
    "CategoryError",
    "FibrationVerdict",
    "FiniteCategory",
    "FunctorData",
    "LoopFreeVerdict",
    "ProfunctorData",
    "adjunction_from_galois",
    "category_homology",
    "cograph",
    "comma_category",
    "discrete_category",
    "discrete_fibration_check",
    "fiber_category",
    "fiber_coefficient_complex",
    "fiber_coefficient_homology",
    "graph",
    "identity_functor",
    "initial_objects",
    "les_chain_maps_profunctor",
    "loop_free_check",
    "monoid_category",
    "nerve_chain_complex",
    "nerve_chain_map",
    "nerve_strings",
    "poset_as_category",
    "profunctor_double_complex",
    "profunctor_from_adjunction",
    "profunctor_from_relation",
    "terminal_objects",
    "verify_les_profunctor",
]
