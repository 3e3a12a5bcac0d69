"""Exact arithmetic substrate: finite fields, polynomials, integer lattices, intervals."""

from .fields import FieldCtx, embed, field_create, map_element, quadratic_character
from .interval import HPComplex
from .intlinalg import hnf, integer_kernel, lll_reduce, rank
from .polyfp import factor as poly_factor_modl

lattice_reduce = lll_reduce

__all__ = [
    "FieldCtx",
    "HPComplex",
    "embed",
    "field_create",
    "hnf",
    "integer_kernel",
    "lattice_reduce",
    "lll_reduce",
    "map_element",
    "poly_factor_modl",
    "quadratic_character",
    "rank",
]
