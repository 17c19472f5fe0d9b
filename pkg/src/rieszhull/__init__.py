"""Exact Riesz hulls of finite semisimple MV-algebras."""

from .errors import (
    DomainError,
    HullError,
    InvariantError,
    NotHomError,
    NotInHullError,
    ParseError,
)
from .exactla import hnf_generate, lattice_member, parse_vec, qvec, sign_regions, span_solve
from .freepwl import PWL, is_mcnaughton, regular_refine, schauder_decompose, term_to_pwl
from .hull import (
    adjunction_check,
    divisible_hull,
    essential_witness,
    extend_hom,
    gamma_unit,
    hull_functor,
    lgroup_generate,
    riesz_hull,
)
from .mvcore import (
    GridAlgebra,
    PointMapHom,
    PointSet,
    chain_decomposition,
    generate_grid,
    hom_check,
    max_spectrum,
    quotient,
)
from .terms import eval_term, parse_term, print_term

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "GridAlgebra",
    "HullError",
    "InvariantError",
    "NotHomError",
    "NotInHullError",
    "PWL",
    "ParseError",
    "PointMapHom",
    "PointSet",
    "adjunction_check",
    "chain_decomposition",
    "divisible_hull",
    "essential_witness",
    "eval_term",
    "extend_hom",
    "gamma_unit",
    "generate_grid",
    "hnf_generate",
    "hom_check",
    "hull_functor",
    "is_mcnaughton",
    "lattice_member",
    "lgroup_generate",
    "max_spectrum",
    "parse_term",
    "parse_vec",
    "print_term",
    "quotient",
    "qvec",
    "regular_refine",
    "riesz_hull",
    "schauder_decompose",
    "sign_regions",
    "span_solve",
    "term_to_pwl",
]
