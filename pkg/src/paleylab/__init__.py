"""Exact finite-field, Gauss-sum and clique computations for generalised Paley and Peisert graphs."""

__version__ = "0.1.0"

from .errors import CapExceeded, InternalConsistencyError, PaleyLabError, PreconditionError  # noqa: E402
from .field import FiniteField, field_of_order, make_field  # noqa: E402
from .cyclotomic import CyclotomicInt, CyclotomicRing, make_ring  # noqa: E402
from .characters import (  # noqa: E402
    Character,
    double_char_sum_bound,
    exp_sum,
    formula_gauss_sum,
    gauss_sum,
    is_pure,
    is_supersingular,
    make_character,
    parseval_sum,
)
from .graphs import CayleyGraph, build_gp, build_peisert, export_graph  # noqa: E402
from .clique import CliqueCertificate, clique_check, enumerate_max_cliques_through, max_clique, t5_bound  # noqa: E402
from .peisert import h_scan, pec_vanishing_check  # noqa: E402

__all__ = [
    "CapExceeded",
    "CayleyGraph",
    "Character",
    "CliqueCertificate",
    "CyclotomicInt",
    "CyclotomicRing",
    "FiniteField",
    "InternalConsistencyError",
    "PaleyLabError",
    "PreconditionError",
    "build_gp",
    "build_peisert",
    "clique_check",
    "double_char_sum_bound",
    "enumerate_max_cliques_through",
    "exp_sum",
    "export_graph",
    "field_of_order",
    "formula_gauss_sum",
    "gauss_sum",
    "h_scan",
    "is_pure",
    "is_supersingular",
    "make_character",
    "make_field",
    "make_ring",
    "max_clique",
    "parseval_sum",
    "pec_vanishing_check",
    "t5_bound",
]
