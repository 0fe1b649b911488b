"""Exact surreal arithmetic: sign expansions, normal forms, Limits."""

from .signs import (
    MINUS,
    PLUS,
    Dyadic,
    SignExpansion,
    all_sign_expansions,
    genetic_add,
    genetic_mul,
    genetic_neg,
    sign_expansion_of,
    sign_value,
    simplest_between,
)
from .normal_form import (
    EQ,
    GT,
    LT,
    SurrealNF,
    decompose,
    is_infinitesimal,
    is_purely_infinite,
    nf_add,
    nf_cmp,
    nf_from_sign_expansion,
    nf_inv_of_monomial,
    nf_mul,
    nf_neg,
    nf_to_sign_expansion,
    omega,
    omega_map,
    one,
)
from .lazy import LazyNF, lim, schedule_from_nf
from .render import parse_nf, render_nf

__all__ = [
    "MINUS",
    "PLUS",
    "Dyadic",
    "SignExpansion",
    "all_sign_expansions",
    "genetic_add",
    "genetic_mul",
    "genetic_neg",
    "sign_expansion_of",
    "sign_value",
    "simplest_between",
    "EQ",
    "GT",
    "LT",
    "SurrealNF",
    "decompose",
    "is_infinitesimal",
    "is_purely_infinite",
    "nf_add",
    "nf_cmp",
    "nf_from_sign_expansion",
    "nf_inv_of_monomial",
    "nf_mul",
    "nf_neg",
    "nf_to_sign_expansion",
    "omega",
    "omega_map",
    "one",
    "LazyNF",
    "lim",
    "schedule_from_nf",
    "parse_nf",
    "render_nf",
]
