"""The extension operator, surreal antidifferentiation, and the catalog."""

from .prefactor import Prefactor, exp_prefactor, ln_prefactor
from .tau import (
    PointData,
    SurrealPoint,
    SurrealValue,
    ValueGroup,
    analyze_point,
    exp_infinitesimal,
    exp_nf,
    exp_purely_infinite,
    g_map_exponent,
    tau_eval,
)
from .catalog import CatalogFunction, catalog, catalog_manifest, monomial_entry
from .extension import (
    DecoratedValue,
    NumericTaylor,
    antidiff_no,
    combine_entries,
    exp_surreal_value,
    extend,
    integrate,
    scale_entry,
    transseriate,
    value_difference,
)

__all__ = [
    "Prefactor",
    "exp_prefactor",
    "ln_prefactor",
    "PointData",
    "SurrealPoint",
    "SurrealValue",
    "ValueGroup",
    "analyze_point",
    "exp_infinitesimal",
    "exp_nf",
    "exp_purely_infinite",
    "g_map_exponent",
    "tau_eval",
    "CatalogFunction",
    "catalog",
    "catalog_manifest",
    "monomial_entry",
    "DecoratedValue",
    "NumericTaylor",
    "antidiff_no",
    "combine_entries",
    "exp_surreal_value",
    "extend",
    "integrate",
    "scale_entry",
    "transseriate",
    "value_difference",
]
