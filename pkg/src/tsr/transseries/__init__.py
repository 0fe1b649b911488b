"""Height-one, depth-one transseries calculus."""

from .series import PowerSeries
from .grid import (
    GridMinus,
    GridPlus,
    Group,
    LogPart,
    PlusTerm,
    TransseriesT1,
    assemble,
    eq_to_order,
    groups_of,
    semantic_terms,
)
from .calculus import (
    NEG,
    POS,
    ZERO,
    from_log_part,
    from_minus_term,
    from_plus_term,
    from_power_series,
    ts_add,
    ts_antidiff,
    ts_decompose,
    ts_diff,
    ts_dominates,
    ts_mul_minus,
    ts_scale,
    ts_sign,
    ts_sub,
)
from .parser import ts_parse, ts_print, ts_to_json, ts_from_json

__all__ = [
    "PowerSeries",
    "GridMinus",
    "GridPlus",
    "Group",
    "LogPart",
    "PlusTerm",
    "TransseriesT1",
    "assemble",
    "eq_to_order",
    "groups_of",
    "semantic_terms",
    "NEG",
    "POS",
    "ZERO",
    "from_log_part",
    "from_minus_term",
    "from_plus_term",
    "from_power_series",
    "ts_add",
    "ts_antidiff",
    "ts_decompose",
    "ts_diff",
    "ts_dominates",
    "ts_mul_minus",
    "ts_scale",
    "ts_sign",
    "ts_sub",
    "ts_parse",
    "ts_print",
    "ts_to_json",
    "ts_from_json",
]
