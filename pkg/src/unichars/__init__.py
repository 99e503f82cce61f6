"""Exact values of unipotent characters of finite classical groups on
regular semisimple classes, with the torus, polynomial and scanning
machinery around them."""

from .combinatorics import (
    BiPartition,
    Family,
    ParseError,
    bipartition_size,
    bipartitions,
    degenerate_class,
    format_bipartition,
    parse_bipartition,
    partitions,
    validate_class,
)
from .mn_rule import CharacterValue, ContractError, MNCache, value, value_oracle
from .qpoly import (
    CongruenceReport,
    GroupFamily,
    GroupSpec,
    IntPoly,
    babbage_residue,
    cyclotomic,
    d_ell,
    degree_congruence_check,
    ell_part,
    ell_valuation,
    group_order,
    quantum_binomial,
    sylow_exponent,
    torus_order,
    unipotent_degree,
)
from .scans import (
    ScanReport,
    cartan_legal_r,
    cartan_sign_pairs,
    corrigendum_check,
    corrigendum_row,
    predicted_exceptions,
    scan_nonvanishing,
)
from .symbols import (
    HookMove,
    KindTag,
    Symbol,
    SymbolKind,
    cohooks,
    defect,
    dual,
    dual_class,
    enumerate_symbols,
    format_symbol,
    hooks,
    kind,
    max_entry,
    normalize,
    parse_symbol,
    rank,
    shift,
    steinberg_symbol,
    trivial_symbol,
)
from .tori import (
    RegularGuarantee,
    check_torus_collection,
    enumerate_torus_types,
    is_ell_singular,
    maxred_check,
    regular_guarantee,
    torus_table_cases,
)

__all__ = [name for name in dir() if not name.startswith("_")]
