"""Exact verification workbench for finite A-infinity algebras and categories."""

from ._core import (
    Auslander,
    AuslanderError,
    Category,
    Cochain,
    Filtration,
    FiltrationError,
    HochschildError,
    PerfModules,
    Spec,
    SpecError,
    TwistedComplex,
    appendix_filtration,
    build_auslander,
    check_filtration,
    check_stasheff,
    degree_filtration,
    deform,
    hochschild_differential,
    load_spec,
    parse_cochain,
    parse_spec,
    quotient_by_level,
    radical_dim,
    run_cli,
    sod_report,
    validate_structure,
)

__all__ = [name for name in dir() if not name.startswith("_")]
