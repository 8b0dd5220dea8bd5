"""Exact classification of solvable Lie algebras of codimension one and two."""

from ._core import (
    JacobiViolation,
    NotADerivation,
    ParseError,
    canonicalize,
    catalog_document,
    catalog_keys,
    classify,
    derivation_dims,
    derivation_report,
    extend,
    h1_basis,
    is_member,
    run_cli,
    validate,
    verify_witness,
)

__all__ = [
    "JacobiViolation",
    "NotADerivation",
    "ParseError",
    "canonicalize",
    "catalog_document",
    "catalog_keys",
    "classify",
    "derivation_dims",
    "derivation_report",
    "extend",
    "h1_basis",
    "is_member",
    "run_cli",
    "validate",
    "verify_witness",
]
