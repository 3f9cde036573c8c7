"""Exact (2,3)-generator construction and verification for orthogonal groups."""

from ._omega23 import (
    DEFAULT_SEED,
    certify,
    element_order,
    generate,
    omega_order,
    search_a,
    verify,
    verify_claims,
    witt_type,
)

__all__ = [
    "DEFAULT_SEED",
    "certify",
    "element_order",
    "generate",
    "omega_order",
    "search_a",
    "verify",
    "verify_claims",
    "witt_type",
]
