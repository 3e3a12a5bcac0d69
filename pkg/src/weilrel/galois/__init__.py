"""Hyperoctahedral groups and Galois maximality certificates."""

from .cert import (
    GaloisCertificate,
    Rejected,
    frobenius_cycle_type,
    maximality_certificate,
    trace_is_zero,
    tuple_certificate,
)
from .groups import W2gGroup, decomposition_check, orbit_count, signed_cycle_type, w2g_enumerate

__all__ = [
    "GaloisCertificate",
    "Rejected",
    "W2gGroup",
    "decomposition_check",
    "frobenius_cycle_type",
    "maximality_certificate",
    "orbit_count",
    "signed_cycle_type",
    "trace_is_zero",
    "tuple_certificate",
    "w2g_enumerate",
]
