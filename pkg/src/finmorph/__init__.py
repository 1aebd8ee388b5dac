"""Exact finiteness certificates for homogeneous polynomial maps."""

__version__ = "0.1.0"

from .polyring import NEG_INFINITY, Polynomial, Ring  # noqa: E402
from .certifier import (  # noqa: E402
    POSITIVE_DIMENSIONAL,
    FinitenessCertificate,
    SquareSystem,
    Status,
    check_origin_only_zero,
    fiber_dimension,
    finiteness_certificate,
    rewrite_monomial,
    verify_certificate,
)

__all__ = [
    "NEG_INFINITY",
    "POSITIVE_DIMENSIONAL",
    "FinitenessCertificate",
    "Polynomial",
    "Ring",
    "SquareSystem",
    "Status",
    "check_origin_only_zero",
    "fiber_dimension",
    "finiteness_certificate",
    "rewrite_monomial",
    "verify_certificate",
]
