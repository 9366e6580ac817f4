"""Exact arithmetic over Q and small real quadratic/biquadratic extensions."""

from .algnum import (
    QQ,
    AlgNum,
    Field,
    FieldMismatch,
    as_algnum,
    common_field,
    sign,
    sqrt,
    squarefree_decomposition,
)
from .literal import LiteralError, parse_algnum
from .poly import OutOfDomain, PiecewisePoly, Poly, integrate, quad_roots

__all__ = [
    "QQ",
    "AlgNum",
    "Field",
    "FieldMismatch",
    "LiteralError",
    "OutOfDomain",
    "PiecewisePoly",
    "Poly",
    "as_algnum",
    "common_field",
    "integrate",
    "parse_algnum",
    "quad_roots",
    "sign",
    "sqrt",
    "squarefree_decomposition",
]
