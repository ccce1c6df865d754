"""Genlex Gray codes of spanning trees of outerplane graphs."""

from ._stgray import (
    Error,
    InvariantViolation,
    count,
    dual_labeling,
    fib,
    fib_bound,
    generate,
    hamilton,
    verify_genlex,
)

__all__ = [
    "Error",
    "InvariantViolation",
    "count",
    "dual_labeling",
    "fib",
    "fib_bound",
    "generate",
    "hamilton",
    "verify_genlex",
]
