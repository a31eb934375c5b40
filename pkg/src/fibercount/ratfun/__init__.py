"""Exact arithmetic in Q[t^±1] and Q(t), and the matrix kernels built on it."""

from fractions import Fraction

from .integer import SmithForm, hermite_rows, invariant_factors, reduce_mod_lattice, smith_normal_form
from .laurent import LaurentPoly, format_laurent, poly_gcd
from .matrix import (
    RatFunMatrix,
    SingularMatrixError,
    charpoly_coeffs,
    det_one_minus_tA,
    matrix_inverse,
    minimal_polynomial,
    one_minus_tA,
)
from .parse import RatFunSyntaxError, parse_ratfun
from .rational import RF_ONE, RF_T, RF_ZERO, RatFun, as_ratfun, format_ratfun


def rf_arith(a, b, kind: str) -> RatFun:
    a, b = parse_ratfun(a), parse_ratfun(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


def series_expand(f, lo: int, hi: int) -> list[tuple[int, Fraction]]:
    return parse_ratfun(f).series(lo, hi)


def log_derivative(f) -> RatFun:
    return parse_ratfun(f).log_derivative()


def bar_involution(f) -> RatFun:
    return parse_ratfun(f).bar()


__all__ = [
    "LaurentPoly", "RatFun", "RatFunMatrix", "SmithForm", "SingularMatrixError", "RatFunSyntaxError",
    "RF_ONE", "RF_T", "RF_ZERO", "as_ratfun", "bar_involution", "charpoly_coeffs", "det_one_minus_tA",
    "format_laurent", "format_ratfun", "hermite_rows", "invariant_factors", "log_derivative",
    "matrix_inverse", "minimal_polynomial", "one_minus_tA", "parse_ratfun", "poly_gcd",
    "reduce_mod_lattice", "rf_arith", "series_expand", "smith_normal_form",
]
