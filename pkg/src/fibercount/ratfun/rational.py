"""Rational functions in one variable, kept in a unique reduced form.

Canonical form: ``num / den`` where ``den`` is an honest polynomial with
constant term 1 and ``gcd(num, den) = 1``.  Any power of t lives in the
numerator, so ``t^-1`` is stored as ``LaurentPoly(t^-1) / 1``.

Normalising the constant term of the denominator (rather than the top
coefficient) keeps the printed form of things like ``1/(1 - t)`` readable and
makes power-series expansion at t = 0 a plain recurrence.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .laurent import ONE, ZERO, LaurentPoly, format_laurent, poly_gcd

Coercible = Union["RatFun", LaurentPoly, int, Fraction]


class RatFun:
    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly | int | Fraction = 0, den: LaurentPoly | int | Fraction = 1):
        num = num if isinstance(num, LaurentPoly) else LaurentPoly.const(num)
        den = den if isinstance(den, LaurentPoly) else LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _reduce(num, den)

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFun":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def const(cls, c) -> "RatFun":
        return cls._raw(LaurentPoly.const(c), ONE)

    @classmethod
    def monomial(cls, k: int, c=1) -> "RatFun":
        return cls._raw(LaurentPoly.monomial(k, c), ONE)

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RatFun":
        return cls._raw(p, ONE)

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == ONE

    def is_constant(self) -> bool:
        return self.den == ONE and self.num.is_constant()

    def is_monomial(self) -> bool:
        return self.den == ONE and self.num.is_monomial()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeff(0)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: Coercible) -> "RatFun":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other: Coercible) -> "RatFun":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Coercible) -> "RatFun":
        return (-self) + other

    def __mul__(self, other: Coercible) -> "RatFun":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RF_ZERO
        if self.den == ONE and o.den == ONE:
            return RatFun._raw(self.num * o.num, ONE)
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other: Coercible) -> "RatFun":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError(f"division of {self} by zero")
        return RatFun(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other: Coercible) -> "RatFun":
        return _coerce(other) / self

    def __pow__(self, n: int) -> "RatFun":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        # reduced forms stay reduced under powers
        return RatFun._raw(self.num ** n, self.den ** n)

    def shift(self, k: int) -> "RatFun":
        """Multiply by t^k."""
        return RatFun._raw(self.num.shift(k), self.den)

    def scale(self, c) -> "RatFun":
        c = Fraction(c)
        if c == 0:
            return RF_ZERO
        return RatFun._raw(self.num.scale(c), self.den)

    # -- calculus / involutions ----------------------------------------------

    def derivative(self) -> "RatFun":
        return RatFun(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den)

    def log_derivative(self) -> "RatFun":
        """t f'(t) / f(t)."""
        if self.is_zero():
            raise ZeroDivisionError("logarithmic derivative of zero")
        # t f'/f = t N'/N - t D'/D, computed without squaring anything
        n, d = self.num, self.den
        return RatFun((n.derivative() * d - n * d.derivative()).shift(1), n * d)

    def bar(self) -> "RatFun":
        """Substitute t -> t^-1."""
        return RatFun(self.num.bar(), self.den.bar())

    def __call__(self, x):
        """Evaluate at a rational point, or compose with another RatFun."""
        if isinstance(x, RatFun):
            return _coerce(self.num(x)) / _coerce(self.den(x))
        x = Fraction(x)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at {x}")
        return Fraction(self.num(x)) / d

    def series(self, lo: int, hi: int) -> list[tuple[int, Fraction]]:
        """Coefficients of t^lo..t^hi of the expansion at t = 0."""
        if lo > hi:
            raise ValueError("series window needs lo <= hi")
        if self.is_zero():
            return [(k, Fraction(0)) for k in range(lo, hi + 1)]
        v = self.num.valuation
        # f = t^v * (N/D) with N polynomial; expand N/D via D's recurrence
        numer = self.num.shift(-v).dense()
        den = self.den.dense()
        length = hi - v + 1
        out: list[Fraction] = []
        for i in range(max(length, 0)):
            c = numer[i] if i < len(numer) else Fraction(0)
            for j in range(1, min(i, len(den) - 1) + 1):
                c -= den[j] * out[i - j]
            out.append(c)  # den[0] == 1
        coeffs = {v + i: c for i, c in enumerate(out)}
        return [(k, coeffs.get(k, Fraction(0))) for k in range(lo, hi + 1)]

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other) -> bool:
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self.den == ONE and self.num.is_constant():
            return hash(self.num.coeff(0))
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def sort_key(self) -> tuple:
        return (self.den.sort_key(), self.num.sort_key())

    def __repr__(self) -> str:
        return f"RatFun({self})"

    def __str__(self) -> str:
        return format_ratfun(self)


def _reduce(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return ZERO, ONE
    dv = den.valuation
    nv = num.valuation
    num, den = num.shift(-nv), den.shift(-dv)
    shift = nv - dv
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
    c = den.coeff(0)
    if c != 1:
        num = num.scale(1 / c)
        den = den.scale(1 / c)
    return num.shift(shift), den


def _coerce(x):
    if isinstance(x, RatFun):
        return x
    if isinstance(x, LaurentPoly):
        return RatFun._raw(x, ONE)
    if isinstance(x, (int, Fraction)):
        return RatFun._raw(LaurentPoly.const(x), ONE)
    return NotImplemented


def as_ratfun(x) -> RatFun:
    r = _coerce(x)
    if r is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a rational function")
    return r


RF_ZERO = RatFun._raw(ZERO, ONE)
RF_ONE = RatFun._raw(ONE, ONE)
RF_T = RatFun._raw(LaurentPoly.monomial(1), ONE)


def _wrap(s: str, p: LaurentPoly) -> str:
    return f"({s})" if len(p.terms) > 1 else s


def format_ratfun(f: RatFun, var: str = "t") -> str:
    """``(1 - t)/(1 - 3*t + t^2)`` style text; parentheses only where needed."""
    num = format_laurent(f.num, var)
    if f.den == ONE:
        return num
    return f"{_wrap(num, f.num)}/{_wrap(format_laurent(f.den, var), f.den)}"
