"""Laurent polynomials in one variable over the rationals."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class LaurentPoly:
    """An element of Q[t, t^-1], stored as a sorted tuple of (exponent, coefficient).

    Instances are immutable and hashable. Zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, coeffs: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, Fraction] = {}
        for k, c in items:
            if not isinstance(k, int):
                raise TypeError("exponents must be integers")
            acc[k] = acc.get(k, Fraction(0)) + _frac(c)
        self._terms = tuple(sorted((k, c) for k, c in acc.items() if c != 0))

    @classmethod
    def _raw(cls, terms: tuple) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def const(cls, c: Scalar) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar], shift: int = 0) -> "LaurentPoly":
        """Build sum(coeffs[i] * t^(i + shift))."""
        return cls((i + shift, c) for i, c in enumerate(coeffs))

    # -- inspection -----------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    def coeff(self, k: int) -> Fraction:
        for e, c in self._terms:
            if e == k:
                return c
        return Fraction(0)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    @property
    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("valuation of the zero polynomial")
        return self._terms[0][0]

    @property
    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return self._terms[-1][0]

    @property
    def leading_coeff(self) -> Fraction:
        return self._terms[-1][1] if self._terms else Fraction(0)

    @property
    def trailing_coeff(self) -> Fraction:
        return self._terms[0][1] if self._terms else Fraction(0)

    def is_polynomial(self) -> bool:
        return not self._terms or self._terms[0][0] >= 0

    def dense(self) -> list[Fraction]:
        """Ascending coefficient list of an honest polynomial (valuation >= 0)."""
        if not self._terms:
            return []
        if self._terms[0][0] < 0:
            raise ValueError("negative exponents present")
        out = [Fraction(0)] * (self.degree + 1)
        for k, c in self._terms:
            out[k] = c
        return out

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms:
            acc[k] = acc.get(k, 0) + c
        return LaurentPoly._raw(tuple(sorted((k, c) for k, c in acc.items() if c != 0)))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(tuple((k, -c) for k, c in self._terms))

    def __sub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        acc: dict[int, Fraction] = {}
        for k1, c1 in self._terms:
            for k2, c2 in other._terms:
                acc[k1 + k2] = acc.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly._raw(tuple(sorted((k, c) for k, c in acc.items() if c != 0)))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible in Q[t^±1]")
            (k, c), = self._terms
            return LaurentPoly._raw(((k * n, c ** n),))
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Scalar) -> "LaurentPoly":
        c = _frac(c)
        if c == 0:
            return ZERO
        return LaurentPoly._raw(tuple((k, v * c) for k, v in self._terms))

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly._raw(tuple((e + k, c) for e, c in self._terms))

    def bar(self) -> "LaurentPoly":
        """Substitute t -> t^-1."""
        return LaurentPoly._raw(tuple((-k, c) for k, c in reversed(self._terms)))

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly((k - 1, k * c) for k, c in self._terms if k != 0)

    def __call__(self, x):
        """Evaluate at x (any ring element supporting + * and integer powers)."""
        total = 0
        for k, c in self._terms:
            total = total + c * x ** k
        return total

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Polynomial long division; both operands must be honest polynomials."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a = self.dense()
        b = other.dense()
        if len(a) < len(b):
            return ZERO, self
        q = [Fraction(0)] * (len(a) - len(b) + 1)
        lb = b[-1]
        for i in range(len(a) - len(b), -1, -1):
            coef = a[i + len(b) - 1] / lb
            q[i] = coef
            if coef:
                for j, bc in enumerate(b):
                    a[i + j] -= coef * bc
        return LaurentPoly.from_coeffs(q), LaurentPoly.from_coeffs(a[: len(b) - 1])

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Divide in Q[t^±1], raising if the division is not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return ZERO
        s, o = self.valuation, other.valuation
        q, r = self.shift(-s).divmod(other.shift(-o))
        if not r.is_zero():
            raise ValueError("inexact Laurent polynomial division")
        return q.shift(s - o)

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(("LaurentPoly", self._terms))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sort_key(self) -> tuple:
        return tuple((k, c.numerator, c.denominator) for k, c in self._terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        return format_laurent(self)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
T = LaurentPoly.monomial(1)


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_laurent(p: LaurentPoly, var: str = "t") -> str:
    """Ascending-exponent text form, e.g. ``1 - 3*t + t^2`` or ``-t^-1 + 3 - t``."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for i, (k, c) in enumerate(p.terms):
        neg = c < 0
        a = -c if neg else c
        if k == 0:
            mono = ""
        elif k == 1:
            mono = var
        else:
            mono = f"{var}^{k}"
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# -- fraction-free polynomial gcd ---------------------------------------------

def _to_int_dense(p: LaurentPoly) -> list[int]:
    coeffs = p.dense()
    den = reduce(lcm, (c.denominator for c in coeffs), 1)
    return [int(c * den) for c in coeffs]


def _content(a: list[int]) -> int:
    return reduce(gcd, a, 0)


def _primitive(a: list[int]) -> list[int]:
    c = _content(a)
    if c == 0:
        return a
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (ascending lists)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for j, bc in enumerate(b):
            a[j + shift] -= la * bc
        _trim(a)
    return a


def poly_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Monic gcd of two honest polynomials via the primitive PRS."""
    if p.is_zero() and q.is_zero():
        return ZERO
    if p.is_zero():
        return q.scale(1 / q.leading_coeff)
    if q.is_zero():
        return p.scale(1 / p.leading_coeff)
    a = _primitive(_trim(_to_int_dense(p)))
    b = _primitive(_trim(_to_int_dense(q)))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, (_primitive(r) if r else [])
    g = LaurentPoly.from_coeffs(a)
    return g.scale(1 / g.leading_coeff)
