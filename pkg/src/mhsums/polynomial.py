"""Exact dense univariate polynomial arithmetic over the rationals.

Coefficients are ``fractions.Fraction`` values stored densely: index ``i``
holds the coefficient of ``x**i``.  Trailing zeros are trimmed on
construction, so equality is plain structural comparison and the zero
polynomial has an empty coefficient tuple (degree -1 by convention).  Every
operation is exact; nothing in this package ever rounds.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

__all__ = ["Polynomial", "Scalar", "discrete_sum"]

Scalar = Union[int, Fraction]


def _frac(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an int or Fraction, got {type(value).__name__}")


class Polynomial:
    """Immutable dense polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Polynomial is immutable")

    # ---------------------------------------------------------------- basics

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, value: Scalar) -> "Polynomial":
        return cls((value,))

    @classmethod
    def variable(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "Polynomial":
        if degree < 0:
            raise ValueError("monomial degree must be nonnegative")
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Polynomial", self.coeffs))

    def __repr__(self) -> str:
        return f"Polynomial({self.text('x')!r})"

    # ------------------------------------------------------------ arithmetic

    def __add__(self, other: "Polynomial | Scalar") -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial | Scalar") -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "Polynomial | Scalar") -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            f = _frac(other)
            return Polynomial(tuple(c * f for c in self.coeffs))
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "Polynomial":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        f = _frac(other)
        if f == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (Fraction(1) / f)

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        out = Polynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    # ------------------------------------------------------------ operations

    def eval(self, x: Scalar) -> Fraction:
        """Value at x by Horner's scheme."""
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, c: Scalar) -> "Polynomial":
        """The composed polynomial x |-> P(x + c)."""
        c = _frac(c)
        out = Polynomial()
        power = Polynomial.constant(1)
        step = Polynomial((c, 1))
        for coeff in self.coeffs:
            if coeff:
                out = out + power * coeff
            power = power * step
        return out

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def divide_x(self) -> "Polynomial":
        """Exact quotient P(x) / x; requires a zero constant term."""
        if self.is_zero:
            return Polynomial()
        if self.coeffs[0] != 0:
            raise ValueError("not divisible by x")
        return Polynomial(self.coeffs[1:])

    # ------------------------------------------------------------- rendering

    def text(self, var: str = "n") -> str:
        """Plain-text form, descending powers, e.g. ``3*n^2 - 5*n + 2``."""
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            parts.append(("-" if c < 0 else "+", _mono_text(abs(c), i, var)))
        sign, body = parts[0]
        pieces = [body if sign == "+" else "-" + body]
        for sign, body in parts[1:]:
            pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def latex(self, var: str = "n") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            parts.append(("-" if c < 0 else "+", _mono_latex(abs(c), i, var)))
        sign, body = parts[0]
        pieces = [body if sign == "+" else "-" + body]
        for sign, body in parts[1:]:
            pieces.append(f"{sign}{body}")
        return "".join(pieces)

    __str__ = text


def _coerce(value: object) -> "Polynomial | None":
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial.constant(value)
    return None


def _mono_text(c: Fraction, i: int, var: str) -> str:
    if i == 0:
        return str(c)
    v = var if i == 1 else f"{var}^{i}"
    return v if c == 1 else f"{c}*{v}"


def _frac_latex(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return r"\frac{%d}{%d}" % (c.numerator, c.denominator)


def _mono_latex(c: Fraction, i: int, var: str) -> str:
    if i == 0:
        return _frac_latex(c)
    v = var if i == 1 else "%s^{%d}" % (var, i)
    return v if c == 1 else _frac_latex(c) + v


def _binomial_upper(k: int) -> Polynomial:
    """The binomial coefficient C(x + 1, k) as a polynomial in x."""
    out = Polynomial.constant(Fraction(1, math.factorial(k)))
    for i in range(k):
        out = out * Polynomial((1 - i, 1))
    return out


def discrete_sum(F: Polynomial) -> Polynomial:
    """Summation polynomial S with S(n) = F(1) + ... + F(n); S(0) = 0.

    Works in the binomial-coefficient basis via forward differences of the
    samples F(0), ..., F(d).  This route is deliberately independent of the
    Bernoulli-number route (``mhsums.reducer.faulhaber``); the two are checked
    against each other in the tests.
    """
    d = F.degree
    if d < 0:
        return Polynomial()
    samples = [F.eval(i) for i in range(d + 1)]
    out = Polynomial.constant(-samples[0])
    row = samples
    j = 0
    while row:
        # row[0] is the j-th forward difference of F at 0, and
        # sum_{m=0..n} C(m, j) telescopes to C(n + 1, j + 1).
        if row[0]:
            out = out + _binomial_upper(j + 1) * row[0]
        row = [b - a for a, b in zip(row, row[1:])]
        j += 1
    return out
