"""Linear combinations of multiple harmonic sums with polynomial coefficients.

A ClosedForm maps proper compositions to polynomial coefficients in the upper
limit n; the empty composition carries the pure polynomial part.  Its value
at n is sum over terms of coeff(n) * H_n(composition).  Equality is
structural on the canonical map: basis terms are treated as independent, and
the direct evaluator (``mhsums.oracle``) serves as the semantic backstop in
the tests.

Terms render and serialize in one canonical order (weight, then depth, then
lexicographic entries), so every emitter is deterministic.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .oracle import is_proper, mhs_eval
from .polynomial import Polynomial
from .stuffle import composition_key

__all__ = ["ClosedForm"]

Coefficient = Union[Polynomial, Fraction, int]


def _as_poly(value: Coefficient) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial.constant(value)
    raise TypeError(f"expected a Polynomial or scalar, got {type(value).__name__}")


class ClosedForm:
    """Immutable map from proper compositions to polynomial coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: "Mapping | Iterable[tuple]" = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        data: "dict[tuple[int, ...], Polynomial]" = {}
        for comp, coeff in items:
            comp = tuple(comp)
            if not is_proper(comp):
                raise ValueError(
                    "closed-form terms must use proper compositions (entries >= 1)"
                )
            poly = data.get(comp, Polynomial.zero()) + _as_poly(coeff)
            if poly:
                data[comp] = poly
            elif comp in data:
                del data[comp]
        object.__setattr__(self, "_terms", data)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ClosedForm is immutable")

    # ---------------------------------------------------------------- access

    @classmethod
    def zero(cls) -> "ClosedForm":
        return cls()

    @classmethod
    def from_combination(cls, comb: "Mapping") -> "ClosedForm":
        """Embed a constant-coefficient combination of compositions."""
        return cls({tuple(k): _as_poly(c) for k, c in comb.items()})

    @property
    def terms(self) -> "tuple[tuple[tuple[int, ...], Polynomial], ...]":
        """Terms in canonical order (weight, depth, entries)."""
        return tuple(
            (comp, self._terms[comp])
            for comp in sorted(self._terms, key=composition_key)
        )

    def coefficient(self, comp: "tuple[int, ...]") -> Polynomial:
        return self._terms.get(tuple(comp), Polynomial.zero())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClosedForm):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # mutable-dict semantics: compare by value, do not hash

    def __repr__(self) -> str:
        return f"ClosedForm({self.render('text')!r})"

    # ------------------------------------------------------------ arithmetic

    def __add__(self, other: "ClosedForm") -> "ClosedForm":
        if not isinstance(other, ClosedForm):
            return NotImplemented
        data = dict(self._terms)
        for comp, poly in other._terms.items():
            v = data.get(comp, Polynomial.zero()) + poly
            if v:
                data[comp] = v
            elif comp in data:
                del data[comp]
        out = ClosedForm()
        object.__setattr__(out, "_terms", data)
        return out

    def __neg__(self) -> "ClosedForm":
        out = ClosedForm()
        object.__setattr__(out, "_terms", {k: -p for k, p in self._terms.items()})
        return out

    def __sub__(self, other: "ClosedForm") -> "ClosedForm":
        if not isinstance(other, ClosedForm):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Coefficient) -> "ClosedForm":
        """Multiply every coefficient by a polynomial or scalar."""
        f = _as_poly(factor)
        data = {}
        if f:
            for comp, poly in self._terms.items():
                data[comp] = poly * f
        out = ClosedForm()
        object.__setattr__(out, "_terms", data)
        return out

    # ------------------------------------------------------------ evaluation

    def eval(self, n: int) -> Fraction:
        """Exact value at upper limit n, using the direct evaluator for each
        basis composition."""
        acc = Fraction(0)
        for comp, poly in self._terms.items():
            acc += poly.eval(n) * mhs_eval(n, comp)
        return acc

    # ------------------------------------------------------------- rendering

    def render(self, fmt: str = "text") -> str:
        if fmt == "text":
            return self._render_text()
        if fmt == "latex":
            return self._render_latex()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")

    def _render_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for comp, poly in self.terms:
            pieces.append(_term_text(comp, poly))
        sign, body = pieces[0]
        parts = [body if sign == "+" else "-" + body]
        for sign, body in pieces[1:]:
            parts.append(f" {sign} {body}")
        return "".join(parts)

    def _render_latex(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for comp, poly in self.terms:
            pieces.append(_term_latex(comp, poly))
        sign, body = pieces[0]
        parts = [body if sign == "+" else "-" + body]
        for sign, body in pieces[1:]:
            parts.append(f" {sign} {body}")
        return "".join(parts)

    # ---------------------------------------------------------------- JSON

    def to_json_obj(self) -> dict:
        return {
            "terms": [
                {
                    "composition": list(comp),
                    "coeff": [[c.numerator, c.denominator] for c in poly.coeffs],
                }
                for comp, poly in self.terms
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text: str) -> "ClosedForm":
        try:
            obj = json.loads(text)
            terms = {}
            for entry in obj["terms"]:
                comp = tuple(int(k) for k in entry["composition"])
                coeffs = [Fraction(int(a), int(b)) for a, b in entry["coeff"]]
                terms[comp] = Polynomial(coeffs)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed closed-form JSON: {exc}") from exc
        return cls(terms)


def _sign_split(poly: Polynomial) -> "tuple[str, Polynomial, bool]":
    """Pull an overall sign out of a coefficient polynomial.

    Returns (sign, magnitude, is_single_monomial).  Multi-monomial
    coefficients keep their internal signs unless all are negative.
    """
    monos = sum(1 for c in poly.coeffs if c)
    if monos <= 1:
        lead = poly.coeffs[-1] if poly.coeffs else Fraction(0)
        if lead < 0:
            return "-", -poly, True
        return "+", poly, True
    if all(c <= 0 for c in poly.coeffs):
        return "-", -poly, False
    return "+", poly, False


def _h_text(comp: "tuple[int, ...]") -> str:
    return "H(%s)" % ",".join(str(k) for k in comp)


def _h_latex(comp: "tuple[int, ...]") -> str:
    if comp == (1,):
        return "H_n"
    return "H_n(%s)" % ",".join(str(k) for k in comp)


def _term_text(comp, poly) -> "tuple[str, str]":
    if not comp:
        # the bare polynomial sorts first, so it may carry its own signs
        return "+", poly.text("n")
    sign, mag, single = _sign_split(poly)
    h = _h_text(comp)
    if mag == 1:
        return sign, h
    if single:
        return sign, f"{mag.text('n')}*{h}"
    return sign, f"({mag.text('n')})*{h}"


def _term_latex(comp, poly) -> "tuple[str, str]":
    if not comp:
        return "+", poly.latex("n")
    sign, mag, single = _sign_split(poly)
    h = _h_latex(comp)
    if mag == 1:
        return sign, h
    if single:
        return sign, mag.latex("n") + h
    return sign, r"\left(" + mag.latex("n") + r"\right)" + h
