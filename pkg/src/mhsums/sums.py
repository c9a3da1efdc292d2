"""Closed forms for weighted sums of powers and products of harmonic numbers.

``sum_power`` turns sum_{m=1..n} F(m) * H_{m-1}**t into a flat closed form:
the power expands through the quasi-shuffle algebra, each piece becomes an
extended sum with leading power weight, and the reducer does the rest.
``sum_power_shifted`` handles the H_m (unshifted-argument) variant via
sum_{m=0..n} F(m) H_m**t = F(n) H_n**t + sum_{m=1..n} F(m-1) H_{m-1}**t.
``sum_product`` generalizes the inner factor to any product of depth-one
sums, e.g. H_{m-1} * H_{m-1}(2).

``structured_form`` produces the presentations with explicit H_n-power
blocks (squares, cubes, the H*H(2) product, and fourth powers with a general
polynomial weight), assembled directly from the coefficient polynomials and
umbral values; ``structured_to_closed`` flattens such a presentation so the
two routes can be compared structurally.  ``structure_check`` verifies the
general shape of the remainder after removing the leading S_n(F) * H_n**t
block: depth below t and coefficient degree at most deg(F) + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bernoulli import bernoulli, umbral_eval
from .closedform import ClosedForm
from .polynomial import Polynomial, discrete_sum
from .reducer import c_poly, d_umbral, faulhaber, reduce
from .stuffle import expand_power, product_combinations

__all__ = [
    "sum_power",
    "sum_power_shifted",
    "sum_product",
    "StructuredForm",
    "structured_form",
    "structured_to_closed",
    "StructureReport",
    "structure_check",
]


def _check_weight(F: Polynomial) -> None:
    if not isinstance(F, Polynomial):
        raise TypeError("the weight must be a Polynomial")


def _combination_closed(comb, p_weights) -> ClosedForm:
    """sum_{m=1..n} F(m) * (combination of H_{m-1} sums), with F given by its
    monomial coefficients."""
    out = ClosedForm.zero()
    for comp, c in comb.items():
        if not c:
            continue
        for p, a in p_weights:
            if a:
                out = out + reduce(p, comp).scale(a * c)
    return out


def sum_power(F: Polynomial, t: int) -> ClosedForm:
    """Closed form of sum_{m=1..n} F(m) * H_{m-1}**t."""
    _check_weight(F)
    if not isinstance(t, int) or t < 0:
        raise ValueError("the power must be a nonnegative integer")
    p_weights = list(enumerate(F.coeffs))
    return _combination_closed(expand_power(1, t), p_weights)


def sum_power_shifted(F: Polynomial, t: int) -> ClosedForm:
    """Closed form of sum_{m=0..n} F(m) * H_m**t."""
    _check_weight(F)
    if not isinstance(t, int) or t < 0:
        raise ValueError("the power must be a nonnegative integer")
    boundary = ClosedForm.from_combination(expand_power(1, t)).scale(F)
    return boundary + sum_power(F.shift(-1), t)


def sum_product(F: Polynomial, factors: "list[tuple[int, int]]") -> ClosedForm:
    """Closed form of sum_{m=1..n} F(m) * prod_i H_{m-1}(order_i)**mult_i.

    ``factors`` lists (order, multiplicity) pairs.
    """
    _check_weight(F)
    comb = {(): Fraction(1)}
    for order, mult in factors:
        if not isinstance(order, int) or order < 1:
            raise ValueError("factor orders must be positive integers")
        if not isinstance(mult, int) or mult < 1:
            raise ValueError("factor multiplicities must be positive integers")
        comb = product_combinations(comb, expand_power(order, mult))
    return _combination_closed(comb, list(enumerate(F.coeffs)))


# --------------------------------------------------------------- structured


@dataclass(frozen=True)
class StructuredForm:
    """A closed form grouped into explicit harmonic-number blocks.

    ``leading`` multiplies H_n**power times the depth-one factors in
    ``extra_orders``; q[i] multiplies H_n**i; ``c2``, ``c21`` and ``c3``
    multiply H_n(2), H_n(2,1) and H_n(3).
    """

    power: int
    extra_orders: "tuple[int, ...]"
    leading: Polynomial
    q: "tuple[Polynomial, ...]"
    c2: Polynomial
    c21: Fraction
    c3: Fraction


_KINDS = ("hn2", "hn3", "mixed", "hn4")


def structured_form(kind: str, arg) -> StructuredForm:
    """Explicit block presentation of one of the supported sums.

    kind "hn2":   sum m**p * H_{m-1}**2            (arg: p)
    kind "hn3":   sum m**p * H_{m-1}**3            (arg: p)
    kind "mixed": sum m**p * H_{m-1} * H_{m-1}(2)  (arg: p)
    kind "hn4":   sum F(m) * H_{m-1}**4            (arg: Polynomial F)
    """
    if kind not in _KINDS:
        raise ValueError(f"unknown structured kind {kind!r}")
    if kind == "hn4":
        _check_weight(arg)
        return _hn4(arg)
    p = arg
    if not isinstance(p, int) or p < 0:
        raise ValueError("the power weight must be a nonnegative integer")
    if kind == "hn2":
        return _hn2(p)
    if kind == "hn3":
        return _hn3(p)
    return _mixed(p)


def _weighted_b(p: int, shift: int, scale: Fraction) -> Fraction:
    """scale * B_{p-shift}, with the factor vanishing when p < shift so the
    Bernoulli index never goes negative."""
    if p < shift or not scale:
        return Fraction(0)
    return scale * bernoulli(p - shift, "plus")


def _hn2(p: int) -> StructuredForm:
    bp = bernoulli(p, "plus")
    q1 = -(2 * c_poly(p, (0,)) + bp)
    q0 = 2 * c_poly(p, (0, 0)) - c_poly(p, (1,))
    return StructuredForm(
        power=2,
        extra_orders=(),
        leading=faulhaber(p),
        q=(q0, q1),
        c2=Polynomial.zero(),
        c21=Fraction(0),
        c3=Fraction(0),
    )


def _hn3(p: int) -> StructuredForm:
    bp = bernoulli(p, "plus")
    q2 = -3 * (c_poly(p, (0,)) + Fraction(bp, 2))
    q1 = (
        6 * c_poly(p, (0, 0))
        + 3 * d_umbral(p)
        - 3 * c_poly(p, (1,))
        - _weighted_b(p, 1, Fraction(p, 2))
    )
    q0 = (
        -6 * c_poly(p, (0, 0, 0))
        + 3 * c_poly(p, (0, 1))
        + 3 * c_poly(p, (1, 1))
        - c_poly(p, (2,))
    )
    return StructuredForm(
        power=3,
        extra_orders=(),
        leading=faulhaber(p),
        q=(q0, q1, q2),
        c2=Polynomial.constant(Fraction(bp, 2)),
        c21=Fraction(0),
        c3=Fraction(0),
    )


def _mixed(p: int) -> StructuredForm:
    bp = bernoulli(p, "plus")
    q2 = Polynomial.constant(-Fraction(bp, 2))
    q1 = (
        Polynomial.constant(d_umbral(p))
        - c_poly(p, (1,))
        - _weighted_b(p, 1, Fraction(p, 2))
    )
    q0 = c_poly(p, (0, 1)) + c_poly(p, (1, 1)) - c_poly(p, (2,))
    c2 = -(c_poly(p, (0,)) + Fraction(bp, 2))
    return StructuredForm(
        power=1,
        extra_orders=(2,),
        leading=faulhaber(p),
        q=(q0, q1, q2),
        c2=c2,
        c21=Fraction(0),
        c3=Fraction(0),
    )


def _hn4(F: Polynomial) -> StructuredForm:
    P = Polynomial.zero()
    Q = [Polynomial.zero() for _ in range(4)]
    for p, a in enumerate(F.coeffs):
        if not a:
            continue
        bp = bernoulli(p, "plus")
        d_poly = faulhaber(p).divide_x()  # the leading coefficient over x
        # the depth-one block collapses to a constant: -6 + 4 copies of the
        # same umbral value plus the guarded Bernoulli correction
        P = P + a * Polynomial.constant(
            -2 * d_umbral(p) + _weighted_b(p, 1, Fraction(p, 2))
        )
        Q[0] = Q[0] + a * (
            24 * c_poly(p, (0, 0, 0, 0))
            - 12 * c_poly(p, (0, 0, 1))
            - 12 * c_poly(p, (0, 1, 1))
            - 12 * c_poly(p, (1, 1, 1))
            + 4 * c_poly(p, (0, 2))
            + 6 * c_poly(p, (1, 2))
            + 4 * c_poly(p, (2, 2))
            - c_poly(p, (3,))
        )
        Q[1] = Q[1] + a * (
            -24 * c_poly(p, (0, 0, 0))
            + 12 * c_poly(p, (0, 1))
            + 12 * c_poly(p, (1, 1))
            - 4 * c_poly(p, (2,))
            + Polynomial.constant(
                -12 * d_umbral(p, (0,))
                + 2 * umbral_eval(d_poly.derivative(), "plus")
                + 6 * umbral_eval((d_poly - bp).divide_x(), "plus")
                - _weighted_b(p, 2, Fraction(p * (p - 1), 6))
            )
        )
        Q[2] = Q[2] + a * (
            12 * c_poly(p, (0, 0))
            - 6 * c_poly(p, (1,))
            + Polynomial.constant(
                6 * d_umbral(p) - _weighted_b(p, 1, Fraction(p))
            )
        )
        Q[3] = Q[3] + a * (-4 * c_poly(p, (0,)) - Polynomial.constant(2 * bp))
    fb = umbral_eval(F, "plus")
    return StructuredForm(
        power=4,
        extra_orders=(),
        leading=discrete_sum(F),
        q=tuple(Q),
        c2=P,
        c21=2 * fb,
        c3=fb,
    )


def structured_to_closed(form: StructuredForm) -> ClosedForm:
    """Flatten a structured presentation into the basis of compositions."""
    lead = expand_power(1, form.power)
    for order in form.extra_orders:
        lead = product_combinations(lead, {(order,): Fraction(1)})
    out = ClosedForm.from_combination(lead).scale(form.leading)
    for i, qi in enumerate(form.q):
        if qi:
            out = out + ClosedForm.from_combination(expand_power(1, i)).scale(qi)
    extras = {(2,): form.c2, (2, 1): form.c21, (3,): form.c3}
    return out + ClosedForm(extras)


# ------------------------------------------------------------------- checks


@dataclass(frozen=True)
class StructureReport:
    """Result of the remainder-shape check for one (weight, power) pair."""

    passes: bool
    offending_terms: "tuple[tuple[tuple[int, ...], Polynomial], ...]"


def structure_check(F: Polynomial, t: int) -> StructureReport:
    """Verify that sum_{m=1..n} F(m) H_{m-1}**t minus S_n(F) * H_n**t only
    contains terms of depth below t with coefficient degree <= deg(F) + 1."""
    _check_weight(F)
    if not isinstance(t, int) or t < 0:
        raise ValueError("the power must be a nonnegative integer")
    leading = ClosedForm.from_combination(expand_power(1, t)).scale(discrete_sum(F))
    remainder = sum_power(F, t) - leading
    degree_bound = F.degree + 1
    offending = tuple(
        (comp, poly)
        for comp, poly in remainder.terms
        if len(comp) >= t or poly.degree > degree_bound
    )
    return StructureReport(passes=not offending, offending_terms=offending)
