"""Rewrites power-weighted harmonic sums as closed forms over proper sums.

The quantity handled here is sum_{m=1..n} m**p * H_{m-1}(k_1, ..., k_r),
equivalently the extended sum whose leading index is -p.  ``reduce``
eliminates the leading power step by step: the power-sum prefactor comes out
as a polynomial (Faulhaber), and each remaining term either already is a
proper multiple harmonic sum or is a shorter extended sum handled
recursively.  Depth strictly decreases, so the recursion terminates, and the
result is a polynomial-coefficient combination of proper sums whose
coefficient degrees never exceed p + 1.

``reduce_direct`` computes the same closed form in a single pass from the
fully unrolled three-block summation formula and exists purely as an
independent cross-check; the recurrence path is authoritative.  One reading
note on the unrolled formula: in the leading (polynomial times tail) block,
the last summation index of the l-th term ranges over the full current degree
budget -- as if that block's final composition entry were 1 -- for every l,
not only for l = r.  This is the reading consistent with the recurrence;
agreement of the two paths is enforced by the tests and by
``reduce --method both`` on the command line.

``c_poly`` builds the coefficient polynomials that appear in the leading
blocks: for nonnegative subscripts a_2 <= ... <= a_r (an empty subscript list
reproduces Faulhaber's polynomial) it sums, over all nonnegative j_1..j_r
with j_1 + ... + j_r <= p - a_r, the product of Bernoulli-weighted binomial
factors C(p+1-a_i-j_1-...-j_{i-1}, j_i) * B_{j_i} / (p+1-a_i-j_1-...-j_{i-1})
times x**(p+1-a_r-j_1-...-j_r), with a_1 = 0 implicit.  Every exponent in the
result is at least 1.  ``d_umbral`` is the umbral Bernoulli value of such a
polynomial divided by x.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .bernoulli import bernoulli, umbral_eval
from .closedform import ClosedForm
from .oracle import is_proper
from .polynomial import Polynomial

__all__ = ["faulhaber", "c_poly", "d_umbral", "reduce", "reduce_direct"]


def _check_power(p: int) -> None:
    if not isinstance(p, int) or p < 0:
        raise ValueError("the power weight must be a nonnegative integer")


@lru_cache(maxsize=None)
def faulhaber(p: int) -> Polynomial:
    """The power-sum polynomial: faulhaber(p)(n) = 1**p + 2**p + ... + n**p.

    Built with plus-convention Bernoulli numbers,
    (1/(p+1)) * sum_{j=0..p} C(p+1, j) * B_j * x**(p+1-j).
    """
    _check_power(p)
    coeffs = [Fraction(0)] * (p + 2)
    for j in range(p + 1):
        b = bernoulli(j, "plus")
        if b:
            coeffs[p + 1 - j] = Fraction(math.comb(p + 1, j), p + 1) * b
    return Polynomial(coeffs)


def c_poly(p: int, index: "tuple[int, ...]" = ()) -> Polynomial:
    """Leading-block coefficient polynomial for power p and subscripts
    ``index`` = (a_2, ..., a_r).  An unsatisfiable constraint region yields
    the zero polynomial.  ``c_poly(p)`` equals ``faulhaber(p)``."""
    _check_power(p)
    index = tuple(index)
    if not all(isinstance(a, int) and a >= 0 for a in index):
        raise ValueError("subscripts must be nonnegative integers")
    if any(b < a for a, b in zip(index, index[1:])):
        raise ValueError("subscripts must be weakly increasing")
    return _c_poly(p, index)


@lru_cache(maxsize=None)
def _c_poly(p: int, index: "tuple[int, ...]") -> Polynomial:
    subs = (0,) + index
    r = len(subs)
    budget = p - subs[-1]
    if budget < 0:
        return Polynomial()
    coeffs = [Fraction(0)] * (p + 2 - subs[-1])

    def walk(i: int, used: int, acc: Fraction) -> None:
        if i > r:
            coeffs[p + 1 - subs[-1] - used] += acc
            return
        denom = p + 1 - subs[i - 1] - used
        # for weakly increasing subscripts, denom >= 1 + subs[-1] - subs[i-1] >= 1
        assert denom > 0
        for j in range(budget - used + 1):
            b = bernoulli(j, "plus")
            if b:
                walk(i + 1, used + j, acc * Fraction(math.comb(denom, j), denom) * b)

    walk(1, 0, Fraction(1))
    return Polynomial(coeffs)


def d_umbral(p: int, index: "tuple[int, ...]" = ()) -> Fraction:
    """Umbral Bernoulli value (plus convention) of c_poly(p, index) / x."""
    return umbral_eval(c_poly(p, index).divide_x(), "plus")


def reduce(p: int, comp: "tuple[int, ...]" = ()) -> ClosedForm:
    """Closed form of sum_{m=1..n} m**p * H_{m-1}(comp).

    The empty composition gives the bare power sum {() -> faulhaber(p)}.
    """
    _check_power(p)
    comp = tuple(comp)
    if not is_proper(comp):
        raise ValueError("composition must be proper (all entries >= 1)")
    return _reduce(p, comp)


@lru_cache(maxsize=None)
def _reduce(p: int, comp: "tuple[int, ...]") -> ClosedForm:
    if not comp:
        return ClosedForm({(): faulhaber(p)})
    head, tail = comp[0], comp[1:]
    out = ClosedForm({comp: faulhaber(p)})
    for j in range(p + 1):
        b = bernoulli(j, "plus")
        if not b:
            continue
        c = Fraction(math.comb(p + 1, j), p + 1) * b
        first = head + j - p - 1
        if first >= 1:
            out = out - ClosedForm({(first,) + tail: c})
        else:
            out = out - _reduce(-first, tail).scale(c)
    return out


def reduce_direct(p: int, comp: "tuple[int, ...]") -> ClosedForm:
    """Same closed form as ``reduce`` from the single-pass three-block
    formula; no recursion and no shared code path with ``reduce``."""
    _check_power(p)
    comp = tuple(comp)
    if not comp:
        raise ValueError("the direct formula needs a nonempty composition")
    if not is_proper(comp):
        raise ValueError("composition must be proper (all entries >= 1)")

    r = len(comp)
    kw = [0] * (r + 2)
    for i in range(1, r + 1):
        kw[i] = kw[i - 1] + comp[i - 1]
    kw[r + 1] = kw[r] + 1  # the final, absorbed entry counts as 1

    acc: "dict[tuple[int, ...], dict[int, Fraction]]" = {}

    def bump(composition: "tuple[int, ...]", exponent: int, value: Fraction) -> None:
        slot = acc.setdefault(composition, {})
        slot[exponent] = slot.get(exponent, Fraction(0)) + value

    def prefixes(length: int) -> "list[tuple[int, Fraction]]":
        """All admissible (j_1..j_length): partial sum and factor product.

        Step i is bounded by p + i - (k_1+...+k_i) - (j_1+...+j_{i-1}), which
        keeps the running power weight nonnegative.
        """
        states = [(0, Fraction(1))]
        for i in range(1, length + 1):
            nxt = []
            for jsum, coeff in states:
                dd = p + i - kw[i - 1] - jsum  # current power weight + 1
                hi = p + i - kw[i] - jsum
                for j in range(hi + 1):
                    b = bernoulli(j, "plus")
                    if b:
                        nxt.append((jsum + j, coeff * Fraction(math.comb(dd, j), dd) * b))
            states = nxt
        return states

    for l in range(1, r + 1):
        sign = -1 if l % 2 else 1  # (-1)**l
        tail_l = comp[l - 1 :]
        drop_l = comp[l:]
        for jsum, coeff in prefixes(l - 1):
            pl = p + l - 1 - kw[l - 1] - jsum  # current power weight
            dd = pl + 1
            # leading block: polynomial coefficient times H(k_l, ..., k_r)
            for j in range(pl + 1):
                b = bernoulli(j, "plus")
                if b:
                    bump(tail_l, dd - j, -sign * coeff * Fraction(math.comb(dd, j), dd) * b)
            # middle block: proper terms whose first entry drops below k_l
            lo = max(0, p + l + 1 - kw[l] - jsum)
            for j in range(lo, pl + 1):
                b = bernoulli(j, "plus")
                if b:
                    q = kw[l] + jsum + j - l - p
                    bump((q,) + drop_l, 0, sign * coeff * Fraction(math.comb(dd, j), dd) * b)

    # final block: the pure polynomial part, after all entries are absorbed
    sign = -1 if r % 2 else 1
    for jsum, coeff in prefixes(r):
        pr = p + r - kw[r] - jsum
        dd = pr + 1
        for j in range(pr + 1):
            b = bernoulli(j, "plus")
            if b:
                bump((), dd - j, sign * coeff * Fraction(math.comb(dd, j), dd) * b)

    terms = {}
    for composition, exps in acc.items():
        coeffs = [Fraction(0)] * (max(exps) + 1)
        for e, v in exps.items():
            coeffs[e] = v
        poly = Polynomial(coeffs)
        if poly:
            terms[composition] = poly
    return ClosedForm(terms)
