"""Quasi-shuffle (stuffle) product on harmonic-sum index compositions.

For every upper limit n, H_n(a) * H_n(b) expands into the combination
produced by ``stuffle(a, b)``: recursively, either composition's leading
entry goes first, or the two leading entries merge into their sum.
Coefficients are kept as exact rationals even though products of basis
compositions only ever produce positive integers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .oracle import is_proper

__all__ = [
    "Combination",
    "composition_key",
    "stuffle",
    "product_combinations",
    "expand_power",
]

Combination = "dict[tuple[int, ...], Fraction]"


def composition_key(comp: "tuple[int, ...]") -> "tuple[int, int, tuple[int, ...]]":
    """Canonical sort key: weight, then depth, then the entries."""
    return (sum(comp), len(comp), comp)


def _check_proper(comp: "tuple[int, ...]") -> None:
    if not is_proper(comp):
        raise ValueError("stuffle is defined on proper compositions only")


@lru_cache(maxsize=None)
def _stuffle(a: "tuple[int, ...]", b: "tuple[int, ...]"):
    if not a:
        return ((b, Fraction(1)),)
    if not b:
        return ((a, Fraction(1)),)
    out: "dict[tuple[int, ...], Fraction]" = {}

    def absorb(prefix, items):
        for comp, c in items:
            key = prefix + comp
            out[key] = out.get(key, Fraction(0)) + c

    absorb((a[0],), _stuffle(a[1:], b))
    absorb((b[0],), _stuffle(a, b[1:]))
    absorb((a[0] + b[0],), _stuffle(a[1:], b[1:]))
    return tuple(out.items())


def stuffle(a: "tuple[int, ...]", b: "tuple[int, ...]") -> "dict[tuple[int, ...], Fraction]":
    """Quasi-shuffle product of two proper compositions."""
    a, b = tuple(a), tuple(b)
    _check_proper(a)
    _check_proper(b)
    return dict(_stuffle(a, b))


def product_combinations(
    a: "dict[tuple[int, ...], Fraction]", b: "dict[tuple[int, ...], Fraction]"
) -> "dict[tuple[int, ...], Fraction]":
    """Bilinear extension of the stuffle product to combinations."""
    out: "dict[tuple[int, ...], Fraction]" = {}
    for ka, ca in a.items():
        if not ca:
            continue
        for kb, cb in b.items():
            if not cb:
                continue
            scale = ca * cb
            for comp, c in _stuffle(tuple(ka), tuple(kb)):
                v = out.get(comp, Fraction(0)) + scale * c
                if v:
                    out[comp] = v
                elif comp in out:
                    del out[comp]
    return out


@lru_cache(maxsize=None)
def _expand_power(k: int, t: int):
    if t == 0:
        return (((), Fraction(1)),)
    prev = dict(_expand_power(k, t - 1))
    return tuple(product_combinations(prev, {(k,): Fraction(1)}).items())


def expand_power(k: int, t: int) -> "dict[tuple[int, ...], Fraction]":
    """Expansion of H_n(k)**t as a combination of basis compositions."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("the base order must be a positive integer")
    if not isinstance(t, int) or t < 0:
        raise ValueError("the power must be a nonnegative integer")
    return dict(_expand_power(k, t))
