"""Verification suites and the comparison table behind the command line.

Each suite is a list of (label, check) pairs; a check returns (ok, detail).
Results print one line per identity in a fixed order regardless of worker
count, and the overall status is 0 only when everything passed.  All random
choices are seeded, so repeated runs are byte-identical.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .closedform import ClosedForm
from .oracle import mhs_eval, mhs_values
from .polynomial import Polynomial
from .reducer import reduce, reduce_direct
from .stuffle import composition_key
from .sums import (
    structure_check,
    structured_form,
    structured_to_closed,
    sum_power,
    sum_power_shifted,
    sum_product,
)

__all__ = ["compositions_up_to", "run_verify", "run_table", "SUITES"]

SUITES = ("reduce", "sums", "all")

_FIXED_WEIGHTS = (
    Polynomial.constant(1),
    Polynomial.variable(),
    Polynomial((0, 0, 1)),
    Polynomial((-1, 2)),
    Polynomial((2, -5, 3)),
)


def compositions_up_to(
    max_weight: int, max_depth: "int | None" = None, include_empty: bool = True
) -> "list[tuple[int, ...]]":
    """All proper compositions with the given weight (and depth) bounds, in
    canonical order."""
    if max_depth is None:
        max_depth = max_weight
    out = [()] if include_empty else []

    def grow(prefix: "tuple[int, ...]", remaining: int, depth_left: int) -> None:
        if depth_left == 0:
            return
        for k in range(1, remaining + 1):
            comp = prefix + (k,)
            out.append(comp)
            grow(comp, remaining - k, depth_left - 1)

    grow((), max_weight, max_depth)
    out.sort(key=composition_key)
    return out


def _comp_str(comp: "tuple[int, ...]") -> str:
    return "(" + ",".join(str(k) for k in comp) + ")"


def _range(max_n: int) -> "range":
    # max_n = 0 means "check nothing": an explicitly empty evaluation range
    return range(0, max_n + 1) if max_n > 0 else range(0)


def _closed_matches_oracle(closed: ClosedForm, extended, max_n: int):
    for n in _range(max_n):
        want = mhs_eval(n, extended)
        got = closed.eval(n)
        if want != got:
            return False, f"n={n}: closed {got} != direct {want}"
    return True, ""


def _direct_weighted_sum(F: Polynomial, factor_values, max_n: int, start: int):
    """Running values of sum_{m=start..n} F(m) * prod(factors at m-1 or m)."""
    totals = []
    acc = Fraction(0)
    for n in range(0, max_n + 1):
        if n >= start:
            acc += F.eval(n) * factor_values(n)
        totals.append(acc)
    return totals


def reduce_suite_checks(max_n: int):
    checks = []
    comps = compositions_up_to(5, 3)
    for p in range(7):
        for comp in comps:
            extended = (-p,) + comp

            def check(p=p, comp=comp, extended=extended):
                closed = reduce(p, comp)
                return _closed_matches_oracle(closed, extended, max_n)

            checks.append((f"reduce p={p} comp={_comp_str(comp)} oracle", check))
    for p in range(5):
        for comp in compositions_up_to(4, include_empty=False):

            def check(p=p, comp=comp):
                a = reduce(p, comp)
                b = reduce_direct(p, comp)
                if a == b:
                    return True, ""
                agree = all(a.eval(n) == b.eval(n) for n in range(51))
                return False, (
                    "structural mismatch between methods; "
                    f"evaluations for n <= 50 {'agree' if agree else 'differ'}; "
                    f"recurrence: {a.render('text')}; direct: {b.render('text')}"
                )

            checks.append((f"reduce p={p} comp={_comp_str(comp)} methods-agree", check))
    return checks


def sums_suite_checks(max_n: int):
    checks = []
    h1 = mhs_values(max_n, (1,))

    def power_oracle(F, t, shifted):
        def check(F=F, t=t, shifted=shifted):
            if shifted:
                closed = sum_power_shifted(F, t)
                direct = _direct_weighted_sum(
                    F, lambda n: h1[n] ** t, max_n, start=0
                )
            else:
                closed = sum_power(F, t)
                direct = _direct_weighted_sum(
                    F, lambda n: h1[n - 1] ** t, max_n, start=1
                )
            for n in _range(max_n):
                got = closed.eval(n)
                if got != direct[n]:
                    return False, f"n={n}: closed {got} != direct {direct[n]}"
            return True, ""

        return check

    for i, F in enumerate(_FIXED_WEIGHTS):
        for t in range(5):
            checks.append(
                (f"sum-power F#{i} t={t} oracle", power_oracle(F, t, False))
            )
            checks.append(
                (f"sum-power-shifted F#{i} t={t} oracle", power_oracle(F, t, True))
            )

    def product_oracle(F, i):
        def check(F=F):
            closed = sum_product(F, [(1, 1), (2, 1)])
            h2 = mhs_values(max_n, (2,))
            direct = _direct_weighted_sum(
                F, lambda n: h1[n - 1] * h2[n - 1], max_n, start=1
            )
            for n in _range(max_n):
                got = closed.eval(n)
                if got != direct[n]:
                    return False, f"n={n}: closed {got} != direct {direct[n]}"
            return True, ""

        return check

    for i, F in enumerate(_FIXED_WEIGHTS[:2]):
        checks.append((f"sum-product F#{i} H*H(2) oracle", product_oracle(F, i)))

    def product_consistency():
        a = sum_product(Polynomial.constant(1), [(1, 2)])
        b = sum_power(Polynomial.constant(1), 2)
        return (a == b, "" if a == b else "H**2 routes disagree")

    checks.append(("sum-product H^2 route consistency", lambda: product_consistency()))

    def structured_check(kind, arg, label_arg):
        def check(kind=kind, arg=arg):
            if kind == "hn2":
                flat = sum_power(_monomial(arg), 2)
            elif kind == "hn3":
                flat = sum_power(_monomial(arg), 3)
            elif kind == "mixed":
                flat = sum_product(_monomial(arg), [(1, 1), (2, 1)])
            else:
                flat = sum_power(arg, 4)
            grouped = structured_to_closed(structured_form(kind, arg))
            if grouped == flat:
                return True, ""
            return False, (
                f"grouped: {grouped.render('text')}; flat: {flat.render('text')}"
            )

        return check

    for kind in ("hn2", "hn3", "mixed"):
        for p in range(5):
            checks.append(
                (f"structured {kind} p={p} matches flat", structured_check(kind, p, p))
            )
    for i, F in enumerate(_FIXED_WEIGHTS):
        checks.append(
            (f"structured hn4 F#{i} matches flat", structured_check("hn4", F, i))
        )

    rng = random.Random(20240917)
    for case in range(20):
        degree = rng.randint(0, 3)
        F = Polynomial([rng.randint(-9, 9) for _ in range(degree)] + [rng.randint(1, 9)])
        t = rng.randint(0, 4)

        def check(F=F, t=t):
            report = structure_check(F, t)
            if report.passes:
                return True, ""
            bad = ", ".join(_comp_str(c) for c, _ in report.offending_terms)
            return False, f"offending terms: {bad}"

        checks.append((f"structure-check case {case} F={F.text('m')!r} t={t}", check))

    return checks


def _monomial(p: int) -> Polynomial:
    return Polynomial.monomial(p)


def run_verify(suite: str, max_n: int, threads: int = 1, echo=print) -> int:
    """Run one suite; print a line per identity; return a process exit code."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    checks = []
    if suite in ("reduce", "all"):
        checks += reduce_suite_checks(max_n)
    if suite in ("sums", "all"):
        checks += sums_suite_checks(max_n)
    if max_n == 0:
        echo("warning: --max-n 0 leaves the evaluation range empty")

    def run_one(item):
        label, check = item
        try:
            ok, detail = check()
        except Exception as exc:  # a crash must surface as a failure, not silence
            ok, detail = False, f"error: {exc!r}"
        return label, ok, detail

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_one, checks))
    else:
        results = [run_one(item) for item in checks]

    failures = 0
    for label, ok, detail in results:
        if ok:
            echo(f"PASS {label}")
        else:
            failures += 1
            echo(f"FAIL {label}: {detail}")
    echo(f"{len(results) - failures}/{len(results)} identities verified")
    return 0 if failures == 0 else 1


def run_table(p_max: int, weight_max: int, n: int) -> str:
    """CSV comparing the direct evaluator against the reduced closed form."""
    if p_max < 0 or weight_max < 0 or n < 0:
        raise ValueError("table bounds must be nonnegative")
    lines = ["p,composition,n,oracle_num,oracle_den,closed_num,closed_den,match"]
    for p in range(p_max + 1):
        for comp in compositions_up_to(weight_max):
            oracle = mhs_eval(n, (-p,) + comp)
            closed = reduce(p, comp).eval(n)
            lines.append(
                ",".join(
                    [
                        str(p),
                        ";".join(str(k) for k in comp),
                        str(n),
                        str(oracle.numerator),
                        str(oracle.denominator),
                        str(closed.numerator),
                        str(closed.denominator),
                        "true" if oracle == closed else "false",
                    ]
                )
            )
    return "\n".join(lines) + "\n"
