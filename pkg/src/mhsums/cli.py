"""Command-line interface: reduce, sum, eval, check, bernoulli, table, verify.

Exit codes: 0 on success, 1 when a verification or cross-check fails, 2 for
usage or parse errors.  Every emitter is deterministic: the same invocation
produces byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bernoulli import bernoulli
from .closedform import ClosedForm
from .oracle import mhs_eval
from .polynomial import Polynomial
from .reducer import reduce, reduce_direct
from .sums import structure_check, sum_power, sum_power_shifted, sum_product
from .verify import SUITES, run_table, run_verify

__all__ = ["PolyParseError", "parse_poly", "main", "canonical_argv"]

FORMATS = ("text", "latex", "json")
METHODS = ("recurrence", "theorem", "both")


# ------------------------------------------------------------ weight parsing


class PolyParseError(ValueError):
    """Raised for malformed polynomial text; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


def _tokenize(text: str):
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^()":
            out.append((ch, ch, i))
            i += 1
            continue
        raise PolyParseError(f"unexpected character {ch!r}", i)
    out.append(("end", "", n))
    return out


class _Parser:
    """Recursive-descent parser for integer/rational polynomial expressions
    in one variable (``m`` or ``n``), with ``+ - * / ^`` and parentheses.
    Division is only by nonzero constants; exponents are integer literals."""

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self) -> Polynomial:
        kind, _, _ = self.peek()
        negate = False
        if kind in ("+", "-"):
            negate = kind == "-"
            self.advance()
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, _, _ = self.peek()
            if kind == "+":
                self.advance()
                acc = acc + self.term()
            elif kind == "-":
                self.advance()
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            kind, _, off = self.peek()
            if kind == "*":
                self.advance()
                acc = acc * self.factor()
            elif kind == "/":
                self.advance()
                _, _, off2 = self.peek()
                divisor = self.factor()
                if divisor.degree > 0:
                    raise PolyParseError("division only by a nonzero constant", off2)
                c = divisor.coefficient(0)
                if c == 0:
                    raise PolyParseError("division by zero", off2)
                acc = acc * (Fraction(1) / c)
            else:
                return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        kind, _, _ = self.peek()
        if kind != "^":
            return base
        self.advance()
        kind, value, off = self.peek()
        if kind == "(":
            depth = 0
            for k, _, o in self.tokens[self.pos :]:
                if k == "(":
                    depth += 1
                elif k == ")":
                    depth -= 1
                    if depth == 0:
                        break
                elif k == "/":
                    raise PolyParseError("division in exponents", o)
            raise PolyParseError("exponent must be a nonnegative integer literal", off)
        if kind != "num":
            raise PolyParseError("exponent must be a nonnegative integer literal", off)
        self.advance()
        k, _, o = self.peek()
        if k == "/":
            raise PolyParseError("division in exponents", o)
        return base ** int(value)

    def atom(self) -> Polynomial:
        kind, value, off = self.advance()
        if kind == "num":
            return Polynomial.constant(int(value))
        if kind == "name":
            if value in ("m", "n"):
                return Polynomial.variable()
            raise PolyParseError(f"unknown identifier {value!r}", off)
        if kind == "(":
            inner = self.expr()
            kind, _, off = self.advance()
            if kind != ")":
                raise PolyParseError("expected ')'", off)
            return inner
        raise PolyParseError(f"unexpected token {value or kind!r}", off)


def parse_poly(text: str) -> Polynomial:
    """Parse polynomial text such as ``3*m^2 - 5*m + 2`` or ``(m-1)^2``."""
    parser = _Parser(text)
    poly = parser.expr()
    kind, value, off = parser.peek()
    if kind != "end":
        raise PolyParseError(f"unexpected token {value!r}", off)
    return poly


def _parse_comp(text: str) -> "tuple[int, ...]":
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"malformed composition {text!r}: {exc}") from exc


def _parse_factors(text: str) -> "list[tuple[int, int]]":
    factors = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise ValueError("empty factor entry")
        if "^" in part:
            order_text, _, mult_text = part.partition("^")
            factors.append((int(order_text), int(mult_text)))
        else:
            factors.append((int(part), 1))
    return factors


# ----------------------------------------------------------------- emitters


def _emit_fraction(value: Fraction, fmt: str) -> str:
    if fmt == "text":
        return str(value)
    if fmt == "latex":
        sign = "-" if value < 0 else ""
        mag = -value if value < 0 else value
        if mag.denominator == 1:
            return f"{sign}{mag.numerator}"
        return sign + r"\frac{%d}{%d}" % (mag.numerator, mag.denominator)
    return json.dumps({"value": [value.numerator, value.denominator]})


# ------------------------------------------------------------------ parsing


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="mhsums",
        description=(
            "Exact closed forms for power-weighted sums of harmonic numbers "
            "and multiple harmonic sums."
        ),
    )
    sub = top.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=FORMATS, default="text")

    p_reduce = sub.add_parser(
        "reduce",
        parents=[fmt],
        help="closed form of sum m^p * H_{m-1}(composition)",
    )
    p_reduce.add_argument("-p", dest="power", type=int, required=True)
    p_reduce.add_argument("--comp", default="", help="composition, e.g. '2,1'")
    p_reduce.add_argument("--method", choices=METHODS, default="recurrence")

    p_sum = sub.add_parser(
        "sum",
        parents=[fmt],
        help="closed form of sum F(m) * (harmonic factors at m-1)",
    )
    p_sum.add_argument("--poly", required=True, help="weight, e.g. '3*m^2+m'")
    group = p_sum.add_mutually_exclusive_group(required=True)
    group.add_argument("--power", type=int, help="inner power t of H_{m-1}")
    group.add_argument("--factors", help="factor list, e.g. '1^1,2^1'")
    p_sum.add_argument(
        "--shifted",
        action="store_true",
        help="sum F(m) * H_m^t over m = 0..n instead (requires --power)",
    )

    p_eval = sub.add_parser(
        "eval", parents=[fmt], help="exact value of one (extended) harmonic sum"
    )
    p_eval.add_argument("--n", type=int, required=True)
    p_eval.add_argument("--comp", default="")

    p_check = sub.add_parser(
        "check", help="remainder structure report for sum F(m) * H_{m-1}^t"
    )
    p_check.add_argument("--poly", required=True)
    p_check.add_argument("--power", type=int, required=True)

    p_bern = sub.add_parser("bernoulli", help="Bernoulli numbers as CSV")
    p_bern.add_argument("--max", type=int, required=True)
    p_bern.add_argument("--convention", choices=("plus", "minus"), default="plus")

    p_table = sub.add_parser(
        "table", help="CSV comparing the direct evaluator with reduced forms"
    )
    p_table.add_argument("--p-max", type=int, required=True)
    p_table.add_argument("--weight-max", type=int, required=True)
    p_table.add_argument("--n", type=int, required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", choices=SUITES, required=True)
    p_verify.add_argument("--max-n", type=int, required=True)
    p_verify.add_argument("--threads", type=int, default=1)

    return top


def canonical_argv(args: argparse.Namespace) -> "list[str]":
    """The canonical flag sequence that reparses to the same request."""
    cmd = args.command
    if cmd == "reduce":
        return [
            "reduce",
            "-p",
            str(args.power),
            "--comp",
            ",".join(str(k) for k in _parse_comp(args.comp)),
            "--method",
            args.method,
            "--format",
            args.format,
        ]
    if cmd == "sum":
        out = ["sum", "--poly", parse_poly(args.poly).text("m")]
        if args.power is not None:
            out += ["--power", str(args.power)]
        else:
            out += [
                "--factors",
                ",".join(f"{o}^{m}" for o, m in _parse_factors(args.factors)),
            ]
        if args.shifted:
            out.append("--shifted")
        out += ["--format", args.format]
        return out
    if cmd == "eval":
        return [
            "eval",
            "--n",
            str(args.n),
            "--comp",
            ",".join(str(k) for k in _parse_comp(args.comp)),
            "--format",
            args.format,
        ]
    if cmd == "check":
        return [
            "check",
            "--poly",
            parse_poly(args.poly).text("m"),
            "--power",
            str(args.power),
        ]
    if cmd == "bernoulli":
        return ["bernoulli", "--max", str(args.max), "--convention", args.convention]
    if cmd == "table":
        return [
            "table",
            "--p-max",
            str(args.p_max),
            "--weight-max",
            str(args.weight_max),
            "--n",
            str(args.n),
        ]
    if cmd == "verify":
        return [
            "verify",
            "--suite",
            args.suite,
            "--max-n",
            str(args.max_n),
            "--threads",
            str(args.threads),
        ]
    raise ValueError(f"unknown command {cmd!r}")


# ------------------------------------------------------------------ actions


def _cmd_reduce(args) -> int:
    if args.power < 0:
        print("error: -p must be nonnegative", file=sys.stderr)
        return 2
    comp = _parse_comp(args.comp)
    if args.method in ("theorem", "both") and not comp:
        print("error: --method theorem needs a nonempty composition", file=sys.stderr)
        return 2
    primary = (
        reduce(args.power, comp)
        if args.method != "theorem"
        else reduce_direct(args.power, comp)
    )
    if args.method == "both":
        other = reduce_direct(args.power, comp)
        if other != primary:
            agree = all(primary.eval(n) == other.eval(n) for n in range(51))
            print("structural mismatch between reduction methods")
            print(f"recurrence: {primary.render('text')}")
            print(f"theorem:    {other.render('text')}")
            print(f"evaluations for n <= 50 {'agree' if agree else 'differ'}")
            return 1
    print(primary.render(args.format))
    return 0


def _cmd_sum(args) -> int:
    F = parse_poly(args.poly)
    if args.power is not None:
        if args.power < 0:
            print("error: --power must be nonnegative", file=sys.stderr)
            return 2
        closed = (
            sum_power_shifted(F, args.power)
            if args.shifted
            else sum_power(F, args.power)
        )
    else:
        if args.shifted:
            print("error: --shifted requires --power", file=sys.stderr)
            return 2
        closed = sum_product(F, _parse_factors(args.factors))
    print(closed.render(args.format))
    return 0


def _cmd_eval(args) -> int:
    if args.n < 0:
        print("error: --n must be nonnegative", file=sys.stderr)
        return 2
    value = mhs_eval(args.n, _parse_comp(args.comp))
    print(_emit_fraction(value, args.format))
    return 0


def _cmd_check(args) -> int:
    if args.power < 0:
        print("error: --power must be nonnegative", file=sys.stderr)
        return 2
    report = structure_check(parse_poly(args.poly), args.power)
    payload = {
        "passes": report.passes,
        "offending_terms": [
            {
                "composition": list(comp),
                "coeff": [[c.numerator, c.denominator] for c in poly.coeffs],
            }
            for comp, poly in report.offending_terms
        ],
    }
    print(json.dumps(payload))
    return 0 if report.passes else 1


def _cmd_bernoulli(args) -> int:
    if args.max < 0:
        print("error: --max must be nonnegative", file=sys.stderr)
        return 2
    print("index,numerator,denominator")
    for i in range(args.max + 1):
        b = bernoulli(i, args.convention)
        print(f"{i},{b.numerator},{b.denominator}")
    return 0


def _cmd_table(args) -> int:
    print(run_table(args.p_max, args.weight_max, args.n), end="")
    return 0


def _cmd_verify(args) -> int:
    if args.max_n < 0:
        print("error: --max-n must be nonnegative", file=sys.stderr)
        return 2
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 2
    return run_verify(args.suite, args.max_n, threads=args.threads)


_ACTIONS = {
    "reduce": _cmd_reduce,
    "sum": _cmd_sum,
    "eval": _cmd_eval,
    "check": _cmd_check,
    "bernoulli": _cmd_bernoulli,
    "table": _cmd_table,
    "verify": _cmd_verify,
}


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _ACTIONS[args.command](args)
    except (PolyParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
