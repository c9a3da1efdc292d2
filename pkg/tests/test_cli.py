import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mhsums.cli import PolyParseError, build_parser, canonical_argv, main, parse_poly
from mhsums.polynomial import Polynomial

x = Polynomial.variable()


# ------------------------------------------------------------- the parser


def test_parse_basic_forms():
    assert parse_poly("3*m^2+m") == 3 * x ** 2 + x
    assert parse_poly("1") == Polynomial.constant(1)
    assert parse_poly("(m-1)^2") == x ** 2 - 2 * x + 1


def test_parse_whitespace_insensitive():
    assert parse_poly(" 3 * m ^ 2 + m ") == parse_poly("3*m^2+m")


def test_parse_rational_coefficients():
    assert parse_poly("1/2*m") == x / 2
    assert parse_poly("m/2") == x / 2
    assert parse_poly("(m^2+m)/2") == (x ** 2 + x) / 2


def test_parse_both_variable_letters():
    assert parse_poly("2*n-1") == parse_poly("2*m-1") == 2 * x - 1


def test_parse_unary_signs():
    assert parse_poly("-m") == -x
    assert parse_poly("+m-1") == x - 1
    assert parse_poly("5-3") == Polynomial.constant(2)


def test_parse_implicit_grouping():
    assert parse_poly("2*(m+1)*(m-1)") == 2 * x ** 2 - 2


def test_unknown_identifier():
    with pytest.raises(PolyParseError) as info:
        parse_poly("3*k^2")
    assert "unknown identifier" in str(info.value)
    assert info.value.offset == 2


def test_unexpected_character_offset():
    with pytest.raises(PolyParseError) as info:
        parse_poly("m + $")
    assert info.value.offset == 4


def test_unbalanced_parenthesis():
    with pytest.raises(PolyParseError):
        parse_poly("(m+1")
    with pytest.raises(PolyParseError):
        parse_poly("m+1)")


def test_division_in_exponents():
    with pytest.raises(PolyParseError) as info:
        parse_poly("m^(2/3)")
    assert "division in exponents" in str(info.value)
    with pytest.raises(PolyParseError) as info2:
        parse_poly("m^2/3")
    assert "division in exponents" in str(info2.value)
    assert info2.value.offset == 3


def test_non_literal_exponent():
    with pytest.raises(PolyParseError):
        parse_poly("m^m")
    with pytest.raises(PolyParseError):
        parse_poly("m^(2)")


def test_division_restrictions():
    with pytest.raises(PolyParseError) as info:
        parse_poly("1/m")
    assert "nonzero constant" in str(info.value)
    with pytest.raises(PolyParseError):
        parse_poly("m/0")
    with pytest.raises(PolyParseError):
        parse_poly("m/(2-2)")


frac9 = st.fractions(
    min_value=-9, max_value=9, max_denominator=9
)


@given(st.lists(frac9, max_size=5).map(Polynomial))
def test_round_trip_through_text(p):
    assert parse_poly(p.text("m")) == p
    assert parse_poly(p.text("n")) == p


# ------------------------------------------------------- canonical argv


CANONICAL_CASES = [
    ["reduce", "-p", "2", "--comp", "2,1", "--method", "both", "--format", "text"],
    ["reduce", "-p", "0", "--comp", "", "--method", "recurrence", "--format", "json"],
    ["sum", "--poly", "3*m^2 - 5*m + 2", "--power", "4", "--format", "text"],
    ["sum", "--poly", "m", "--factors", "1^1,2^1", "--format", "latex"],
    ["sum", "--poly", "2*m - 1", "--power", "1", "--shifted", "--format", "text"],
    ["eval", "--n", "3", "--comp", "0,1", "--format", "text"],
    ["check", "--poly", "m^2", "--power", "3"],
    ["bernoulli", "--max", "6", "--convention", "minus"],
    ["table", "--p-max", "1", "--weight-max", "2", "--n", "5"],
    ["verify", "--suite", "reduce", "--max-n", "4", "--threads", "2"],
]


@pytest.mark.parametrize("argv", CANONICAL_CASES)
def test_canonical_argv_round_trip(argv):
    parser = build_parser()
    first = canonical_argv(parser.parse_args(argv))
    second = canonical_argv(parser.parse_args(first))
    assert first == second


# ------------------------------------------------------------ subcommands


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_reduce_text(capsys):
    code, out, _ = run_cli(["reduce", "-p", "1", "--comp", "1"], capsys)
    assert code == 0
    assert out.strip() == "-1/4*n^2 - 3/4*n + (1/2*n^2 + 1/2*n)*H(1)"


def test_reduce_methods_agree(capsys):
    code, out, _ = run_cli(
        ["reduce", "-p", "2", "--comp", "2,1", "--method", "both"], capsys
    )
    assert code == 0
    assert "H(2,1)" in out


def test_reduce_json_is_valid(capsys):
    code, out, _ = run_cli(
        ["reduce", "-p", "0", "--comp", "1", "--format", "json"], capsys
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["terms"][0]["composition"] == []


def test_reduce_empty_composition_is_faulhaber(capsys):
    code, out, _ = run_cli(["reduce", "-p", "2", "--comp", ""], capsys)
    assert code == 0
    assert out.strip() == "1/3*n^3 + 1/2*n^2 + 1/6*n"


def test_reduce_usage_errors(capsys):
    assert run_cli(["reduce", "-p", "-1", "--comp", "1"], capsys)[0] == 2
    assert run_cli(["reduce", "-p", "1", "--comp", "0,1"], capsys)[0] == 2
    assert (
        run_cli(["reduce", "-p", "1", "--comp", "", "--method", "theorem"], capsys)[0]
        == 2
    )
    assert run_cli(["reduce", "-p", "1", "--comp", "1,x"], capsys)[0] == 2


def test_sum_matches_reduce_route(capsys):
    _, via_sum, _ = run_cli(["sum", "--poly", "m", "--power", "1"], capsys)
    _, via_reduce, _ = run_cli(["reduce", "-p", "1", "--comp", "1"], capsys)
    assert via_sum == via_reduce


def test_sum_shifted(capsys):
    code, out, _ = run_cli(
        ["sum", "--poly", "2*m - 1", "--power", "1", "--shifted"], capsys
    )
    assert code == 0
    assert out.strip() == "-1/2*n^2 + 3/2*n + (n^2 - 1)*H(1)"


def test_sum_parse_error_exit_code(capsys):
    code, _, err = run_cli(["sum", "--poly", "3*k", "--power", "2"], capsys)
    assert code == 2
    assert "unknown identifier" in err


def test_eval_formats(capsys):
    assert run_cli(["eval", "--n", "3", "--comp", "0,1"], capsys)[1].strip() == "5/2"
    code, out, _ = run_cli(
        ["eval", "--n", "3", "--comp", "0,1", "--format", "json"], capsys
    )
    assert json.loads(out) == {"value": [5, 2]}
    code, out, _ = run_cli(
        ["eval", "--n", "4", "--comp", "2", "--format", "latex"], capsys
    )
    assert out.strip() == r"\frac{205}{144}"


def test_check_reports_pass(capsys):
    code, out, _ = run_cli(["check", "--poly", "m^2", "--power", "3"], capsys)
    assert code == 0
    assert json.loads(out) == {"passes": True, "offending_terms": []}


def test_bernoulli_csv(capsys):
    code, out, _ = run_cli(
        ["bernoulli", "--max", "4", "--convention", "minus"], capsys
    )
    assert code == 0
    assert out.splitlines() == [
        "index,numerator,denominator",
        "0,1,1",
        "1,-1,2",
        "2,1,6",
        "3,0,1",
        "4,-1,30",
    ]


def test_table_columns_agree(capsys):
    code, out, _ = run_cli(
        ["table", "--p-max", "2", "--weight-max", "3", "--n", "7"], capsys
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "p,composition,n,oracle_num,oracle_den,closed_num,closed_den,match"
    assert len(lines) > 1
    for line in lines[1:]:
        p, comp, n, on, od, cn, cd, match = line.split(",")
        assert (on, od) == (cn, cd)
        assert match == "true"
    # the empty-composition row is plain power summation
    row = lines[1].split(",")
    assert row[:3] == ["0", "", "7"] and row[3] == "7"


def test_verify_zero_range_warns(capsys):
    code, out, _ = run_cli(["verify", "--suite", "sums", "--max-n", "0"], capsys)
    assert code == 0
    assert "warning" in out.lower()


def test_verify_small_run(capsys):
    code, out, _ = run_cli(
        ["verify", "--suite", "sums", "--max-n", "3", "--threads", "2"], capsys
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1].endswith("identities verified")


def test_deterministic_output(capsys):
    argv = ["reduce", "-p", "3", "--comp", "1,2", "--format", "latex"]
    _, first, _ = run_cli(argv, capsys)
    _, second, _ = run_cli(argv, capsys)
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mhsums", "eval", "--n", "3", "--comp", "0,1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "5/2"
