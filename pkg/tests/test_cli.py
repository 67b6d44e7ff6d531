import io
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from foliakit.algebra import MPoly, RationalFunction
from foliakit.cli.formats import FormatError, parse_factored_pair, parse_ledger
from foliakit.cli.main import EXIT_FAILED, EXIT_INPUT, EXIT_OK, InputError, JobConfig, main
from foliakit.cli.parser import (BinOp, Exp, Neg, Num, ParseError, Pow, UnsupportedForm, Var, lower_to_semantics,
                                 parse_expression, parse_function, to_text)
from foliakit.foliation import DarbouxFunction
from foliakit.models import INTEGRABLE_F, INTEGRABLE_PAIR, SUZUKI_H, XYZ
from strategies import polys, random_ast

x, y, z = MPoly.gens(*XYZ)
X_FIELD = "2*x*y, x^3 + 2*y^2, -2*y*z"
Y_FIELD = "x*(x - 2*y^2 - y), y*(x - y^2 - y), -z*(x - y^2 - y)"


def run(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


# -- parser ----------------------------------------------------------------------------

def test_grammar_shapes():
    assert parse_expression("2*x*y", XYZ) == BinOp("*", BinOp("*", Num(Fraction(2)), Var("x")), Var("y"))
    assert parse_expression("-x^2", XYZ) == Neg(Pow(Var("x"), 2))
    assert parse_expression("x - y - z", XYZ) == BinOp("-", BinOp("-", Var("x"), Var("y")), Var("z"))
    assert parse_expression(" exp ( x ) ", XYZ) == Exp(Var("x"))
    assert parse_expression("1.25", XYZ) == Num(Fraction(5, 4))


@pytest.mark.parametrize("text, fragment", [
    ("x^-1", "non-positive exponent"),
    ("x^0", "non-positive exponent"),
    ("x^1.5", "non-integer exponent"),
    ("x^y", "positive integer"),
    ("w + 1", "unknown variable 'w'"),
    ("2x", "implicit multiplication"),
    ("x $ y", "byte offset 2"),
    ("(x + y", "expected ')'"),
    ("", "empty"),
    ("exp(exp(x))", "nested"),
    ("1..2", "malformed number"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as info:
        parse_expression(text, XYZ)
    assert fragment in str(info.value)


def test_byte_offsets_count_utf8_bytes():
    with pytest.raises(ParseError) as info:
        parse_expression("x + é", XYZ)
    assert info.value.offset == 4


def test_lowering_kinds():
    assert parse_function("(y^2 - x^3)*z^2", XYZ) == INTEGRABLE_F
    assert parse_function("x*z", XYZ) == x * z
    h = parse_function("(y^2-x^3)/x^2", XYZ)
    assert isinstance(h, RationalFunction) and h == (y ** 2 - x ** 3) / x ** 2
    d = parse_function("(x/y)*exp((y^2+y)/x)", XYZ)
    assert isinstance(d, DarbouxFunction) and d == SUZUKI_H
    assert isinstance(parse_function("x/2", XYZ), MPoly)


def test_lowering_combines_exponentials():
    d = parse_function("exp(x)^2*exp(y)/exp(x)", XYZ)
    assert d == DarbouxFunction(MPoly.const(1, XYZ), x + y)
    assert parse_function("x*exp(y) + z*exp(y)", XYZ) == DarbouxFunction(x + z, y)


def test_unsupported_forms_name_the_node():
    with pytest.raises(UnsupportedForm) as info:
        parse_function("exp(x) + exp(y)", XYZ)
    assert "root" in str(info.value)
    with pytest.raises(UnsupportedForm) as info:
        parse_function("x*(1/(x - x))", XYZ)
    assert "root.right" in str(info.value)


def test_printer_is_minimal():
    ast = parse_expression("(x + y)*(z - (x - y))^2 - -x", XYZ)
    assert to_text(ast) == "(x + y)*(z - (x - y))^2 - -x"
    assert to_text(parse_expression("((x))*((y))", XYZ)) == "x*y"
    assert to_text(Num(Fraction(1, 8))) == "0.125"


def test_round_trip_on_seeded_random_asts():
    rng = random.Random(7)
    for _ in range(2000):
        ast = random_ast(rng)
        assert parse_expression(to_text(ast), XYZ) == ast


@settings(max_examples=100)
@given(polys())
def test_polynomials_survive_print_and_parse(p):
    assert lower_to_semantics(parse_expression(str(p), XYZ), XYZ) == p


# -- input files ------------------------------------------------------------------------

PAIR_TEXT = """\
# integrable pair
h: z ^(2,1)
f: y^2 - x^3 ^1
g: x ^1
"""


def test_factored_pair_file():
    fp = parse_factored_pair(PAIR_TEXT)
    assert fp == INTEGRABLE_PAIR


def test_factored_pair_file_errors():
    with pytest.raises(FormatError, match="line 1"):
        parse_factored_pair("h: z ^2\n")
    with pytest.raises(FormatError, match="unknown key"):
        parse_factored_pair("k: z ^2\n")
    with pytest.raises(FormatError, match="not a polynomial"):
        parse_factored_pair("f: 1/x ^1\ng: y ^1\n")


def test_ledger_file():
    ledger = parse_ledger("degree: 1\np1: 1 1\np2: 1/2 2\np3: -1 3\n")
    assert ledger.degree == 1
    assert ledger.entries[1] == ("2", Fraction(1, 2), Fraction(2))
    with pytest.raises(FormatError, match="degree"):
        parse_ledger("p1: 1 1\n")
    with pytest.raises(FormatError, match="two eigenvalues"):
        parse_ledger("degree: 0\np1: 1\n")


def test_job_config_validation():
    with pytest.raises(InputError, match="unknown key"):
        JobConfig.from_mapping("trace", {"colour": "red"})
    with pytest.raises(InputError, match="positive"):
        JobConfig.from_mapping("trace", {"step": "-1"})
    with pytest.raises(InputError):
        JobConfig("blowup", format="csv")
    assert JobConfig("trace").tol == 1e-6


# -- commands ---------------------------------------------------------------------------

def test_verify_integral_exit_codes():
    code, out, _ = run("verify-integral", "--field", X_FIELD, "--integral", "(y^2 - x^3)*z^2", "--integral", "x*z")
    assert code == EXIT_OK and out.count("exact zero Lie derivative") == 2
    code, out, _ = run("verify-integral", "--field", X_FIELD, "--integral", "(y^2 - x^3)*z^2 + x")
    assert code == EXIT_FAILED and "2*x*y" in out
    code, out, err = run("verify-integral", "--field", X_FIELD, "--integral", "(y^2 - x^3*z^2")
    assert code == EXIT_INPUT and out == "" and "byte offset" in err


def test_verify_integral_json_is_sorted():
    code, out, _ = run("verify-integral", "--field", Y_FIELD, "--integral", "(x/y)*exp((y^2+y)/x)",
                       "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["results"][0]["first_integral"] is True
    assert list(doc) == sorted(doc)


def test_job_file_input(tmp_path):
    job = tmp_path / "job.txt"
    job.write_text(f"field: {X_FIELD}\nintegral: x*z; (y^2-x^3)/x^2\n")
    assert run("verify-integral", str(job))[0] == EXIT_OK
    job.write_text("field: x, y, z\nflavour: mild\n")
    code, _, err = run("verify-integral", str(job))
    assert code == EXIT_INPUT and "flavour" in err


def test_blowup_plain_output_is_byte_exact():
    code, out, _ = run("blowup", "--integral", "(y^2-x^3)/x^2", "--chart", "z-axis-(x,t,z)")
    assert code == EXIT_OK
    assert out == "t^2 - x\nmultiplicity: 0\n"


def test_blowup_field_json():
    code, out, _ = run("blowup", "--field", X_FIELD, "--integral", "x*z", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["field"]["multiplicity"] == 1
    assert doc["field"]["saturated"] == ["2*x*t", "x", "-2*t*z"]
    assert doc["functions"][0]["total"] == "x*z"


def test_singular_commands():
    code, out, _ = run("singular", "--field", "x, y, -z", "--point", "0,0,0", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["eigenvalues"] == ["-1", "1", "1"] and doc["simple"] is True
    code, out, _ = run("singular", "--field", X_FIELD, "--curve", "s, 0, 0")
    assert out == "{s = 0}\n"
    assert run("singular", "--field", "x, y, -z", "--point", "1,0,0")[0] == EXIT_FAILED


def test_baum_bott_command():
    code, out, _ = run("baum-bott", "-", stdin="degree: 1\np1: 1 1\np2: 1 1\np3: 1 1\n")
    assert code == EXIT_FAILED and "contradiction" in out
    code, out, _ = run("baum-bott", "-", stdin="degree: 0\np0: 1 1\n", )
    assert code == EXIT_OK and out.rstrip().endswith("consistent")


def test_classify_command():
    code, out, _ = run("classify-dicritical", "-", stdin="f: x ^1\nf: y ^1\ng: z ^1\n")
    assert code == EXIT_OK and out.startswith("not dicritical")
    code, out, _ = run("classify-dicritical", "-", "--format", "json", stdin=PAIR_TEXT)
    doc = json.loads(out)
    assert doc["case"] == "case3" and doc["witness"] == "(-x^3 + y^2)/x^2"
    code, _, err = run("classify-dicritical", "-", stdin="h: x ^(1,1)\nh: y ^(1,1)\nf: z ^1\n")
    assert code == EXIT_INPUT and "simplified form" in err


def test_trace_command(tmp_path):
    target = tmp_path / "leaf.csv"
    code, out, _ = run("trace", "--field", X_FIELD, "--start", "0.1,0.1,0.1", "--integral", "x*z",
                       "--out", str(target))
    assert code == EXIT_OK and out == ""
    text = target.read_text()
    assert text.startswith("step,x_re") and "integral,max_drift,warning_index" in text
    code, _, _ = run("trace", "--field", Y_FIELD, "--start", "0.1,0.1,0.1", "--integral=-y*z*exp(y/x)",
                     "--format", "plain")
    assert code == EXIT_FAILED
    assert run("trace", "--field", X_FIELD, "--start", "0.1,0.1,0.1", "--step", "0")[0] == EXIT_INPUT


def test_conjugacy_command():
    code, out, _ = run("conjugacy", "--grid", "4,4,2", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["points"] == 32 and doc["phi3_exact_on_axis"] is True


def test_usage_errors_exit_two():
    assert run("no-such-command")[0] == EXIT_INPUT
    assert run("blowup", "--integral", "x", "--format", "csv")[0] == EXIT_INPUT
    assert run("blowup", "--integral", "x", "--chart", "nowhere")[0] == EXIT_INPUT
