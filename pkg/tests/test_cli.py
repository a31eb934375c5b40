import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from fibercount.cli.document import DocumentError, monodromy_from_slides, parse_document
from fibercount.cli.main import format_factored, run
from fibercount.diagrams import normalize, sum_from_records
from fibercount.diagrams.relations import EqualityOptions, Verdict, equal_mod_relations
from fibercount.ratfun import parse_ratfun

ROOT = Path(__file__).resolve().parents[1]
EXAMPLE = ROOT / "data" / "example6.toml"
GOLDEN = ("24*Tr_Theta((1 - t1)/(1 - 3*t1 + t1^2) (x) (1 - t2)/(1 - 3*t2 + t2^2) "
          "(x) (1 - t3)/(1 - 3*t3 + t3^2))")

TORUS = """
[options]
n_max = 5

[monodromy]
genus = 1
slides = [[[1, 1], [0, 1]], [[1, 0], [1, 1]]]

[fiber]
points = [["m", 0], ["a", 1], ["b", 1], ["M", 2]]

[transition]
A0 = [[1]]
A1 = [[2, 1], [1, 1]]
A2 = [[1]]

[chain_complex]
model = "torus"

[diagrams]
sum = [
  {coeff = "1", vertices = 2, edges = [[1, 2], [1, 2], [1, 2]], cyclic = [[1, 2, 3], [-1, -2, -3]],
   colors = ["t*(1 - t)/(1 - 3*t + t^2)", "t*(1 - t)/(1 - 3*t + t^2)", "t*(1 - t)/(1 - 3*t + t^2)"]},
]
other = [
  {coeff = "1", vertices = 2, edges = [[1, 2], [1, 2], [1, 2]],
   colors = ["(1 - t)/(1 - 3*t + t^2)", "(1 - t)/(1 - 3*t + t^2)", "(1 - t)/(1 - 3*t + t^2)"]},
]
"""


def invoke(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture
def torus(tmp_path):
    p = tmp_path / "torus.toml"
    p.write_text(TORUS)
    return p


# -- frozen outputs ------------------------------------------------------------------

def test_zeta_of_example():
    assert invoke("zeta", EXAMPLE) == (0, "(1 - 3*t + t^2)^3/(1 - t)^2\n")


def test_surgery_q_golden():
    assert invoke("surgery-q", EXAMPLE) == (0, GOLDEN + "\n")


def test_torus_subcommands(torus):
    assert invoke("zeta", torus) == (0, "(1 - 3*t + t^2)/(1 - t)^2\n")
    assert invoke("alexander", torus) == (0, "Delta = -t^-1 + 3 - t\ndelta = -t^-1 + 3 - t\n")
    assert invoke("h1", torus) == (0, "Z\n")
    assert invoke("homology", torus) == (0, "H0 = Z\nH1 = Z\nH2 = Z\nH3 = Z\n")
    code, text = invoke("closed-orbits", torus)
    assert code == 0 and text.splitlines()[1] == "coefficients t^1..t^5: -1 -5 -16 -45 -121"
    assert invoke("equal", torus) == (0, "equal\n")
    code, text = invoke("identity-check", torus)
    assert code == 0 and "(holds)" in text


def test_factored_printing():
    assert format_factored(parse_ratfun("1")) == "1"
    assert format_factored(parse_ratfun("1/(1 - t)^2")) == "1/(1 - t)^2"
    assert format_factored(parse_ratfun("(1 - t^2)/(1 - 3*t + t^2)")) == "(1 - t)*(1 + t)/(1 - 3*t + t^2)"
    assert format_factored(parse_ratfun("-2*t^-1*(1 + t)")) == "-2*t^-1*(1 + t)"


# -- errors ------------------------------------------------------------------------------

def test_missing_section_exit_1(tmp_path, capsys):
    p = tmp_path / "x.toml"
    p.write_text('[fiber]\npoints = [["m", 0], ["M", 2]]\n')
    assert run(["zeta", str(p)], io.StringIO()) == 1
    err = capsys.readouterr().err.strip()
    assert err == "fibercount: validation-error [monodromy] missing [monodromy] section"


def test_bad_matrix_names_field(tmp_path, capsys):
    p = tmp_path / "x.toml"
    p.write_text("[monodromy]\nmatrix = [[1, 1], [1, 1]]\n")
    assert run(["h1", str(p)], io.StringIO()) == 1
    assert "[monodromy.matrix]" in capsys.readouterr().err


def test_cross_section_check(tmp_path, capsys):
    p = tmp_path / "x.toml"
    p.write_text('[fiber]\npoints = [["m", 0], ["a", 1], ["M", 2]]\n[transition]\nA0 = [[1]]\nA1 = [[2, 1], [1, 1]]\nA2 = [[1]]\n')
    assert run(["closed-orbits", str(p)], io.StringIO()) == 1
    assert "[transition]" in capsys.readouterr().err


def test_computation_error_exit_2(tmp_path, capsys):
    edges = [[i + 1, (i + 1) % 8 + 1] for i in range(8)] + [[i + 1, i + 5] for i in range(4)]
    rec = "{coeff = \"1\", edges = " + json.dumps(edges) + ", colors = [" + ", ".join(['"1"'] * 12) + "]}"
    p = tmp_path / "x.toml"
    p.write_text(f"[diagrams]\nsum = [{rec}]\n")
    assert run(["reduce", str(p)], io.StringIO()) == 2
    assert capsys.readouterr().err.startswith("fibercount: computation-error [diagrams] DegreeTooLarge")


def test_unknown_section_and_syntax(tmp_path):
    with pytest.raises(DocumentError, match="unknown section"):
        parse_document("[mystery]\nx = 1\n")
    with pytest.raises(DocumentError, match="TOML"):
        parse_document("[monodromy\n")


# -- slides ------------------------------------------------------------------------------------

def test_slides_product():
    assert monodromy_from_slides([[[1, 1], [0, 1]], [[1, 0], [1, 1]]]) == [[2, 1], [1, 1]]
    assert monodromy_from_slides([], 2) == [[1, 0], [0, 1]]
    assert monodromy_from_slides([[[1, 0], [1, 1]]]) == [[1, 0], [1, 1]]
    assert monodromy_from_slides([[1, 2, 1]], 2) == [[1, 1], [0, 1]]


def test_slides_reject_non_elementary():
    with pytest.raises(DocumentError):
        monodromy_from_slides([[[2, 0], [0, 1]]])
    with pytest.raises(DocumentError):
        monodromy_from_slides([[1, 1, 1]], 2)


# -- options -----------------------------------------------------------------------------------

def test_flag_beats_env_beats_file(torus, monkeypatch):
    code, text = invoke("closed-orbits", torus)
    assert text.splitlines()[1].startswith("coefficients t^1..t^5:")
    monkeypatch.setenv("FIBERCOUNT_N_MAX", "3")
    assert invoke("closed-orbits", torus)[1].splitlines()[1] == "coefficients t^1..t^3: -1 -5 -16"
    assert invoke("closed-orbits", torus, "--n-max", 2)[1].splitlines()[1] == "coefficients t^1..t^2: -1 -5"


def test_reversal_sign_flag(torus):
    code, text = invoke("equal", torus, "--reversal-sign", 1)
    assert code == 0 and text == "equal\n"


# -- machine output -------------------------------------------------------------------------------

def test_json_round_trip_for_diagram_results():
    code, text = invoke("surgery-q", EXAMPLE, "--json")
    payload = json.loads(text)
    assert payload["result"]["text"] == GOLDEN
    assert payload["provenance"]["pairing"]["matched"] == 12
    back = sum_from_records(payload["result"]["terms"])
    assert str(normalize(back)) == GOLDEN
    from fibercount.surgery import example_chord_sums, example_y_sums, surgery_Zn
    mem = surgery_Zn(example_y_sums(), example_chord_sums(), 1)
    assert equal_mod_relations(back, mem, EqualityOptions(use_ihx=False)).verdict is Verdict.EQUAL


def test_json_round_trip_for_ratfun_results(torus):
    payload = json.loads(invoke("idelta", torus, "--json")[1])
    from fibercount.monodromy import MonodromyData, alexander_polynomial, i_delta
    assert parse_ratfun(payload["I_Delta"]) == i_delta(alexander_polynomial(MonodromyData.of([[2, 1], [1, 1]])))


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "fibercount.cli.main", "surgery-q", str(EXAMPLE), "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
