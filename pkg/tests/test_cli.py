import json
import os

import pytest

from conftest import CURVES
from ellrank.cli import emit, main, parse_curve_text, parse_report
from ellrank.errors import ParseError


def curve(name):
    return os.path.join(CURVES, name)


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_analyze_tomasz(capsys):
    code, doc, _ = run_json(capsys, "analyze", curve("tomasz_q5.txt"))
    assert code == 0
    types = {r["place"]: (r["type"], r["f_v"], r["c_v"]) for r in doc["local_data"]}
    assert types["t + 1"] == ("II", 2, 1)
    assert types["t^4 - t^3 + t^2 - t + 1"] == ("II", 2, 1)
    assert doc["summary"]["deg_f"] == 12 and doc["descent"]["genus"] == 4
    assert doc["identity_check"] is True


def test_analyze_table(capsys):
    assert main(["analyze", curve("x3_plus_t.txt")]) == 0
    out = capsys.readouterr().out
    assert "II*" in out and "deg f = 4" in out


@pytest.mark.parametrize("flags,best", [(["--geometric"], 8), (["--torsion-dim", "0"], 0)])
def test_bounds_tomasz(capsys, flags, best):
    code, doc, _ = run_json(capsys, "bounds", curve("tomasz_q5.txt"), *flags)
    assert code == 0 and doc["best_bound"] == best


def test_bounds_user_asserted_provenance(capsys):
    _, doc, _ = run_json(capsys, "bounds", curve("tomasz_q5.txt"), "--torsion-dim", "0")
    assert doc["torsion"]["provenance"] == "user-asserted"


def test_bounds_finite_p2(capsys):
    code, doc, _ = run_json(capsys, "bounds", curve("genus1_f7.txt"), "--p", "2")
    assert code == 0
    assert doc["torsion"]["provenance"].startswith("L-polynomial")


def test_zeta_rational(capsys, tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("field = finite\np = 7\na = 0\nb = -t\n")
    code, doc, _ = run_json(capsys, "zeta", str(f))
    assert code == 0 and doc["l_polynomial"]["coefficients"] == [1]


def test_zeta_genus_one(capsys):
    code, doc, _ = run_json(capsys, "zeta", curve("genus1_f7.txt"), "--extension-max", "3")
    a = 7 + 1 - doc["counts"]["1"]
    assert doc["l_polynomial"]["coefficients"] == [1, -a, 7]


def test_oracle_genus_two(capsys):
    code, doc, _ = run_json(capsys, "oracle", curve("genus2_f5.txt"))
    t = doc["torsion_interval"]
    assert code == 0 and t["lower"] <= doc["two_rank"] <= t["upper"]


def test_parse_error_position(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("field = rationals\na = 0\nb = t^2 + * 3\n")
    assert main(["analyze", str(f)]) == 1
    err = capsys.readouterr().err
    assert "line 3, column 11" in err


def test_exit_code_hypothesis(capsys, tmp_path):
    f = tmp_path / "red.txt"
    f.write_text("field = rationals\na = 0\nb = -t^3\n")
    assert main(["bounds", str(f)]) == 2


def test_exit_code_capability(capsys):
    assert main(["zeta", curve("tomasz_q5.txt")]) == 4


def test_round_trip(capsys):
    _, doc, text = run_json(capsys, "bounds", curve("tomasz_q5.txt"), "--good-primes", "7,11")
    assert emit(parse_report(text)) == text


def test_deterministic_across_workers(capsys):
    _, _, a = run_json(capsys, "bounds", curve("genus2_f5.txt"))
    _, _, b = run_json(capsys, "bounds", curve("genus2_f5.txt"), "--workers", "3")
    assert a == b


def test_input_validation():
    with pytest.raises(ParseError, match="characteristic"):
        parse_curve_text("field = finite\np = 3\na = 0\nb = t\n")
    with pytest.raises(ParseError, match="unknown key"):
        parse_curve_text("field = rationals\nc = 1\n")
    ci = parse_curve_text("field = finite\np = 5\nm = 2\na = w*t\nb = t + 1\n")
    assert ci.base.order == 25
