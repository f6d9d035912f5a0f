import csv
import io
import json
import subprocess
import sys

import pytest

from toeplitz_hankel.cli import parse_symbol_spec, run
from toeplitz_hankel.reports import CSV_COLUMNS, reports_from_json, reports_to_json
from toeplitz_hankel.symbol import FourierSymbol, exp_symbol, norm_fl11

BESSEL = '{"form":"log-coeffs","entries":{"1":[0.3,0],"-1":[0.3,0]}}'
COS = '{"form":"coeffs","entries":{"1":[1,0],"-1":[1,0]}}'


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_symbol_spec(tmp_path):
    assert norm_fl11(parse_symbol_spec('{"form":"coeffs","entries":{"0":[1,0]}}') - FourierSymbol.constant(1.0)) == 0
    a = parse_symbol_spec(BESSEL)
    assert norm_fl11(a - exp_symbol(FourierSymbol.from_coeffs({1: 0.3, -1: 0.3}))) == 0
    path = tmp_path / "sym.json"
    path.write_text(BESSEL)
    assert norm_fl11(parse_symbol_spec(str(path)) - a) == 0
    tiny = parse_symbol_spec('{"form":"coeffs","entries":{"0":[1,0],"3":[1e-18,0]}}')
    assert tiny.hi == 0


def test_bogc_command(tmp_path):
    js, cs = tmp_path / "r.json", tmp_path / "r.csv"
    code, out, _ = call("bogc", "--symbol", BESSEL, "--realization", "I", "--N", "8",
                        "--json", str(js), "--csv", str(cs))
    assert code == 0
    rep = reports_from_json(js.read_text())[0]
    assert rep.rel_err <= 1e-10 and rep.passed
    rows = list(csv.DictReader(io.StringIO(cs.read_text())))
    assert tuple(rows[0]) == CSV_COLUMNS and rows[0]["command"] == "bogc"
    assert rows[0]["symbol_hash"] != ""


def test_json_report_round_trip(tmp_path):
    js = tmp_path / "r.json"
    call("bogc", "--symbol", BESSEL, "--N-list", "1,2,4", "--json", str(js))
    text = js.read_text(encoding="utf-8")
    assert reports_to_json(reports_from_json(text)) == text


def test_shifted_zero_command(tmp_path):
    js = tmp_path / "r.json"
    code, _, _ = call("shifted", "--symbol", BESSEL, "--k", "2", "--sign", "+", "--N", "10", "--json", str(js))
    assert code == 0
    assert json.loads(js.read_text())["reports"][0]["lhs"]["zero_flag"] is True


def test_shifted_out_of_scope_exits_1():
    code, out, _ = call("shifted", "--symbol", BESSEL, "--k", "-1", "--sign", "-", "--N", "10")
    assert code == 1 and "outside theorem scope" in out


def test_shifted_wrong_convention_fails():
    code, _, _ = call("shifted", "--symbol", BESSEL, "--k", "-2", "--sign", "+", "--N", "40",
                      "--convention", "from_n1")
    assert code == 1
    code, _, _ = call("shifted", "--symbol", BESSEL, "--k", "-2", "--sign", "+", "--N", "40")
    assert code == 0


def test_constants_command():
    code, out, _ = call("constants", "--symbol", BESSEL, "--realization", "IV")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "name,re,im"
    names = [line.split(",")[0] for line in lines[1:]]
    assert names == ["G", "E", "F", "F_hat", "E_hat"]
    for line in lines[1:]:
        _, re_, im_ = line.split(",")
        complex(float(re_), float(im_))


def test_det_command():
    code, out, _ = call("det", "--symbol", BESSEL, "--N", "6")
    assert code == 0 and out.count("\n") == 5
    code, _, _ = call("det", "--symbol", BESSEL, "--N", "6", "--k", "2", "--sign", "+")
    assert code == 0


def test_szego_commands():
    code, _, _ = call("szego", "--symbol", BESSEL, "--realization", "III", "--N-list", "4,8,16,32")
    assert code == 0
    code, out, _ = call("szego", "--symbol", BESSEL, "--realization", "I", "--N-list", "4,8,16",
                        "--precision", "extended")
    assert code == 0 and "mpmath" in out
    code, _, err = call("szego", "--symbol", COS, "--N-list", "4,8", "--precision", "extended")
    assert code == 2 and "log-coeffs" in err


def test_general_command():
    code, out, _ = call("general", "--N", "40", "--instances", "5", "--x", '{"x": [[0.3, 0], [0, 0.2]]}')
    assert code == 0 and "row_support" in out


def test_mc_commands():
    code, _, _ = call("mc", "--symbol", COS, "--lambda", "0.5", "--N", "3", "--samples", "20000", "--seed", "1")
    assert code == 0
    code, out, _ = call("mc", "--ensemble", "oplus", "--symbol", COS, "--lambda", "0", "--N", "3",
                        "--samples", "100", "--normalization", "plain")
    assert code == 1 and "halved_first_row" in out


@pytest.mark.parametrize("argv", [
    ["bogc", "--N", "3"],
    ["szego", "--symbol", BESSEL],
    ["szego", "--symbol", BESSEL, "--N-list", "8,4"],
    ["shifted", "--symbol", BESSEL, "--N", "10", "--k", "2"],
    ["shifted", "--symbol", BESSEL, "--N", "10", "--k", "2", "--sign", "x"],
    ["bogc", "--symbol", BESSEL, "--N", "4", "--realization", "V"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(argv):
    code, _, _ = call(*argv)
    assert code == 2


def test_malformed_symbol_is_usage_error():
    code, _, err = call("bogc", "--symbol", '{"form":"coeffs"', "--N", "3")
    assert code == 2 and "malformed" in err


def test_numeric_error_reports_module():
    code, _, err = call("bogc", "--symbol", '{"form":"log-coeffs","entries":{"1":[3,0]}}', "--N", "3",
                        "--realization", "I")
    assert code == 1 and "symbol" in err and "DegreeCap" in err


def test_config_campaign(tmp_path):
    cfg = tmp_path / "campaign.json"
    cfg.write_text(json.dumps([
        {"command": "bogc", "symbol": BESSEL, "realization": "II", "N": 4},
        {"command": "shifted", "symbol": BESSEL, "k": 3, "sign": "+", "N": 10},
    ]))
    js = tmp_path / "out.json"
    code, _, _ = call("--config", str(cfg), "--json", str(js))
    assert code == 0
    reps = reports_from_json(js.read_text())
    assert [r.command for r in reps] == ["bogc", "shifted"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([{"command": "bogc", "symbol": BESSEL, "N": 4, "colour": 1}]))
    assert call("--config", str(bad))[0] == 2


def test_exit_code_is_function_of_passed_flags(tmp_path):
    cfg = tmp_path / "mixed.json"
    cfg.write_text(json.dumps([
        {"command": "bogc", "symbol": BESSEL, "N": 4},
        {"command": "shifted", "symbol": BESSEL, "k": -2, "sign": "+", "N": 40, "convention": "from_n1"},
    ]))
    assert call("--config", str(cfg))[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "toeplitz_hankel", "bogc", "--symbol", BESSEL, "--N", "2",
                           "--realization", "IV"], capture_output=True, text=True)
    assert proc.returncode == 0 and "IV" in proc.stdout
