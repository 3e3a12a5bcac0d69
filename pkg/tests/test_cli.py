import json
import subprocess
import sys

import pytest

from weilrel.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_and_lpoly(capsys):
    code, out, _ = run(capsys, "count", "--f", "2,0,1", "--p", "5", "--t", "1", "--n", "2")
    assert code == 0
    counts = json.loads(out)["counts"]
    code, out, _ = run(capsys, "lpoly", "--f", "2,0,1", "--p", "5", "--t", "1")
    coeffs = json.loads(out)["coefficients"]
    assert counts["1"] == 6 + coeffs[1]


def test_rh_check(capsys):
    code, out, _ = run(capsys, "rh-check", "1,-2,5", "--q", "5")
    assert code == 0 and json.loads(out)["rh"] is True


def test_cert_and_relations(capsys):
    code, out, _ = run(capsys, "cert", "1,-2,25", "1,-3,25", "--q", "25")
    assert json.loads(out)["verdict"] == "Proven"
    code, out, _ = run(capsys, "relations", "1,-17,541", "1,-29,541", "1,-46,541", "--q", "541",
                       "--verify", "2,0,0,-4,2,0")
    assert json.loads(out)["verdict"] == "ProvenTrue"
    code, out, _ = run(capsys, "relations", "1,-17,541", "1,-29,541", "1,-46,541", "--q", "541")
    assert json.loads(out)["multiplicative_nontrivial_rank"] == 2


def test_survey_exit_codes(capsys, tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("f = 2,0,1\np = 5\ne = 2\n")
    out_csv = tmp_path / "s.csv"
    code, out, _ = run(capsys, "survey", "--config", str(cfg), "--out", str(out_csv), "--format", "csv")
    assert code == 0 and json.loads(out)["records"] == 23
    assert out_csv.read_text().startswith("t,c_0,c_1,c_2,cert")
    code, out, _ = run(capsys, "export", str(out_csv), "--format", "json")
    assert code == 0 and len(json.loads(out)["records"]) == 23

    bad = tmp_path / "bad.cfg"
    bad.write_text("f = -1,6,1\np = 5\n")
    code, _, err = run(capsys, "survey", "--config", str(bad))
    assert code == 2 and "invalid" in err
    code, _, err = run(capsys, "survey", "--f=3,1,0,0,1", "--p", "7", "--e", "5")
    assert code == 3


def test_global_options_override_config(capsys, tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("f = 2,0,1\np = 5\nbits = 128\n")
    code, _, _ = run(capsys, "survey", "--config", str(cfg), "--bits", "32")
    assert code == 2  # the explicit value wins and fails validation


def test_constructions(capsys):
    code, out, _ = run(capsys, "honda-tate", "--p", "541")
    assert json.loads(out)["traces"] == [17, 29, 46]
    code, out, _ = run(capsys, "honda-tate", "--p", "13", "--d", "1")
    assert json.loads(out)["traces"] == [4, 6]
    code, _, _ = run(capsys, "honda-tate", "--p", "11")
    assert code == 2
    code, out, _ = run(capsys, "fermat", "--m", "7", "--q", "29")
    data = json.loads(out)
    assert data["A_size"] == 30 and data["verification"]["results"][0]["consistent"]


def test_distribution_and_sieve(capsys):
    code, out, _ = run(capsys, "distribution", "1,-2,25", "1,-3,25", "--q", "25", "--N", "5000",
                       "--reference", "5000")
    data = json.loads(out)
    assert code == 0 and data["ks"] < 0.1
    code, out, _ = run(capsys, "distribution", "--g", "2", "--N", "1000", "--format", "csv", "--bins", "5")
    assert out.splitlines()[0] == "bin_left,bin_right,count" and len(out.splitlines()) == 6
    code, out, _ = run(capsys, "sieve-bound", "--g", "1,2", "--k", "1", "--q", "390625", "--format", "csv")
    assert len(out.splitlines()) == 3


def test_invalid_input_exit_code(capsys):
    code, _, err = run(capsys, "lpoly", "--f", "3,1,0,0,1", "--p", "7", "--t", "2")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "weilrel", "sieve-bound", "--g", "1", "--k", "1", "--q", "625"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["gamma_th2"] == 29


def test_parser_rejects_garbage(capsys):
    with pytest.raises(SystemExit):
        main(["count", "--f", "a,b", "--p", "5", "--t", "1"])


def test_sieve_bound_c_g(capsys):
    assert main(["sieve-bound", "--g", "1", "--k", "1", "--q", "1000000", "--c-g", "0.5"]) == 0
    assert "bound_th2_c_g" in capsys.readouterr().out
    assert main(["sieve-bound", "--g", "1", "--k", "1", "--q", "100", "--c-g", "2"]) == 2


def test_missing_files_exit_2(capsys, tmp_path):
    assert main(["survey", "--config", str(tmp_path / "absent.cfg")]) == 2
    assert main(["export", str(tmp_path / "absent.csv")]) == 2
    assert "i/o error" in capsys.readouterr().err
