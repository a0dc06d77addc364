import csv
import io
import json
import math
import subprocess
import sys

import pytest

from zetareg.cli import GRID_HEADER, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_zeta_series(capsys):
    code, out, _ = run(capsys, "zeta", "--re", "2", "--im", "0")
    data = json.loads(out)
    assert code == 0 and data["method"] == "series"
    assert abs(data["value"]["re"] - 1.644934067) < 1e-9
    assert data["schema_version"] == 1


def test_zeta_continuation(capsys):
    code, out, _ = run(capsys, "zeta", "--re", "0")
    data = json.loads(out)
    assert code == 0 and data["method"] == "continuation"
    assert abs(data["value"]["re"] + 0.5) < 1e-8


def test_zeta_pole(capsys):
    code, _, err = run(capsys, "zeta", "--re", "1", "--im", "0")
    assert code == 2 and "pole at s=1" in err


def test_prime_zeta(capsys):
    code, out, _ = run(capsys, "prime-zeta", "--re", "2", "--im", "0")
    data = json.loads(out)
    assert code == 0
    assert abs(data["value"]["re"] - 0.45224742) < 1e-8
    assert data["k_used"] >= 1 and data["branch_flags"] == []


def test_prime_zeta_singular(capsys):
    code, _, err = run(capsys, "prime-zeta", "--re", "0.5", "--im", "0")
    assert code == 3 and "1/2" in err


def test_prime_zeta_no_continuation(capsys):
    code, _, err = run(capsys, "prime-zeta", "--re", "-1", "--im", "0")
    assert code == 4 and "no continuation to Re(s) <= 0" in err


def test_det_reports(capsys):
    code, out, _ = run(capsys, "det", "--spectrum", "power:1", "--mu", "1")
    v = json.loads(out)["verdict"]
    assert code == 0 and abs(v["ln_det"]["re"] - 0.9189385) < 1e-6
    code, out, _ = run(capsys, "det", "--spectrum", "primes", "--mu", "1")
    assert code == 0 and json.loads(out)["verdict"]["status"] == "NotRegularizable"


def test_det_from_file(capsys, tmp_path):
    f = tmp_path / "ev.txt"
    f.write_text("2\n3\n")
    code, out, _ = run(capsys, "det", "--spectrum", f"file:{f}", "--format", "csv")
    assert code == 0
    rows = dict(csv.reader(io.StringIO(out)))
    assert abs(float(rows["verdict.ln_det.re"]) - math.log(6)) < 1e-12


def test_zeros_three_lines_and_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "zeros", "--t-max", "30")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3
    for line, ref in zip(lines, (14.134725, 21.022040, 25.010858)):
        assert abs(float(line) - ref) < 1e-6
    path = tmp_path / "zeros.txt"
    assert run(capsys, "zeros", "--t-max", "30", "--out", str(path))[0] == 0
    code, again, _ = run(capsys, "zeros", "--zeros-file", str(path))
    assert code == 0 and again.encode() == path.read_bytes() == out.encode()


def test_scan_csv(capsys):
    code, out, _ = run(capsys, "scan", "--window", "0.6,2,0,2", "--nx", "3", "--ny", "2",
                       "--sieve-limit", "100000")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and tuple(rows[0]) == GRID_HEADER and len(rows) == 7
    mid = [r for r in rows[1:] if abs(float(r[0]) - 1.3) < 1e-12 and float(r[1]) == 0]
    assert mid[0][5] == "ok" and abs(float(mid[0][2]) - abs(complex(float(mid[0][3]), float(mid[0][4])))) < 1e-15


def test_scan_rejects_left_half_plane(capsys):
    code, _, err = run(capsys, "scan", "--window=-0.1,1,0,1", "--nx", "2", "--ny", "2")
    assert code == 4 and "no continuation" in err


def test_singularities(capsys):
    code, out, _ = run(capsys, "singularities", "--window", "0.05,1,-0.1,0.1", "--k-max", "20",
                       "--sieve-limit", "1000")
    data = json.loads(out)
    ks = sorted(e["k"] for e in data["entries"] if e["kind"] == "pole_image")
    assert code == 0 and ks == [1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19]


def test_cutoff(capsys):
    code, out, _ = run(capsys, "cutoff", "--spectrum", "power:1")
    fit = json.loads(out)["fit"]
    assert code == 0 and abs(fit["finite_part"] + 1 / 12) < 1e-4


def test_pnt(capsys):
    code, out, _ = run(capsys, "pnt", "1000", "1000000", "--sieve-limit", "1000000")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0]["pi"] == "168" and rows[1]["pi"] == "78498"


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["zeta"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 64
    assert run(capsys, "zeta", "--re", "2", "--tol", "-1")[0] == 64


def test_bad_input_exit_codes(capsys, tmp_path):
    assert run(capsys, "det", "--spectrum", "file:" + str(tmp_path / "missing"))[0] == 9
    assert run(capsys, "det", "--spectrum", "hydrogen")[0] == 4
    assert run(capsys, "zeta", "--re", "0.5", "--im", "70")[0] == 5


def test_deterministic_bytes():
    argv = [sys.executable, "-m", "zetareg", "scan", "--window", "0.6,2,0,3", "--nx", "3",
            "--ny", "3", "--sieve-limit", "100000"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"sigma,tau,abs_p,re_p,im_p,flag\n")
