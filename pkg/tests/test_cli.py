import csv
import io
import json
import math
import subprocess
import sys

import mpmath
import pytest

from lorentz_seq.cli import REPORT_COLUMNS, SWEEP_COLUMNS, run, to_json


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_norm_example():
    code, out, _ = call("norm", "--p", "2", "--s", "4", "--x", "1")
    assert code == 0
    d = json.loads(out)
    assert list(d) == ["p", "s", "a", "standard", "maximal", "weighted_lp", "dual"]
    assert d["standard"] == 1.0 and d["dual"] == 1.0
    lo, hi = d["maximal"]
    with mpmath.workdps(40):
        ref = mpmath.zeta(3) ** mpmath.mpf(0.25)
    assert lo <= ref <= hi and hi - lo <= 1e-12


def test_constants_example():
    code, out, _ = call("constants", "--p", "2", "--s", "4")
    d = json.loads(out)
    assert code == 0
    assert d["B"] == pytest.approx(0.737788, abs=1e-6)
    assert d["A"] == pytest.approx(0.438692, abs=1e-6)
    code, out, _ = call("constants", "--p", "2", "--a", "0.5")
    d = json.loads(out)
    assert d["S"] is None and d["zeta_hardy"][0] <= mpmath.zeta(1.5) ** 0.5 <= d["zeta_hardy"][1]
    code, out, _ = call("constants", "--p", "2", "--a", "-0.5", "--s", "1.5")
    d = json.loads(out)
    assert d["S"] == pytest.approx(math.sqrt(0.75)) and d["B"] is None and d["zeta_hardy"] is None


def test_sweep_csv_example():
    code, out, _ = call("sweep", "--target", "B_ratio", "--p", "2", "--s", "4",
                        "--K", "1,16,256,4096,65536", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert tuple(rows[0]) == SWEEP_COLUMNS and len(rows) == 5
    assert [int(r["K"]) for r in rows] == [1, 16, 256, 4096, 65536]
    gaps = [float(r["gap"]) for r in rows]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


def test_sweep_S_ratio_and_default_grid():
    code, out, _ = call("sweep", "--target", "S_ratio", "--p", "2", "--a", "-0.5", "--K", "1", "--format", "text")
    assert code == 0 and "ratio: 0.745" in out
    code, out, _ = call("sweep", "--target", "holder_ratio", "--p", "2", "--s", "4")
    assert len(json.loads(out)) == 21


def test_level_outputs():
    code, out, _ = call("level", "--alpha", "0", "--x", "0,1")
    d = json.loads(out)
    assert code == 0 and d["level"] == [0.5, 0.5] and d["segments"] == [{"M": 1, "N": 2, "lam": 0.5}]
    code, out, _ = call("level", "--p", "2", "--s", "4", "--x", "1,3,2", "--rearrange", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["x"]) for r in rows] == [3.0, 2.0, 1.0] and list(rows[0]) == ["n", "x", "level"]
    code, _, err = call("level", "--p", "3", "--s", "2", "--x", "1")
    assert code == 2 and "p < s" in err


def test_dual_with_oracle():
    code, out, _ = call("dual", "--p", "2", "--s", "4", "--x", "3,2,2,1", "--oracle")
    d = json.loads(out)
    assert code == 0 and d["oracle_converged"] and d["rel_gap"] <= 1e-4
    code, out, _ = call("dual", "--p", "2", "--s", "4", "--gen", "random:n=30", "--oracle",
                        "--restarts", "1", "--oracle-tol", "1e-15")
    assert code == 1 and json.loads(out)["oracle_converged"] is False


def test_check_subset_and_formats():
    code, out, _ = call("check", "--only", "level,pooling", "--cases", "10")
    rows = json.loads(out)
    assert code == 0 and {r["check_id"] for r in rows} == {"level_properties", "pooling_inequality"}
    assert list(rows[0])[:6] == ["check_id", "params", "n_cases", "n_pass", "worst_margin", "witnesses"]
    code, out, _ = call("check", "--only", "level", "--cases", "10", "--format", "csv")
    assert out.splitlines()[0] == ",".join(REPORT_COLUMNS)
    code, out, _ = call("check", "--only", "hardy", "--cases", "5", "--support", "10", "--format", "text")
    assert code == 1
    assert any(line.startswith("FAIL  reversed_hardy_decreasing") for line in out.splitlines())
    assert any(line.startswith("PASS  reversed_hardy_increasing") for line in out.splitlines())


def test_check_is_deterministic():
    a = call("check", "--only", "equivalence", "--cases", "5", "--seed", "9")[1]
    b = call("check", "--only", "equivalence", "--cases", "5", "--seed", "9")[1]
    assert a == b


@pytest.mark.parametrize("argv", [
    ("norm", "--p", "2", "--x", "1"),
    ("norm", "--p", "1", "--s", "2", "--x", "1"),
    ("norm", "--p", "2", "--s", "2", "--x", "1,-1"),
    ("norm", "--p", "2", "--s", "2", "--x", "1", "--gen", "random:n=3"),
    ("norm", "--p", "2", "--s", "2", "--gen", "walk:n=3"),
    ("norm", "--p", "2", "--s", "2", "--input", "/nonexistent/file"),
    ("constants", "--p", "2"),
    ("check", "--only", "nope"),
    ("sweep", "--target", "S_ratio", "--p", "2", "--a", "0.5", "--K", "1"),
    ("sweep", "--target", "B_ratio", "--p", "2", "--s", "4", "--K", "0"),
    ("norm", "--p", "2", "--s", "2", "--x", "1", "--tol", "-1"),
    ("bogus",),
    (),
])
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_input_file_and_env_tol(tmp_path, monkeypatch):
    f = tmp_path / "x.txt"
    f.write_text("3\n2\n1\n")
    code, out, _ = call("norm", "--p", "2", "--s", "2", "--input", str(f))
    assert code == 0 and json.loads(out)["standard"] == pytest.approx(math.sqrt(14))
    monkeypatch.setenv("LORENTZ_SEQ_TOL", "1e-6")
    lo, hi = json.loads(call("norm", "--p", "2", "--s", "4", "--x", "1")[1])["maximal"]
    assert hi - lo <= 1e-6
    monkeypatch.setenv("LORENTZ_SEQ_TOL", "tight")
    assert call("norm", "--p", "2", "--s", "4", "--x", "1")[0] == 2


def test_json_serialization_rules():
    assert to_json(1.0) == "1.0" and to_json(0.1) == "0.10000000000000001"
    assert to_json(float("inf")) == "null" and to_json([1, None, True]) == "[1, null, true]"
    assert json.loads(to_json({"v": 1 / 3}))["v"] == 1 / 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lorentz_seq", "constants", "--p", "2", "--s", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["A"] == pytest.approx(0.5)
