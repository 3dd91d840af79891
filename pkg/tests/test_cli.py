import io
import json
import subprocess
import sys

from dlaguerre.cli import main


def _run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_equilibrium_json():
    code, text = _run(["equilibrium", "--c", "4"])
    d = json.loads(text)
    assert code == 0
    assert {"a", "b", "residual1", "residual2", "C1", "C2", "l"} <= d.keys()
    assert d["schema"].startswith("dlaguerre.report/")


def test_equilibrium_csv():
    code, text = _run(["equilibrium", "--c", "3", "--format", "csv"])
    header, row = text.strip().splitlines()
    assert code == 0 and "residual1" in header.split(",")


def test_oracle_zeros_sorted():
    code, text = _run(["oracle", "zeros", "--n", "6", "--c", "4"])
    zs = [float(r["zero"]) for r in json.loads(text)["rows"]]
    assert code == 0 and zs == sorted(zs) and len(zs) == 6


def test_oracle_recurrence_origin_node():
    code, text = _run(["oracle", "recurrence", "--n", "4", "--c", "4", "--bigN", "8",
                       "--include-origin-node"])
    d = json.loads(text)
    assert code == 0 and d["N"] == 8 and len(d["rows"]) == 5


def test_table1_exit_zero():
    code, text = _run(["table1"])
    assert code == 0 and json.loads(text)["summary"]["passed"]


def test_compare_reports_failure_status():
    code, text = _run(["compare", "--regime", "void", "--n", "24", "--grid", "4"])
    d = json.loads(text)
    assert code == (0 if d["summary"]["passed"] else 1)


def test_subcritical_compare_is_error():
    code, text = _run(["compare", "--regime", "band", "--n", "16", "--c", "1"])
    assert code == 2 and json.loads(text)["error"] == "RegimeError"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "dlaguerre", "equilibrium", "--c", "4"],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0 and json.loads(r.stdout)["regime"] == "supercritical"
