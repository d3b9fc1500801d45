import csv
import io
import json
import math
import sys

import pytest

import ljlattice
from ljlattice import cli, sums
from ljlattice.errors import ConvergenceError
from ljlattice.lattice import square
from ljlattice.optimize import levelset

# every library operation the CLI must expose
LIBRARY_OPERATIONS = {
    "make_lattice", "reduce_basis", "quadratic_form", "scale", "triangular", "from_fixed_area_chart",
    "theta", "theta_normalized", "epstein_zeta_direct", "epstein_zeta_accelerated", "gaussian_sum",
    "bessel_k0", "bessel_k0_laplace",
    "lj_potential", "lj_energy", "pair_energy", "tf_energy", "energy_under_scaling",
    "g_cert", "sufficient_condition", "ratio_function", "ratio_infimum_scan", "optimal_triangular_area",
    "blanc_bound", "global_identity_check", "riemann_constant",
    "minimize_fixed_area", "minimize_global", "scaling_minimize", "crossover_area", "levelset",
    "critical_point_check",
}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(argv):
    code, out, err = run(argv + ["--json"])
    assert code == 0, err
    return json.loads(out), out


def _patch_everywhere(monkeypatch, name):
    """Wrap ``name`` in every package module that binds it; return the call log."""
    calls = []
    target = None
    for mod_name, mod in list(sys.modules.items()):
        if not mod_name.startswith("ljlattice") or mod is None:
            continue
        fn = getattr(mod, name, None)
        if callable(fn):
            target = target or fn
            if fn is target:
                def wrapped(*a, _fn=fn, **k):
                    calls.append(1)
                    return _fn(*a, **k)

                monkeypatch.setattr(mod, name, wrapped)
    assert target is not None, name
    return calls


def test_registry_covers_every_operation_once():
    assert set(cli.OPERATIONS) == LIBRARY_OPERATIONS
    parser = cli.build_parser()
    subcommands = set(parser._subparsers._group_actions[0].choices)
    for op, (subcommand, argv) in cli.OPERATIONS.items():
        assert subcommand in subcommands
        assert argv[0] == subcommand


@pytest.mark.parametrize("op", sorted(LIBRARY_OPERATIONS))
def test_operation_reachable_from_its_subcommand(op, monkeypatch, tmp_path):
    _, argv = cli.OPERATIONS[op]
    calls = _patch_everywhere(monkeypatch, op)
    code, _, err = run([a.replace("{tmp}", str(tmp_path)) for a in argv])
    assert code == 0, err
    assert calls, f"{op} not reached by {argv}"


def test_energy_json_round_trip():
    doc, text = run_json(["energy", "--square", "1"])
    assert {"energy", "zeta6", "zeta12"} <= set(doc)
    assert json.dumps(json.loads(text)) == text.strip()
    assert doc["energy"] == ljlattice.lj_energy(square(1.0))
    assert doc["energy"] == doc["zeta12"] - 2 * doc["zeta6"]


def test_energy_examples():
    doc, _ = run_json(["energy", "--triangular", "0.84912", "--potential", "lj"])
    assert doc["energy"] == pytest.approx(-6.76425, abs=5e-5)
    doc, _ = run_json(["energy", "--square", "1.14"])
    assert doc["energy"] == pytest.approx(-4.437, abs=1e-3)
    doc, _ = run_json(["energy", "--len-u", "1", "--len-v", "1", "--angle-deg", "90"])
    assert doc["lattice"]["angle_deg"] == 90.0


def test_minimize_examples():
    doc, _ = run_json(["minimize", "--area", "1"])
    assert doc["classification"] == "triangular"
    doc, _ = run_json(["minimize", "--area", "2"])
    assert doc["classification"] == "square"
    assert any("conjectural" in d for d in doc["diagnostics"])
    doc, _ = run_json(["minimize", "--global"])
    assert doc["identity"]["zeta_gap"] <= 1e-5


def test_bounds_examples():
    doc, _ = run_json(["bounds", "threshold"])
    assert doc["rows"][0]["computed"] == pytest.approx(0.636926, abs=1e-6)
    doc, _ = run_json(["bounds", "crossover"])
    assert 1.13 < doc["rows"][0]["computed"] < 1.14
    doc, _ = run_json(["bounds", "blanc"])
    assert [r["quantity"] for r in doc["rows"]] == ["P", "Q", "c"]
    assert doc["c_recomputed"] == doc["rows"][2]["computed"]


def read_csv(path):
    raw = path.read_bytes()
    rows = list(csv.DictReader(io.StringIO(raw.decode("utf-8"))))
    return raw, rows


def test_levelset_csv_format_and_determinism(tmp_path):
    argv = ["levelset", "--area", "1", "--u-min", "0.98", "--u-max", "1.08", "--v-min", "0.98", "--v-max", "1.08", "--step", "0.02"]
    assert run(argv + ["--out", str(tmp_path / "a.csv")])[0] == 0
    assert run(argv + ["--out", str(tmp_path / "b.csv")])[0] == 0
    raw, rows = read_csv(tmp_path / "a.csv")
    assert raw == (tmp_path / "b.csv").read_bytes()
    assert raw.startswith(b"u,v,value,valid\n") and b"\r" not in raw
    grid = levelset(1.0, "lj", (0.98, 1.08), (0.98, 1.08), 0.02)
    assert len(rows) == grid.values.size
    for row, (u, v, value, ok) in zip(rows, grid.rows()):
        assert float(row["u"]) == u and float(row["v"]) == v
        assert row["valid"] == str(int(ok))
        if ok:
            assert float(row["value"]) == value
        else:
            assert row["value"] == ""


def test_levelset_examples(tmp_path):
    out = tmp_path / "a114.csv"
    assert run(["levelset", "--area", "1.14", "--step", "0.002", "--out", str(out)])[0] == 0
    _, rows = read_csv(out)
    best = min((float(r["value"]), float(r["u"]), float(r["v"])) for r in rows if r["valid"] == "1")
    t = ljlattice.lattice.TRIANGULAR_CHART_LENGTH
    assert math.hypot(best[1] - 1, best[2] - 1) < math.hypot(best[1] - t, best[2] - t)

    out = tmp_path / "ratio.csv"
    assert run(["levelset", "--area", "1", "--objective", "ratio", "--step", "0.002", "--out", str(out)])[0] == 0
    _, rows = read_csv(out)
    best = min((float(r["value"]), float(r["u"]), float(r["v"])) for r in rows if r["valid"] == "1")
    assert math.hypot(best[1] - 1.014, best[2] - 1.014) < 0.01

    out = tmp_path / "one.csv"
    assert run(["levelset", "--area", "1", "--u-min", "1", "--u-max", "1.01", "--v-min", "1", "--v-max", "1.01", "--step", "0.5", "--out", str(out)])[0] == 0
    _, rows = read_csv(out)
    assert len(rows) == 1 and rows[0]["valid"] == "1"


def test_exit_codes(tmp_path, monkeypatch):
    assert run(["energy", "--square", "1", "--potential", "power", "--n", "2", "--p", "1"])[0] == 2
    assert run(["energy", "--len-u", "1"])[0] == 2
    assert run(["energy", "--len-u", "1", "--len-v", "1", "--angle-deg", "180"])[0] == 2
    assert run(["nosuchcommand"])[0] == 2
    assert run(["bounds", "crossover", "--lo", "1.5", "--hi", "2"])[0] == 2
    assert run(["levelset", "--area", "1", "--out", str(tmp_path / "missing" / "x.csv")])[0] == 4

    def broken(*a, **k):
        raise ConvergenceError("forced", 1e-3)

    monkeypatch.setattr(sums, "epstein_zeta_direct", broken)
    assert run(["sums", "zeta-direct", "--at", "6", "--square", "1"])[0] == 3


def test_verify_negative_path():
    code, out, _ = run(["verify", "--fast", "--tol", "0"])
    assert code == 1
    assert "FAIL" in out and "FAILED criterion" in out


def test_verify_fast_report():
    doc_code, out, _ = run(["verify", "--fast", "--json"])
    doc = json.loads(out)
    criteria = {r["criterion"] for r in doc["rows"]}
    assert 8 not in criteria and criteria == set(range(1, 14)) - {8}
    failed = [r for r in doc["rows"] if not r["passed"]]
    assert doc_code == (1 if failed else 0)
    assert doc["elapsed_s"] > 0
