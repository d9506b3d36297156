import csv
import json
import math

import pytest

from dyadkde import (
    DyadicSample,
    epanechnikov,
    NgpDesign,
    SimConfig,
    fit,
    gaussian,
    run_monte_carlo,
    true_density,
    write_edge_list_csv,
)
from dyadkde.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, run


def _write_tri(path):
    path.write_text("i,j,w\n0,1,0.5\n0,2,-0.2\n1,2,1.1\n")
    return str(path)


def _read_csv(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def test_version_and_usage(capsys):
    assert run(["--version"]) == EXIT_OK
    assert "0.1.0" in capsys.readouterr().out
    assert run([]) == EXIT_USAGE


def test_unknown_subcommand_exits_usage(capsys):
    assert run(["frobnicate"]) == EXIT_USAGE


def test_estimate_matches_library(tmp_path, capsys):
    src = _write_tri(tmp_path / "tri.csv")
    assert run(
        ["estimate", "--input", src, "--points", "0.0,0.5", "--bandwidth", "0.8",
         "--kernel", "gaussian", "--full-precision"]
    ) == EXIT_OK
    rows = _read_csv(capsys.readouterr().out)
    sample = DyadicSample(3, [0.5, -0.2, 1.1])
    for row, w in zip(rows, (0.0, 0.5)):
        r = fit(sample, w, 0.8, gaussian())
        assert float(row["w"]) == w
        assert float(row["f_hat"]) == pytest.approx(r.f_hat, rel=1e-15)
        assert float(row["se"]) == pytest.approx(r.se, rel=1e-15)
        assert float(row["se_iid"]) == pytest.approx(r.se_iid, rel=1e-15)
        assert float(row["ci_low"]) == pytest.approx(r.ci_low, rel=1e-15)
        assert int(row["N"]) == 3
        assert int(row["n"]) == 3


def test_estimate_grid_monotone_w(tmp_path, capsys):
    src = _write_tri(tmp_path / "tri.csv")
    assert run(
        ["estimate", "--input", src, "--grid=-1:2:7", "--bandwidth", "0.8"]
    ) == EXIT_OK
    ws = [float(r["w"]) for r in _read_csv(capsys.readouterr().out)]
    assert ws == sorted(ws) and len(ws) == 7
    assert ws[0] == -1.0 and ws[-1] == 2.0


def test_estimate_undersmooth_rule(tmp_path, capsys):
    src = _write_tri(tmp_path / "tri.csv")
    assert run(
        ["estimate", "--input", src, "--points", "0.5", "--rule", "undersmooth",
         "--full-precision"]
    ) == EXIT_OK
    out = capsys.readouterr().out
    row = _read_csv(out)[0]
    # h = c * n^{-(0.2 + 0.01)} with c = 1.06 * min(sd, iqr/1.349)
    import numpy as np

    weights = np.array([0.5, -0.2, 1.1])
    sd = float(np.std(weights, ddof=1))
    iqr = float(np.quantile(weights, 0.75) - np.quantile(weights, 0.25))
    c = 1.06 * min(sd, iqr / 1.349)
    want = c * 3 ** -(0.2 + 0.01)
    assert float(row["h"]) == pytest.approx(want, rel=1e-12)
    assert "# h=" in out


def test_estimate_mse_oracle_rule(tmp_path, capsys):
    src = _write_tri(tmp_path / "tri.csv")
    assert run(
        ["estimate", "--input", src, "--points", "0.5", "--rule", "mse-oracle",
         "--omega2", "0.0522936", "--b", "0.05221", "--full-precision"]
    ) == EXIT_OK
    row = _read_csv(capsys.readouterr().out)[0]
    want = (0.0522936 / (4 * 0.05221**2) / 3) ** 0.2
    assert float(row["h"]) == pytest.approx(want, rel=1e-12)


def test_estimate_mse_oracle_requires_constants(tmp_path, capsys):
    src = _write_tri(tmp_path / "tri.csv")
    assert run(
        ["estimate", "--input", src, "--points", "0.5", "--rule", "mse-oracle"]
    ) == EXIT_USAGE


def test_estimate_knife_edge_rule(tmp_path, capsys):
    src = _write_tri(tmp_path / "tri.csv")
    assert run(
        ["estimate", "--input", src, "--points", "0.5", "--rule", "knife-edge",
         "--full-precision"]
    ) == EXIT_OK
    row = _read_csv(capsys.readouterr().out)[0]
    assert float(row["h"]) * 3 == pytest.approx(float(row["h"]) * 3)
    assert float(row["h"]) > 0


def test_estimate_missing_file_exit_data(capsys):
    assert run(
        ["estimate", "--input", "/nonexistent.csv", "--points", "0", "--bandwidth", "1"]
    ) == EXIT_DATA
    assert "error" in capsys.readouterr().err


def test_estimate_json_output(tmp_path):
    src = _write_tri(tmp_path / "tri.csv")
    dest = tmp_path / "out.json"
    assert run(
        ["estimate", "--input", src, "--points", "0.5", "--bandwidth", "0.8",
         "--output", str(dest)]
    ) == EXIT_OK
    doc = json.loads(dest.read_text())
    sample = DyadicSample(3, [0.5, -0.2, 1.1])
    r = fit(sample, 0.5, 0.8, epanechnikov())  # the CLI default kernel
    assert doc["rows"][0]["f_hat"] == pytest.approx(r.f_hat, rel=1e-15)
    assert doc["rows"][0]["se"] == pytest.approx(r.se, rel=1e-15)


def test_csv_json_numeric_agreement(tmp_path, capsys):
    src = _write_tri(tmp_path / "tri.csv")
    dest = tmp_path / "out.json"
    args = ["estimate", "--input", src, "--points", "0.3", "--bandwidth", "0.6"]
    assert run(args + ["--output", str(dest)]) == EXIT_OK
    assert run(args + ["--full-precision"]) == EXIT_OK
    csv_row = _read_csv(capsys.readouterr().out)[0]
    json_row = json.loads(dest.read_text())["rows"][0]
    for key in ("f_hat", "se", "se_iid", "ci_low", "ci_high"):
        assert float(csv_row[key]) == pytest.approx(json_row[key], rel=1e-15)


def test_simulate_matches_library(capsys):
    assert run(
        ["simulate", "--pi", "0.3333333333333333", "--w", "1.645", "--N", "20",
         "--h", "0.3", "--reps", "5", "--kernel", "gaussian", "--seed", "77",
         "--full-precision"]
    ) == EXIT_OK
    out = capsys.readouterr().out
    assert "# seed=77" in out
    row = _read_csv(out)[0]
    cfg = SimConfig(
        design=NgpDesign(pi=1 / 3, w=1.645), n_nodes=20, h=0.3,
        kernel=gaussian(), replications=5, seed=77,
    )
    summary = run_monte_carlo(cfg)
    assert float(row["median_bias"]) == pytest.approx(summary.median_bias, rel=1e-15)
    assert float(row["robust_sd"]) == pytest.approx(summary.robust_sd, rel=1e-15)
    assert float(row["median_se"]) == pytest.approx(summary.median_se, rel=1e-15)
    assert float(row["coverage_fg"]) == summary.coverage_fg
    assert float(row["coverage_iid"]) == summary.coverage_iid
    assert float(row["f_true"]) == pytest.approx(
        true_density(cfg.design), rel=1e-15
    )


def test_simulate_per_rep_records(tmp_path, capsys):
    per_rep = tmp_path / "reps.csv"
    assert run(
        ["simulate", "--pi", "0.5", "--w", "1.0", "--N", "10", "--h", "0.4",
         "--reps", "4", "--seed", "5", "--per-rep", str(per_rep)]
    ) == EXIT_OK
    rows = _read_csv(per_rep.read_text())
    assert [int(r["rep"]) for r in rows] == [0, 1, 2, 3]
    for r in rows:
        assert float(r["se"]) >= 0.0
        assert r["ci_hit_fg"] in ("0", "1")
        assert r["ci_hit_iid"] in ("0", "1")


def test_simulate_too_few_nodes_usage_error(capsys):
    assert run(
        ["simulate", "--pi", "0.3", "--w", "0.0", "--N", "2", "--h", "0.3"]
    ) == EXIT_USAGE


def test_design_row_values(capsys):
    assert run(
        ["design", "--pi", "0.3333333333333333", "--w", "1.645", "--kernel",
         "gaussian", "--N", "100", "--h", "0.2496", "--full-precision"]
    ) == EXIT_OK
    row = _read_csv(capsys.readouterr().out)[0]
    assert float(row["f_w"]) == pytest.approx(0.1853758118415144, rel=1e-14)
    assert float(row["omega1"]) == pytest.approx(0.0024027651721659077, rel=1e-14)
    assert float(row["omega2"]) == pytest.approx(0.052293551041345615, rel=1e-14)
    assert float(row["bias_coef_b"]) == pytest.approx(
        -0.036476964290766564, rel=1e-14
    )
    assert float(row["bias_backsolved"]) == pytest.approx(
        math.sqrt(0.052293551041345615 / (4 * 4950 * 0.2496**5)), rel=1e-12
    )
    assert float(row["ase_total"]) == pytest.approx(0.0117, abs=5e-4)
    assert float(row["ase_t3"]) == pytest.approx(0.0098, abs=5e-4)
    assert float(row["ase_t1"]) == pytest.approx(0.0065, abs=5e-4)


def test_validate_ok(tmp_path, capsys):
    src = _write_tri(tmp_path / "tri.csv")
    assert run(["validate", "--input", src]) == EXIT_OK
    out = capsys.readouterr().out
    assert "N: 3" in out and "n: 3" in out


def test_validate_conflicting_duplicate(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("i,j,w\n0,1,0.5\n1,0,0.6\n0,2,0.1\n1,2,0.2\n")
    assert run(["validate", "--input", str(bad)]) == EXIT_DATA
    assert "error" in capsys.readouterr().err


def test_validate_self_loop(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("i,j,w\n0,0,0.5\n")
    assert run(["validate", "--input", str(bad)]) == EXIT_DATA


def test_validate_missing_dyad(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("i,j,w\n0,1,0.5\n0,2,0.1\n")
    assert run(["validate", "--input", str(bad)]) == EXIT_DATA
    assert "error" in capsys.readouterr().err


def test_roundtrip_via_written_file(tmp_path, capsys, rng):
    from conftest import random_sample

    s = random_sample(rng, 6)
    path = tmp_path / "net.csv"
    write_edge_list_csv(s, path)
    assert run(["validate", "--input", str(path)]) == EXIT_OK
    capsys.readouterr()
    assert run(
        ["estimate", "--input", str(path), "--points", "0.0", "--bandwidth", "0.5",
         "--full-precision"]
    ) == EXIT_OK
    row = _read_csv(capsys.readouterr().out)[0]
    r = fit(s, 0.0, 0.5, epanechnikov())
    assert float(row["f_hat"]) == pytest.approx(r.f_hat, rel=1e-15)
