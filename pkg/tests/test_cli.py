import json
import math

from hexdimer.cli import main

from _reference import TABLE1, UNIVERSAL_CONSTANT


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_constant_prints_reference_value(capsys):
    code, out, _ = run(capsys, "constant")
    assert code == 0
    value = float(out.strip().splitlines()[-1].split(",")[0])
    assert abs(value - UNIVERSAL_CONSTANT) < 5e-6


def test_partition_finite(capsys):
    code, out, _ = run(capsys, "partition", "--M", "1", "--N", "1", "--K", "2", "--q", "0.5")
    assert code == 0
    z = float(out.strip().splitlines()[-1].split(",")[-1])
    assert abs(z - 1.75) < 1e-12


def test_partition_infinite_k(capsys):
    code, out, _ = run(capsys, "partition", "--M", "1", "--N", "1", "--K", "inf", "--q", "0.5")
    assert code == 0
    z = float(out.strip().splitlines()[-1].split(",")[-1])
    assert abs(z - 2.0) < 1e-12


def test_coeffs_json_and_metadata(capsys):
    code, out, _ = run(capsys, "coeffs", "--scenario", "infinite", "--a", "2", "--b", "1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["meta"]["convention"] == "f = +ln(Z)/V"
    rows = dict((r[0], r[1]) for r in payload["rows"])
    assert rows["f1"] == 0.0
    assert abs(12 * 2 * rows["f2"] - 1.0) < 1e-14


def test_coeffs_requires_scenario_arguments(capsys):
    code, _, err = run(capsys, "coeffs", "--scenario", "sliced", "--a", "1", "--b", "3")
    assert code == 1
    assert "phi" in err


def test_usage_error_exit_code(capsys):
    assert main(["free-energy", "--bogus-flag"]) == 1
    assert main(["nonexistent-subcommand"]) == 1


def test_free_energy_grid_deterministic(tmp_path, capsys):
    out1 = tmp_path / "grid1.csv"
    out2 = tmp_path / "grid2.csv"
    for out in (out1, out2):
        code = main(["free-energy", "--a", "1", "--b", "1", "--c", "1",
                     "--inv-eps-min", "2", "--inv-eps-max", "12", "--out", str(out)])
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()
    header = out1.read_text().splitlines()
    assert any(line.startswith("# convention:") for line in header)
    assert "inv_eps,eps,f,variant,params" in header


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "FAIL" not in out
    assert "pass" in out


def test_verify_kasteleyn_only(capsys):
    code, out, _ = run(capsys, "verify", "--kasteleyn")
    assert code == 0
    assert "kasteleyn-vs-enumeration" in out
    assert "dual-evaluator" not in out


def test_verify_failure_exit_code(monkeypatch, capsys):
    import hexdimer.cli as cli

    monkeypatch.setattr(cli, "_verify_suites",
                        lambda args: iter([("fake", "case", False, "boom")]))
    code, out, err = run(capsys, "verify")
    assert code == 3
    assert "FAIL" in out


def test_numerical_failure_exit_code(capsys):
    # an unconvergeable series tolerance triggers exit 2
    code, _, err = run(capsys, "coeffs", "--scenario", "infinite", "--a", "1", "--b", "1",
                       "--tol-override", "rel_tol=1e-30")
    assert code in (1, 2)  # settings validation (1) or convergence failure (2)
    assert err


def test_table1_single_row(capsys):
    code, out, _ = run(capsys, "table1", "--row", "cosine:1,3")
    assert code == 0
    line = out.strip().splitlines()[-1]
    fields = line.split(",")
    f0_analytic, f0_fitted = float(fields[3]), float(fields[4])
    ref = TABLE1[("cosine", 1, 3)]
    assert abs(f0_analytic - ref[0]) < 5e-8
    assert abs(f0_fitted - ref[1]) < 1e-7


def test_free_energy_single_lattice_point(capsys):
    code, out, _ = run(capsys, "free-energy", "--M", "1", "--N", "1", "--K", "1",
                       "--q", str(math.exp(-1.0)))
    assert code == 0
    f = float(out.strip().splitlines()[-1].split(",")[2])
    assert abs(f - (-math.log(1 + math.exp(-1.0)) / 6.0)) < 1e-14


def test_tabulated_phi_through_cli(tmp_path, capsys):
    import numpy as np

    grid = np.linspace(-1.5, 3.5, 300)
    table = tmp_path / "phi.csv"
    table.write_text("\n".join(f"{t},{(2 + math.cos(t)) / 3}" for t in grid))
    code, out, _ = run(capsys, "partition", "--a", "1", "--b", "3", "--inv-eps", "8",
                       "--phi", f"tabulated:{table}")
    assert code == 0
    logz_tab = float(out.strip().splitlines()[-1].split(",")[-2])
    code, out, _ = run(capsys, "partition", "--a", "1", "--b", "3", "--inv-eps", "8",
                       "--phi", "cosine")
    logz_cos = float(out.strip().splitlines()[-1].split(",")[-2])
    assert abs(logz_tab - logz_cos) < 1e-7


def test_numerical_failure_from_series_cap(capsys):
    code, _, err = run(capsys, "verify", "--tol-override", "n_max_cap=10")
    assert code == 2
    assert "converge" in err
