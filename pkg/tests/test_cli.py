import csv
import math
import os

import pytest

from landspec import __version__
from landspec.cli import main

from scenarios import P2_KEYS, P3_KEYS
from goldens import MONETARY, OPEN, UNBALANCED


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def read_manifest(outdir):
    lines = {}
    with open(os.path.join(outdir, "run_manifest.txt")) as fh:
        for line in fh:
            key, _, value = line.strip().partition(" = ")
            lines[key] = value
    return lines


@pytest.fixture
def p2_file(write_scenario):
    return write_scenario("p2.txt", **P2_KEYS)


@pytest.fixture
def p3_file(write_scenario):
    return write_scenario("p3.txt", **P3_KEYS)


class TestSolve:
    def test_open(self, p2_file, tmp_path, capsys):
        out = str(tmp_path / "run")
        assert main(["solve", "--scenario", p2_file, "--economy", "open",
                     "--out", out]) == 0
        rows = read_csv(os.path.join(out, "bgp.csv"))
        assert rows[0] == ["phi_star", "gross_growth", "phi_bar", "residual",
                           "land_gdp_ratio"]
        assert len(rows) == 2
        values = dict(zip(rows[0], map(float, rows[1])))
        assert values["phi_star"] == pytest.approx(
            OPEN["phi_star_eps0"], rel=1e-14
        )
        assert values["gross_growth"] == pytest.approx(
            OPEN["growth_eps0"], rel=1e-14
        )
        captured = capsys.readouterr().out
        assert "phi_star = " in captured
        arows = read_csv(os.path.join(out, "assumptions.csv"))
        assert arows[0] == ["id", "holds", "lhs", "rhs", "slack"]
        assert [r[0] for r in arows[1:]] == ["A1", "A2"]
        assert all(r[1] == "true" for r in arows[1:])

    def test_manifest(self, p2_file, tmp_path):
        out = str(tmp_path / "run")
        main(["solve", "--scenario", p2_file, "--economy", "open",
              "--out", out])
        manifest = read_manifest(out)
        assert manifest["command"].startswith("landspec solve --scenario")
        assert manifest["scenario_path"] == p2_file
        assert manifest["output_dir"] == out
        assert manifest["seedless"] == "true"
        assert manifest["tool_version"] == __version__

    def test_monetary(self, p3_file, tmp_path):
        out = str(tmp_path / "run")
        assert main(["solve", "--scenario", p3_file, "--economy", "monetary",
                     "--out", out]) == 0
        rows = read_csv(os.path.join(out, "bgp.csv"))
        assert rows[0] == [
            "phi_star", "gross_r", "gross_growth", "ordering_Rc",
            "ordering_g", "ordering_r", "q0_times_M0_per_K0", "min_e",
            "credit_gdp",
        ]
        values = dict(zip(rows[0], rows[1]))
        assert float(values["phi_star"]) == pytest.approx(
            MONETARY["phi_star_eps0"], rel=1e-14
        )
        assert float(values["credit_gdp"]) == pytest.approx(
            MONETARY["credit_gdp_eps0"], rel=1e-12
        )
        assert math.isnan(float(values["q0_times_M0_per_K0"]))
        arows = read_csv(os.path.join(out, "assumptions.csv"))
        assert [r[0] for r in arows[1:]] == ["A3", "A4"]

    def test_outdir_env_override(self, p2_file, tmp_path, monkeypatch):
        env_dir = str(tmp_path / "env")
        monkeypatch.setenv("LANDSPEC_OUTDIR", env_dir)
        main(["solve", "--scenario", p2_file, "--economy", "open",
              "--out", str(tmp_path / "flag")])
        assert os.path.exists(os.path.join(env_dir, "bgp.csv"))
        assert not os.path.exists(os.path.join(tmp_path / "flag", "bgp.csv"))


class TestSweep:
    def test_explicit_grid(self, p2_file, tmp_path, capsys):
        out = str(tmp_path / "run")
        code = main(["sweep", "--scenario", p2_file, "--economy", "open",
                     "--wrt", "theta_x", "--eps-from", "0", "--eps-to", "0.1",
                     "--steps", "3", "--out", out])
        assert code == 0
        rows = read_csv(os.path.join(out, "sweep.csv"))
        assert rows[0] == ["epsilon", "g_star", "phi_star", "gross_r",
                           "derivative", "sign", "feasible", "reason"]
        assert len(rows) == 4
        eps = [float(r[0]) for r in rows[1:]]
        assert eps == pytest.approx([0.0, 0.05, 0.1])
        assert all(r[6] == "true" for r in rows[1:])
        assert all(r[5] == "neg" for r in rows[1:])
        assert "wrote 3 records (0 infeasible)" in capsys.readouterr().out

    def test_single_step_grid(self, p2_file, tmp_path):
        out = str(tmp_path / "run")
        main(["sweep", "--scenario", p2_file, "--economy", "open",
              "--wrt", "theta_x", "--eps-from", "0.05", "--eps-to", "0.9",
              "--steps", "1", "--out", out])
        rows = read_csv(os.path.join(out, "sweep.csv"))
        assert len(rows) == 2
        assert float(rows[1][0]) == 0.05

    def test_partial_grid_flags_rejected(self, p2_file, tmp_path, capsys):
        code = main(["sweep", "--scenario", p2_file, "--economy", "open",
                     "--wrt", "theta_x", "--eps-from", "0.1",
                     "--out", str(tmp_path / "run")])
        assert code == 3
        assert "given together" in capsys.readouterr().err

    def test_monetary_writes_level_table(self, p3_file, tmp_path):
        out = str(tmp_path / "run")
        main(["sweep", "--scenario", p3_file, "--economy", "monetary",
              "--wrt", "mu", "--eps-from", "0", "--eps-to", "0.1",
              "--steps", "3", "--out", out])
        rows = read_csv(os.path.join(out, "monetary_sweep.csv"))
        assert rows[0] == ["epsilon", "theta", "theta_x", "mu", "phi_star",
                           "gross_r", "gross_growth", "credit_gdp"]
        assert len(rows) == 4
        first = dict(zip(rows[0], map(float, rows[1])))
        assert first["credit_gdp"] == pytest.approx(
            MONETARY["credit_gdp_eps0"], rel=1e-12
        )
        assert first["theta"] == 0.2

    def test_infeasible_rows_kept(self, p2_file, tmp_path):
        out = str(tmp_path / "run")
        main(["sweep", "--scenario", p2_file, "--economy", "open",
              "--wrt", "theta_x", "--eps-from", "3.4", "--eps-to", "3.6",
              "--steps", "2", "--out", out])
        rows = read_csv(os.path.join(out, "sweep.csv"))
        by_eps = {float(r[0]): r for r in rows[1:]}
        assert by_eps[3.4][6] == "true"
        assert by_eps[3.6][6] == "false"
        assert by_eps[3.6][7] == "no_equilibrium"
        assert by_eps[3.6][5] == ""

    def test_byte_identical_reruns(self, p2_file, tmp_path):
        outs = [str(tmp_path / name) for name in ("one", "two")]
        for out in outs:
            main(["sweep", "--scenario", p2_file, "--economy", "open",
                  "--wrt", "theta_x", "--eps-from", "0", "--eps-to", "0.5",
                  "--steps", "20", "--out", out])
        data = [
            open(os.path.join(out, "sweep.csv"), "rb").read() for out in outs
        ]
        assert data[0] == data[1]


class TestSimulate:
    def test_jump_path(self, p2_file, tmp_path):
        out = str(tmp_path / "run")
        assert main(["simulate", "--scenario", p2_file, "--T", "5",
                     "--K0", "2.0", "--out", out]) == 0
        rows = read_csv(os.path.join(out, "path.csv"))
        assert rows[0] == ["t", "K", "P", "phi", "g", "w", "Y"]
        assert len(rows) == 7
        ks = [float(r[1]) for r in rows[1:]]
        assert ks[0] == 2.0
        growth = OPEN["growth_eps0"]
        for prev, nxt in zip(ks, ks[1:]):
            assert nxt == pytest.approx(prev * growth, rel=1e-14)

    def test_explicit_start(self, p2_file, tmp_path):
        out = str(tmp_path / "run")
        main(["simulate", "--scenario", p2_file, "--T", "4",
              "--phi0", "1.0", "--out", out])
        rows = read_csv(os.path.join(out, "path.csv"))
        phis = [float(r[3]) for r in rows[1:]]
        assert phis[0] == 1.0
        assert phis[-1] < 1.0

    def test_shock_branches(self, p2_file, tmp_path):
        out = str(tmp_path / "run")
        main(["simulate", "--scenario", p2_file, "--T", "8",
              "--shock-eps", "0.05", "--shock-at", "3",
              "--belief", "anticipated_temporary", "--out", out])
        rows = read_csv(os.path.join(out, "path.csv"))
        assert rows[0] == ["branch", "t", "K", "P", "phi", "g", "w", "Y"]
        branches = [r[0] for r in rows[1:]]
        assert branches.count("baseline") == 9
        assert branches.count("shocked") == 9
        base = {int(r[1]): float(r[4]) for r in rows[1:] if r[0] == "baseline"}
        shocked = {int(r[1]): float(r[4]) for r in rows[1:] if r[0] == "shocked"}
        assert shocked[3] > base[3]
        assert shocked[4] == pytest.approx(base[4], rel=1e-12)

    def test_shock_requires_date(self, p2_file, tmp_path, capsys):
        code = main(["simulate", "--scenario", p2_file, "--T", "8",
                     "--shock-eps", "0.05", "--out", str(tmp_path / "run")])
        assert code == 3
        assert "--shock-at" in capsys.readouterr().err

    def test_rent_dynamics(self, p2_file, tmp_path, capsys):
        out = str(tmp_path / "run")
        main(["simulate", "--scenario", p2_file, "--T", "20", "--d", "0.02",
              "--n0", "0.01", "--out", out])
        rows = read_csv(os.path.join(out, "path.csv"))
        assert rows[0] == ["t", "phi", "n", "g", "P_over_V"]
        assert len(rows) == 22
        first = dict(zip(rows[0], map(float, rows[1])))
        assert first["phi"] == pytest.approx(UNBALANCED["phi0_n001"], rel=1e-10)
        assert first["n"] == 0.01
        ratios = [float(r[4]) for r in rows[1:]]
        assert all(x > 1.0 for x in ratios)  # price above dividend value
        assert "converged = true" in capsys.readouterr().out

    def test_rent_dynamics_zero_start_prices_pure_bubble(self, p2_file,
                                                         tmp_path):
        out = str(tmp_path / "run")
        main(["simulate", "--scenario", p2_file, "--T", "3", "--d", "0.02",
              "--n0", "0", "--out", out])
        rows = read_csv(os.path.join(out, "path.csv"))
        assert all(float(r[2]) == 0.0 for r in rows[1:])
        assert all(r[4] == "inf" for r in rows[1:])


class TestCheck:
    def test_dual_economy_pass(self, write_scenario, tmp_path, capsys):
        scen = write_scenario("dual.txt", mu=0.5, **P2_KEYS)
        out = str(tmp_path / "run")
        assert main(["check", "--scenario", scen, "--out", out]) == 0
        rows = read_csv(os.path.join(out, "check.csv"))
        assert rows[0] == ["kind", "id", "holds", "detail"]
        kinds = [r[0] for r in rows[1:]]
        assert kinds.count("assumption") == 4
        assert kinds.count("proposition") == 22
        assert all(r[2] == "true" for r in rows[1:])
        stdout = capsys.readouterr().out
        assert "A1" in stdout and "pass" in stdout and "FAIL" not in stdout

    def test_failure_exits_nonzero_and_skips_claims(self, write_scenario,
                                                    tmp_path, capsys):
        bad = dict(P2_KEYS, theta=0.56)
        scen = write_scenario("bad.txt", **bad)
        out = str(tmp_path / "run")
        assert main(["check", "--scenario", scen, "--out", out]) == 4
        rows = read_csv(os.path.join(out, "check.csv"))
        assert all(r[0] == "assumption" for r in rows[1:])
        by_id = {r[1]: r[2] for r in rows[1:]}
        assert by_id["A1"] == "false"
        assert "FAIL" in capsys.readouterr().out

    def test_monetary_without_equilibrium_reported(self, write_scenario,
                                                   tmp_path):
        scen = write_scenario("m.txt", **dict(P3_KEYS, mu=0.0))
        out = str(tmp_path / "run")
        assert main(["check", "--scenario", scen, "--out", out]) == 4
        rows = read_csv(os.path.join(out, "check.csv"))
        ids = [r[1] for r in rows[1:]]
        assert "monetary-bgp-exists" in ids

    def test_needs_an_economy(self, write_scenario, tmp_path, capsys):
        keys = {k: v for k, v in P2_KEYS.items() if k != "r"}
        scen = write_scenario("none.txt", **keys)
        assert main(["check", "--scenario", scen,
                     "--out", str(tmp_path / "run")]) == 3
        assert "neither r nor mu" in capsys.readouterr().err


class TestExitCodes:
    def test_missing_file(self, tmp_path, capsys):
        code = main(["solve", "--scenario", str(tmp_path / "absent.txt"),
                     "--economy", "open", "--out", str(tmp_path / "run")])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_malformed_scenario(self, tmp_path, capsys):
        scen = tmp_path / "bad.txt"
        scen.write_text("theta == 0.5\n")
        code = main(["solve", "--scenario", str(scen), "--economy", "open",
                     "--out", str(tmp_path / "run")])
        assert code == 1

    def test_no_equilibrium(self, write_scenario, tmp_path):
        scen = write_scenario("hot.txt", epsilon=4.0, **P2_KEYS)
        code = main(["solve", "--scenario", scen, "--economy", "open",
                     "--out", str(tmp_path / "run")])
        assert code == 2

    def test_assumption_violation(self, write_scenario, tmp_path):
        scen = write_scenario("m.txt", **dict(P3_KEYS, mu=0.0))
        code = main(["solve", "--scenario", scen, "--economy", "monetary",
                     "--out", str(tmp_path / "run")])
        assert code == 3

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert __version__ in capsys.readouterr().out
