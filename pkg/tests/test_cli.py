import json

import numpy as np
import pytest

from washburn import cli, verify


WATER_JSON = {"rho": 1000.0, "mu": 0.001, "gamma": 0.0728, "theta_deg": 0.0,
              "g": 9.81, "R": 1e-4, "L": 0.0, "h0": 0.0}


def run(argv):
    return cli.main(argv)


class TestNondim:
    def test_report_fields_and_precision(self, tmp_path, capsys):
        src = tmp_path / "water.json"
        src.write_text(json.dumps(WATER_JSON))
        assert run(["nondim", "--input", str(src)]) == 0
        out = capsys.readouterr().out
        report = json.loads(out)
        assert set(report) == {"omega", "beta", "alpha", "h_e", "tau", "Oh",
                               "Bo", "omega_star"}
        assert report["beta"] == 1.0
        assert report["h_e"] == pytest.approx(0.1484199796126401631, rel=1e-13)
        # 17 significant digits on every float
        assert "1.4841997961264017e-01" in out

    def test_strict_keys(self, tmp_path):
        src = tmp_path / "bad.json"
        src.write_text(json.dumps({**WATER_JSON, "surprise": 1}))
        assert run(["nondim", "--input", str(src)]) == 2


class TestSimulate:
    def test_files_and_first_row(self, tmp_path):
        prefix = str(tmp_path / "run")
        code = run(["simulate", "--omega", "1", "--beta", "1", "--alpha", "0",
                    "--horizon", "30", "-o", prefix])
        assert code == 0
        lines = (tmp_path / "run.csv").read_text().splitlines()
        assert lines[0] == "s,u,v,H,T,E,V"
        first = [float(x) for x in lines[1].split(",")]
        assert first[:6] == [0.0, 0.0, 0.0, 0.0, 0.0, 0.0]
        assert first[6] == pytest.approx(1.0 / 6.0, abs=1e-15)
        summary = json.loads((tmp_path / "run.json").read_text())
        assert abs(summary["final_state"]["u"] - 0.5) < 1e-6
        assert len(summary["crossings"]) >= 2
        assert (tmp_path / "run.gp").read_text().startswith("# gnuplot")
        meta = json.loads((tmp_path / "run.meta.json").read_text())
        assert meta["config"]["horizon"] == 30.0

    def test_deterministic_output(self, tmp_path):
        a, b = str(tmp_path / "a"), str(tmp_path / "b")
        argv = ["simulate", "--omega", "0.25", "--beta", "0.5", "--alpha", "0.1",
                "--horizon", "10"]
        assert run(argv + ["-o", a]) == 0
        assert run(argv + ["-o", b]) == 0
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

    def test_classification_near_critical(self, tmp_path):
        prefix = str(tmp_path / "crit")
        code = run(["simulate", "--omega", "0.25", "--beta", "1", "--alpha", "0",
                    "--horizon", "40", "--classify", "-o", prefix])
        assert code == 0
        summary = json.loads((tmp_path / "crit.json").read_text())
        classification = summary["classification"]
        assert classification["linear"]["kind"] == "stable-inflected-node"
        assert classification["approach"] == "monotone"
        assert classification["basin"]["C"] == pytest.approx(1.0 / 6.0, abs=1e-16)
        assert classification["audit"]["max_level_excess"] <= 1e-8

    def test_epsilon_twin_distance(self, tmp_path):
        prefix = str(tmp_path / "eps")
        code = run(["simulate", "--omega", "1", "--beta", "1", "--alpha", "0",
                    "--horizon", "20", "--epsilon", "1e-4", "-o", prefix])
        assert code == 0
        summary = json.loads((tmp_path / "eps.json").read_text())
        gap = summary["sup_distance_to_unregularized"]
        assert 0.0 < gap < 1e-2

    def test_physical_input(self, tmp_path):
        src = tmp_path / "water.json"
        src.write_text(json.dumps(WATER_JSON))
        prefix = str(tmp_path / "phys")
        assert run(["simulate", "--input", str(src), "--horizon", "5",
                    "-o", prefix]) == 0
        summary = json.loads((tmp_path / "phys.json").read_text())
        assert summary["params"]["h_e"] is not None

    def test_bad_alpha_exits_2(self, tmp_path):
        assert run(["simulate", "--omega", "1", "--beta", "1", "--alpha", "1.7",
                    "-o", str(tmp_path / "x")]) == 2

    def test_horizon_cap_exits_2(self, tmp_path):
        assert run(["simulate", "--omega", "1", "--beta", "1", "--alpha", "0",
                    "--horizon", "2e6", "-o", str(tmp_path / "x")]) == 2


class TestPicard:
    def test_files(self, tmp_path):
        prefix = str(tmp_path / "fp")
        code = run(["picard", "--omega", "1", "--beta", "1", "--alpha", "0",
                    "--horizon", "5", "--step", str(5 / 512), "-o", prefix])
        assert code == 0
        lines = (tmp_path / "fp.csv").read_text().splitlines()
        assert lines[0] == "s,u"
        sidecar = json.loads((tmp_path / "fp.json").read_text())
        assert sidecar["iterations"] > 1
        assert sidecar["final_diff"] < 1e-10
        assert sidecar["h"] == pytest.approx(5 / 512)

    def test_nonconvergence_exits_3(self, tmp_path):
        assert run(["picard", "--omega", "1", "--beta", "1", "--alpha", "0",
                    "--horizon", "5", "--max-iter", "1",
                    "-o", str(tmp_path / "fp")]) == 3


class TestClassifyCommand:
    def test_oscillatory(self, capsys):
        assert run(["classify", "--omega", "1", "--beta", "1", "--alpha", "0",
                    "--horizon", "40"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["approach"] == "oscillatory"
        assert report["linear"]["kind"] == "stable-spiral"

    def test_unsettled_exits_3(self, capsys):
        assert run(["classify", "--omega", "1", "--beta", "1", "--alpha", "0",
                    "--horizon", "2"]) == 3


class TestBasinCommand:
    def test_values(self, capsys):
        assert run(["basin", "--alpha", "0"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["C"] == pytest.approx(1.0 / 6.0, abs=1e-16)
        assert report["u_min"] == 0.0
        assert report["u_max"] == pytest.approx(9.0 / 8.0, abs=0.0)


class TestRegimeCommand:
    def test_case3_square_root(self, tmp_path):
        prefix = str(tmp_path / "c3")
        code = run(["regime", "--case", "3", "--beta", "1", "--horizon", "10",
                    "-o", prefix])
        assert code == 0
        rows = np.loadtxt(tmp_path / "c3.csv", delimiter=",", skiprows=1)
        t, h = rows[:, 0], rows[:, 2]
        assert np.max(np.abs(h - np.sqrt(2.0 * t))) < 1e-10
        summary = json.loads((tmp_path / "c3.json").read_text())
        assert summary["max_residual"] < 1e-10
        assert summary["oracle"] == "closed_form_h"

    def test_case_name_and_exponents(self, tmp_path):
        prefix = str(tmp_path / "c1")
        code = run(["regime", "--case", "negligible-gravity", "--beta", "0.5",
                    "--horizon", "5", "-o", prefix])
        assert code == 0
        summary = json.loads((tmp_path / "c1.json").read_text())
        assert summary["exponents"] == {"a": [1, 1], "b": [1, 2]}
        assert summary["max_residual"] < 1e-8

    def test_unknown_case_exits_2(self, tmp_path):
        assert run(["regime", "--case", "5", "--beta", "1",
                    "-o", str(tmp_path / "x")]) == 2


class TestVerifyCommand:
    def test_basin_filter(self, tmp_path, capsys):
        report_path = tmp_path / "report.json"
        code = run(["verify", "--only", "basin", "--output", str(report_path)])
        out = capsys.readouterr().out
        assert code == 0
        report = json.loads(report_path.read_text())
        names = [c["name"] for c in report["checks"]]
        assert "stability.basin_residual" in names
        assert all("basin" in n for n in names)
        assert "PASS stability.basin_residual" in out

    def test_failing_check_exits_4(self, monkeypatch, capsys):
        def doomed():
            raise verify.CheckFailure("synthetic failure")

        monkeypatch.setitem(verify.CHECKS, "synthetic.doomed", doomed)
        code = run(["verify", "--only", "synthetic.doomed"])
        assert code == 4
        assert "FAIL synthetic.doomed" in capsys.readouterr().out

    def test_unknown_filter_exits_2(self):
        assert run(["verify", "--only", "no-such-check"]) == 2
