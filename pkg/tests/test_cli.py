import json

import numpy as np
import pytest

from adglab.cli import main

PPP_FAST = ["--seed", "9", "--n", "4000"]


def run_ok(args):
    assert main(args) == 0


class TestSamplePattern:
    def test_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_ok(["sample-pp", "--process", "mhp", "--seed", "3", "--out", str(a)])
        run_ok(["sample-pp", "--process", "mhp", "--seed", "3", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()
        header, first = a.read_text().splitlines()[:2]
        assert header == "x,y"
        x, y = map(float, first.split(","))
        assert 0 <= x < 100 and 0 <= y < 100

    def test_meta_sidecar(self, tmp_path):
        out = tmp_path / "pat.csv"
        run_ok(["sample-pp", "--seed", "3", "--out", str(out)])
        meta = json.loads((tmp_path / "pat.meta.json").read_text())
        assert meta["experiment"] == "sample-pp"
        assert meta["seed"] == 3
        assert meta["config"]["process"] == "ppp"
        assert "wall_time_s" in meta


class TestSuccessCurve:
    def test_analytic_grid(self, tmp_path):
        out = tmp_path / "an.csv"
        run_ok(["success-curve", "--analytic", "--seed", "1", "--out", str(out),
                "--theta-start", "-10", "--theta-stop", "0"])
        rows = out.read_text().splitlines()
        assert rows[0] == "theta_db,p_hat,ci_lo,ci_hi,n"
        vals = np.array([[float(v) for v in r.split(",")] for r in rows[1:]])
        from adglab.ppp import ppp_success_rayleigh

        expect = ppp_success_rayleigh(10 ** (vals[:, 0] / 10.0), 4.0)
        assert np.max(np.abs(vals[:, 1] - expect)) < 1e-9

    def test_analytic_rejects_non_baseline(self, tmp_path):
        code = main(["success-curve", "--analytic", "--process", "mcp", "--seed", "1",
                     "--out", str(tmp_path / "x.csv")])
        assert code == 2

    def test_monte_carlo_run_and_thread_independence(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["success-curve", *PPP_FAST, "--theta-start", "-20", "--theta-stop", "0",
                "--theta-step", "2"]
        run_ok(args + ["--out", str(a), "--threads", "1"])
        run_ok(args + ["--out", str(b), "--threads", "2"])
        assert a.read_bytes() == b.read_bytes()


class TestConfigFile:
    def test_file_defaults_and_flag_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# defaults\nprocess=mhp\nseed=5\nn=50\n")
        out = tmp_path / "o.csv"
        run_ok(["kappa", "--config", str(cfg), "--n", "2000", "--out", str(out)])
        meta = json.loads((tmp_path / "o.meta.json").read_text())
        assert meta["config"]["process"] == "mhp"  # from file
        assert meta["config"]["n"] == 2000  # flag wins
        assert meta["seed"] == 5

    def test_malformed_file(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("process mhp\n")
        assert main(["kappa", "--config", str(cfg), "--seed", "1"]) == 2


class TestErrors:
    def test_singular_mean_sinr_exit_3(self, tmp_path, capsys):
        code = main(["mean-sinr", "--path-loss", "singular", "--seed", "2", "--n", "100",
                     "--out", str(tmp_path / "m.csv")])
        assert code == 3
        assert "SingularMeanDiverges" in capsys.readouterr().err

    def test_bad_alpha_exit_2(self, tmp_path):
        code = main(["kappa", "--seed", "2", "--alpha", "1.5",
                     "--out", str(tmp_path / "k.csv")])
        assert code == 2

    def test_lognormal_kappa_exit_3(self, tmp_path, capsys):
        code = main(["kappa", "--fading", "lognormal", "--seed", "2", "--n", "100",
                     "--out", str(tmp_path / "k.csv")])
        assert code == 3
        assert "NoPolynomialDecay" in capsys.readouterr().err


class TestExperiments:
    def test_kappa_csv(self, tmp_path):
        out = tmp_path / "k.csv"
        run_ok(["kappa", "--path-loss", "singular", *PPP_FAST, "--out", str(out)])
        header, row = out.read_text().splitlines()
        assert header == "process,fading,alpha,kappa,stderr,n"
        fields = row.split(",")
        assert fields[0] == "ppp"
        assert 0.5 < float(fields[3]) < 2.0

    def test_adg_both_methods(self, tmp_path):
        out = tmp_path / "adg.csv"
        run_ok(["adg", "--process", "mhp", "--seed", "4", "--n", "3000",
                "--probes-per-pattern", "8", "--p-lo", "0.91", "--p-hi", "0.99",
                "--theta-start", "-40", "--theta-stop", "0", "--out", str(out)])
        rows = out.read_text().splitlines()
        assert rows[0] == "process,fading,alpha,method,g_hat,g_hat_db,stderr,kappa,kappa_ppp"
        methods = {r.split(",")[3] for r in rows[1:]}
        assert methods == {"kappa_ratio", "horizontal_shift"}
        for r in rows[1:]:
            assert float(r.split(",")[4]) > 0

    def test_slope_csv(self, tmp_path):
        out = tmp_path / "s.csv"
        run_ok(["slope", "--path-loss", "singular", "--seed", "6", "--n", "60000",
                "--fit-lo", "-25", "--fit-hi", "-10", "--out", str(out)])
        header, row = out.read_text().splitlines()
        slope = float(row.split(",")[5])
        assert 7.0 < slope < 13.0

    def test_rate_with_adg_row(self, tmp_path):
        out = tmp_path / "r.csv"
        run_ok(["rate", "--path-loss", "singular", *PPP_FAST, "--g-hat", "1.0",
                "--out", str(out)])
        rows = out.read_text().splitlines()
        assert len(rows) == 3
        approx = float(rows[2].split(",")[4])
        assert approx == pytest.approx(1.489, abs=0.002)

    def test_contact_ccdf_monotone(self, tmp_path):
        out = tmp_path / "c.csv"
        run_ok(["contact-ccdf", "--seed", "8", "--n", "400", "--r-max", "6",
                "--out", str(out)])
        rows = out.read_text().splitlines()[1:]
        vals = [float(r.split(",")[1]) for r in rows]
        assert vals[0] == 1.0
        assert all(a >= b for a, b in zip(vals, vals[1:]))

    def test_mean_sinr_nonsingular(self, tmp_path):
        out = tmp_path / "m.csv"
        run_ok(["mean-sinr", "--snr-db", "20", *PPP_FAST, "--out", str(out)])
        header, row = out.read_text().splitlines()
        assert float(row.split(",")[3]) > 0
