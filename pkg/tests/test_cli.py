import json
import math
import os

import pytest

from gup_heat import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFormatting:
    def test_fmt_roundtrip(self):
        for v in (1.0, 1e-300, 0.1 + 0.2, 10**-4.5):
            assert float(cli.fmt(v)) == v

    def test_fmt_nan_and_none(self):
        assert cli.fmt(None) == "nan"
        assert cli.fmt(math.nan) == "nan"

    def test_fmt_strings_pass_through(self):
        assert cli.fmt("ok") == "ok"

    def test_to_csv(self):
        text = cli.to_csv(["a", "b"], [[1.5, "ok"], [None, "error"]])
        assert text == "a,b\n1.5,ok\nnan,error\n"


class TestWriteAtomic:
    def test_writes_and_replaces(self, tmp_path):
        p = tmp_path / "x.csv"
        cli.write_atomic(str(p), "one\n")
        cli.write_atomic(str(p), "two\n")
        assert p.read_text() == "two\n"
        assert list(tmp_path.iterdir()) == [p]  # no temp litter

    def test_missing_directory(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            cli.write_atomic(str(tmp_path / "nope" / "x.csv"), "data")


class TestEinsteinCommand:
    def test_stdout_csv(self, capsys):
        code, out, err = run(capsys, "einstein", "--theta-e", "240",
                             "--kb-gamma2", "1e-3", "--t-min", "10",
                             "--t-max", "700", "--n-points", "5")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == ",".join(cli.CURVE_COLUMNS)
        # limit row plus the 5 grid rows
        assert len(lines) == 7
        first = lines[1].split(",")
        assert first[0] == "0.0" and first[-1] == "limit"
        assert first[4] == "nan"

    def test_out_file_with_sidecar(self, tmp_path, capsys):
        out = tmp_path / "curve.csv"
        code, _, _ = run(capsys, "einstein", "--n-points", "3",
                         "--t-min", "10", "--t-max", "30",
                         "--out", str(out))
        assert code == 0 and out.exists()
        meta = json.loads((tmp_path / "curve.csv.meta.json").read_text())
        assert meta["model"] == "einstein"
        assert meta["request"]["grid"]["n_points"] == 3

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "einstein", "--n-points", "2",
                           "--t-min", "10", "--t-max", "30",
                           "--format", "json")
        body = json.loads(out)
        assert code == 0 and body["columns"] == cli.CURVE_COLUMNS

    def test_config_file_and_flag_override(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"theta_e": 100.0, "n_points": 2,
                                   "t_min": 50.0, "t_max": 60.0}))
        code, out, _ = run(capsys, "einstein", "--config", str(cfg),
                           "--theta-e", "240")
        assert code == 0
        # the flag wins: cv at 50 K for theta 240 is tiny, for theta 100 large
        row = out.strip().splitlines()[2].split(",")
        assert float(row[1]) < 0.3

    def test_unknown_config_key(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"thetaE": 100.0}))
        code, out, err = run(capsys, "einstein", "--config", str(cfg))
        assert code == 2
        assert json.loads(err)["code"] == "usage_error"

    def test_domain_error_exit_2(self, capsys):
        code, _, err = run(capsys, "einstein", "--t-min", "5", "--t-max", "2",
                           "--n-points", "2")
        assert code == 2
        assert json.loads(err)["code"] == "domain_error"

    def test_missing_out_dir_exit_2(self, capsys):
        code, _, err = run(capsys, "einstein", "--n-points", "2",
                           "--t-min", "1", "--t-max", "2",
                           "--out", "/nonexistent/dir/x.csv")
        assert code == 2
        assert json.loads(err)["code"] == "usage_error"

    def test_warning_on_stderr(self, capsys):
        code, _, err = run(capsys, "einstein", "--kb-gamma2", "0.01",
                           "--n-points", "2", "--t-min", "100",
                           "--t-max", "200")
        assert code == 0
        assert json.loads(err.splitlines()[0])["code"] == "warning"


class TestDebyeCommand:
    def test_stdout_csv(self, capsys):
        code, out, _ = run(capsys, "debye", "--theta-d", "343",
                           "--kb-gamma2", "1e-4", "--amp-factor", "1e-45",
                           "--t-min", "10", "--t-max", "700",
                           "--n-points", "4")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 6
        for line in lines[2:]:
            vals = line.split(",")
            assert float(vals[2]) <= 0.0 and vals[-1] == "ok"

    def test_quadrature_failure_rows_flagged(self, capsys):
        code, out, _ = run(capsys, "debye", "--rel-tol", "1e-30",
                           "--abs-tol", "1e-300", "--max-subdivisions", "1",
                           "--t-min", "10", "--t-max", "20", "--n-points", "2")
        assert code == 0
        lines = out.strip().splitlines()[2:]
        assert all(line.split(",")[-1] == "error" for line in lines)
        assert all(line.split(",")[3] == "nan" for line in lines)


class TestOracleCheckCommand:
    def test_pass_exit_0(self, capsys):
        code, out, _ = run(capsys, "oracle-check", "--delta", "1.0")
        assert code == 0
        body = json.loads(out)
        assert body["passed"] and 1.8 <= body["fitted_order"] <= 2.2

    def test_custom_b_list(self, capsys):
        code, out, _ = run(capsys, "oracle-check", "--delta", "2.0",
                           "--b", "1e-3,5e-4")
        assert code == 0
        assert len(json.loads(out)["pairs"]) == 2

    def test_single_b_usage_error(self, capsys):
        code, _, err = run(capsys, "oracle-check", "--b", "1e-3")
        assert code == 2
        assert json.loads(err)["code"] == "usage_error"


class TestChainCommand:
    def test_scan_csv_and_sidecar(self, tmp_path, capsys):
        out = tmp_path / "scan.csv"
        code, _, _ = run(capsys, "chain", "--n-atoms", "32",
                         "--mode-index", "4", "--gamma2", "1.0",
                         "--steps-per-period", "100", "--n-periods", "8",
                         "--amplitudes", "0.01,0.02,0.04,0.08",
                         "--out", str(out))
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == ",".join(cli.CHAIN_COLUMNS)
        assert len(lines) == 5
        sidecar = json.loads((tmp_path / "scan.csv.scan.json").read_text())
        assert abs(sidecar["exponent"] - 2.0) < 0.1
        assert sidecar["drift_gate_passed"]

    def test_no_signal_stdout(self, capsys):
        code, out, _ = run(capsys, "chain", "--n-atoms", "32",
                           "--mode-index", "4", "--gamma2", "0",
                           "--steps-per-period", "100", "--n-periods", "8",
                           "--amplitudes", "1e-4,4e-4,1e-3")
        assert code == 0
        sidecar = json.loads(out.strip().splitlines()[-1])
        assert sidecar["no_signal"] and sidecar["exponent"] is None


class TestFiguresCommand:
    def test_single_figure(self, tmp_path, capsys):
        code, _, _ = run(capsys, "figures", "fig1",
                         "--out-dir", str(tmp_path))
        assert code == 0
        csv = (tmp_path / "fig1.csv").read_text().splitlines()
        assert csv[0].split(",")[0] == "temperature_K"
        assert len(csv) == 702  # header + limit row + 700 grid rows
        specs = json.loads((tmp_path / "figure_specs.json").read_text())
        assert set(specs) == {"fig1", "fig2", "fig3", "fig4"}

    def test_unknown_figure_usage_error(self, capsys):
        code, _, _ = run(capsys, "figures", "fig9", "--out-dir", ".")
        assert code == 2

    def test_missing_out_dir(self, capsys):
        code, _, err = run(capsys, "figures", "fig1",
                           "--out-dir", "/nonexistent/dir")
        assert code == 2
        assert json.loads(err)["code"] == "usage_error"

    def test_determinism(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        a.mkdir(), b.mkdir()
        assert run(capsys, "figures", "fig1", "--out-dir", str(a))[0] == 0
        assert run(capsys, "figures", "fig1", "--out-dir", str(b))[0] == 0
        assert (a / "fig1.csv").read_bytes() == (b / "fig1.csv").read_bytes()


class TestUsage:
    def test_no_command_exit_2(self, capsys):
        assert run(capsys, )[0] == 2

    def test_unknown_command_exit_2(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_transport_error(self, capsys):
        code, _, err = run(capsys, "oracle-check",
                           "--server-url", "http://127.0.0.1:1")
        assert code == 2
        assert json.loads(err)["code"] == "transport_error"
