import json

import pytest

from sustain5g.main import (
    EXIT_INVALID_CONFIG,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_VALIDATION_FAILED,
    main,
)
from sustain5g.models import NetworkConfig


def _config(tmp_path, **sections) -> str:
    path = tmp_path / "run.json"
    path.write_text(json.dumps(sections), encoding="utf-8")
    return str(path)


def _network(**overrides) -> dict:
    return NetworkConfig.reference(**overrides).model_dump(mode="json")


SMALL_SIM = {"seed": 42, "trials": 2_000, "horizon": 20.0}


class TestAnalyzeCli:
    def test_defaults(self, capsys):
        assert main(["analyze"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "Sustainability analysis" in out
        assert "Feasible" in out

    def test_equal_rates_exit_invalid(self, tmp_path, capsys):
        config = _config(tmp_path, network=_network(update_rate=2.0))
        assert main(["analyze", "--config", config]) == EXIT_INVALID_CONFIG
        assert "β − α > 0" in capsys.readouterr().err

    def test_unknown_field_exit_invalid(self, tmp_path):
        config = _config(tmp_path, network={**_network(), "bogus": 1})
        assert main(["analyze", "--config", config]) == EXIT_INVALID_CONFIG

    def test_missing_file_exit_invalid(self, tmp_path):
        assert main(["analyze", "--config", str(tmp_path / "nope.json")]) == EXIT_INVALID_CONFIG

    def test_overflowing_exponent_exit_numerical(self, tmp_path, capsys):
        config = _config(tmp_path, network=_network(t1=1e-3))
        assert main(["analyze", "--config", config]) == EXIT_NUMERICAL
        assert "Numerical failure" in capsys.readouterr().err

    def test_writes_analysis_and_manifest(self, tmp_path):
        out = tmp_path / "out"
        assert main(["analyze", "--out", str(out), "--interpretation", "printed"]) == EXIT_OK
        analysis = json.loads((out / "analysis.json").read_text())
        assert analysis["network"]["overhead_interpretation"] == "printed"
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["outputs"] == ["analysis.json"]
        assert manifest["argv"][0] == "analyze"


class TestSweepCli:
    def test_csv_to_stdout(self, capsys):
        assert main(["sweep"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 251
        assert lines[0].startswith("scenario,beta,alpha")

    def test_json_to_directory(self, tmp_path):
        config = _config(tmp_path, sweep={"betas": [2.0], "passes": [1], "entities": [3, 10]})
        out = tmp_path / "out"
        assert main(["sweep", "--config", config, "--out", str(out), "--format", "json"]) == EXIT_OK
        rows = json.loads((out / "sweep.json").read_text())
        assert [r["feasible"] for r in rows] == [False, True]


class TestSimulateCli:
    def test_needs_a_seed(self):
        assert main(["simulate"]) == EXIT_INVALID_CONFIG

    def test_same_seed_same_bytes(self, tmp_path):
        config = _config(tmp_path, sim=SMALL_SIM)
        first, second = tmp_path / "a", tmp_path / "b"
        assert main(["simulate", "--config", config, "--out", str(first)]) == EXIT_OK
        assert main(["simulate", "--config", config, "--out", str(second)]) == EXIT_OK
        for name in ("sim_stats.json", "traces.csv", "keys.txt"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_seed_flag_overrides_config(self, tmp_path, capsys):
        config = _config(tmp_path, sim=SMALL_SIM)
        assert main(["simulate", "--config", config, "--seed", "7", "--format", "json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["seed"] == 7

    def test_manifest_records_config_and_lane_size(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SUSTAIN5G_MC_BLOCK_SIZE", "1000")
        config = _config(tmp_path, sim=SMALL_SIM)
        out = tmp_path / "out"
        assert main(["simulate", "--config", config, "--out", str(out)]) == EXIT_OK
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["settings"]["mc_block_size"] == 1000
        assert manifest["run_config"]["sim"]["seed"] == 42
        assert manifest["run_config"]["sim"]["trials"] == 2_000
        assert manifest["seed"] == 42


class TestFailsafeCli:
    def test_no_point_is_not_an_error(self, tmp_path, capsys):
        config = _config(tmp_path, network=_network(s_n_threshold=1e9))
        assert main(["failsafe", "--config", config]) == EXIT_OK
        assert "F_S = none" in capsys.readouterr().out

    def test_csv_trace(self, tmp_path, capsys):
        config = _config(tmp_path, network=_network(s_n_threshold=1.0))
        assert main(["failsafe", "--config", config, "--format", "csv"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("t,sustainability\n")

    def test_missing_threshold_is_invalid(self):
        assert main(["failsafe", "--criterion", "overhead"]) == EXIT_INVALID_CONFIG


class TestValidateCli:
    def test_single_suite(self, capsys):
        assert main(["validate", "--only", "ei"]) == EXIT_OK
        assert "checks passed" in capsys.readouterr().out

    def test_impossible_tolerance_fails(self):
        assert main(["validate", "--only", "ei", "--ei-tolerance", "1e-17"]) == EXIT_VALIDATION_FAILED

    def test_unknown_suite_is_rejected(self):
        with pytest.raises(SystemExit):
            main(["validate", "--only", "nope"])
