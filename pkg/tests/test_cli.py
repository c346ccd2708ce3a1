"""Command-line interface tests: subcommands, flags, and exit codes."""

import json

import pytest

from discharge_game.cli import cli_main
from discharge_game.config import serialize_config, parse_config


def run(capsys, *argv):
    code = cli_main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestStability:
    def test_condition1_reports_gamma4_ess(self, capsys):
        code, out, _ = run(capsys, "stability", "--preset", "Condition1")
        assert code == 0
        document = json.loads(out)
        assert document["ess"] == ["gamma4"]

    def test_out_json(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, _, _ = run(capsys, "stability", "--preset", "Condition2", "--out-json", str(path))
        assert code == 0
        assert json.loads(path.read_text())["ess"] == ["gamma6"]

    def test_explicit_params_without_preset(self, capsys):
        args = [f"--param={name}={value}" for name, value in [
            ("I_J", 20), ("C_LC", 8), ("T_RJ", 5), ("C_HJ", 10), ("C_LF", 35),
            ("C_DJ", 3), ("C_MJ", 6), ("C_SJ", 30), ("C_IF", 1), ("B_SP", 1), ("C_SC", 30),
        ]]
        code, out, _ = run(capsys, "stability", *args)
        assert code == 0
        assert json.loads(out)["ess"] == ["gamma4"]

    def test_param_overrides_preset(self, capsys):
        code, out, _ = run(capsys, "stability", "--preset", "Condition1", "--param", "C_LF=20")
        assert code == 0
        assert json.loads(out)["ess"] == ["gamma6"]


class TestSimulate:
    def test_condition3_csv_approaches_gamma8(self, capsys, tmp_path):
        path = tmp_path / "run.csv"
        code, out, _ = run(capsys, "simulate", "--preset", "Condition3", "--out-csv", str(path))
        assert code == 0
        assert "gamma8" in out
        last = path.read_text().strip().splitlines()[-1]
        _, x, y, z = (float(v) for v in last.split(","))
        assert abs(x - 1) < 1e-3 and abs(y - 1) < 1e-3 and abs(z - 1) < 1e-3

    def test_svg_output(self, capsys, tmp_path):
        path = tmp_path / "run.svg"
        code, _, _ = run(
            capsys, "simulate", "--preset", "Condition1", "--t-max", "5", "--out-svg", str(path)
        )
        assert code == 0
        assert path.read_bytes().count(b"<polyline") == 3

    def test_initial_and_step_flags(self, capsys):
        code, out, _ = run(
            capsys,
            "simulate", "--preset", "Table5",
            "--initial", "0.8,0.1,0.1", "--dt", "0.02", "--t-max", "60", "--eps", "1e-3",
        )
        assert code == 0
        assert "gamma4" in out

    def test_unknown_preset_is_usage_error(self, capsys):
        code, _, err = run(capsys, "simulate", "--preset", "Nope")
        assert code == 1
        assert "unknown preset" in err

    def test_negative_param_is_validation_error(self, capsys):
        code, _, err = run(capsys, "simulate", "--preset", "Condition1", "--param", "C_SJ=-5")
        assert code == 2
        assert "nonnegative" in err

    def test_unknown_param_name_is_usage_error(self, capsys):
        code, _, err = run(capsys, "simulate", "--preset", "Condition1", "--param", "C_XX=1")
        assert code == 1

    def test_unstable_step_is_numeric_error(self, capsys):
        code, _, err = run(capsys, "simulate", "--preset", "Condition1", "--dt", "10", "--t-max", "50")
        assert code == 3
        assert "integration error" in err

    def test_bad_initial_is_usage_error(self, capsys):
        code, _, err = run(capsys, "simulate", "--preset", "Condition1", "--initial", "0.5,0.5")
        assert code == 1

    def test_out_of_range_initial_is_validation_error(self, capsys):
        code, _, err = run(capsys, "simulate", "--preset", "Condition1", "--initial", "1.5,0.5,0.5")
        assert code == 2


class TestConfigDriven:
    def config_text(self, tmp_path) -> str:
        return json.dumps(
            {
                "preset": "Condition1",
                "integrator": {"t_max": 30.0},
                "outputs": [
                    {"kind": "csv", "path": str(tmp_path / "run.csv")},
                    {"kind": "json", "path": str(tmp_path / "report.json")},
                    {"kind": "svg", "path": str(tmp_path / "chart.svg")},
                ],
            }
        )

    def test_config_file_drives_all_sinks(self, capsys, tmp_path):
        config_path = tmp_path / "run.json"
        config_path.write_text(self.config_text(tmp_path))
        code, out, _ = run(capsys, "simulate", "--config", str(config_path))
        assert code == 0
        assert (tmp_path / "run.csv").exists()
        assert json.loads((tmp_path / "report.json").read_text())["ess"] == ["gamma4"]
        assert (tmp_path / "chart.svg").read_bytes().startswith(b"<?xml")

    def test_config_round_trip_equivalence(self, tmp_path):
        config = parse_config(self.config_text(tmp_path))
        assert parse_config(serialize_config(config)) == config

    def test_bad_config_is_validation_error(self, capsys, tmp_path):
        config_path = tmp_path / "run.json"
        config_path.write_text('{"preset": "Condition1", "outputs": [], "extra": 1}')
        code, _, err = run(capsys, "simulate", "--config", str(config_path))
        assert code == 2
        assert "config error" in err

    def test_missing_config_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "simulate", "--config", str(tmp_path / "absent.json"))
        assert code == 2

    def test_config_excludes_other_flags(self, capsys, tmp_path):
        config_path = tmp_path / "run.json"
        config_path.write_text(self.config_text(tmp_path))
        code, _, err = run(
            capsys, "simulate", "--config", str(config_path), "--preset", "Condition1"
        )
        assert code == 1


class TestEquilibria:
    def test_lists_all_nine(self, capsys):
        code, out, _ = run(capsys, "equilibria", "--preset", "Condition2")
        assert code == 0
        for label in [f"gamma{i}" for i in range(1, 10)]:
            assert label in out
        assert "infeasible" in out
        assert out.count("ESS") >= 1


class TestPayoff:
    def test_condition1_cells(self, capsys):
        code, out, _ = run(capsys, "payoff", "--preset", "Condition1")
        assert code == 0
        assert "(-77, -21, 35)" in out
        assert "(-30, 0, 0)" in out


class TestSweep:
    def test_named_sweep_prints_orderings_and_notes(self, capsys, tmp_path):
        out_dir = tmp_path / "sweeps"
        code, out, _ = run(
            capsys,
            "sweep", "--named", "C_DJ", "--t-max", "50", "--out-dir", str(out_dir),
        )
        assert code == 0
        assert "strictly_decreasing" in out
        assert "note [C_DJ/government]" in out
        assert len(list(out_dir.glob("C_DJ_*.csv"))) == 6

    def test_custom_sweep(self, capsys):
        code, out, _ = run(
            capsys,
            "sweep", "--parameter", "C_DJ", "--values", "1,3", "--t-max", "50",
        )
        assert code == 0
        assert "gamma4" in out

    def test_named_and_custom_are_exclusive(self, capsys):
        code, _, err = run(capsys, "sweep", "--named", "C_DJ", "--parameter", "C_SJ")
        assert code == 1

    def test_sweep_requires_a_selection(self, capsys):
        code, _, err = run(capsys, "sweep")
        assert code == 1

    def test_unknown_named_sweep(self, capsys):
        code, _, err = run(capsys, "sweep", "--named", "C_XX")
        assert code == 1

    def test_bad_values_list(self, capsys):
        code, _, err = run(capsys, "sweep", "--parameter", "C_DJ", "--values", "1,x")
        assert code == 1


class TestUsage:
    def test_no_subcommand(self, capsys):
        code, _, err = run(capsys)
        assert code == 1
        assert "subcommand" in err

    def test_unknown_subcommand(self, capsys):
        code, _, err = run(capsys, "explode")
        assert code == 1

    def test_unknown_flag(self, capsys):
        code, _, err = run(capsys, "simulate", "--frobnicate")
        assert code == 1

    def test_help_exits_zero(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == 0
        assert "simulate" in out
