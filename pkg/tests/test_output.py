"""Serialization tests: CSV, JSON report, SVG charts, and golden files."""

import json
from pathlib import Path

import pytest

from discharge_game.dynamics import IntegratorConfig, Sample, Trajectory, integrate
from discharge_game.experiments import preset
from discharge_game.model import PARAM_FIELDS, ModelParams, StrategyState
from discharge_game.output import (
    ChartSpec,
    Series,
    format_number,
    render_chart_svg,
    trajectory_chart,
    write_report_json,
    write_trajectory_csv,
)
from discharge_game.stability import stability_report

GOLDEN_DIR = Path(__file__).parent / "golden"
CONDITION1 = preset("Condition1")
ZERO = ModelParams(**{name: 0.0 for name in PARAM_FIELDS})


def single_sample_trajectory() -> Trajectory:
    return Trajectory(
        (Sample(0.0, StrategyState(0.0, 0.0, 1.0)),),
        CONDITION1.params,
        IntegratorConfig(),
    )


class TestFormatNumber:
    def test_shortest_form(self):
        assert format_number(0.0) == "0"
        assert format_number(1.0) == "1"
        assert format_number(0.5) == "0.5"
        assert format_number(-0.0) == "0"

    def test_twelve_significant_digits(self):
        assert format_number(1.0 / 3.0) == "0.333333333333"
        assert float(format_number(0.1234567890123456)) == pytest.approx(
            0.1234567890123456, rel=1e-11
        )


class TestTrajectoryCsv:
    def test_single_sample(self):
        payload = write_trajectory_csv(single_sample_trajectory())
        assert payload == b"t,x,y,z\n0,0,0,1\n"

    def test_condition1_run_final_row(self):
        traj = integrate(CONDITION1.params, CONDITION1.initial)
        lines = write_trajectory_csv(traj).decode("ascii").strip().splitlines()
        assert lines[0] == "t,x,y,z"
        _, x, y, z = (float(v) for v in lines[-1].split(","))
        assert abs(x) < 1e-3 and abs(y) < 1e-3 and abs(z - 1.0) < 1e-3

    def test_byte_determinism(self):
        traj1 = integrate(CONDITION1.params, CONDITION1.initial, IntegratorConfig(t_max=1.0))
        traj2 = integrate(CONDITION1.params, CONDITION1.initial, IntegratorConfig(t_max=1.0))
        assert write_trajectory_csv(traj1) == write_trajectory_csv(traj2)

    def test_round_trip_precision(self):
        traj = integrate(CONDITION1.params, CONDITION1.initial, IntegratorConfig(t_max=2.0))
        lines = write_trajectory_csv(traj).decode("ascii").strip().splitlines()[1:]
        assert len(lines) == len(traj.samples)
        for line, sample in zip(lines, traj.samples):
            t, x, y, z = (float(v) for v in line.split(","))
            assert t == pytest.approx(sample.t, rel=5e-12, abs=1e-300)
            assert x == pytest.approx(sample.state.x, rel=5e-12, abs=1e-300)
            assert y == pytest.approx(sample.state.y, rel=5e-12, abs=1e-300)
            assert z == pytest.approx(sample.state.z, rel=5e-12, abs=1e-300)

    def test_empty_trajectory_rejected(self):
        empty = Trajectory((), CONDITION1.params, IntegratorConfig())
        with pytest.raises(ValueError, match="empty"):
            write_trajectory_csv(empty)


class TestReportJson:
    def test_condition1_content(self):
        document = json.loads(write_report_json(stability_report(CONDITION1.params)))
        assert document["ess"] == ["gamma4"]
        assert document["conditions"] == {
            "condition1": True,
            "condition2": False,
            "condition3": False,
        }
        by_label = {e["label"]: e for e in document["equilibria"]}
        assert by_label["gamma4"]["classification"] == "ESS"
        assert by_label["gamma4"]["signs"] == ["-", "-", "-"]
        assert [e["re"] for e in by_label["gamma4"]["eigenvalues"]] == [-14.0, -10.0, -1.0]
        assert by_label["gamma9"]["status"] == "infeasible"
        assert by_label["gamma9"]["x_star"] == pytest.approx(-1.0 / 35.0)
        assert document["parameters"]["C_LF"] == 35.0

    def test_zero_params_all_indeterminate(self):
        document = json.loads(write_report_json(stability_report(ZERO)))
        for entry in document["equilibria"]:
            if entry["label"] == "gamma9":
                assert entry["status"] == "degenerate"
            else:
                assert entry["classification"] == "Indeterminate"

    def test_byte_determinism_and_key_order(self):
        a = write_report_json(stability_report(CONDITION1.params))
        b = write_report_json(stability_report(CONDITION1.params))
        assert a == b
        document = json.loads(a)
        assert list(document) == ["parameters", "sign_tolerance", "conditions", "ess", "equilibria"]
        assert list(document["parameters"]) == list(PARAM_FIELDS)


class TestChartSvg:
    def test_single_series_single_polyline(self):
        spec = ChartSpec("demo", "t", "v", (Series("a", ((0.0, 0.0), (1.0, 1.0))),))
        svg = render_chart_svg(spec).decode("utf-8")
        assert svg.count("<polyline") == 1
        assert svg.startswith("<?xml")
        assert 'version="1.1"' in svg

    def test_trajectory_chart_three_polylines_with_legend(self):
        traj = integrate(CONDITION1.params, CONDITION1.initial, IntegratorConfig(t_max=1.0))
        svg = render_chart_svg(trajectory_chart(traj, "demo")).decode("utf-8")
        assert svg.count("<polyline") == 3
        for name in ("x", "y", "z"):
            assert f'font-size="12">{name}</text>' in svg

    def test_empty_series_list_rejected(self):
        with pytest.raises(ValueError, match="at least one series"):
            render_chart_svg(ChartSpec("demo", "t", "v", ()))

    def test_series_without_points_rejected(self):
        with pytest.raises(ValueError, match="no points"):
            Series("a", ())

    def test_non_finite_point_rejected(self):
        with pytest.raises(ValueError, match="non-finite"):
            Series("a", ((0.0, float("nan")),))

    def test_title_is_escaped(self):
        spec = ChartSpec("a < b & c", "t", "v", (Series("s", ((0.0, 0.0), (1.0, 2.0))),))
        svg = render_chart_svg(spec).decode("utf-8")
        assert "a &lt; b &amp; c" in svg

    def test_degenerate_ranges_still_render(self):
        spec = ChartSpec("flat", "t", "v", (Series("s", ((1.0, 2.0), (1.0, 2.0))),))
        svg = render_chart_svg(spec).decode("utf-8")
        assert svg.count("<polyline") == 1

    def test_byte_determinism(self):
        traj = integrate(CONDITION1.params, CONDITION1.initial, IntegratorConfig(t_max=1.0))
        spec = trajectory_chart(traj, "demo")
        assert render_chart_svg(spec) == render_chart_svg(spec)


class TestGoldenFiles:
    """Byte-stability against committed goldens (see scripts/regen_goldens.py)."""

    def _payloads(self):
        import sys

        sys.path.insert(0, str(Path(__file__).parent.parent / "scripts"))
        try:
            from regen_goldens import golden_payloads
        finally:
            sys.path.pop(0)
        return golden_payloads()

    def test_goldens_match(self):
        payloads = self._payloads()
        for name, payload in payloads.items():
            golden = (GOLDEN_DIR / name).read_bytes()
            assert payload == golden, f"{name} drifted from its golden file"

    def test_repeated_generation_is_byte_identical(self):
        first = self._payloads()
        second = self._payloads()
        assert first == second
