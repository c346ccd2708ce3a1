#!/usr/bin/env python3
"""Reproduce the three stable-point scenarios.

Integrates Condition1/2/3 from (0.5, 0.5, 0.5), prints the convergence
summary against the stability analysis, and writes a trajectory CSV and
chart per scenario into out/scenarios/.
"""

import time
from pathlib import Path

from discharge_game.dynamics import detect_convergence, integrate
from discharge_game.experiments import preset
from discharge_game.output import (
    render_chart_svg,
    trajectory_chart,
    write_report_json,
    write_trajectory_csv,
)
from discharge_game.stability import stability_report

OUT_DIR = Path(__file__).resolve().parent.parent / "out" / "scenarios"


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    print(f"{'scenario':<12}{'ESS':<9}{'limit':<22}{'t_conv':>8}{'runtime':>10}")
    for name in ("Condition1", "Condition2", "Condition3"):
        scenario = preset(name)
        started = time.perf_counter()
        traj = integrate(scenario.params, scenario.initial)
        elapsed = time.perf_counter() - started
        result = detect_convergence(traj)
        report = stability_report(scenario.params)
        assert result.converged and result.limit.label == report.ess_labels()[0]
        print(
            f"{name:<12}{report.ess_labels()[0]:<9}"
            f"{str(result.limit.coords.as_tuple()):<22}"
            f"{result.t_converge:>8.2f}{elapsed * 1000:>8.1f}ms"
        )
        (OUT_DIR / f"{name}.csv").write_bytes(write_trajectory_csv(traj))
        (OUT_DIR / f"{name}.svg").write_bytes(
            render_chart_svg(trajectory_chart(traj, f"{name}: strategy evolution"))
        )
        (OUT_DIR / f"{name}_stability.json").write_bytes(write_report_json(report))
    print(f"wrote CSV/SVG/JSON files to {OUT_DIR}")


if __name__ == "__main__":
    main()
