#!/usr/bin/env python3
"""Regenerate the golden files under tests/golden/.

The goldens pin byte-exact CSV/JSON/SVG output for a short Condition1
run. Regenerate only when an output format deliberately changes, and
review the diff.
"""

from pathlib import Path

from discharge_game.dynamics import IntegratorConfig, integrate
from discharge_game.experiments import preset
from discharge_game.output import (
    render_chart_svg,
    trajectory_chart,
    write_report_json,
    write_trajectory_csv,
)
from discharge_game.stability import stability_report

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "golden"

# Short horizon: 201 samples, well before convergence truncation kicks in.
GOLDEN_CONFIG = IntegratorConfig(dt=0.01, t_max=2.0)


def golden_payloads() -> dict[str, bytes]:
    scenario = preset("Condition1")
    traj = integrate(scenario.params, scenario.initial, GOLDEN_CONFIG)
    return {
        "condition1_short.csv": write_trajectory_csv(traj),
        "condition1_stability.json": write_report_json(stability_report(scenario.params)),
        "condition1_short.svg": render_chart_svg(
            trajectory_chart(traj, "Condition1 strategy evolution")
        ),
    }


def main() -> None:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for name, payload in golden_payloads().items():
        path = GOLDEN_DIR / name
        path.write_bytes(payload)
        print(f"wrote {path} ({len(payload)} bytes)")


if __name__ == "__main__":
    main()
