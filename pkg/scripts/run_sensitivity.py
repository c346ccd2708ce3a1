#!/usr/bin/env python3
"""Run every named sensitivity sweep over the Table5 baseline.

Prints per-variant convergence, the speed orderings per player, and the
reproduction notes (claimed vs observed trends). Writes per-sweep charts
of the government coordinate and a summary of times into out/sensitivity/.
"""

import time
from pathlib import Path

from discharge_game.experiments import (
    NAMED_SWEEPS,
    PLAYER_COORDINATE,
    PLAYERS,
    named_sweep,
    reproduction_notes,
    run_sweep,
    speed_ordering,
)
from discharge_game.model import StrategyState
from discharge_game.output import ChartSpec, Series, format_number, render_chart_svg

OUT_DIR = Path(__file__).resolve().parent.parent / "out" / "sensitivity"


def value_label(parameter: str, value) -> str:
    if isinstance(value, StrategyState):
        return f"({value.x:g},{value.y:g},{value.z:g})"
    return f"{parameter}={value:g}"


def sweep_chart(name: str, result, coordinate: str) -> bytes:
    series = tuple(
        Series(
            value_label(name, variant.value),
            tuple(variant.trajectory.coordinate_series(coordinate)),
        )
        for variant in result.variants
    )
    spec = ChartSpec(
        title=f"{name} sweep: evolution of {coordinate}",
        x_label="t",
        y_label=coordinate,
        series=series,
    )
    return render_chart_svg(spec)


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()
    summary_lines = []
    for name in NAMED_SWEEPS:
        result = run_sweep(named_sweep(name))
        limit = result.variants[0].convergence.limit
        print(f"\n=== sweep {name}: all {len(result.variants)} variants -> {limit.label}")
        for player in PLAYERS:
            coordinate = PLAYER_COORDINATE[player]
            target = limit.coords.as_tuple()[{"x": 0, "y": 1, "z": 2}[coordinate]]
            ordering = speed_ordering(result, coordinate, target)
            times = ", ".join(format_number(t) for _, t in ordering.pairs)
            line = f"{name:<8}{player:<12}{coordinate}->{target:g}  [{times}]  {ordering.direction}"
            print("  " + line)
            summary_lines.append(line)
        for note in reproduction_notes(result):
            verdict = "agrees" if note.agrees else "DISAGREES"
            print(
                f"  note: {note.player}: claimed {note.claimed!r}, observed {note.observed!r} "
                f"-> {verdict}"
            )
            summary_lines.append(
                f"note {name}/{note.player}: claimed={note.claimed} observed={note.observed} {verdict}"
            )
        for coordinate in ("x", "y", "z"):
            payload = sweep_chart(name, result, coordinate)
            (OUT_DIR / f"{name}_{coordinate}.svg").write_bytes(payload)
    (OUT_DIR / "summary.txt").write_text("\n".join(summary_lines) + "\n", encoding="ascii")
    print(f"\nfinished in {time.perf_counter() - started:.2f}s; outputs in {OUT_DIR}")


if __name__ == "__main__":
    main()
