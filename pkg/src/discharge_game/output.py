"""Deterministic result serialization: trajectory CSV, stability JSON, SVG charts.

All writers return bytes and produce identical output for identical
inputs: numbers are formatted to 12 significant digits (shortest form)
and no timestamps or environment data are embedded.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

from .dynamics import Trajectory
from .model import PARAM_FIELDS
from .stability import EquilibriumReport, StabilityReport

SIGNIFICANT_DIGITS = 12


def format_number(value: float) -> str:
    """Shortest decimal form with 12 significant digits; -0 collapses to 0."""
    value = float(value)
    if value == 0.0:
        value = 0.0
    return format(value, f".{SIGNIFICANT_DIGITS}g")


def write_trajectory_csv(traj: Trajectory) -> bytes:
    """CSV with header t,x,y,z and one row per sample."""
    if not traj.samples:
        raise ValueError("cannot serialize an empty trajectory")
    lines = ["t,x,y,z"]
    for t, state in traj.samples:
        lines.append(
            f"{format_number(t)},{format_number(state.x)},"
            f"{format_number(state.y)},{format_number(state.z)}"
        )
    return ("\n".join(lines) + "\n").encode("ascii")


def _eigenvalue_record(value: complex) -> dict[str, float]:
    return {"re": value.real, "im": value.imag}


def _equilibrium_record(report: EquilibriumReport) -> dict[str, Any]:
    return {
        "label": report.point.label,
        "kind": report.point.kind,
        "coords": list(report.point.coords.as_tuple()),
        "eigenvalues": [_eigenvalue_record(e) for e in report.eigenvalues],
        "signs": list(report.signs),
        "classification": report.classification.value,
    }


def write_report_json(report: StabilityReport) -> bytes:
    """Stability report as JSON with a stable key order."""
    interior_record: dict[str, Any] = {
        "label": "gamma9",
        "kind": "interior",
        "status": report.interior.status,
        "detail": report.interior.detail,
    }
    if report.interior.x_star is not None:
        interior_record["x_star"] = report.interior.x_star
    if report.interior_report is not None:
        feasible = _equilibrium_record(report.interior_report)
        feasible.pop("label")
        feasible.pop("kind")
        interior_record.update(feasible)
    document = {
        "parameters": {name: getattr(report.params, name) for name in PARAM_FIELDS},
        "sign_tolerance": report.sign_tolerance,
        "conditions": {
            "condition1": report.conditions.condition1,
            "condition2": report.conditions.condition2,
            "condition3": report.conditions.condition3,
        },
        "ess": list(report.ess_labels()),
        "equilibria": [_equilibrium_record(r) for r in report.vertices] + [interior_record],
    }
    return (json.dumps(document, indent=2) + "\n").encode("ascii")


@dataclass(frozen=True)
class Series:
    name: str
    points: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if len(self.points) == 0:
            raise ValueError(f"series {self.name!r} has no points")
        for px, py in self.points:
            if not (math.isfinite(px) and math.isfinite(py)):
                raise ValueError(f"series {self.name!r} contains a non-finite point ({px!r}, {py!r})")


@dataclass(frozen=True)
class ChartSpec:
    title: str
    x_label: str
    y_label: str
    series: tuple[Series, ...]


def trajectory_chart(traj: Trajectory, title: str) -> ChartSpec:
    """The standard probability-vs-time chart for one trajectory."""
    return ChartSpec(
        title=title,
        x_label="t",
        y_label="probability",
        series=tuple(
            Series(name, tuple(traj.coordinate_series(name))) for name in ("x", "y", "z")
        ),
    )


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")

_WIDTH, _HEIGHT = 720, 420
_MARGIN_LEFT, _MARGIN_RIGHT, _MARGIN_TOP, _MARGIN_BOTTOM = 64, 150, 44, 48
_TICKS = 5


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _svg_coord(value: float) -> str:
    return f"{value:.2f}"


def render_chart_svg(spec: ChartSpec) -> bytes:
    """Standalone SVG 1.1 line chart: one polyline per series, legend, axes."""
    if len(spec.series) == 0:
        raise ValueError("chart needs at least one series")
    xs = [px for series in spec.series for px, _ in series.points]
    ys = [py for series in spec.series for _, py in series.points]
    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(ys), max(ys)
    if x_min == x_max:
        x_min, x_max = x_min - 0.5, x_max + 0.5
    if y_min == y_max:
        y_min, y_max = y_min - 0.5, y_max + 0.5

    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def sx(value: float) -> float:
        return _MARGIN_LEFT + (value - x_min) / (x_max - x_min) * plot_w

    def sy(value: float) -> float:
        return _MARGIN_TOP + plot_h - (value - y_min) / (y_max - y_min) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH}" height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{_escape(spec.title)}</text>',
    ]

    axis_style = 'stroke="black" stroke-width="1"'
    x0, y0 = _MARGIN_LEFT, _MARGIN_TOP + plot_h
    parts.append(f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" {axis_style}/>')
    parts.append(f'<line x1="{x0}" y1="{_MARGIN_TOP}" x2="{x0}" y2="{y0}" {axis_style}/>')

    for i in range(_TICKS):
        frac = i / (_TICKS - 1)
        tx = x_min + frac * (x_max - x_min)
        px = sx(tx)
        parts.append(f'<line x1="{_svg_coord(px)}" y1="{y0}" x2="{_svg_coord(px)}" y2="{y0 + 5}" {axis_style}/>')
        parts.append(
            f'<text x="{_svg_coord(px)}" y="{y0 + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{format(tx, ".6g")}</text>'
        )
        ty = y_min + frac * (y_max - y_min)
        py = sy(ty)
        parts.append(f'<line x1="{x0 - 5}" y1="{_svg_coord(py)}" x2="{x0}" y2="{_svg_coord(py)}" {axis_style}/>')
        parts.append(
            f'<text x="{x0 - 8}" y="{_svg_coord(py + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{format(ty, ".6g")}</text>'
        )

    parts.append(
        f'<text x="{x0 + plot_w / 2:.0f}" y="{_HEIGHT - 10}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{_escape(spec.x_label)}</text>'
    )
    parts.append(
        f'<text x="18" y="{_MARGIN_TOP + plot_h / 2:.0f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {_MARGIN_TOP + plot_h / 2:.0f})">{_escape(spec.y_label)}</text>'
    )

    for i, series in enumerate(spec.series):
        color = _PALETTE[i % len(_PALETTE)]
        coords = " ".join(f"{_svg_coord(sx(px))},{_svg_coord(sy(py))}" for px, py in series.points)
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>'
        )
        ly = _MARGIN_TOP + 14 + i * 18
        lx = _MARGIN_LEFT + plot_w + 16
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" '
            f'font-size="12">{_escape(series.name)}</text>'
        )

    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
