"""Equilibrium enumeration, Jacobian analysis, and ESS classification.

The replicator system has eight pure fixed points (the cube vertices,
labelled gamma1..gamma8) and at most one interior candidate (gamma9).
A fixed point is an ESS exactly when all Jacobian eigenvalue real parts
are negative; eigenvalues inside the sign-tolerance dead band make the
classification Indeterminate rather than silently signed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Literal, Optional, Sequence

from .game import (
    _field_xyz,
    discharge_advantage,
    oppose_advantage,
    sanction_advantage,
)
from .model import ModelParams, StrategyState

Row = tuple[float, float, float]


@dataclass(frozen=True)
class JacobianMatrix:
    """3x3 Jacobian of the replicator field, row r = gradient of component r.

    The sanction and opposition rates never depend on each other's
    probability, so entries (2,3) and (3,2) are identically zero; at any
    cube vertex every off-diagonal entry vanishes.
    """

    rows: tuple[Row, Row, Row]

    def __getitem__(self, index: int) -> Row:
        return self.rows[index]

    def trace(self) -> float:
        r = self.rows
        return r[0][0] + r[1][1] + r[2][2]

    def determinant(self) -> float:
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def principal_minor_sum(self) -> float:
        """Sum of the three principal 2x2 minors (second invariant)."""
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return (e * i - f * h) + (a * i - c * g) + (a * e - b * d)

    def max_abs(self) -> float:
        return max(abs(v) for row in self.rows for v in row)

    def is_diagonal(self) -> bool:
        (_, b, c), (d, _, f), (g, h, _) = self.rows
        return b == 0.0 and c == 0.0 and d == 0.0 and f == 0.0 and g == 0.0 and h == 0.0


def analytic_jacobian(params: ModelParams, state: StrategyState) -> JacobianMatrix:
    """Closed-form Jacobian of the replicator field at a state."""
    p = params
    x, y, z = state.as_tuple()
    adv_discharge = discharge_advantage(p, y, z)
    adv_sanction = sanction_advantage(p, x)
    adv_oppose = oppose_advantage(p, x)
    d_discharge_dy = -p.I_J - p.C_LC - p.T_RJ - p.C_HJ
    d_sanction_dx = p.C_HJ - p.C_SC + p.B_SP + p.C_LC
    return JacobianMatrix(
        (
            (
                (1.0 - 2.0 * x) * adv_discharge,
                x * (1.0 - x) * d_discharge_dy,
                x * (1.0 - x) * (-p.C_LF),
            ),
            (
                y * (1.0 - y) * d_sanction_dx,
                (1.0 - 2.0 * y) * adv_sanction,
                0.0,
            ),
            (
                z * (1.0 - z) * p.C_LF,
                0.0,
                (1.0 - 2.0 * z) * adv_oppose,
            ),
        )
    )


def finite_difference_jacobian(
    params: ModelParams, state: StrategyState, h: float = 1e-5
) -> JacobianMatrix:
    """Jacobian via central differences of the replicator field; O(h^2).

    Within h of a cube face the derivative in that coordinate switches to
    a second-order one-sided stencil so every evaluation stays in [0,1]^3.
    """
    if not (h > 0.0):
        raise ValueError(f"step h must be positive, got {h!r}")
    base = list(state.as_tuple())
    columns = []
    for k in range(3):
        def shifted(delta: float) -> tuple[float, float, float]:
            point = list(base)
            point[k] += delta
            return _field_xyz(params, *point)

        coord = base[k]
        if coord - h >= 0.0 and coord + h <= 1.0:
            plus, minus = shifted(h), shifted(-h)
            column = [(plus[i] - minus[i]) / (2.0 * h) for i in range(3)]
        elif coord + 2.0 * h <= 1.0:
            f0, f1, f2 = _field_xyz(params, *base), shifted(h), shifted(2.0 * h)
            column = [(-3.0 * f0[i] + 4.0 * f1[i] - f2[i]) / (2.0 * h) for i in range(3)]
        else:
            f0, f1, f2 = _field_xyz(params, *base), shifted(-h), shifted(-2.0 * h)
            column = [(3.0 * f0[i] - 4.0 * f1[i] + f2[i]) / (2.0 * h) for i in range(3)]
        columns.append(column)
    rows = tuple(
        (columns[0][i], columns[1][i], columns[2][i]) for i in range(3)
    )
    return JacobianMatrix(rows)  # type: ignore[arg-type]


@dataclass(frozen=True)
class EquilibriumPoint:
    label: str  # gamma1..gamma9
    coords: StrategyState
    kind: Literal["pure", "interior"]


_VERTEX_COORDS: tuple[tuple[float, float, float], ...] = (
    (0.0, 0.0, 0.0),
    (1.0, 0.0, 0.0),
    (0.0, 1.0, 0.0),
    (0.0, 0.0, 1.0),
    (1.0, 1.0, 0.0),
    (1.0, 0.0, 1.0),
    (0.0, 1.0, 1.0),
    (1.0, 1.0, 1.0),
)


def pure_equilibria() -> list[EquilibriumPoint]:
    """The eight pure-strategy fixed points, gamma1..gamma8, in fixed order."""
    return [
        EquilibriumPoint(f"gamma{i + 1}", StrategyState(*coords), "pure")
        for i, coords in enumerate(_VERTEX_COORDS)
    ]


def vertex_by_coords(coords: tuple[float, float, float]) -> EquilibriumPoint:
    index = _VERTEX_COORDS.index(coords)
    return EquilibriumPoint(f"gamma{index + 1}", StrategyState(*coords), "pure")


def vertex_eigenvalues(params: ModelParams, point: EquilibriumPoint) -> tuple[float, float, float]:
    """Closed-form eigenvalues at a vertex, in axis order (x, y, z directions).

    At a vertex the Jacobian is diagonal, so these equal its diagonal.
    """
    if point.kind != "pure":
        raise ValueError(f"vertex eigenvalues are defined for pure points only, got {point.kind}")
    p = params
    coords = point.coords.as_tuple()
    if coords not in _VERTEX_COORDS:
        raise ValueError(f"not a cube vertex: {coords!r}")
    table = {
        (0.0, 0.0, 0.0): (p.C_SJ - p.C_MJ - p.C_DJ, -p.C_HJ, p.C_IF),
        (1.0, 0.0, 0.0): (p.C_DJ + p.C_MJ - p.C_SJ, p.B_SP + p.C_LC - p.C_SC, p.C_LF + p.C_IF),
        (0.0, 1.0, 0.0): (
            p.C_SJ - p.C_HJ - p.C_LC - p.C_MJ - p.C_DJ - p.I_J - p.T_RJ,
            p.C_HJ,
            p.C_IF,
        ),
        (0.0, 0.0, 1.0): (p.C_SJ - p.C_LF - p.C_MJ - p.C_DJ, -p.C_HJ, -p.C_IF),
        (1.0, 1.0, 0.0): (
            p.C_DJ + p.C_HJ + p.C_LC + p.C_MJ - p.C_SJ + p.I_J + p.T_RJ,
            p.C_SC - p.C_LC - p.B_SP,
            p.C_LF + p.C_IF,
        ),
        (1.0, 0.0, 1.0): (
            p.C_DJ + p.C_LF + p.C_MJ - p.C_SJ,
            p.B_SP + p.C_LC - p.C_SC,
            -p.C_IF - p.C_LF,
        ),
        (0.0, 1.0, 1.0): (
            p.C_SJ - p.C_HJ - p.C_LC - p.C_LF - p.C_MJ - p.C_DJ - p.I_J - p.T_RJ,
            p.C_HJ,
            -p.C_IF,
        ),
        (1.0, 1.0, 1.0): (
            p.C_DJ + p.C_HJ + p.C_LC + p.C_LF + p.C_MJ - p.C_SJ + p.I_J + p.T_RJ,
            p.C_SC - p.C_LC - p.B_SP,
            -p.C_IF - p.C_LF,
        ),
    }
    return table[coords]


def _cbrt(value: float) -> float:
    return math.copysign(abs(value) ** (1.0 / 3.0), value)


def _cubic_roots(a2: float, a1: float, a0: float) -> tuple[complex, complex, complex]:
    """Roots of t^3 + a2 t^2 + a1 t + a0 via the depressed-cubic closed form."""
    shift = a2 / 3.0
    p = a1 - a2 * a2 / 3.0
    q = 2.0 * a2 ** 3 / 27.0 - a2 * a1 / 3.0 + a0
    if p == 0.0 and q == 0.0:
        root = complex(-shift, 0.0)
        return (root, root, root)
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc > 0.0:
        sqrt_disc = math.sqrt(disc)
        u = _cbrt(-q / 2.0 + sqrt_disc)
        v = _cbrt(-q / 2.0 - sqrt_disc)
        real_root = u + v - shift
        re = -(u + v) / 2.0 - shift
        im = math.sqrt(3.0) / 2.0 * (u - v)
        return (complex(real_root, 0.0), complex(re, im), complex(re, -im))
    # disc <= 0 implies p < 0 unless q == 0 was already handled: three real roots.
    r = math.sqrt(-p / 3.0)
    cos_arg = min(1.0, max(-1.0, -q / (2.0 * r ** 3)))
    theta = math.acos(cos_arg)
    roots = tuple(
        complex(2.0 * r * math.cos((theta - 2.0 * math.pi * k) / 3.0) - shift, 0.0)
        for k in range(3)
    )
    return roots  # type: ignore[return-value]


def general_eigenvalues(j: JacobianMatrix) -> tuple[complex, complex, complex]:
    """Eigenvalues of the Jacobian from its characteristic cubic.

    For a diagonal matrix this returns the diagonal entries unchanged.
    Output is sorted by ascending real part, then ascending imaginary
    part, so results are deterministic.
    """
    for row in j.rows:
        for value in row:
            if not math.isfinite(value):
                raise ValueError(f"Jacobian entries must be finite, got {value!r}")
    if j.is_diagonal():
        eigs = tuple(complex(j.rows[k][k], 0.0) for k in range(3))
    else:
        # det(J - t I) = -(t^3 - tr t^2 + m t - det)
        eigs = _cubic_roots(-j.trace(), j.principal_minor_sum(), -j.determinant())
    ordered = tuple(sorted(eigs, key=lambda e: (e.real, e.imag)))
    return ordered  # type: ignore[return-value]


class Classification(str, Enum):
    ESS = "ESS"
    UNSTABLE = "Unstable"
    SADDLE = "NonESS-Saddle"
    INDETERMINATE = "Indeterminate"


def eigen_signs(eigs: Sequence[complex], sign_tolerance: float) -> tuple[str, str, str]:
    """Map eigenvalue real parts to '-', '+', or '0' within a dead band."""
    if not (sign_tolerance > 0.0):
        raise ValueError(f"sign tolerance must be positive, got {sign_tolerance!r}")
    symbols = []
    for value in eigs:
        re = complex(value).real
        if -sign_tolerance <= re <= sign_tolerance:
            symbols.append("0")
        elif re > 0.0:
            symbols.append("+")
        else:
            symbols.append("-")
    return tuple(symbols)  # type: ignore[return-value]


def classify(eigs: Sequence[complex], sign_tolerance: float) -> Classification:
    """Lyapunov classification from eigenvalue real-part signs.

    All negative: ESS (asymptotically stable). All positive: Unstable.
    Mixed strict signs: NonESS-Saddle. Any real part within the dead
    band: Indeterminate.
    """
    signs = eigen_signs(eigs, sign_tolerance)
    if "0" in signs:
        return Classification.INDETERMINATE
    if all(s == "-" for s in signs):
        return Classification.ESS
    if all(s == "+" for s in signs):
        return Classification.UNSTABLE
    return Classification.SADDLE


def default_sign_tolerance(params: ModelParams) -> float:
    """Dead-band width scaled to the parameter magnitude."""
    return 1e-9 * max(1.0, params.magnitude())


@dataclass(frozen=True)
class ConditionCheck:
    """The three parameter regimes under which gamma4/gamma6/gamma8 are the ESS."""

    condition1: bool  # storing is cheaper than discharge + monitoring + fisheries compensation
    condition2: bool  # storing costlier than that, and substitutes don't pay off for other countries
    condition3: bool  # storing costlier than every discharge-side cost, and substitutes do pay off


def condition_check(params: ModelParams) -> ConditionCheck:
    p = params
    discharge_side = p.C_LF + p.C_MJ + p.C_DJ
    full_discharge_side = p.C_DJ + p.C_HJ + p.C_LC + p.C_LF + p.C_MJ + p.I_J + p.T_RJ
    return ConditionCheck(
        condition1=p.C_SJ < discharge_side,
        condition2=(p.C_SJ > discharge_side) and (p.B_SP + p.C_LC < p.C_SC),
        condition3=(p.C_SJ > full_discharge_side) and (p.C_SC < p.C_LC + p.B_SP),
    )


@dataclass(frozen=True)
class InteriorSolution:
    """Outcome of solving for the interior fixed point gamma9.

    status is "feasible" (point set), "infeasible" (the linear conditions
    have no solution strictly inside the cube), or "degenerate" (a divisor
    is zero and the conditions do not determine a point).
    """

    status: Literal["feasible", "infeasible", "degenerate"]
    point: Optional[EquilibriumPoint]
    x_star: Optional[float]
    detail: str


_CONSISTENCY_RTOL = 1e-12


def interior_equilibrium(params: ModelParams) -> InteriorSolution:
    """Solve the three zero-advantage conditions for an interior fixed point.

    The opposition condition fixes x* = -C_IF / C_LF; the sanction
    condition must then hold at that same x*; the discharge condition ties
    y* to z*, leaving z* free along a line segment, of which the midpoint
    is reported. With nonnegative parameters x* <= 0, so a feasible
    interior point never exists; the solver reports why.
    """
    p = params
    if p.C_LF == 0.0:
        return InteriorSolution(
            "degenerate", None, None, "opposition condition has zero coefficient (C_LF = 0)"
        )
    sanction_coef = p.C_HJ - p.C_SC + p.B_SP + p.C_LC
    if sanction_coef == 0.0:
        return InteriorSolution(
            "degenerate",
            None,
            None,
            "sanction condition has zero coefficient (C_HJ - C_SC + B_SP + C_LC = 0)",
        )
    discharge_y_coef = -(p.I_J + p.C_LC + p.T_RJ + p.C_HJ)
    if discharge_y_coef == 0.0:
        return InteriorSolution(
            "degenerate",
            None,
            None,
            "discharge condition has zero coefficient on y (I_J + C_LC + T_RJ + C_HJ = 0)",
        )

    x_star = -p.C_IF / p.C_LF
    if not (0.0 < x_star < 1.0):
        return InteriorSolution(
            "infeasible",
            None,
            x_star,
            f"x* = -C_IF/C_LF = {x_star:.6g} lies outside the open interval (0, 1)",
        )
    sanction_residual = x_star * sanction_coef - p.C_HJ
    scale = max(1.0, abs(p.C_HJ), abs(x_star * sanction_coef))
    if abs(sanction_residual) > _CONSISTENCY_RTOL * scale:
        return InteriorSolution(
            "infeasible",
            None,
            x_star,
            f"sanction condition fails at x* (residual {sanction_residual:.6g})",
        )

    # y(z) = (z*C_LF + C_DJ + C_MJ - C_SJ) / discharge_y_coef; intersect
    # 0 < y < 1 and 0 < z < 1, then report the midpoint of the z-interval.
    def y_of(z: float) -> float:
        return (z * p.C_LF + p.C_DJ + p.C_MJ - p.C_SJ) / discharge_y_coef

    z_at_y0 = (p.C_SJ - p.C_DJ - p.C_MJ) / p.C_LF
    z_at_y1 = (p.C_SJ - p.C_DJ - p.C_MJ + discharge_y_coef) / p.C_LF
    z_lo = max(0.0, min(z_at_y0, z_at_y1))
    z_hi = min(1.0, max(z_at_y0, z_at_y1))
    if not (z_lo < z_hi):
        return InteriorSolution(
            "infeasible",
            None,
            x_star,
            "discharge condition admits no z in (0, 1) with y strictly interior",
        )
    z_star = (z_lo + z_hi) / 2.0
    y_star = y_of(z_star)
    if not (0.0 < y_star < 1.0 and 0.0 < z_star < 1.0):
        return InteriorSolution(
            "infeasible", None, x_star, "no strictly interior (y*, z*) on the discharge condition"
        )
    point = EquilibriumPoint("gamma9", StrategyState(x_star, y_star, z_star), "interior")
    return InteriorSolution(
        "feasible",
        point,
        x_star,
        "z* is free along the discharge condition; midpoint of the feasible interval reported",
    )


@dataclass(frozen=True)
class EquilibriumReport:
    point: EquilibriumPoint
    eigenvalues: tuple[complex, complex, complex]
    signs: tuple[str, str, str]
    classification: Classification


@dataclass(frozen=True)
class StabilityReport:
    params: ModelParams
    sign_tolerance: float
    vertices: tuple[EquilibriumReport, ...]  # gamma1..gamma8 in order
    interior: InteriorSolution
    interior_report: Optional[EquilibriumReport]
    conditions: ConditionCheck

    def ess_labels(self) -> tuple[str, ...]:
        labels = [r.point.label for r in self.vertices if r.classification is Classification.ESS]
        if (
            self.interior_report is not None
            and self.interior_report.classification is Classification.ESS
        ):
            labels.append(self.interior_report.point.label)
        return tuple(labels)


def stability_report(params: ModelParams, sign_tolerance: float | None = None) -> StabilityReport:
    """Classify gamma1..gamma8 and the interior candidate for one parameter set.

    Vertex eigenvalues use the exact closed forms (axis order); the
    characteristic cubic is reserved for a feasible interior point.
    """
    tol = default_sign_tolerance(params) if sign_tolerance is None else sign_tolerance
    if not (tol > 0.0):
        raise ValueError(f"sign tolerance must be positive, got {tol!r}")
    vertex_reports = []
    for point in pure_equilibria():
        eigs = tuple(complex(v, 0.0) for v in vertex_eigenvalues(params, point))
        vertex_reports.append(
            EquilibriumReport(point, eigs, eigen_signs(eigs, tol), classify(eigs, tol))
        )
    interior = interior_equilibrium(params)
    interior_report = None
    if interior.status == "feasible" and interior.point is not None:
        eigs = general_eigenvalues(analytic_jacobian(params, interior.point.coords))
        interior_report = EquilibriumReport(
            interior.point, eigs, eigen_signs(eigs, tol), classify(eigs, tol)
        )
    return StabilityReport(
        params=params,
        sign_tolerance=tol,
        vertices=tuple(vertex_reports),
        interior=interior,
        interior_report=interior_report,
        conditions=condition_check(params),
    )
