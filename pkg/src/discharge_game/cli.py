"""Command-line interface.

Subcommands:
  simulate    integrate one scenario and emit CSV/SVG
  stability   classify all equilibria, emit the JSON report
  equilibria  list gamma1..gamma9 with classifications / feasibility
  sweep       run a named or custom one-parameter sweep
  payoff      print the payoff matrix with numbers substituted

Exit codes: 0 success, 1 usage error, 2 validation error,
3 numeric/integration failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .config import ConfigError, RunConfig, parse_config
from .dynamics import (
    IntegrationError,
    IntegratorConfig,
    Trajectory,
    detect_convergence,
    integrate,
)
from .experiments import (
    NAMED_SWEEPS,
    PLAYER_COORDINATE,
    PLAYERS,
    PRESET_NAMES,
    ScenarioPreset,
    SweepResult,
    SweepSpec,
    named_sweep,
    preset,
    reproduction_notes,
    run_sweep,
    speed_ordering,
)
from .game import (
    CountriesMove,
    FisheriesMove,
    GovernmentMove,
    build_payoff_matrix,
)
from .model import PARAM_FIELDS, REQUIRED_PARAM_FIELDS, ModelParams, StrategyState
from .output import (
    format_number,
    render_chart_svg,
    trajectory_chart,
    write_report_json,
    write_trajectory_csv,
)
from .stability import stability_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _add_param_options(parser: argparse.ArgumentParser, with_config: bool = False) -> None:
    parser.add_argument("--preset", help=f"named scenario: {', '.join(PRESET_NAMES)}")
    parser.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="set one model parameter; repeatable; overrides the preset",
    )
    if with_config:
        parser.add_argument("--config", help="JSON run-configuration file (exclusive with other options)")


def _add_integrator_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--initial", metavar="X,Y,Z", help="starting probabilities (default 0.5,0.5,0.5)")
    parser.add_argument("--dt", type=float, help="integration step (default 0.01)")
    parser.add_argument("--t-max", type=float, help="time horizon (default 200)")
    parser.add_argument("--eps", type=float, help="convergence tolerance (default 1e-4)")


def build_parser() -> _Parser:
    parser = _Parser(prog="discharge-game", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p_sim = sub.add_parser("simulate", help="integrate one scenario")
    _add_param_options(p_sim, with_config=True)
    _add_integrator_options(p_sim)
    p_sim.add_argument("--out-csv", metavar="PATH", help="write the trajectory CSV")
    p_sim.add_argument("--out-svg", metavar="PATH", help="write the trajectory chart")

    p_stab = sub.add_parser("stability", help="emit the stability report as JSON")
    _add_param_options(p_stab)
    p_stab.add_argument("--tol", type=float, help="eigenvalue sign dead band (default scale-aware)")
    p_stab.add_argument("--out-json", metavar="PATH", help="write the report here instead of stdout")

    p_eq = sub.add_parser("equilibria", help="list gamma1..gamma9 with classifications")
    _add_param_options(p_eq)

    p_sweep = sub.add_parser("sweep", help="run a one-parameter sensitivity sweep")
    _add_param_options(p_sweep)
    _add_integrator_options(p_sweep)
    p_sweep.add_argument("--named", help=f"stock sweep: {', '.join(NAMED_SWEEPS)}")
    p_sweep.add_argument("--parameter", help="model parameter to vary (custom sweep)")
    p_sweep.add_argument("--values", help="comma-separated values (custom sweep)")
    p_sweep.add_argument("--threshold", type=float, help="speed-metric band (default 0.01)")
    p_sweep.add_argument("--out-dir", metavar="DIR", help="write per-variant CSV files here")

    p_pay = sub.add_parser("payoff", help="print the payoff matrix")
    _add_param_options(p_pay)

    return parser


def _parse_param_overrides(pairs: Sequence[str]) -> dict[str, float]:
    overrides: dict[str, float] = {}
    for pair in pairs:
        name, sep, raw = pair.partition("=")
        if not sep:
            raise UsageError(f"--param expects NAME=VALUE, got {pair!r}")
        if name not in PARAM_FIELDS:
            raise UsageError(f"unknown parameter {name!r}; known: {', '.join(PARAM_FIELDS)}")
        try:
            overrides[name] = float(raw)
        except ValueError:
            raise UsageError(f"--param {name}: {raw!r} is not a number") from None
    return overrides


def _resolve_params(args: argparse.Namespace) -> tuple[ModelParams, StrategyState]:
    overrides = _parse_param_overrides(args.param)
    if args.preset is not None:
        if args.preset not in PRESET_NAMES:
            raise UsageError(f"unknown preset {args.preset!r}; known: {', '.join(PRESET_NAMES)}")
        scenario = preset(args.preset)
        params = scenario.params.replace(**overrides) if overrides else scenario.params
        return params, scenario.initial
    missing = [name for name in REQUIRED_PARAM_FIELDS if name not in overrides]
    if missing:
        raise UsageError(
            f"without --preset, --param must supply every parameter; missing: {', '.join(missing)}"
        )
    return ModelParams(**overrides), StrategyState(0.5, 0.5, 0.5)


def _parse_initial(text: str) -> StrategyState:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"--initial expects X,Y,Z, got {text!r}")
    try:
        coords = [float(part) for part in parts]
    except ValueError:
        raise UsageError(f"--initial expects three numbers, got {text!r}") from None
    return StrategyState(*coords)


def _resolve_integrator(args: argparse.Namespace) -> IntegratorConfig:
    kwargs = {}
    if args.dt is not None:
        kwargs["dt"] = args.dt
    if getattr(args, "t_max", None) is not None:
        kwargs["t_max"] = args.t_max
    if args.eps is not None:
        kwargs["convergence_eps"] = args.eps
    return IntegratorConfig(**kwargs)


def _write(path: str, payload: bytes) -> None:
    Path(path).write_bytes(payload)


def _print_convergence(traj: Trajectory) -> None:
    result = detect_convergence(traj)
    final = traj.final_state()
    print(
        f"final state: ({format_number(final.x)}, {format_number(final.y)}, {format_number(final.z)})"
        f" at t={format_number(traj.samples[-1].t)}"
    )
    if result.converged:
        coords = result.limit.coords.as_tuple()
        print(
            f"converged to {result.limit.label} {coords} at t={format_number(result.t_converge)}"
        )
    else:
        print("not converged within the horizon")


def _cmd_simulate(args: argparse.Namespace) -> int:
    if args.config is not None:
        exclusive = [args.preset, args.initial, args.dt, args.t_max, args.eps, args.out_csv, args.out_svg]
        if args.param or any(v is not None for v in exclusive):
            raise UsageError("--config cannot be combined with other simulate options")
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        run = parse_config(text)
        return _run_simulation(run)
    params, initial = _resolve_params(args)
    if args.initial is not None:
        initial = _parse_initial(args.initial)
    config = _resolve_integrator(args)
    traj = integrate(params, initial, config)
    _print_convergence(traj)
    if args.out_csv:
        _write(args.out_csv, write_trajectory_csv(traj))
        print(f"wrote {args.out_csv}")
    if args.out_svg:
        _write(args.out_svg, render_chart_svg(trajectory_chart(traj, "strategy evolution")))
        print(f"wrote {args.out_svg}")
    return EXIT_OK


def _run_simulation(run: RunConfig) -> int:
    traj = integrate(run.params, run.initial, run.integrator)
    _print_convergence(traj)
    for sink in run.outputs:
        if sink.kind == "csv":
            _write(sink.path, write_trajectory_csv(traj))
        elif sink.kind == "svg":
            _write(sink.path, render_chart_svg(trajectory_chart(traj, "strategy evolution")))
        else:
            _write(sink.path, write_report_json(stability_report(run.params)))
        print(f"wrote {sink.path}")
    return EXIT_OK


def _cmd_stability(args: argparse.Namespace) -> int:
    params, _ = _resolve_params(args)
    report = stability_report(params, args.tol)
    payload = write_report_json(report)
    if args.out_json:
        _write(args.out_json, payload)
        print(f"wrote {args.out_json}")
    else:
        sys.stdout.write(payload.decode("ascii"))
    return EXIT_OK


def _cmd_equilibria(args: argparse.Namespace) -> int:
    params, _ = _resolve_params(args)
    report = stability_report(params)
    print(f"{'label':<8}{'coords':<18}{'eigenvalues':<34}{'signs':<12}classification")
    for entry in report.vertices:
        coords = entry.point.coords.as_tuple()
        eigs = ", ".join(format_number(e.real) for e in entry.eigenvalues)
        print(
            f"{entry.point.label:<8}{str(tuple(int(c) for c in coords)):<18}"
            f"{('(' + eigs + ')'):<34}{'(' + ','.join(entry.signs) + ')':<12}"
            f"{entry.classification.value}"
        )
    interior = report.interior
    if interior.status == "feasible":
        coords = interior.point.coords.as_tuple()
        print(f"gamma9  feasible at ({', '.join(format_number(c) for c in coords)}): {interior.detail}")
        if report.interior_report is not None:
            print(f"        classification: {report.interior_report.classification.value}")
    else:
        print(f"gamma9  {interior.status}: {interior.detail}")
    return EXIT_OK


def _cmd_payoff(args: argparse.Namespace) -> int:
    params, _ = _resolve_params(args)
    matrix = build_payoff_matrix(params)
    move_names = {
        GovernmentMove.DISCHARGE: "discharge",
        GovernmentMove.STORE: "store",
        CountriesMove.SANCTION: "sanction",
        CountriesMove.NO_SANCTION: "no sanction",
        FisheriesMove.OPPOSE: "oppose",
        FisheriesMove.ACCEPT: "accept",
    }
    print(f"{'government':<12}{'countries':<13}{'fisheries':<11}{'payoffs (gov, countries, fisheries)'}")
    for g in GovernmentMove:
        for c in CountriesMove:
            for f in FisheriesMove:
                cell = matrix.cell(g, c, f)
                payoffs = ", ".join(
                    format_number(v) for v in (cell.government, cell.countries, cell.fisheries)
                )
                print(f"{move_names[g]:<12}{move_names[c]:<13}{move_names[f]:<11}({payoffs})")
    return EXIT_OK


def _build_sweep_spec(args: argparse.Namespace) -> SweepSpec:
    config = _resolve_integrator(args)
    if args.named is not None:
        if args.parameter is not None or args.values is not None:
            raise UsageError("--named cannot be combined with --parameter/--values")
        if args.named not in NAMED_SWEEPS:
            raise UsageError(f"unknown sweep {args.named!r}; known: {', '.join(NAMED_SWEEPS)}")
        return named_sweep(args.named, config)
    if args.parameter is None or args.values is None:
        raise UsageError("sweep needs --named NAME, or --parameter NAME with --values LIST")
    if args.parameter not in PARAM_FIELDS:
        raise UsageError(f"unknown parameter {args.parameter!r}; known: {', '.join(PARAM_FIELDS)}")
    try:
        values = tuple(float(v) for v in args.values.split(","))
    except ValueError:
        raise UsageError(f"--values expects comma-separated numbers, got {args.values!r}") from None
    base_name = args.preset if args.preset is not None else "Table5"
    if base_name not in PRESET_NAMES:
        raise UsageError(f"unknown preset {base_name!r}; known: {', '.join(PRESET_NAMES)}")
    base = preset(base_name)
    overrides = _parse_param_overrides(args.param)
    if overrides:
        base = ScenarioPreset(base.name, base.params.replace(**overrides), base.initial)
    if args.initial is not None:
        base = ScenarioPreset(base.name, base.params, _parse_initial(args.initial))
    return SweepSpec(base, args.parameter, values, config)


def _print_sweep(result: SweepResult, threshold: Optional[float]) -> None:
    spec = result.spec
    print(f"sweep {spec.parameter} over {spec.base.name} base: {len(result.variants)} variants")
    for variant in result.variants:
        label = (
            f"{variant.value:g}"
            if not isinstance(variant.value, StrategyState)
            else str(variant.value.as_tuple())
        )
        if variant.error is not None:
            print(f"  {spec.parameter}={label}: FAILED ({variant.error})")
        elif variant.convergence is not None and variant.convergence.converged:
            limit = variant.convergence.limit
            print(
                f"  {spec.parameter}={label}: -> {limit.label} {limit.coords.as_tuple()} "
                f"at t={format_number(variant.convergence.t_converge)}"
            )
        else:
            print(f"  {spec.parameter}={label}: not converged")
    if result.failures():
        return
    limit = result.variants[0].convergence.limit.coords.as_tuple()
    for player in PLAYERS:
        coordinate = PLAYER_COORDINATE[player]
        target = limit[{"x": 0, "y": 1, "z": 2}[coordinate]]
        ordering = speed_ordering(result, coordinate, target, threshold)
        times = ", ".join(f"{format_number(t)}" for _, t in ordering.pairs)
        print(f"  time to {coordinate}->{target:g} ({player}): [{times}] ({ordering.direction})")
    if spec.parameter in NAMED_SWEEPS:
        for note in reproduction_notes(result, threshold):
            verdict = "agrees" if note.agrees else "DISAGREES"
            print(
                f"  note [{note.sweep}/{note.player}]: claimed {note.claimed!r}, "
                f"observed {note.observed!r} -> {verdict}"
            )


def _cmd_sweep(args: argparse.Namespace) -> int:
    spec = _build_sweep_spec(args)
    result = run_sweep(spec)
    _print_sweep(result, args.threshold)
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for i, variant in enumerate(result.variants):
            if variant.trajectory is None:
                continue
            path = out_dir / f"{spec.parameter}_{i:02d}.csv"
            path.write_bytes(write_trajectory_csv(variant.trajectory))
        print(f"wrote {len([v for v in result.variants if v.trajectory])} CSV files to {out_dir}")
    return EXIT_OK


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required (simulate, stability, equilibria, sweep, payoff)")
        handler = {
            "simulate": _cmd_simulate,
            "stability": _cmd_stability,
            "equilibria": _cmd_equilibria,
            "sweep": _cmd_sweep,
            "payoff": _cmd_payoff,
        }[args.command]
        return handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except IntegrationError as exc:
        print(f"integration error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SystemExit as exc:  # argparse --help
        code = exc.code
        return code if isinstance(code, int) else EXIT_OK


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
