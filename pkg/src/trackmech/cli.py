"""Command-line front end.

Exit status: 0 success, 1 failed checks or no feasible design, 2 input
errors, 3 numerical errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import replace

from .config import parse_config, to_text, with_overrides
from .errors import ConfigError, DomainError, NumericalError
from .mission import (
    SLOPE_REQUIREMENT_DEG,
    ReachRequirements,
    feasibility,
    fire_tests_for,
    get_extinguisher,
)
from .resistance import COMPACTION_MODES
from .sweep import DesignSpace, refine, sweep
from .table3 import reproduce
from .traction import evaluate

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3

REPORT_FIELDS = (
    ("W", "N"), ("p", "kPa"), ("k", "kN/m^(n+2)"), ("K_p", ""), ("z_o", "m"),
    ("R_in", "N"), ("R_b", "N"), ("R_c", "N"), ("R_g", "N"),
    ("F", "N"), ("drawbar_pull", "N"), ("a", "m/s^2"),
)
REPORT_CSV_COLUMNS = (
    "W", "p", "k", "K_p", "K_p_source", "z_o", "R_in", "R_b", "R_c", "R_c_mode",
    "R_g", "F", "drawbar_pull", "a", "passed",
)


def g6(x):
    return "-" if x is None else f"{x:.6g}"


def _csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _full(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, float)):
        return repr(float(x))
    return "" if x is None else str(x)


def render_checks(checks):
    lines = []
    width = max((len(c.name) for c in checks), default=0)
    for c in checks:
        detail = f"value {g6(c.value)}  required {g6(c.required)}  margin {g6(c.margin)}"
        if not c.applicable:
            detail = c.note
        elif c.note:
            detail += f"  ({c.note})"
        lines.append(f"  {c.name:<{width}}  {c.status:<4}  {detail}")
    return lines


def render_report(report, fmt="text"):
    if fmt == "csv":
        row = [getattr(report, name) for name in REPORT_CSV_COLUMNS[:-1]] + [report.passed]
        return _csv([REPORT_CSV_COLUMNS, [_full(v) for v in row]])
    lines = [f"# {report.thrust_basis}"]
    for name, unit in REPORT_FIELDS:
        label = f"{name} = {g6(getattr(report, name))} {unit}".rstrip()
        if name == "K_p":
            label += f"  [{report.K_p_source}]"
        if name == "R_c":
            label += f"  [{report.R_c_mode}"
            label += f", quadrature error {report.R_c_error:.2g} N]" if report.R_c_error else "]"
        lines.append(label)
    meta = ", ".join(f"{k} = {g6(getattr(report, k))}" for k in ("RS", "D", "delta")
                     if getattr(report, k) is not None)
    if meta:
        lines.append(f"metadata: {meta}")
    lines.append("checks:")
    lines.extend(render_checks(report.checks))
    return "\n".join(lines) + "\n"


def render_table3(result, fmt="text"):
    if fmt == "csv":
        rows = [("quantity", "printed", "computed", "rel_delta", "tolerance", "status")]
        for r in result.rows:
            rows.append((r.quantity, _full(r.printed), _full(r.computed), _full(r.rel_delta),
                         _full(r.tolerance), "pass" if r.passed else "FAIL"))
        rows.append(("K_p", "1.7", _full(result.kp_used), "", "", result.report.K_p_source))
        rows.append(("K_p_formula", "", _full(result.kp_formula), "", "", "formula"))
        rows.append(("r_RDP", "1.2", _full(result.pitch_ratio), "", "",
                     "pass" if result.pitch_passed else "FAIL"))
        return _csv(rows)
    lines = [f"{'quantity':<9} {'printed':>10} {'computed':>12} {'delta':>9} {'tol':>6}  status"]
    for r in result.rows:
        lines.append(
            f"{r.quantity:<9} {g6(r.printed):>10} {g6(r.computed):>12} "
            f"{r.rel_delta:>+9.2%} {r.tolerance:>6.1%}  {'pass' if r.passed else 'FAIL'}"
        )
    lines.append(f"{'K_p':<9} {'1.7':>10} {g6(result.kp_used):>12}  [{result.report.K_p_source}]"
                 f" formula gives {g6(result.kp_formula)}")
    lines.append(f"{'r_RDP':<9} {'~1.2':>10} {g6(result.pitch_ratio):>12}  "
                 f"{'pass' if result.pitch_passed else 'FAIL'}")
    lines.append("notes:")
    lines.extend(f"  - {n}" for n in result.notes)
    return "\n".join(lines) + "\n"


def render_feasibility(feas, fmt="text"):
    if fmt == "csv":
        rows = [("check", "status", "value", "required", "margin", "note")]
        for c in feas.checks:
            rows.append((c.name, c.status, _full(c.value), _full(c.required), _full(c.margin), c.note))
        return _csv(rows)
    lines = ["feasibility: " + ("pass" if feas.passed else "FAIL")]
    lines.extend(render_checks(feas.checks))
    if feas.failures:
        lines.append("failing: " + ", ".join(c.name for c in feas.failures))
    return "\n".join(lines) + "\n"


def render_sweep(result, space, refined=None):
    lines = [f"grid points: {result.total_count}", f"feasible: {result.feasible_count}",
             f"objective: {space.objective}"]
    if result.empty:
        lines.append("no feasible configuration")
        return "\n".join(lines) + "\n"
    row = result.best.row
    lines.append("best: " + ", ".join(f"{k} = {g6(v)}" for k, v in zip("b l B v m i".split(), row.point)))
    lines.append(f"best objective: {g6(row.objective)}")
    if refined is not None:
        lines.append("refined: " + ", ".join(f"{k} = {g6(v)}" for k, v in zip("b l B v m i".split(), refined.point))
                     + f", objective {g6(refined.objective)}")
    lines.append("")
    lines.append(render_report(result.best.report).rstrip("\n"))
    lines.append("")
    lines.append(render_feasibility(result.best.feasibility).rstrip("\n"))
    return "\n".join(lines) + "\n"


def design_space(cfg):
    sw = cfg.sweep
    ext, tests = None, ()
    if cfg.mission is not None:
        ext = get_extinguisher(cfg.mission.extinguisher)
        tests = tuple(fire_tests_for(cfg.mission.fire_test))
    return DesignSpace(
        geometry=cfg.chassis,
        state=cfg.state,
        ranges=dict(sw.ranges),
        objective=sw.objective,
        mode=cfg.output.compaction_mode,
        pitch_band=cfg.pitch_band,
        check_steering=sw.check_steering and cfg.terrain.mu_t is not None and cfg.terrain.f_r is not None,
        check_slope=sw.check_slope,
        extinguisher=ext,
        fire_tests=tests,
        max_points=sw.max_points,
    )


def check_mission(cfg):
    mode = cfg.output.compaction_mode
    report = evaluate(cfg.chassis, cfg.terrain, cfg.state, mode, cfg.pitch_band)
    slope_state = replace(cfg.state, theta=SLOPE_REQUIREMENT_DEG)
    slope_report = evaluate(cfg.chassis, cfg.terrain, slope_state, mode, cfg.pitch_band)
    mission = cfg.mission
    return feasibility(
        get_extinguisher(mission.extinguisher),
        fire_tests_for(mission.fire_test),
        cfg.state.v,
        slope_report=slope_report,
        robot_reach=mission.robot_reach,
        robot_max_height=mission.robot_max_height,
        req=ReachRequirements(),
        extra_checks=[report.check("pitch_ratio"), report.check("steering")],
    )


def run(subcommand, cfg, kp=None):
    """Execute a subcommand; returns ``(exit_status, output_text)``.

    ``kp`` only matters for ``table3``, whose default is the printed 1.7.
    """
    fmt = cfg.output.format
    mode = cfg.output.compaction_mode
    if subcommand == "table3":
        result = reproduce(mode=mode, kp=1.7 if kp is None else kp)
        return (EXIT_OK if result.passed else EXIT_FAILED), render_table3(result, fmt)
    if subcommand == "evaluate":
        report = evaluate(cfg.chassis, cfg.terrain, cfg.state, mode, cfg.pitch_band)
        return (EXIT_OK if report.passed else EXIT_FAILED), render_report(report, fmt)
    if subcommand == "check":
        feas = check_mission(cfg)
        return (EXIT_OK if feas.passed else EXIT_FAILED), render_feasibility(feas, fmt)
    if subcommand == "sweep":
        space = design_space(cfg)
        result = sweep(space, cfg.terrain, workers=cfg.sweep.workers,
                       keep_rows=bool(cfg.sweep.dump) or fmt == "csv")
        if cfg.sweep.dump:
            with open(cfg.sweep.dump, "w", newline="", encoding="utf-8") as fh:
                fh.write(result.to_csv())
        refined = None
        if cfg.sweep.refine and not result.empty:
            refined = refine(space, cfg.terrain, result, cfg.sweep.refine)
        text = result.to_csv() if fmt == "csv" else render_sweep(result, space, refined)
        return (EXIT_FAILED if result.empty else EXIT_OK), text
    raise ConfigError(f"unknown subcommand {subcommand!r}")


def build_parser():
    parser = argparse.ArgumentParser(prog="trackmech", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="run configuration file")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--format", choices=("text", "csv"))
    common.add_argument("--compaction-mode", choices=COMPACTION_MODES)
    common.add_argument("--kp", type=float, help="override the passive earth pressure coefficient")
    common.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("evaluate", parents=[common], help="performance report for one configuration")
    sub.add_parser("table3", parents=[common], help="reproduce the reference chassis table")
    sub.add_parser("check", parents=[common], help="mission feasibility report")
    sub.add_parser("sweep", parents=[common], help="grid search over the design space")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
            cfg = parse_config(text, args.subcommand)
        elif args.subcommand == "table3":
            cfg = parse_config("", "table3")
        else:
            raise ConfigError(f"--config is required for {args.subcommand}")
        cfg = with_overrides(cfg, args.compaction_mode, args.kp, args.format, args.output, args.verbose)
        if cfg.output.verbose:
            for line in cfg.defaults_applied:
                print(f"default applied: {line}", file=sys.stderr)
            print(to_text(cfg), file=sys.stderr)
        status, text = run(args.subcommand, cfg, kp=args.kp)
    except (ConfigError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical error: {exc} (estimates {exc.estimates})", file=sys.stderr)
        return EXIT_NUMERIC
    if cfg.output.path:
        with open(cfg.output.path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
