"""Exhaustive grid search over chassis and operating variables.

Grid points are visited in lexicographic order of (b, l, B, v, m, i). Rows
may be evaluated out of order or in worker processes, but they are always
folded back in grid order, so the result never depends on scheduling.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

from .chassis import DEFAULT_PITCH_BAND, TrackGeometry
from .errors import ConfigError
from .mission import SLOPE_REQUIREMENT_DEG, FeasibilityReport, feasibility, slope_climb_check
from .resistance import BEKKER_CLASSIC, VehicleOperatingState
from .traction import evaluate

SWEEP_VARS = ("b", "l", "B", "v", "m", "i")
GEOMETRY_VARS = ("b", "l", "B")
OBJECTIVES = ("max_acceleration", "max_drawbar_pull")
CHECK_ORDER = ("pitch_ratio", "steering", "slope_climb", "time_budget")
CSV_COLUMNS = (
    "b", "l", "B", "v", "m", "i",
    "z_o", "R_in", "R_b", "R_c", "R_g", "F", "drawbar_pull", "a",
    "feasible", "failed_check", "objective",
)
DEFAULT_MAX_POINTS = 10**7


def grid_values(lo, hi, step):
    """Inclusive arithmetic grid lo, lo+step, ... <= hi (with a rounding slack)."""
    if not step > 0:
        raise ConfigError(f"sweep step must be > 0, got {step}")
    if hi < lo:
        raise ConfigError(f"sweep range is empty: [{lo}, {hi}]")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return tuple(lo + k * step for k in range(count))


@dataclass(frozen=True)
class DesignSpace:
    """Swept ranges plus the fixed base configuration.

    ``ranges`` maps any of ``SWEEP_VARS`` to ``(lo, hi, step)``; unswept
    variables come from ``geometry`` and ``state``. Set ``extinguisher`` to
    enable the discharge-time budget for each of ``fire_tests``.
    """

    geometry: TrackGeometry
    state: VehicleOperatingState
    ranges: dict = field(default_factory=dict)
    objective: str = "max_acceleration"
    mode: str = BEKKER_CLASSIC
    pitch_band: tuple = DEFAULT_PITCH_BAND
    check_steering: bool = True
    check_slope: bool = True
    extinguisher: Optional[object] = None
    fire_tests: tuple = ()
    max_points: int = DEFAULT_MAX_POINTS

    def __post_init__(self):
        unknown = set(self.ranges) - set(SWEEP_VARS)
        if unknown:
            raise ConfigError(f"cannot sweep {sorted(unknown)}; allowed: {', '.join(SWEEP_VARS)}")
        if self.objective not in OBJECTIVES:
            raise ConfigError(f"objective must be one of {OBJECTIVES}, got {self.objective!r}")
        if self.size > self.max_points:
            raise ConfigError(f"grid has {self.size} points, above the cap of {self.max_points}")

    def axes(self):
        out = []
        for name in SWEEP_VARS:
            if name in self.ranges:
                out.append(grid_values(*self.ranges[name]))
            elif name in GEOMETRY_VARS:
                out.append((getattr(self.geometry, name),))
            else:
                out.append((getattr(self.state, name),))
        return out

    @property
    def size(self):
        return math.prod(len(a) for a in self.axes())

    def point(self, index, axes=None):
        """Decode a flat grid index into a (b, l, B, v, m, i) tuple."""
        axes = axes or self.axes()
        values = []
        for ax in reversed(axes):
            index, r = divmod(index, len(ax))
            values.append(ax[r])
        return tuple(reversed(values))


@dataclass(frozen=True)
class SweepRow:
    point: tuple
    z_o: float
    R_in: float
    R_b: float
    R_c: float
    R_g: float
    F: float
    drawbar_pull: float
    a: float
    feasible: bool
    failed_check: str
    objective: Optional[float]

    def csv_fields(self):
        values = list(self.point) + [
            self.z_o, self.R_in, self.R_b, self.R_c, self.R_g,
            self.F, self.drawbar_pull, self.a,
        ]
        out = [repr(float(x)) for x in values]
        out.append("true" if self.feasible else "false")
        out.append(self.failed_check)
        out.append("" if self.objective is None else repr(float(self.objective)))
        return out


@dataclass(frozen=True)
class Candidate:
    row: SweepRow
    report: object
    feasibility: object


@dataclass(frozen=True)
class SweepResult:
    total_count: int
    feasible_count: int
    best: Optional[Candidate]
    rows: tuple = ()

    @property
    def empty(self):
        return self.best is None

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(row.csv_fields())
        return buf.getvalue()


def configure(space, point):
    b, l, B, v, m, i = point
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        geom = replace(space.geometry, b=b, l=l, B=B)
    state = replace(space.state, m=m, v=v, i=i)
    return geom, state


def assess(space, terrain, point):
    """Evaluate one point: ``(report, feasibility_report, failed_check)``."""
    geom, state = configure(space, point)
    report = evaluate(geom, terrain, state, space.mode, space.pitch_band)

    extra = [report.check("pitch_ratio")]
    if space.check_steering:
        extra.append(report.check("steering"))
    slope_report = None
    if space.check_slope:
        if math.isclose(state.theta, SLOPE_REQUIREMENT_DEG):
            slope_report = report
        else:
            slope_state = replace(state, theta=SLOPE_REQUIREMENT_DEG)
            slope_report = evaluate(geom, terrain, slope_state, space.mode, space.pitch_band)
    if space.extinguisher is not None:
        feas = feasibility(
            space.extinguisher, space.fire_tests, state.v, slope_report, extra_checks=extra
        )
    else:
        feas = feasibility_without_mission(extra, slope_report)

    failing = [_group(c.name) for c in feas.checks if not c.passed]
    failed = ""
    if failing:
        ranked = [g for g in CHECK_ORDER if g in failing]
        failed = ranked[0] if ranked else failing[0]
    return report, feas, failed


def feasibility_without_mission(extra, slope_report):
    checks = list(extra)
    if slope_report is not None:
        checks.append(slope_climb_check(slope_report))
    return FeasibilityReport(tuple(checks))


def _group(name):
    if name.startswith("discharge_budget"):
        return "time_budget"
    return name


def _objective(space, report):
    if space.objective == "max_acceleration":
        return report.a
    return report.drawbar_pull


def evaluate_row(space, terrain, point):
    report, _, failed = assess(space, terrain, point)
    feasible = failed == ""
    return SweepRow(
        point=point,
        z_o=report.z_o,
        R_in=report.R_in,
        R_b=report.R_b,
        R_c=report.R_c,
        R_g=report.R_g,
        F=report.F,
        drawbar_pull=report.drawbar_pull,
        a=report.a,
        feasible=feasible,
        failed_check=failed,
        objective=_objective(space, report) if feasible else None,
    )


def _evaluate_indices(space, terrain, indices):
    axes = space.axes()
    return [(idx, evaluate_row(space, terrain, space.point(idx, axes))) for idx in indices]


def _chunks(seq, size):
    for start in range(0, len(seq), size):
        yield seq[start:start + size]


def sweep(space, terrain, workers=1, order=None, keep_rows=True, chunk_size=2000):
    """Evaluate every grid point and return the best feasible candidate.

    :param workers: worker processes; 1 evaluates in this process.
    :param order: optional permutation of grid indices giving evaluation order.
        Only scheduling changes; the result is identical for any order.
    :param keep_rows: keep every row for the CSV dump.
    """
    total = space.size
    indices = list(range(total)) if order is None else list(order)
    if sorted(indices) != list(range(total)):
        raise ConfigError("order must be a permutation of the grid indices")

    rows = [None] * total
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_evaluate_indices, space, terrain, chunk)
                for chunk in _chunks(indices, chunk_size)
            ]
            for fut in futures:
                for idx, row in fut.result():
                    rows[idx] = row
    else:
        for idx, row in _evaluate_indices(space, terrain, indices):
            rows[idx] = row

    best_row = None
    feasible = 0
    for row in rows:
        if not row.feasible:
            continue
        feasible += 1
        if best_row is None or row.objective > best_row.objective:
            best_row = row

    best = None
    if best_row is not None:
        report, feas, _ = assess(space, terrain, best_row.point)
        best = Candidate(best_row, report, feas)
    return SweepResult(
        total_count=total,
        feasible_count=feasible,
        best=best,
        rows=tuple(rows) if keep_rows else (),
    )


def refine(space, terrain, result, variable, tol=1e-4, max_iter=200):
    """Golden-section search along one swept variable around the grid optimum.

    The bracket is one grid step either side of the best point, clipped to the
    swept range. Infeasible points score -inf. Returns the better of the
    refined point and the grid optimum as a :class:`SweepRow`.
    """
    if result.best is None:
        return None
    if variable not in space.ranges:
        raise ConfigError(f"{variable!r} is not a swept variable")
    lo_range, hi_range, step = space.ranges[variable]
    pos = SWEEP_VARS.index(variable)
    base = list(result.best.row.point)

    def score(x):
        point = tuple(base[:pos] + [x] + base[pos + 1:])
        row = evaluate_row(space, terrain, point)
        return (row.objective if row.feasible else -math.inf), row

    lo = max(lo_range, base[pos] - step)
    hi = min(hi_range, base[pos] + step)
    inv_phi = (math.sqrt(5) - 1) / 2
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, r1 = score(x1)
    f2, r2 = score(x2)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if f1 >= f2:
            hi, x2, f2, r2 = x2, x1, f1, r1
            x1 = hi - inv_phi * (hi - lo)
            f1, r1 = score(x1)
        else:
            lo, x1, f1, r1 = x1, x2, f2, r2
            x2 = lo + inv_phi * (hi - lo)
            f2, r2 = score(x2)
    f, r = (f1, r1) if f1 >= f2 else (f2, r2)
    if f > result.best.row.objective:
        return r
    return result.best.row
