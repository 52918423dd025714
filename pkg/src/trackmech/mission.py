"""Fire-test geometry, extinguisher data and mission feasibility checks.

The presets hold the extinguisher catalogue and the operating-range
requirements used to size the robot. Distances are in m, times in s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .checks import Check
from .errors import ConfigError, DomainError

SLOPE_REQUIREMENT_DEG = 30.0
REQUIRED_TEMP_RANGE = (-10.0, 55.0)


@dataclass(frozen=True)
class FireTestSpec:
    """Class A fires are square cribs (``size`` = side), class B are round pans
    (``size`` = diameter). ``standoff`` is the closest approach of the robot
    centroid to the outer edge of the fire."""

    test_class: str
    size: float
    height: float
    standoff: float
    power: str = ""

    def __post_init__(self):
        if self.test_class not in ("A", "B"):
            raise DomainError(f"fire test class must be 'A' or 'B', got {self.test_class!r}")
        for name in ("size", "height", "standoff"):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(f"fire test {name} must be > 0, got {value}")

    def path_length(self):
        """Length of the closed path kept at ``standoff`` from the fire's edge."""
        if self.test_class == "A":
            return 4.0 * self.size + 2.0 * math.pi * self.standoff
        return 2.0 * math.pi * (self.size / 2.0 + self.standoff)


@dataclass(frozen=True)
class ExtinguisherSpec:
    model: str
    kind: str
    power: str
    mass: float
    discharge_time: float
    hose_length: float
    operating_temp: tuple
    diameter: float
    height: float

    def __post_init__(self):
        if self.kind not in ("portable", "wheeled"):
            raise DomainError(f"extinguisher kind must be portable or wheeled, got {self.kind!r}")
        if not self.discharge_time > 0:
            raise DomainError(f"discharge_time must be > 0, got {self.discharge_time}")
        lo, hi = self.operating_temp
        if not lo < hi:
            raise DomainError(f"operating temperature range is empty: {self.operating_temp}")


@dataclass(frozen=True)
class ReachRequirements:
    highest_point: float = 1.892
    lowest_point_A: float = 0.745
    lowest_point_B: float = 0.635
    longest_reach_A: float = 1.875
    longest_reach_B: float = 2.255
    shortest_edge_gap_A: float = 0.395

    def __post_init__(self):
        for name, value in vars(self).items():
            if not value > 0:
                raise DomainError(f"reach requirement {name} must be > 0, got {value}")


@dataclass(frozen=True)
class FeasibilityReport:
    checks: tuple

    def __post_init__(self):
        names = [c.name for c in self.checks]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise ConfigError(f"duplicate feasibility checks: {', '.join(dupes)}")

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def circumnavigation_time(test, v):
    """Seconds to drive once around ``test`` at constant speed ``v`` (m/s)."""
    if not v > 0:
        raise DomainError(f"speed must be > 0, got {v}")
    return test.path_length() / v


def discharge_budget_check(test, v, ext):
    t = circumnavigation_time(test, v)
    return Check(
        name=f"discharge_budget_{test.test_class}",
        passed=t < ext.discharge_time,
        value=t,
        required=ext.discharge_time,
        margin=ext.discharge_time - t,
        note=f"lap time < discharge time of {ext.model}",
    )


def slope_climb_check(report):
    """Pass when the thrust still covers every resistance on the 30 deg slope."""
    if not math.isclose(report.theta, SLOPE_REQUIREMENT_DEG):
        raise DomainError(
            f"slope check needs a report at theta = {SLOPE_REQUIREMENT_DEG} deg, got {report.theta}"
        )
    return Check(
        name="slope_climb",
        passed=report.a >= 0,
        value=report.a,
        required=0.0,
        margin=report.a,
        note=f"a >= 0 at {SLOPE_REQUIREMENT_DEG:g} deg",
    )


def reach_check(robot_reach, robot_max_height, req, test_class):
    """Compare the robot envelope with the operating-range rows for one class."""
    if not robot_reach > 0 or not robot_max_height > 0:
        raise DomainError("robot reach and height must be > 0")
    if test_class == "A":
        longest = req.longest_reach_A
        height = Check(
            name="max_height_A",
            passed=robot_max_height >= req.highest_point,
            value=robot_max_height,
            required=req.highest_point,
            margin=robot_max_height - req.highest_point,
        )
    elif test_class == "B":
        longest = req.longest_reach_B
        height = Check.not_applicable("max_height_B", "no requirement given for class B")
    else:
        raise DomainError(f"fire test class must be 'A' or 'B', got {test_class!r}")
    reach = Check(
        name=f"reach_{test_class}",
        passed=robot_reach >= longest,
        value=robot_reach,
        required=longest,
        margin=robot_reach - longest,
    )
    return [reach, height]


def temperature_check(ext, required=REQUIRED_TEMP_RANGE):
    lo, hi = ext.operating_temp
    need_lo, need_hi = required
    return Check(
        name="operating_temperature",
        passed=lo <= need_lo and hi >= need_hi,
        margin=min(need_lo - lo, hi - need_hi),
        note=f"{ext.model} rated {lo:g}..{hi:g} C, need {need_lo:g}..{need_hi:g} C",
    )


def feasibility(
    ext,
    tests,
    v,
    slope_report=None,
    robot_reach=None,
    robot_max_height=None,
    req=None,
    extra_checks=(),
):
    """Collect the mission checks into a single report.

    ``extra_checks`` (e.g. pitch ratio and steering from a performance
    report) are placed first. Reach rows are only produced when both robot
    dimensions are supplied.
    """
    req = req or ReachRequirements()
    checks = list(extra_checks)
    if slope_report is not None:
        checks.append(slope_climb_check(slope_report))
    for test in tests:
        checks.append(discharge_budget_check(test, v, ext))
    if robot_reach is not None and robot_max_height is not None:
        for test in tests:
            checks.extend(reach_check(robot_reach, robot_max_height, req, test.test_class))
    checks.append(temperature_check(ext))
    return FeasibilityReport(tuple(checks))


FIRE_TESTS = {
    "A": FireTestSpec("A", size=1.270, height=1.725, standoff=1.698, power="20A"),
    "B": FireTestSpec("B", size=3.000, height=0.203, standoff=1.338, power="233B"),
}


def _ext(model, kind, power, mass, discharge, hose, temp, diameter, height):
    return ExtinguisherSpec(model, kind, power, mass, discharge, hose, temp, diameter, height)


EXTINGUISHERS = {
    e.model: e
    for e in (
        _ext("EXT-ABC-4K", "portable", "21A/133B", 6.1, 15, 0.50, (-20, 60), 0.138, 0.440),
        _ext("MFZL4-ABC", "portable", "2A/55B", 5.5, 13, 0.40, (-20, 55), 0.130, 0.480),
        _ext("MFZL8-ABC", "portable", "4A/89B", 10.0, 15, 0.50, (-20, 55), 0.130, 0.565),
        _ext("MFZL10-ABC", "wheeled", "20A/233B", 45.0, 20, 3.0, (-20, 55), 0.460, 0.920),
        _ext("EXT-CO2-5K", "portable", "55B", 16.8, 15, 0.50, (-20, 60), 0.152, 0.670),
        _ext("CO2-MT24", "wheeled", "233B", 90.0, 25, 3.0, (-20, 55), 0.220, 1.330),
        _ext("EXT-ABC-25K", "wheeled", "20A/89B", 50.0, 20, 5.0, (-20, 60), 0.252, 0.880),
        _ext("EXT-ABC-50K", "wheeled", "20A/233B", 83.0, 25, 5.0, (-20, 60), 0.300, 1.000),
    )
}


def get_extinguisher(model) -> ExtinguisherSpec:
    try:
        return EXTINGUISHERS[model]
    except KeyError:
        raise ConfigError(
            f"unknown extinguisher {model!r}; known: {', '.join(EXTINGUISHERS)}"
        ) from None


def fire_tests_for(selection: Optional[str]):
    """Map ``'A'``, ``'B'`` or ``'AB'``/``'both'`` to fire-test presets."""
    key = (selection or "B").upper()
    if key == "BOTH":
        key = "AB"
    if not key or any(ch not in FIRE_TESTS for ch in key):
        raise ConfigError(f"fire_test must be A, B or both, got {selection!r}")
    return [FIRE_TESTS[ch] for ch in dict.fromkeys(key)]
