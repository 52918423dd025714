"""Soil thrust, longitudinal force balance and the full performance pipeline."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .chassis import DEFAULT_PITCH_BAND, contact_area, pitch_ratio_check, steering_check
from .checks import Check
from .errors import DomainError, TrackmechError
from .resistance import (
    BEKKER_CLASSIC,
    bulldozing_resistance,
    compaction_resistance,
    grade_resistance,
    internal_resistance,
)
from .terrain import ground_pressure, sinkage_modulus, static_sinkage

# Thrust from contact area 2*b*l is treated as the whole-vehicle thrust;
# that is the reading under which both F and a of the reference table agree.
THRUST_BASIS = "A = 2*b*l (both tracks); F is the vehicle total"


def soil_thrust(A, terrain, W, i, l):
    """Maximum soil thrust (A c + W tan phi) [1 - K/(i l) (1 - exp(-i l / K))].

    :param A: contact area in m^2.
    :param W: normal load in N.
    :param i: slip ratio in (0, 1].
    :param l: contact length in m.
    """
    if not A > 0 or not l > 0:
        raise DomainError(f"A and l must be > 0, got A={A}, l={l}")
    if not 0 < i <= 1:
        raise DomainError(f"slip ratio must be in (0, 1], got {i}")
    shear_ceiling = A * terrain.c * 1000.0 + W * math.tan(math.radians(terrain.phi))
    x = i * l / terrain.K
    # 1 - (1 - e^-x)/x, written with expm1 so small slips keep their digits
    bracket = 1.0 + math.expm1(-x) / x
    return shear_ceiling * bracket


def acceleration(F, resistances, m):
    """Net longitudinal acceleration (F - sum of resistances) / m; may be negative."""
    if not m > 0:
        raise DomainError(f"mass must be > 0, got {m}")
    return (F - math.fsum(resistances)) / m


@dataclass(frozen=True)
class PerformanceReport:
    W: float
    p: float
    k: float
    K_p: float
    K_p_source: str
    z_o: float
    R_in: float
    R_b: float
    R_c: float
    R_c_mode: str
    R_c_error: float
    R_g: float
    F: float
    drawbar_pull: float
    a: float
    m: float
    theta: float
    checks: tuple = field(default_factory=tuple)
    RS: Optional[float] = None
    D: Optional[float] = None
    delta: Optional[float] = None
    thrust_basis: str = THRUST_BASIS

    @property
    def total_resistance(self):
        return math.fsum((self.R_in, self.R_b, self.R_c, self.R_g))

    @property
    def force_residual(self):
        return self.a * self.m + self.total_resistance - self.F

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except TrackmechError as exc:
        if exc.stage is None:
            exc.stage = name
            exc.args = (f"[{name}] {exc.args[0] if exc.args else ''}",) + exc.args[1:]
        raise


def evaluate(geom, terrain, state, mode=BEKKER_CLASSIC, pitch_band=DEFAULT_PITCH_BAND):
    """Run W -> p -> z_o -> resistances -> F -> a for one configuration."""
    W = state.weight
    p = _stage("ground_pressure", ground_pressure, W, geom.b, geom.l)
    k = _stage("sinkage_modulus", sinkage_modulus, terrain, geom.b)
    z_o = _stage("static_sinkage", static_sinkage, p, terrain, geom.b)
    kp, kp_source = _stage("passive_coefficient", terrain.passive_coefficient)
    R_in = _stage("internal_resistance", internal_resistance, W, state.v)
    R_b = _stage("bulldozing_resistance", bulldozing_resistance, z_o, terrain, geom.b)
    comp = _stage("compaction_resistance", compaction_resistance, z_o, terrain, geom, state.i, mode)
    R_g = _stage("grade_resistance", grade_resistance, W, state.theta)
    F = _stage("soil_thrust", soil_thrust, contact_area(geom), terrain, W, state.i, geom.l)
    a = _stage("acceleration", acceleration, F, (R_in, R_b, comp.value, R_g), state.m)

    checks = [_stage("pitch_ratio", pitch_ratio_check, geom, pitch_band)]
    if terrain.mu_t is None or terrain.f_r is None:
        checks.append(Check.not_applicable("steering", "terrain.mu_t / terrain.f_r not set"))
    elif p > 0:
        checks.append(_stage("steering", steering_check, geom, terrain, p).as_check())
    else:
        checks.append(Check.not_applicable("steering", "zero ground pressure"))
    checks.append(
        Check(
            name="thrust_covers_resistance",
            passed=a >= 0,
            value=F,
            required=math.fsum((R_in, R_b, comp.value, R_g)),
            margin=a * state.m,
        )
    )

    return PerformanceReport(
        W=W,
        p=p,
        k=k,
        K_p=kp,
        K_p_source=kp_source,
        z_o=z_o,
        R_in=R_in,
        R_b=R_b,
        R_c=comp.value,
        R_c_mode=comp.mode,
        R_c_error=comp.error,
        R_g=R_g,
        F=F,
        drawbar_pull=F - math.fsum((R_in, R_b, comp.value)),
        a=a,
        m=state.m,
        theta=state.theta,
        checks=tuple(checks),
        RS=geom.RS,
        D=geom.D,
        delta=geom.delta,
    )
