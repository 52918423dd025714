"""Track and chassis geometry, the roadwheel/pitch rule and the skid-steer limit."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .checks import Check
from .errors import ConfigError, DomainError

DEFAULT_PITCH_BAND = (1.1, 1.3)


@dataclass(frozen=True)
class TrackGeometry:
    """Two-track chassis dimensions in metres.

    RS (roadwheel spacing), D (sprocket diameter) and delta (speed
    fluctuation, percent) are carried for reporting only.
    """

    b: float
    l: float
    B: float
    P: float
    RD: float
    RS: Optional[float] = None
    D: Optional[float] = None
    delta: Optional[float] = None

    def __post_init__(self):
        for name in ("b", "l", "B", "P", "RD"):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(f"chassis.{name} must be > 0, got {value}")
        for name in ("RS", "D"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise DomainError(f"chassis.{name} must be > 0, got {value}")
        if self.B <= self.b:
            warnings.warn(
                f"tread B={self.B} m does not exceed track width b={self.b} m",
                stacklevel=3,
            )


def roadwheel_pitch_ratio(geom, band=DEFAULT_PITCH_BAND):
    """Return ``(RD/P, passed)`` with ``passed`` true inside the inclusive band."""
    if not geom.P > 0:
        raise DomainError(f"track pitch P must be > 0, got {geom.P}")
    lo, hi = band
    ratio = geom.RD / geom.P
    return ratio, lo <= ratio <= hi


def pitch_ratio_check(geom, band=DEFAULT_PITCH_BAND):
    ratio, passed = roadwheel_pitch_ratio(geom, band)
    lo, hi = band
    return Check(
        name="pitch_ratio",
        passed=passed,
        value=ratio,
        required=(lo + hi) / 2,
        margin=min(ratio - lo, hi - ratio),
        note=f"RD/P in [{lo:g}, {hi:g}]",
    )


def contact_area(geom):
    """Ground contact area of both tracks, 2 b l, in m^2."""
    return 2.0 * geom.b * geom.l


@dataclass(frozen=True)
class SteeringResult:
    ratio: float
    limit: float
    passed: bool
    margin: float

    def as_check(self):
        return Check(
            name="steering",
            passed=self.passed,
            value=self.ratio,
            required=self.limit,
            margin=self.margin,
            note="l/B <= (2/mu_t)(c/p + tan(phi) - f_r)",
        )


def steering_check(geom, terrain, p):
    """Check that the chassis can skid-steer without spinning the outer track.

    :param p: mean ground pressure in kPa (same unit as terrain.c).
    """
    if terrain.mu_t is None or terrain.f_r is None:
        raise ConfigError("steering check needs terrain.mu_t and terrain.f_r")
    if not p > 0:
        raise DomainError(f"ground pressure must be > 0 for the steering check, got {p}")
    ratio = geom.l / geom.B
    limit = (2.0 / terrain.mu_t) * (
        terrain.c / p + math.tan(math.radians(terrain.phi)) - terrain.f_r
    )
    return SteeringResult(ratio=ratio, limit=limit, passed=ratio <= limit, margin=limit - ratio)


# Reference chassis. The source table prints l = 0.1 m, but its sinkage,
# compaction and thrust values only follow from l = 1.0 m.
PAPER_CHASSIS = TrackGeometry(
    b=0.18, l=1.0, B=0.8, P=0.155, RD=0.19, RS=0.23, D=0.18, delta=62.0
)

PRESETS = {"paper-chassis": PAPER_CHASSIS}
