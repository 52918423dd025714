"""Motion resistances of a tracked vehicle on soft soil.

Forces are returned in N. Soil moduli arrive in kN-based units from
:class:`~trackmech.terrain.TerrainParams` and are scaled by 1000 here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .quadrature import adaptive_simpson
from .terrain import sinkage_modulus

BEKKER_CLASSIC = "bekker-classic"
VERBATIM_EQ8 = "verbatim-eq8"
COMPACTION_MODES = (BEKKER_CLASSIC, VERBATIM_EQ8)

QUAD_ABS_TOL = 1e-9  # N
QUAD_MAX_DEPTH = 30


@dataclass(frozen=True)
class VehicleOperatingState:
    """Mass in kg, speed in m/s, slip ratio in (0, 1], grade in degrees.

    ``W`` may be given directly; otherwise the weight is ``m * g``.
    """

    m: float
    v: float
    i: float
    theta: float = 0.0
    g: float = 9.81
    W: float | None = None

    def __post_init__(self):
        if not self.m > 0:
            raise DomainError(f"state.m must be > 0, got {self.m}")
        if self.v < 0:
            raise DomainError(f"state.v must be >= 0, got {self.v}")
        if not 0 < self.i <= 1:
            raise DomainError(f"state.i must be in (0, 1], got {self.i}")
        if not 0 <= self.theta < 90:
            raise DomainError(f"state.theta must be in [0, 90) deg, got {self.theta}")
        if not self.g > 0:
            raise DomainError(f"state.g must be > 0, got {self.g}")
        if self.W is not None and self.W < 0:
            raise DomainError(f"state.W must be >= 0, got {self.W}")

    @property
    def weight(self):
        return self.W if self.W is not None else self.m * self.g


def internal_resistance(W, v):
    """Running-gear losses W/1000 * (133 + 9 v), W in N and v in m/s."""
    if W < 0 or v < 0:
        raise DomainError(f"W and v must be >= 0, got W={W}, v={v}")
    return W / 1000.0 * (133.0 + 9.0 * v)


def bulldozing_resistance(z_o, terrain, b):
    """Bulldozing resistance of both tracks pushing soil ahead to depth ``z_o``.

    Closed form of 2b * integral_0^z_o (gamma K_p z + 2 c sqrt(K_p)) dz with
    K_p taken from ``terrain.passive_coefficient()``.
    """
    if z_o < 0:
        raise DomainError(f"sinkage must be >= 0, got {z_o}")
    kp, _ = terrain.passive_coefficient()
    gamma = terrain.gamma * 1000.0
    c = terrain.c * 1000.0
    return 2.0 * b * (gamma * kp * z_o**2 / 2.0 + 2.0 * c * math.sqrt(kp) * z_o)


@dataclass(frozen=True)
class CompactionResult:
    value: float
    mode: str
    error: float = 0.0


def _slip_integrand(n, i):
    power = n + 1.0

    def integrand(x):
        return (78.0 - 2.78 * math.exp(-0.009 * (i * x) ** 1.77)) ** power

    return integrand


def compaction_resistance(z_o, terrain, geom, i, mode=BEKKER_CLASSIC):
    """Compaction resistance of one track in N.

    ``bekker-classic`` gives b k z_o^(n+1) / (n+1). ``verbatim-eq8`` multiplies
    the same term by the mean over [0, l] of the slip-sinkage integrand
    (78 - 2.78 exp(-0.009 (i x)^1.77))^(n+1), integrated adaptively; its
    ``error`` field holds the achieved quadrature error in N.
    """
    if mode not in COMPACTION_MODES:
        raise DomainError(f"unknown compaction mode {mode!r}; expected one of {COMPACTION_MODES}")
    if z_o < 0:
        raise DomainError(f"sinkage must be >= 0, got {z_o}")
    if not geom.l > 0:
        raise DomainError(f"contact length must be > 0, got {geom.l}")
    if not 0 < i <= 1:
        raise DomainError(f"slip ratio must be in (0, 1], got {i}")
    n = terrain.n
    k = sinkage_modulus(terrain, geom.b) * 1000.0
    classic = geom.b * k * z_o ** (n + 1) / (n + 1)
    if mode == BEKKER_CLASSIC or classic == 0.0:
        return CompactionResult(classic, mode)

    scale = classic / geom.l
    quad = adaptive_simpson(
        _slip_integrand(n, i),
        0.0,
        geom.l,
        abs_tol=QUAD_ABS_TOL / scale,
        max_depth=QUAD_MAX_DEPTH,
    )
    return CompactionResult(scale * quad.value, mode, scale * quad.error)


def grade_resistance(W, theta):
    """Weight component W sin(theta) along a slope of ``theta`` degrees."""
    if W < 0:
        raise DomainError(f"W must be >= 0, got {W}")
    if not 0 <= theta < 90:
        raise DomainError(f"grade must be in [0, 90) deg, got {theta}")
    return W * math.sin(math.radians(theta))
