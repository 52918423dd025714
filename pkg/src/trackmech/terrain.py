"""Soft-soil parameters and the Bekker pressure-sinkage relation.

Units at this boundary follow the way soil tables are usually printed:
k_c in kN/m^(n+1), k_phi in kN/m^(n+2), c in kPa, gamma in kN/m^3,
K in m, phi in degrees. Pressures are in kPa and sinkage in m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError


@dataclass(frozen=True)
class TerrainParams:
    n: float
    k_c: float
    k_phi: float
    c: float
    phi: float
    gamma: float
    K: float
    mu_t: Optional[float] = None
    f_r: Optional[float] = None
    kp_override: Optional[float] = None

    def __post_init__(self):
        if not self.n > 0:
            raise DomainError(f"terrain.n must be > 0, got {self.n}")
        if not self.K > 0:
            raise DomainError(f"terrain.K must be > 0, got {self.K}")
        if self.c < 0:
            raise DomainError(f"terrain.c must be >= 0, got {self.c}")
        if self.gamma < 0:
            raise DomainError(f"terrain.gamma must be >= 0, got {self.gamma}")
        if not 0 <= self.phi < 90:
            raise DomainError(f"terrain.phi must be in [0, 90) deg, got {self.phi}")
        if self.mu_t is not None and not self.mu_t > 0:
            raise DomainError(f"terrain.mu_t must be > 0, got {self.mu_t}")
        if self.f_r is not None and self.f_r < 0:
            raise DomainError(f"terrain.f_r must be >= 0, got {self.f_r}")
        if self.kp_override is not None and not self.kp_override > 0:
            raise DomainError(f"terrain.kp_override must be > 0, got {self.kp_override}")

    def passive_coefficient(self):
        """Return ``(K_p, source)`` where source is ``"override"`` or ``"formula"``."""
        if self.kp_override is not None:
            return self.kp_override, "override"
        return rankine_kp(self.phi), "formula"


def rankine_kp(phi):
    """Rankine passive earth pressure coefficient tan^2(pi/4 + phi/2).

    :param phi: internal friction angle in degrees, 0 <= phi < 90.
    """
    if not 0 <= phi < 90:
        raise DomainError(f"phi must be in [0, 90) deg, got {phi}")
    return math.tan(math.pi / 4 + math.radians(phi) / 2) ** 2


def sinkage_modulus(terrain, b):
    """Combined sinkage modulus k = k_c/b + k_phi in kN/m^(n+2)."""
    if not b > 0:
        raise DomainError(f"track width b must be > 0, got {b}")
    return terrain.k_c / b + terrain.k_phi


def ground_pressure(W, b, l):
    """Mean contact pressure W/(2 b l) of a two-track vehicle, in kPa.

    :param W: vehicle weight in N.
    :param b: track width in m.
    :param l: contact length in m.
    """
    if W < 0:
        raise DomainError(f"weight W must be >= 0, got {W}")
    if not b > 0 or not l > 0:
        raise DomainError(f"track dimensions must be > 0, got b={b}, l={l}")
    return W / (2.0 * b * l) / 1000.0


def static_sinkage(p, terrain, b):
    """Static sinkage (p/k)^(1/n) in m for a pressure ``p`` in kPa."""
    if p < 0:
        raise DomainError(f"pressure must be >= 0, got {p}")
    k = sinkage_modulus(terrain, b)
    if not k > 0:
        raise DomainError(f"sinkage modulus k_c/b + k_phi must be > 0, got {k}")
    return (p / k) ** (1.0 / terrain.n)


# Soft soil row of the reference chassis study; K is 2.5 cm.
PAPER_SOFT_SOIL = TerrainParams(
    n=0.8,
    k_c=16.54,
    k_phi=911.4,
    c=6.89,
    phi=29.0,
    gamma=15.0,
    K=0.025,
)

PRESETS = {"paper-soft-soil": PAPER_SOFT_SOIL}
