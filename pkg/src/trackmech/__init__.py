"""Tracked-chassis tractive performance on soft soil and mission feasibility checks."""

from .chassis import TrackGeometry, contact_area, roadwheel_pitch_ratio, steering_check
from .errors import ConfigError, DomainError, NumericalError, TrackmechError
from .mission import (
    ExtinguisherSpec,
    FeasibilityReport,
    FireTestSpec,
    ReachRequirements,
    circumnavigation_time,
    discharge_budget_check,
    reach_check,
    slope_climb_check,
    temperature_check,
)
from .resistance import (
    VehicleOperatingState,
    bulldozing_resistance,
    compaction_resistance,
    grade_resistance,
    internal_resistance,
)
from .sweep import DesignSpace, SweepResult, sweep
from .terrain import TerrainParams, ground_pressure, rankine_kp, sinkage_modulus, static_sinkage
from .traction import PerformanceReport, acceleration, evaluate, soil_thrust

__version__ = "0.1.0"
