"""Continuous-time physical models.

The rotational pitch plant drives the autopilot loop and runs in the loop's
degree-based units; the translational and hinge-moment helpers are plain SI
calculators.
"""

import math
from dataclasses import dataclass

from .aero import AeroDerivatives, MissileConfig
from .errors import DomainError


@dataclass(frozen=True)
class PitchPlantParams:
    """Rotational plant: J_z·w_ddot = c - lam·w_dot - d."""

    J_z: float = 40.0   # moment of inertia (loop units)
    lam: float = 6.0    # aerodynamic resistance (torque per unit rate)

    def __post_init__(self):
        if not self.J_z > 0:
            raise DomainError(f"J_z must be > 0, got {self.J_z}")
        if self.lam < 0:
            raise DomainError(f"lam must be >= 0, got {self.lam}")


@dataclass(frozen=True)
class PitchState:
    """Pitch angle (deg) and pitch rate (deg/s)."""

    omega: float
    omega_dot: float

    def __post_init__(self):
        if not (math.isfinite(self.omega) and math.isfinite(self.omega_dot)):
            raise DomainError("pitch state must be finite")


@dataclass(frozen=True)
class FlightPoint:
    """Forces and kinematics at one translational flight condition (SI)."""

    P: float            # thrust (N)
    D: float            # drag (N)
    L: float            # lift (N)
    alpha: float        # angle of attack (rad)
    m: float = 85.0     # mass (kg)
    g: float = 9.81     # gravity (m/s²)
    V_xb: float = 0.0   # body x velocity (m/s)
    V_yb: float = 0.0   # body y velocity (m/s)

    def __post_init__(self):
        if not (self.m > 0 and self.g > 0):
            raise DomainError("m and g must be > 0")


@dataclass(frozen=True)
class HingeMomentInputs:
    """Static data for the elevator hinge-moment gain."""

    S_T: float = 0.0865   # elevator reference area (m²)
    q: float = 23811.0    # dynamic pressure (Pa)
    d_E: float = 0.069    # hinge arm (m)
    C_Md: float = 0.267
    C_Ma: float = -0.300
    kappa: float = 0.0    # alpha-to-deflection ratio alpha(s)/delta(s)

    def __post_init__(self):
        if not (self.S_T > 0 and self.d_E > 0):
            raise DomainError("S_T and d_E must be > 0")
        if self.q < 0:
            raise DomainError("q must be >= 0")


def pitch_plant_deriv(params: PitchPlantParams, state: PitchState,
                      c, d):
    """State derivative (w_dot, w_ddot) of the rotational plant.

    w_ddot = c/J_z - (lam/J_z)·w_dot - d/J_z, with control torque c and
    time-varying disturbance torque d.
    """
    w_ddot = (c - params.lam * state.omega_dot - d) / params.J_z
    return state.omega_dot, w_ddot


def translational_accel(fp: FlightPoint):
    """Body-frame accelerations (a_xb, a_yb) in G units.

    a_yb is the normal acceleration a_N.  Signs follow the reduced force
    balance as published (both a_yb terms positive).
    """
    gm = fp.g * fp.m
    ca, sa = math.cos(fp.alpha), math.sin(fp.alpha)
    a_xb = (fp.P - fp.D * ca + fp.L * sa) / gm
    a_yb = (fp.D * sa + fp.L * ca) / gm
    return a_xb, a_yb


def resultant_speed(V_xb, V_yb):
    """Resultant speed sqrt(V_xb² + V_yb²)."""
    return math.hypot(V_xb, V_yb)


def flight_path_rate(a_N, V):
    """Flight-path (pitch) angular rate a_N/V in rad/s."""
    if not V > 0:
        raise DomainError(f"V must be > 0, got {V}")
    return a_N / V


def lift_drag(q, alpha, config: MissileConfig, derivs: AeroDerivatives):
    """Lift and drag (N) at dynamic pressure q and angle of attack alpha.

    L = q·S_W·(C_L0 + (C_La + 2·alpha)·alpha); D uses the base drag
    coefficient only (no induced-drag model is available).
    """
    if q < 0:
        raise DomainError(f"q must be >= 0, got {q}")
    cl = derivs.C_L0 + (derivs.C_La + 2.0 * alpha) * alpha
    L = q * config.S_W * cl
    D = q * config.S_ref * derivs.C_D0
    return L, D


def hinge_moment_gain(inputs: HingeMomentInputs):
    """Static hinge-moment gain S_T·q·d_E·(C_Md + C_Ma·kappa), torque/rad."""
    return inputs.S_T * inputs.q * inputs.d_E * (
        inputs.C_Md + inputs.C_Ma * inputs.kappa)
