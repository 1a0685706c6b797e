"""Conceptual-design calculators: wing sizing, tail sizing, stability margins.

All the routines here are pure functions over small value types, so they are
safe to call from anywhere.  Lengths are metres, areas m², coefficients per
radian unless noted.
"""

import math
from dataclasses import dataclass

from .errors import DomainError, SingularConfigurationError


@dataclass(frozen=True)
class MissileConfig:
    """Geometric and inertial summary of the airframe.

    All X_* stations are measured from the nose tip.  `b` is the full
    tip-to-tip span (the exposed-panel figure is b/2).
    """

    d: float = 0.2            # body diameter (m)
    l_M: float = 5.2          # overall length (m)
    l_N: float = 1.0          # nose length (m)
    l_B: float = 4.0          # body length (m)
    l_BT: float = 0.2         # boattail length (m)
    A_e: float = 0.015        # nozzle exit area (m²)
    b: float = 0.888          # full wingspan (m)
    S_W: float = 0.282        # wing area (m²)
    S_T: float = 0.0865       # tail area (m²)
    S_ref: float = math.pi / 4 * 0.2 ** 2   # reference area (m²)
    AR: float = 2.75          # aspect ratio
    C_MAC: float = 0.377      # mean aerodynamic chord (m)
    X_CG: float = 2.5         # centre of gravity (m from nose)
    X_AC: float = 3.15        # aerodynamic centre (m from nose)
    X_MAC: float = 2.75       # MAC station (m from nose)
    m: float = 85.0           # mass (kg)
    J_z: float = 40.0         # pitch moment of inertia (kg·m²)
    V_c: float = 250.0        # cruise speed (m/s)
    Ma: float = 0.85          # Mach number
    h: float = 6000.0         # altitude (m)

    def __post_init__(self):
        positives = {
            "d": self.d, "l_M": self.l_M, "l_N": self.l_N, "l_B": self.l_B,
            "l_BT": self.l_BT, "A_e": self.A_e, "b": self.b, "S_W": self.S_W,
            "S_T": self.S_T, "S_ref": self.S_ref, "AR": self.AR,
            "C_MAC": self.C_MAC, "m": self.m, "J_z": self.J_z,
        }
        for name, value in positives.items():
            if not value > 0:
                raise DomainError(f"MissileConfig.{name} must be > 0, got {value}")
        expected = math.pi / 4 * self.d ** 2
        if abs(self.S_ref - expected) > 1e-9 * expected:
            raise DomainError(
                f"S_ref must equal (pi/4)*d^2 = {expected!r}, got {self.S_ref!r}")
        if self.l_N + self.l_B > self.l_M + 1e-12:
            raise DomainError("l_N + l_B must not exceed l_M")


@dataclass(frozen=True)
class AeroDerivatives:
    """Aerodynamic derivatives (per radian where applicable).

    `C_La` is the constant part of the lift-curve slope; the slope itself is
    alpha-dependent: C_La(alpha) = C_La + 2*alpha.
    """

    C_L0: float = 0.924
    C_D0: float = 0.603
    C_La: float = 0.524
    C_Ma: float = -0.300
    C_Ld: float = 0.208
    C_Md: float = 0.267

    @property
    def statically_stable(self):
        return self.C_Ma < 0


@dataclass(frozen=True)
class TailSizingInputs:
    """Inputs to the tail-area ratio formula.

    `d` is the normalizing length applied to every moment arm.  The default
    set reproduces the published ratio of -2.754, which requires the arms to
    enter in metres, i.e. a unit normalizing length (see README notes on the
    source data).
    """

    d: float = 1.0
    S_W: float = 0.287
    S_ref: float = 0.0314
    X_CG: float = 2.5
    X_CP_body: float = 0.2
    X_CP_wing: float = 2.85
    X_CP_tail: float = 4.8
    X_AC: float = 0.094
    C_Na_body: float = 0.0
    C_Na_wing: float = 0.262
    C_Na_tail: float = 0.262

    def __post_init__(self):
        for name in ("d", "S_W", "S_ref"):
            if not getattr(self, name) > 0:
                raise DomainError(f"TailSizingInputs.{name} must be > 0")
        if self.C_Na_tail == 0:
            raise DomainError("C_Na_tail must be nonzero")


def wing_area_from_span(b, AR):
    """Wing area from full span and aspect ratio: S_W = b²/AR."""
    if not (b > 0 and AR > 0):
        raise DomainError(f"b and AR must be > 0, got b={b}, AR={AR}")
    return b * b / AR


def span_from_area(S_W, AR):
    """Inverse of wing_area_from_span: b = sqrt(S_W·AR)."""
    if not (S_W > 0 and AR > 0):
        raise DomainError(f"S_W and AR must be > 0, got S_W={S_W}, AR={AR}")
    return math.sqrt(S_W * AR)


def aspect_ratio(b, S_W):
    """Aspect ratio from full span and area: AR = b²/S_W."""
    if not (b > 0 and S_W > 0):
        raise DomainError(f"b and S_W must be > 0, got b={b}, S_W={S_W}")
    return b * b / S_W


def slender_wing_cn_alpha(AR):
    """Slender-wing normal-force slope (pi/2)·AR, per radian."""
    if not AR > 0:
        raise DomainError(f"AR must be > 0, got {AR}")
    return math.pi / 2 * AR


def tail_area_ratio(inputs: TailSizingInputs):
    """Required tail-to-reference area ratio S_T/S_ref.

    The formula balances body, wing, and static-margin pitching-moment
    contributions against the tail arm; the denominator applies to the
    static-margin term only, matching the printed grouping of the source
    sizing equation.  Arms are normalized by `inputs.d`.  The result can be
    negative; see tail_area for the magnitude convention.
    """
    d = inputs.d
    sw_ratio = inputs.S_W / inputs.S_ref
    body_arm = (inputs.X_CG - inputs.X_CP_body) / d
    wing_arm = (inputs.X_CG - inputs.X_CP_wing) / d
    margin_arm = (inputs.X_AC - inputs.X_CG) / d
    tail_arm = (inputs.X_CP_tail - inputs.X_CG) / d

    denom = inputs.C_Na_tail * tail_arm - margin_arm
    if denom == 0:
        raise SingularConfigurationError(
            "tail sizing denominator C_Na_tail*(X_CP_tail - X_CG)/d"
            " - (X_AC - X_CG)/d vanished")

    body_term = inputs.C_Na_body * body_arm
    wing_term = inputs.C_Na_wing * wing_arm * sw_ratio
    margin_term = (inputs.C_Na_body + inputs.C_Na_wing * sw_ratio) * margin_arm
    return body_term + wing_term + margin_term / denom


def tail_area(inputs: TailSizingInputs):
    """Tail area |S_T/S_ref|·S_ref; the ratio's sign is left to the caller."""
    return abs(tail_area_ratio(inputs)) * inputs.S_ref


def static_margin(X_AC, X_CG, l_M):
    """Static margin (X_AC - X_CG)/l_M; positive means statically stable."""
    if not l_M > 0:
        raise DomainError(f"l_M must be > 0, got {l_M}")
    return (X_AC - X_CG) / l_M


def static_margin_calibers(X_AC, X_CG, d):
    """Alternate static margin in calibers: (X_AC - X_CG)/d."""
    if not d > 0:
        raise DomainError(f"d must be > 0, got {d}")
    return (X_AC - X_CG) / d


def check_control_margin(C_Ma, C_Md):
    """Signed control-margin check: pass iff C_Ma < C_Md."""
    return C_Ma < C_Md


def sizing_report(config: MissileConfig, derivs: AeroDerivatives,
                  tail: TailSizingInputs):
    """Plain-text conceptual-sizing summary."""
    ratio = tail_area_ratio(tail)
    area = abs(ratio) * tail.S_ref
    margin = static_margin(config.X_AC, config.X_CG, config.l_M)
    cm_pass = check_control_margin(derivs.C_Ma, derivs.C_Md)
    lines = [
        "Conceptual sizing report",
        "------------------------",
        f"wing area S_W = b^2/AR = {wing_area_from_span(config.b, config.AR):.4f} m^2",
        f"tail area ratio S_T/S_ref = {ratio:.4f}",
        f"tail area S_T = {area:.4f} m^2",
        f"static margin = {margin * 100:.2f}% of length"
        f" ({static_margin_calibers(config.X_AC, config.X_CG, config.d):.3f} calibers)"
        f" -> {'stable' if margin > 0 else 'NOT stable'}",
        f"control margin C_Ma={derivs.C_Ma} < C_Md={derivs.C_Md}:"
        f" {'pass' if cm_pass else 'FAIL'}",
    ]
    return "\n".join(lines) + "\n"
