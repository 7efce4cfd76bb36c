"""Differential bridge readout: capacitances, voltage gain, sensitivity.

The movable plane sits between two fixed electrodes; displacement delta
narrows side 1 (capacitance C1 rises) and widens side 2. A charge
amplifier normalizes the imbalance to G = -(C2 - C1)/C_fb and the output
voltage is V_in * G. Sensitivity is the exact analytic dV_out/da, built
by the chain rule from the closed-form dC/dd of each face; a
finite-difference verification path over the gain is provided alongside
and the two are never merged.

Every operation here takes the closed-form gap of each side. Placement
conventions (model.GapAnchor) map a shared nominal gap to per-side
values, which the *_at_side_nominals forms accept directly; the plain
forms apply one gap to both sides.
"""

from __future__ import annotations

from dataclasses import dataclass

from .capacitance import GeometryDomainError, dcap_dgap, face_capacitance
from .model import (
    STANDARD_GRAVITY,
    ArcProfile,
    DriveModel,
    ElectrodeConfig,
    FaceKind,
    FeedbackMode,
    GapState,
    MechanicalModel,
    PlanarProfile,
    displacement,
    side_gap_bounds,
)
from .oracles import FiniteDiffScheme, FiniteDiffSpec, fd_derivative

__all__ = [
    "BridgeState",
    "TransductionPoint",
    "OverRangeError",
    "bridge_capacitances",
    "bridge_at_side_nominals",
    "gain",
    "gain_at_side_nominals",
    "sensitivity",
    "sensitivity_at_side_nominals",
    "net_sensitivity",
    "fd_sensitivity",
    "allowed_displacement_interval",
]


@dataclass(frozen=True)
class BridgeState:
    """The three capacitances of the readout bridge at one displacement."""

    c1_f: float  # side with gap d - delta
    c2_f: float  # side with gap d + delta
    c_fb_f: float  # feedback, per DriveModel mode


@dataclass(frozen=True)
class TransductionPoint:
    accel_m_s2: float
    displacement_m: float
    bridge: BridgeState
    gain: float  # G = V_out / V_in, dimensionless
    v_out_volts: float


class OverRangeError(ValueError):
    """The requested acceleration displaces the proof mass out of the
    valid gap range of at least one side."""

    def __init__(
        self,
        message: str,
        *,
        first_invalid_accel_m_s2: float,
        displacement_m: float,
    ):
        super().__init__(message)
        self.first_invalid_accel_m_s2 = first_invalid_accel_m_s2
        self.displacement_m = displacement_m


def _side_faces(
    config: ElectrodeConfig,
) -> tuple[tuple[FaceKind, ArcProfile | PlanarProfile], ...]:
    out = []
    for kind in config.side_kinds():
        prof: ArcProfile | PlanarProfile
        prof = config.planar_face if kind is FaceKind.FLAT else config.profile
        out.append((kind, prof))
    return tuple(out)


def _face_cap(
    config: ElectrodeConfig, side: int, gap_m: float, permittivity: float
) -> float:
    kind, prof = _side_faces(config)[side - 1]
    try:
        return face_capacitance(kind, prof, gap_m, permittivity)
    except GeometryDomainError as err:
        raise GeometryDomainError(
            f"side {side}: {err}", kind=err.kind, gap_m=err.gap_m
        ) from None


def allowed_displacement_interval(
    config: ElectrodeConfig, d1: float, d2: float
) -> tuple[float, float]:
    """Open interval of displacements keeping both sides valid.

    d1 and d2 are the per-side closed-form nominal gaps; side 1 sees
    d1 - delta and side 2 sees d2 + delta.
    """
    faces = _side_faces(config)
    lo1, hi1 = _bounds_for(faces[0])
    lo2, hi2 = _bounds_for(faces[1])
    lo = max(d1 - hi1, lo2 - d2)
    hi = min(d1 - lo1, hi2 - d2)
    return lo, hi


def _bounds_for(face: tuple[FaceKind, ArcProfile | PlanarProfile]) -> tuple[float, float]:
    kind, prof = face
    if kind is FaceKind.FLAT:
        return 0.0, float("inf")
    assert isinstance(prof, ArcProfile)
    return side_gap_bounds(kind, prof)


def _check_range(
    config: ElectrodeConfig,
    d1: float,
    d2: float,
    mech: MechanicalModel,
    delta: float,
    accel: float,
) -> None:
    lo, hi = allowed_displacement_interval(config, d1, d2)
    if lo < delta < hi:
        return
    # first acceleration at which the travel leaves the valid interval,
    # approached from rest along the sign of the request
    bound = hi if delta >= hi else lo
    first_bad = bound * mech.spring_n_per_m / mech.mass_kg
    raise OverRangeError(
        f"displacement {delta} m leaves the valid interval ({lo}, {hi}) m for "
        f"{config.variant.value}; first invalid acceleration is "
        f"{first_bad} m/s^2 ({first_bad / STANDARD_GRAVITY} g), requested {accel} m/s^2",
        first_invalid_accel_m_s2=first_bad,
        displacement_m=delta,
    )


def bridge_at_side_nominals(
    config: ElectrodeConfig,
    d1: float,
    d2: float,
    delta_m: float,
    drive: DriveModel,
) -> BridgeState:
    """Bridge capacitances with independently placed sides."""
    eps = drive.permittivity_f_per_m
    c1 = _face_cap(config, 1, d1 - delta_m, eps)
    c2 = _face_cap(config, 2, d2 + delta_m, eps)
    if drive.feedback_mode is FeedbackMode.MATCHED_SUM:
        c_fb = c1 + c2
    else:
        # rest capacitance 2*C0, with C0 the mean of the two undisplaced sides
        c_fb = _face_cap(config, 1, d1, eps) + _face_cap(config, 2, d2, eps)
    return BridgeState(c1, c2, c_fb)


def bridge_capacitances(
    config: ElectrodeConfig, gap: GapState, drive: DriveModel
) -> BridgeState:
    """C1, C2, C_fb at the given gap state (one nominal gap, both sides).

    Raises:
        GeometryDomainError: if either displaced gap leaves its face's
            domain; the message names the offending side.
    """
    return bridge_at_side_nominals(
        config, gap.gap_m, gap.gap_m, gap.displacement_m, drive
    )


def gain_at_side_nominals(
    config: ElectrodeConfig,
    d1: float,
    d2: float,
    mech: MechanicalModel,
    drive: DriveModel,
    accel_m_s2: float,
) -> TransductionPoint:
    """Gain evaluation with independently placed sides."""
    delta = displacement(mech, accel_m_s2)
    _check_range(config, d1, d2, mech, delta, accel_m_s2)
    bridge = bridge_at_side_nominals(config, d1, d2, delta, drive)
    g = -(bridge.c2_f - bridge.c1_f) / bridge.c_fb_f
    return TransductionPoint(accel_m_s2, delta, bridge, g, drive.v_in_volts * g)


def gain(
    config: ElectrodeConfig,
    gap_nominal_m: float,
    mech: MechanicalModel,
    drive: DriveModel,
    accel_m_s2: float,
) -> TransductionPoint:
    """Voltage gain G = -(C2 - C1)/C_fb and output voltage at one acceleration.

    For the planar variant under matched-sum feedback this collapses
    algebraically to G = delta/d.

    Raises:
        OverRangeError: if the proof-mass travel leaves the valid gap
            interval; the error names the first invalid acceleration.
    """
    return gain_at_side_nominals(
        config, gap_nominal_m, gap_nominal_m, mech, drive, accel_m_s2
    )


def sensitivity_at_side_nominals(
    config: ElectrodeConfig,
    d1: float,
    d2: float,
    mech: MechanicalModel,
    drive: DriveModel,
    accel_m_s2: float = 0.0,
) -> float:
    """Analytic sensitivity with independently placed sides (V per g)."""
    delta = displacement(mech, accel_m_s2)
    _check_range(config, d1, d2, mech, delta, accel_m_s2)
    eps = drive.permittivity_f_per_m
    faces = _side_faces(config)
    g1 = d1 - delta
    g2 = d2 + delta
    c1 = _face_cap(config, 1, g1, eps)
    c2 = _face_cap(config, 2, g2, eps)
    # dC1/ddelta = -dC/dd at g1; dC2/ddelta = +dC/dd at g2
    c1_slope = -dcap_dgap(faces[0][0], faces[0][1], g1, eps)
    c2_slope = dcap_dgap(faces[1][0], faces[1][1], g2, eps)
    if drive.feedback_mode is FeedbackMode.MATCHED_SUM:
        dg_ddelta = -2.0 * (c2_slope * c1 - c1_slope * c2) / (c1 + c2) ** 2
    else:
        c_fb = _face_cap(config, 1, d1, eps) + _face_cap(config, 2, d2, eps)
        dg_ddelta = -(c2_slope - c1_slope) / c_fb
    per_ms2 = drive.v_in_volts * (mech.mass_kg / mech.spring_n_per_m) * dg_ddelta
    return per_ms2 * STANDARD_GRAVITY


def sensitivity(
    config: ElectrodeConfig,
    gap_nominal_m: float,
    mech: MechanicalModel,
    drive: DriveModel,
    accel_m_s2: float = 0.0,
) -> float:
    """Exact analytic dV_out/da at the operating point, in volts per g.

    Computed as V_in * (m/k) * dG/ddelta * g0 with dG/ddelta from the
    quotient rule over (C1, C2) and the closed-form dC/dd. Presentation
    layers report this in mV/g.
    """
    return sensitivity_at_side_nominals(
        config, gap_nominal_m, gap_nominal_m, mech, drive, accel_m_s2
    )


def net_sensitivity(s_volts_per_g: float, mech: MechanicalModel) -> float:
    """Device-level sensitivity: the per-comb value scaled by the comb count.

    The scaling is the documented device-level convention. Note that in the
    ratio readout -(C2 - C1)/(C1 + C2) a common comb count cancels, so this
    is a reporting convention rather than a bridge-level consequence; both
    values are always reported side by side.
    """
    return s_volts_per_g * mech.comb_count


def fd_sensitivity(
    config: ElectrodeConfig,
    d1: float,
    d2: float,
    mech: MechanicalModel,
    drive: DriveModel,
    accel_m_s2: float = 0.0,
    spec: FiniteDiffSpec | None = None,
) -> float:
    """Finite-difference sensitivity (V per g): the verification route.

    Differentiates the gain in acceleration with a Richardson central
    stencil and scales by V_in * g0. Independent of dcap_dgap by
    construction; tests and --verify compare it against sensitivity().

    The default step is a small fraction of the distance to contact so
    the stencil stays inside the valid travel range.
    """
    delta = displacement(mech, accel_m_s2)
    if spec is None:
        lo, hi = allowed_displacement_interval(config, d1, d2)
        margin = min(hi - delta, delta - lo)
        if margin <= 0.0:
            _check_range(config, d1, d2, mech, delta, accel_m_s2)
        a_margin = margin * mech.spring_n_per_m / mech.mass_kg
        rel_step = 1e-3 * a_margin / max(abs(accel_m_s2), 1.0)
        spec = FiniteDiffSpec(FiniteDiffScheme.RICHARDSON_CENTRAL, rel_step)

    def gain_of_accel(a: float) -> float:
        return gain_at_side_nominals(config, d1, d2, mech, drive, a).gain

    slope = fd_derivative(gain_of_accel, accel_m_s2, spec).value
    return drive.v_in_volts * slope * STANDARD_GRAVITY
