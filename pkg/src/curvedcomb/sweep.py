"""Parameter sweeps, curve generation, comparison, and arc-length
optimization of sensitivity.

Sweeps exist to answer cross-variant questions, so they default to the
FACE_PLANE gap anchor: every variant is built by bowing the same flat
electrode out of the same mounting plane, which is the construction under
which curvature genuinely trades sensitivity (convex arcs encroach into
the gap and win, concave arcs recede and lose). Under the APEX anchor the
nearest-point distance is pinned instead and those trends invert; both
anchors are available on the plan.

Arc length can be swept two ways: VARY_PHI_FIXED_R widens the angular
extent at fixed radius (the bow deepens with arc length and eventually
reaches the gap), VARY_R_FIXED_ARC scales the radius at fixed angular
extent (a similarity family whose bow stays proportional to arc length).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .model import (
    STANDARD_GRAVITY,
    ArcProfile,
    DriveModel,
    ElectrodeConfig,
    GapAnchor,
    GapState,
    MechanicalModel,
    Variant,
    side_nominal_gaps,
    validate_geometry,
)
from .transduction import (
    OverRangeError,
    bridge_at_side_nominals,
    gain_at_side_nominals,
    net_sensitivity,
    sensitivity_at_side_nominals,
)

__all__ = [
    "ArcMode",
    "SweepPlan",
    "SweepRow",
    "SweepResult",
    "gain_curve",
    "sensitivity_sweep",
    "maximize_sensitivity",
    "DEFAULT_ARC_BOUNDS_M",
]

ARTIFACT_VERSION = "0.1.0"

# Default optimization interval for maximize_sensitivity (m).
DEFAULT_ARC_BOUNDS_M = (5e-6, 60e-6)

_VARIANT_ORDER = {v: i for i, v in enumerate(Variant)}


class ArcMode(Enum):
    VARY_PHI_FIXED_R = "vary-phi-fixed-r"
    VARY_R_FIXED_ARC = "vary-r-fixed-arc"


@dataclass(frozen=True)
class SweepPlan:
    """Shared geometry/readout parameters plus the grids to sweep.

    profile supplies the fixed quantity of the arc mode (the radius for
    VARY_PHI_FIXED_R, the angular extent for VARY_R_FIXED_ARC) and the
    thickness; gain_curve uses it verbatim as the fixed geometry. The gap
    state must be at rest (displacement comes from the swept
    accelerations, never from the plan).
    """

    variants: tuple[Variant, ...]
    profile: ArcProfile
    gap: GapState
    mech: MechanicalModel
    drive: DriveModel
    arc_mode: ArcMode = ArcMode.VARY_PHI_FIXED_R
    gap_anchor: GapAnchor = GapAnchor.FACE_PLANE
    arc_range_m: tuple[float, float] = DEFAULT_ARC_BOUNDS_M
    arc_points: int = 20
    accel_range_g: tuple[float, float] = (-1.0, 1.0)
    accel_points: int = 21

    def __post_init__(self) -> None:
        if not self.variants:
            raise ValueError("plan needs at least one variant")
        if self.gap.displacement_m != 0.0:
            raise ValueError("plan gap must be at rest (displacement 0)")
        for name, (lo, hi), count in (
            ("arc", self.arc_range_m, self.arc_points),
            ("accel", self.accel_range_g, self.accel_points),
        ):
            if not lo < hi:
                raise ValueError(f"{name} range must satisfy min < max, got [{lo}, {hi}]")
            if count < 2:
                raise ValueError(f"{name} point count must be >= 2, got {count}")
        if self.arc_range_m[0] <= 0.0:
            raise ValueError("arc lengths must be positive")
        if (
            self.arc_mode is ArcMode.VARY_R_FIXED_ARC
            and self.profile.angular_extent_rad <= 0.0
        ):
            raise ValueError(
                "VARY_R_FIXED_ARC needs a positive angular extent on the plan profile"
            )


@dataclass(frozen=True)
class SweepRow:
    variant: Variant
    arc_length_m: float
    radius_m: float
    phi_rad: float
    accel_g: float
    displacement_m: float
    c1_f: float
    c2_f: float
    gain: float
    v_out_v: float
    s_mv_per_g: float
    s_net_mv_per_g: float


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    metadata: dict = field(default_factory=dict)


def _linspace(lo: float, hi: float, n: int) -> list[float]:
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n - 1)] + [hi]


def _ordered_variants(variants: Iterable[Variant]) -> list[Variant]:
    seen = set()
    unique = [v for v in variants if not (v in seen or seen.add(v))]
    return sorted(unique, key=_VARIANT_ORDER.__getitem__)


def _profile_at(plan: SweepPlan, arc_length_m: float) -> ArcProfile:
    """Profile realizing one grid arc length under the plan's mode.

    Raises ValueError when the arc length is unrealizable (e.g. the
    angular extent would leave [0, pi) at fixed radius).
    """
    h = plan.profile.thickness_m
    if plan.arc_mode is ArcMode.VARY_PHI_FIXED_R:
        r = plan.profile.radius_m
        return ArcProfile(r, arc_length_m / r, h)
    phi = plan.profile.angular_extent_rad
    return ArcProfile(arc_length_m / phi, phi, h)


def _echo(plan: SweepPlan) -> dict:
    return {
        "variants": [v.value for v in plan.variants],
        "arc_mode": plan.arc_mode.value,
        "gap_anchor": plan.gap_anchor.value,
        "radius_m": plan.profile.radius_m,
        "angular_extent_rad": plan.profile.angular_extent_rad,
        "thickness_m": plan.profile.thickness_m,
        "gap_m": plan.gap.gap_m,
        "mass_kg": plan.mech.mass_kg,
        "spring_n_per_m": plan.mech.spring_n_per_m,
        "comb_count": plan.mech.comb_count,
        "v_in_volts": plan.drive.v_in_volts,
        "feedback_mode": plan.drive.feedback_mode.value,
        "permittivity_f_per_m": plan.drive.permittivity_f_per_m,
        "arc_range_m": list(plan.arc_range_m),
        "arc_points": plan.arc_points,
        "accel_range_g": list(plan.accel_range_g),
        "accel_points": plan.accel_points,
        "version": ARTIFACT_VERSION,
    }


def _validity_reason(
    config: ElectrodeConfig, gap: GapState, anchor: GapAnchor
) -> str | None:
    report = validate_geometry(config, gap, anchor)
    if report.ok:
        return None
    return "; ".join(f"side {v.side}: {v.rule}" for v in report.violations)


def sensitivity_sweep(plan: SweepPlan) -> SweepResult:
    """Per-comb and net sensitivity at rest over the arc-length grid.

    Grid points whose geometry is invalid for a variant are skipped, with
    the reason recorded in metadata["skipped"]; a plan with no valid
    point at all is rejected. Rows are sorted by (variant, arc length)
    and the evaluation is deterministic, so identical plans serialize to
    byte-identical CSV downstream.
    """
    arcs = _linspace(*plan.arc_range_m, plan.arc_points)
    rows: list[SweepRow] = []
    skipped: list[dict] = []
    for variant in _ordered_variants(plan.variants):
        for arc in arcs:
            try:
                prof = _profile_at(plan, arc)
            except ValueError as err:
                skipped.append(
                    {"variant": variant.value, "arc_length_m": arc, "reason": str(err)}
                )
                continue
            config = ElectrodeConfig.for_variant(variant, prof)
            reason = _validity_reason(config, plan.gap, plan.gap_anchor)
            if reason is not None:
                skipped.append(
                    {"variant": variant.value, "arc_length_m": arc, "reason": reason}
                )
                continue
            d1, d2 = side_nominal_gaps(config, plan.gap.gap_m, plan.gap_anchor)
            s = sensitivity_at_side_nominals(config, d1, d2, plan.mech, plan.drive, 0.0)
            bridge = bridge_at_side_nominals(config, d1, d2, 0.0, plan.drive)
            g0 = -(bridge.c2_f - bridge.c1_f) / bridge.c_fb_f
            rows.append(
                SweepRow(
                    variant=variant,
                    arc_length_m=arc,
                    radius_m=prof.radius_m,
                    phi_rad=prof.angular_extent_rad,
                    accel_g=0.0,
                    displacement_m=0.0,
                    c1_f=bridge.c1_f,
                    c2_f=bridge.c2_f,
                    gain=g0,
                    v_out_v=plan.drive.v_in_volts * g0,
                    s_mv_per_g=s * 1e3,
                    s_net_mv_per_g=net_sensitivity(s, plan.mech) * 1e3,
                )
            )
    if not rows:
        raise ValueError(
            "no valid grid points in the sweep plan; first reason: "
            + (skipped[0]["reason"] if skipped else "empty grid")
        )
    return SweepResult(tuple(rows), {"plan": _echo(plan), "skipped": skipped})


def gain_curve(plan: SweepPlan) -> SweepResult:
    """V_out versus acceleration per variant at the plan's fixed geometry.

    Over-range grid points are collected in metadata["over_range"]
    instead of aborting the sweep. metadata["fitted_slope_mv_per_g"]
    carries the least-squares slope of each variant's curve, the
    swept-range counterpart of the analytic point sensitivity.
    """
    accels_g = _linspace(*plan.accel_range_g, plan.accel_points)
    prof = plan.profile
    rows: list[SweepRow] = []
    over_range: list[dict] = []
    slopes: dict[str, float] = {}
    for variant in _ordered_variants(plan.variants):
        config = ElectrodeConfig.for_variant(variant, prof)
        reason = _validity_reason(config, plan.gap, plan.gap_anchor)
        if reason is not None:
            over_range.append(
                {"variant": variant.value, "accel_g": None, "reason": reason}
            )
            continue
        d1, d2 = side_nominal_gaps(config, plan.gap.gap_m, plan.gap_anchor)
        xs: list[float] = []
        ys: list[float] = []
        for a_g in accels_g:
            a = a_g * STANDARD_GRAVITY
            try:
                point = gain_at_side_nominals(config, d1, d2, plan.mech, plan.drive, a)
                s = sensitivity_at_side_nominals(
                    config, d1, d2, plan.mech, plan.drive, a
                )
            except OverRangeError as err:
                over_range.append(
                    {"variant": variant.value, "accel_g": a_g, "reason": str(err)}
                )
                continue
            xs.append(a_g)
            ys.append(point.v_out_volts)
            rows.append(
                SweepRow(
                    variant=variant,
                    arc_length_m=prof.arc_length(),
                    radius_m=prof.radius_m,
                    phi_rad=prof.angular_extent_rad,
                    accel_g=a_g,
                    displacement_m=point.displacement_m,
                    c1_f=point.bridge.c1_f,
                    c2_f=point.bridge.c2_f,
                    gain=point.gain,
                    v_out_v=point.v_out_volts,
                    s_mv_per_g=s * 1e3,
                    s_net_mv_per_g=net_sensitivity(s, plan.mech) * 1e3,
                )
            )
        if len(xs) >= 2:
            slopes[variant.value] = _least_squares_slope(xs, ys) * 1e3  # mV per g
    if not rows:
        raise ValueError("no valid grid points in the gain-curve plan")
    return SweepResult(
        tuple(rows),
        {
            "plan": _echo(plan),
            "over_range": over_range,
            "fitted_slope_mv_per_g": slopes,
        },
    )


def _least_squares_slope(xs: list[float], ys: list[float]) -> float:
    n = len(xs)
    x_mean = sum(xs) / n
    y_mean = sum(ys) / n
    sxx = sum((x - x_mean) ** 2 for x in xs)
    sxy = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    return sxy / sxx


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_ARC_TOL_M = 1e-10


def _sensitivity_at_arc(plan: SweepPlan, variant: Variant, arc_length_m: float) -> float:
    prof = _profile_at(plan, arc_length_m)
    config = ElectrodeConfig.for_variant(variant, prof)
    reason = _validity_reason(config, plan.gap, plan.gap_anchor)
    if reason is not None:
        raise ValueError(
            f"invalid geometry for {variant.value} at arc {arc_length_m} m: {reason}"
        )
    d1, d2 = side_nominal_gaps(config, plan.gap.gap_m, plan.gap_anchor)
    return sensitivity_at_side_nominals(config, d1, d2, plan.mech, plan.drive, 0.0)


def maximize_sensitivity(
    variant: Variant,
    arc_bounds_m: tuple[float, float],
    plan: SweepPlan,
) -> tuple[float, float]:
    """Arc length maximizing |S| for one variant, with the S it achieves.

    Golden-section search on |S(arc length)| to an absolute argument
    tolerance of 1e-10 m, sharing the plan's geometry mode, anchor, and
    readout parameters (the plan's own grids are not used). Every
    evaluation is remembered and both bounds are evaluated, so for
    monotone variants the returned point is the better interval endpoint
    rather than an interior golden point.

    Args:
        variant: electrode pairing to optimize.
        arc_bounds_m: inclusive (lo, hi) arc-length interval; lo == hi is
            the degenerate single-point case.
        plan: carrier of the shared parameters.

    Returns:
        (arc_length_m, sensitivity_volts_per_g) at the maximizing point.

    Raises:
        ValueError: if a bound is outside the geometric validity region.
    """
    lo, hi = arc_bounds_m
    if not 0.0 < lo <= hi:
        raise ValueError(f"bounds must satisfy 0 < lo <= hi, got [{lo}, {hi}]")
    evals: dict[float, float] = {}

    def f(arc: float) -> float:
        s = _sensitivity_at_arc(plan, variant, arc)
        evals[arc] = s
        return abs(s)

    f(lo)  # bound evaluations raise ValueError on invalid bounds
    if hi == lo:
        return lo, evals[lo]
    f(hi)
    a, b = lo, hi
    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    while (b - a) > _ARC_TOL_M:
        if f1 > f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = f(x2)
    best_arc = max(evals, key=lambda arc: abs(evals[arc]))
    return best_arc, evals[best_arc]
