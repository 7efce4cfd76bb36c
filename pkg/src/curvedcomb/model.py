"""Domain types for the curved-electrode accelerometer model.

Everything internal is SI: meters, kilograms, farads, volts, m/s^2.
Acceleration is reported "per g" only at presentation boundaries, using
the exact conventional constant g0 = 9.80665 m/s^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

VACUUM_PERMITTIVITY = 8.854e-12  # F/m, air/vacuum
STANDARD_GRAVITY = 9.80665  # m/s^2, exact by convention
POLYSILICON_DENSITY = 2320.0  # kg/m^3, for the non-normative mass estimate

# A concave face is evaluated only while its edge gap exceeds this fraction
# of the radius; closer than that the closed form is one ulp from divergence.
CONCAVE_EDGE_MARGIN_REL = 1e-12


class FaceKind(Enum):
    """Shape of one fixed-electrode face as seen by the movable plane."""

    CONVEX = "convex"
    CONCAVE = "concave"
    FLAT = "flat"


class Variant(Enum):
    """The seven electrode pairings. Declaration order is the canonical
    sort order used by sweep results and CSV output."""

    PLANAR = "Planar"
    BICONVEX = "Biconvex"
    BICONCAVE = "Biconcave"
    CONCAVO_CONVEX = "ConcavoConvex"
    CONVEXO_CONCAVE = "ConvexoConcave"
    PLANO_CONVEX = "PlanoConvex"
    PLANO_CONCAVE = "PlanoConcave"


# Side 1 is the side whose gap narrows under positive displacement (d - delta),
# side 2 the side that widens (d + delta).
SIDE_KINDS: dict[Variant, tuple[FaceKind, FaceKind]] = {
    Variant.PLANAR: (FaceKind.FLAT, FaceKind.FLAT),
    Variant.BICONVEX: (FaceKind.CONVEX, FaceKind.CONVEX),
    Variant.BICONCAVE: (FaceKind.CONCAVE, FaceKind.CONCAVE),
    Variant.CONCAVO_CONVEX: (FaceKind.CONVEX, FaceKind.CONCAVE),
    Variant.CONVEXO_CONCAVE: (FaceKind.CONCAVE, FaceKind.CONVEX),
    Variant.PLANO_CONVEX: (FaceKind.CONVEX, FaceKind.FLAT),
    Variant.PLANO_CONCAVE: (FaceKind.CONCAVE, FaceKind.FLAT),
}


class GapAnchor(Enum):
    """How the nominal gap d of a configuration is measured.

    APEX: d is the closed-form gap of every face directly, i.e. the
    apex-to-plane distance for convex faces and the center (deepest point)
    distance for concave faces. Holding d fixed while the arc grows keeps
    the nearest point of a convex face pinned.

    FACE_PLANE: d is the distance from the movable plane to the flat face
    plane the curved face is bowed out of. A convex face then bulges into
    the gap (closed-form gap d - sagitta) and a concave face recedes from
    it (closed-form gap d + sagitta), so a family of arcs shares one
    mounting envelope. This is the construction under which curvature
    trades capacitance against travel, and it is the default for sweeps
    and cross-variant comparisons.
    """

    APEX = "apex"
    FACE_PLANE = "face-plane"


@dataclass(frozen=True)
class ArcProfile:
    """A circular-arc electrode face.

    Attributes:
        radius_m: arc radius R (m).
        angular_extent_rad: full subtended angle phi (rad); the face spans
            -phi/2..+phi/2 about the apex.
        thickness_m: out-of-plane structure thickness h (m).
    """

    radius_m: float
    angular_extent_rad: float
    thickness_m: float

    def __post_init__(self) -> None:
        if self.radius_m <= 0.0:
            raise ValueError(f"radius_m must be positive, got {self.radius_m}")
        if self.thickness_m <= 0.0:
            raise ValueError(f"thickness_m must be positive, got {self.thickness_m}")
        if not 0.0 <= self.angular_extent_rad < math.pi:
            raise ValueError(
                f"angular_extent_rad must lie in [0, pi), got {self.angular_extent_rad}"
            )

    def arc_length(self) -> float:
        """R * phi (m)."""
        return self.radius_m * self.angular_extent_rad

    def sagitta(self) -> float:
        """Bow depth R * (1 - cos(phi/2)) (m)."""
        return self.radius_m * (1.0 - math.cos(self.angular_extent_rad / 2.0))

    def half_tan(self) -> float:
        """tan(phi/4), the T of the closed forms."""
        return math.tan(self.angular_extent_rad / 4.0)


@dataclass(frozen=True)
class PlanarProfile:
    """A flat electrode face of length b and thickness h."""

    length_m: float
    thickness_m: float

    def __post_init__(self) -> None:
        if self.length_m <= 0.0:
            raise ValueError(f"length_m must be positive, got {self.length_m}")
        if self.thickness_m <= 0.0:
            raise ValueError(f"thickness_m must be positive, got {self.thickness_m}")


@dataclass(frozen=True)
class GapState:
    """Nominal gap d and signed displacement delta of the movable electrode.

    Positive displacement narrows side 1 and widens side 2. Contact
    (|delta| >= d) is deliberately representable so that validate_geometry
    can report it; the capacitance layer refuses to evaluate it.
    """

    gap_m: float
    displacement_m: float = 0.0

    def __post_init__(self) -> None:
        if self.gap_m <= 0.0:
            raise ValueError(f"gap_m must be positive, got {self.gap_m}")


@dataclass(frozen=True)
class ElectrodeConfig:
    """One electrode pairing: a variant plus the profiles its faces use.

    The curved faces of a variant share a single ArcProfile; flat faces use
    planar_face. For variants with one flat fixed electrode the flat face
    must match the curved face's arc length (the electrodes are cut to the
    same length).
    """

    variant: Variant
    profile: ArcProfile
    planar_face: PlanarProfile

    def __post_init__(self) -> None:
        kinds = SIDE_KINDS[self.variant]
        if FaceKind.FLAT in kinds and self.variant is not Variant.PLANAR:
            want = self.profile.arc_length()
            got = self.planar_face.length_m
            if abs(got - want) > 1e-9 * max(want, 1e-30):
                raise ValueError(
                    "planar_face.length_m must equal profile.arc_length() for "
                    f"mixed variants: {got} != {want}"
                )

    @staticmethod
    def for_variant(variant: Variant, profile: ArcProfile) -> "ElectrodeConfig":
        """Build a config whose flat faces inherit the profile's arc length."""
        face = PlanarProfile(profile.arc_length(), profile.thickness_m)
        return ElectrodeConfig(variant, profile, face)

    def side_kinds(self) -> tuple[FaceKind, FaceKind]:
        return SIDE_KINDS[self.variant]


@dataclass(frozen=True)
class MechanicalModel:
    """Proof mass m, suspension stiffness k, and comb count N."""

    mass_kg: float
    spring_n_per_m: float
    comb_count: int = 1

    def __post_init__(self) -> None:
        if self.mass_kg <= 0.0:
            raise ValueError(f"mass_kg must be positive, got {self.mass_kg}")
        if self.spring_n_per_m <= 0.0:
            raise ValueError(
                f"spring_n_per_m must be positive, got {self.spring_n_per_m}"
            )
        if self.comb_count < 1:
            raise ValueError(f"comb_count must be >= 1, got {self.comb_count}")


class FeedbackMode(Enum):
    """Charge-amplifier feedback capacitance convention."""

    MATCHED_SUM = "matched-sum"  # C_fb tracks C1 + C2
    NOMINAL = "nominal"  # C_fb frozen at 2 * C0 (rest capacitance)


@dataclass(frozen=True)
class DriveModel:
    """Excitation amplitude and feedback mode of the readout bridge."""

    v_in_volts: float
    feedback_mode: FeedbackMode = FeedbackMode.MATCHED_SUM
    permittivity_f_per_m: float = VACUUM_PERMITTIVITY

    def __post_init__(self) -> None:
        if self.v_in_volts <= 0.0:
            raise ValueError(f"v_in_volts must be positive, got {self.v_in_volts}")
        if self.permittivity_f_per_m <= 0.0:
            raise ValueError(
                f"permittivity_f_per_m must be positive, got {self.permittivity_f_per_m}"
            )


def displacement(mech: MechanicalModel, accel_m_s2: float) -> float:
    """Static displacement delta = m * a / k (m), sign preserving.

    Validity against the gap is checked where the displacement is consumed.
    """
    return mech.mass_kg * accel_m_s2 / mech.spring_n_per_m


def estimate_plate_mass(
    length_m: float,
    width_m: float,
    thickness_m: float,
    density_kg_m3: float = POLYSILICON_DENSITY,
) -> float:
    """Estimate a proof-mass value from plate volume times density.

    This is a convenience estimate only (no etch-hole or spring-mass
    correction); measured or modal masses should be preferred when known.
    """
    if min(length_m, width_m, thickness_m, density_kg_m3) <= 0.0:
        raise ValueError("plate dimensions and density must be positive")
    return length_m * width_m * thickness_m * density_kg_m3


def side_nominal_gaps(
    config: ElectrodeConfig, gap_m: float, anchor: GapAnchor
) -> tuple[float, float]:
    """Closed-form nominal gap of each side under the given anchor.

    Under APEX both sides use gap_m directly. Under FACE_PLANE a convex
    face's closed-form gap is gap_m - sagitta (the bulge eats into the
    gap) and a concave face's is gap_m + sagitta (the hollow recedes);
    flat faces are unaffected.

    The returned values may be nonpositive for deep convex bows; callers
    are expected to validate before evaluating capacitance.
    """
    if anchor is GapAnchor.APEX:
        return gap_m, gap_m
    s = config.profile.sagitta()
    out = []
    for kind in config.side_kinds():
        if kind is FaceKind.CONVEX:
            out.append(gap_m - s)
        elif kind is FaceKind.CONCAVE:
            out.append(gap_m + s)
        else:
            out.append(gap_m)
    return out[0], out[1]


@dataclass(frozen=True)
class Violation:
    """One failed geometric validity rule."""

    side: int  # 1 or 2
    rule: str
    margin_m: float  # how far past the limit, as a length where meaningful


@dataclass(frozen=True)
class SideReport:
    """Per-side diagnostics from validate_geometry."""

    side: int
    kind: FaceKind
    closed_form_gap_m: float
    min_physical_gap_m: float
    atanh_argument: float | None  # concave faces only


@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    violations: tuple[Violation, ...]
    sides: tuple[SideReport, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.ok


def side_gap_bounds(kind: FaceKind, profile: ArcProfile) -> tuple[float, float]:
    """Open interval of admissible closed-form gaps for one face kind."""
    if kind is FaceKind.CONCAVE:
        lo = profile.sagitta() + CONCAVE_EDGE_MARGIN_REL * profile.radius_m
        return lo, 2.0 * profile.radius_m
    return 0.0, math.inf


def validate_geometry(
    config: ElectrodeConfig,
    gap: GapState,
    anchor: GapAnchor = GapAnchor.APEX,
) -> ValidityReport:
    """Check that both displaced gaps are physically and analytically valid.

    Rules per side (g is the side's displaced closed-form gap):
    convex and flat faces need g > 0; concave faces need
    sagitta + margin < g < 2R, where the margin is CONCAVE_EDGE_MARGIN_REL
    times R (closer than that, the closed form diverges at the arc edge).

    Never raises; returns a structured report with per-side minimum
    physical gaps and, for concave sides, the atanh argument whose
    approach to 1 signals edge contact.

    Args:
        config: electrode pairing under test.
        gap: nominal gap and displacement.
        anchor: gap convention used to place each face (default APEX).
    """
    d1, d2 = side_nominal_gaps(config, gap.gap_m, anchor)
    gaps = (d1 - gap.displacement_m, d2 + gap.displacement_m)
    violations: list[Violation] = []
    sides: list[SideReport] = []
    prof = config.profile
    for side, (kind, g) in enumerate(zip(config.side_kinds(), gaps), start=1):
        arg = None
        if kind is FaceKind.CONCAVE:
            sag = prof.sagitta()
            min_gap = g - sag  # edge gap
            lo, hi = side_gap_bounds(kind, prof)
            if g <= lo:
                violations.append(
                    Violation(side, "concave edge contact (gap <= sagitta + margin)", lo - g)
                )
            elif g >= hi:
                violations.append(
                    Violation(side, "concave gap outside formula domain (gap >= 2R)", g - hi)
                )
            if 0.0 < g < 2.0 * prof.radius_m:
                arg = prof.half_tan() * math.sqrt((2.0 * prof.radius_m - g) / g)
            elif g <= 0.0:
                violations.append(Violation(side, "gap not positive", -g))
        else:
            min_gap = g  # apex (convex) or uniform (flat) gap
            if g <= 0.0:
                violations.append(Violation(side, "gap not positive", -g))
        sides.append(SideReport(side, kind, g, min_gap, arg))
    return ValidityReport(not violations, tuple(violations), tuple(sides))
