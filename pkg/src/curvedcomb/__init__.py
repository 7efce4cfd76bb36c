"""Differential capacitive transduction with curved comb electrodes.

Closed-form capacitance, bridge gain, and sensitivity for a one-axis
accelerometer cell whose fixed electrodes may be convex, concave, or
flat circular-arc profiles, plus numeric oracles (adaptive quadrature,
finite differences) that cross-check every closed form, and sweep /
optimization drivers over arc length.
"""

from .capacitance import (
    GeometryDomainError,
    cap_concave,
    cap_convex,
    cap_planar,
    dcap_dgap,
    face_capacitance,
)
from .model import (
    CONCAVE_EDGE_MARGIN_REL,
    POLYSILICON_DENSITY,
    STANDARD_GRAVITY,
    VACUUM_PERMITTIVITY,
    ArcProfile,
    DriveModel,
    ElectrodeConfig,
    FaceKind,
    FeedbackMode,
    GapAnchor,
    GapState,
    MechanicalModel,
    PlanarProfile,
    SideReport,
    ValidityReport,
    Variant,
    Violation,
    displacement,
    estimate_plate_mass,
    side_gap_bounds,
    side_nominal_gaps,
    validate_geometry,
)
from .oracles import (
    FDResult,
    FiniteDiffScheme,
    FiniteDiffSpec,
    QuadratureNonConvergence,
    QuadratureResult,
    QuadratureSpec,
    fd_derivative,
    integrate_adaptive,
    quad_capacitance,
)
from .sweep import (
    ARTIFACT_VERSION,
    DEFAULT_ARC_BOUNDS_M,
    ArcMode,
    SweepPlan,
    SweepResult,
    SweepRow,
    gain_curve,
    maximize_sensitivity,
    sensitivity_sweep,
)
from .transduction import (
    BridgeState,
    OverRangeError,
    TransductionPoint,
    allowed_displacement_interval,
    bridge_at_side_nominals,
    bridge_capacitances,
    fd_sensitivity,
    gain,
    gain_at_side_nominals,
    net_sensitivity,
    sensitivity,
    sensitivity_at_side_nominals,
)

__version__ = ARTIFACT_VERSION

__all__ = [
    "ARTIFACT_VERSION",
    "ArcMode",
    "ArcProfile",
    "BridgeState",
    "CONCAVE_EDGE_MARGIN_REL",
    "DEFAULT_ARC_BOUNDS_M",
    "DriveModel",
    "ElectrodeConfig",
    "FDResult",
    "FaceKind",
    "FeedbackMode",
    "FiniteDiffScheme",
    "FiniteDiffSpec",
    "GapAnchor",
    "GapState",
    "GeometryDomainError",
    "MechanicalModel",
    "OverRangeError",
    "POLYSILICON_DENSITY",
    "PlanarProfile",
    "QuadratureNonConvergence",
    "QuadratureResult",
    "QuadratureSpec",
    "STANDARD_GRAVITY",
    "SideReport",
    "SweepPlan",
    "SweepResult",
    "SweepRow",
    "TransductionPoint",
    "VACUUM_PERMITTIVITY",
    "ValidityReport",
    "Variant",
    "Violation",
    "allowed_displacement_interval",
    "bridge_at_side_nominals",
    "bridge_capacitances",
    "cap_concave",
    "cap_convex",
    "cap_planar",
    "dcap_dgap",
    "displacement",
    "estimate_plate_mass",
    "face_capacitance",
    "fd_derivative",
    "fd_sensitivity",
    "gain",
    "gain_at_side_nominals",
    "gain_curve",
    "integrate_adaptive",
    "maximize_sensitivity",
    "net_sensitivity",
    "quad_capacitance",
    "sensitivity",
    "sensitivity_at_side_nominals",
    "sensitivity_sweep",
    "side_gap_bounds",
    "side_nominal_gaps",
    "validate_geometry",
]
