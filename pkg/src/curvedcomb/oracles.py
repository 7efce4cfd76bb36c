"""Independent numerical ground truth for the closed forms.

Two oracles live here: adaptive quadrature of the raw capacitance
integrands (never the closed forms), and finite-difference
differentiation for checking analytic derivatives and sensitivities.
Both are deterministic: the quadrature refines intervals
largest-error-first with a fixed tie-break, so a given input always
produces bit-identical output on a given platform.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .model import (
    CONCAVE_EDGE_MARGIN_REL,
    VACUUM_PERMITTIVITY,
    ArcProfile,
    FaceKind,
    PlanarProfile,
)

__all__ = [
    "QuadratureSpec",
    "QuadratureResult",
    "QuadratureNonConvergence",
    "integrate_adaptive",
    "quad_capacitance",
    "FiniteDiffScheme",
    "FiniteDiffSpec",
    "FDResult",
    "fd_derivative",
]

# 15-point Kronrod extension of 7-point Gauss-Legendre, positive half
# (standard published abscissae/weights, 16 significant digits).
_XGK = (
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993944,
    0.5860872354676911,
    0.4058451513773972,
    0.2077849550078985,
    0.0,
)
_WGK = (
    0.0229353220105292,
    0.0630920926299786,
    0.1047900103222502,
    0.1406532597155259,
    0.1690047266392679,
    0.1903505780647854,
    0.2044329400752989,
    0.2094821410847278,
)
# 7-point Gauss weights, matching _XGK[1], _XGK[3], _XGK[5], _XGK[7]
_WG = (
    0.1294849661688697,
    0.2797053914892767,
    0.3818300505051189,
    0.4179591836734694,
)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for adaptive integration."""

    rel_tol: float = 1e-12
    abs_tol: float = 1e-30
    max_subdivisions: int = 2000

    def __post_init__(self) -> None:
        if self.rel_tol <= 0.0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_subdivisions < 1:
            raise ValueError(
                f"max_subdivisions must be >= 1, got {self.max_subdivisions}"
            )


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    subdivisions: int


class QuadratureNonConvergence(RuntimeError):
    """The refinement budget ran out before reaching the tolerance."""

    def __init__(self, message: str, value: float, error_estimate: float):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


def _gk15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    """One Gauss-Kronrod 7/15 panel: returns (K15 value, |K15 - G7|)."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    resk = _WGK[7] * f(center)
    resg = _WG[3] * f(center)
    for i in range(7):
        dx = half * _XGK[i]
        fsum = f(center - dx) + f(center + dx)
        resk += _WGK[i] * fsum
        if i % 2 == 1:  # Kronrod nodes 1,3,5 are the Gauss nodes
            resg += _WG[i // 2] * fsum
    return resk * half, abs((resk - resg) * half)


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> QuadratureResult:
    """Adaptive integral of f over [a, b].

    Each interval carries an embedded low/high order rule pair; the
    interval with the largest error estimate is bisected first, with
    insertion order breaking ties, so refinement is reproducible.

    Raises:
        QuadratureNonConvergence: if the subdivision budget is exhausted
            before the requested tolerance is met. The partial value and
            its error estimate ride along on the exception.
    """
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    val, err = _gk15(f, a, b)
    # heap entries: (-error, insertion_seq, a, b, value, error)
    heap = [(-err, 0, a, b, val, err)]
    seq = 1
    total_val, total_err = val, err
    splits = 0
    while total_err > max(spec.abs_tol, spec.rel_tol * abs(total_val)):
        if splits >= spec.max_subdivisions:
            raise QuadratureNonConvergence(
                f"no convergence after {splits} subdivisions "
                f"(value {total_val}, error estimate {total_err})",
                total_val,
                total_err,
            )
        neg, _, lo, hi, v_old, e_old = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        total_val += v1 + v2 - v_old
        total_err += e1 + e2 - e_old
        heapq.heappush(heap, (-e1, seq, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, seq + 1, mid, hi, v2, e2))
        seq += 2
        splits += 1
    return QuadratureResult(total_val, total_err, splits)


def quad_capacitance(
    kind: FaceKind,
    profile: ArcProfile | PlanarProfile,
    gap_m: float,
    permittivity: float = VACUUM_PERMITTIVITY,
    spec: QuadratureSpec = QuadratureSpec(),
) -> QuadratureResult:
    """Capacitance of one face by direct integration of its gap profile.

    Integrates eps*h*R / d(theta) over theta in [-phi/2, +phi/2], where
    d(theta) is gap + R - R*cos(theta) for a convex face and
    gap + R*cos(theta) - R for a concave face; the flat face integrates
    the constant eps*h/gap along its length. Domain requirements match
    the closed forms.
    """
    if kind is FaceKind.FLAT:
        assert isinstance(profile, PlanarProfile)
        if gap_m <= 0.0:
            raise ValueError(f"flat face needs a positive gap, got {gap_m} m")
        h = profile.thickness_m

        def flat_integrand(_x: float) -> float:
            return permittivity * h / gap_m

        return integrate_adaptive(flat_integrand, 0.0, profile.length_m, spec)

    assert isinstance(profile, ArcProfile)
    if gap_m <= 0.0:
        raise ValueError(f"{kind.value} face needs a positive gap, got {gap_m} m")
    r = profile.radius_m
    h = profile.thickness_m
    if kind is FaceKind.CONCAVE:
        if gap_m - profile.sagitta() <= CONCAVE_EDGE_MARGIN_REL * r:
            raise ValueError(
                f"concave edge contact: gap {gap_m} m within margin of sagitta "
                f"{profile.sagitta()} m"
            )
        if gap_m >= 2.0 * r:
            raise ValueError(f"concave gap must stay below 2R, got {gap_m} m")

        def integrand(theta: float) -> float:
            return permittivity * h * r / (gap_m + r * math.cos(theta) - r)

    else:

        def integrand(theta: float) -> float:
            return permittivity * h * r / (gap_m + r - r * math.cos(theta))

    half_phi = 0.5 * profile.angular_extent_rad
    return integrate_adaptive(integrand, -half_phi, half_phi, spec)


class FiniteDiffScheme(Enum):
    CENTRAL2 = "central2"
    CENTRAL4 = "central4"
    RICHARDSON_CENTRAL = "richardson-central"


_CBRT_EPS = (2.0**-52) ** (1.0 / 3.0)


@dataclass(frozen=True)
class FiniteDiffSpec:
    """Scheme and step control for fd_derivative.

    base_step is relative: the trial step is base_step * max(|x|, 1).
    When None, the classic cube root of machine epsilon is used. Steps
    shrink geometrically when a stencil point falls outside the
    function's domain (signalled by ValueError), up to 40 attempts.
    """

    scheme: FiniteDiffScheme = FiniteDiffScheme.RICHARDSON_CENTRAL
    base_step: float | None = None

    def __post_init__(self) -> None:
        if self.base_step is not None and self.base_step <= 0.0:
            raise ValueError(f"base_step must be positive, got {self.base_step}")


@dataclass(frozen=True)
class FDResult:
    value: float
    error_estimate: float
    step_m: float


_MAX_SHRINKS = 40


def _central(f: Callable[[float], float], x: float, h: float) -> float | None:
    """Second-order central difference, or None if a stencil point is
    outside the domain."""
    try:
        return (f(x + h) - f(x - h)) / (2.0 * h)
    except ValueError:
        return None


def _central4(f: Callable[[float], float], x: float, h: float) -> float | None:
    try:
        num = -f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)
    except ValueError:
        return None
    return num / (12.0 * h)


def fd_derivative(
    f: Callable[[float], float],
    x: float,
    spec: FiniteDiffSpec = FiniteDiffSpec(),
) -> FDResult:
    """Finite-difference estimate of f'(x) with an error estimate.

    CENTRAL2 and CENTRAL4 report the half-step refinement as the value and
    the inter-step difference (suitably scaled) as the error estimate;
    RICHARDSON_CENTRAL combines the two central estimates into a
    fourth-order extrapolation.

    Raises:
        ValueError: if no admissible step exists after 40 geometric
            shrinks (every trial stencil left the function's domain).
    """
    h0 = (spec.base_step if spec.base_step is not None else _CBRT_EPS) * max(
        abs(x), 1.0
    )
    h = h0
    for _ in range(_MAX_SHRINKS):
        if x + 0.5 * h == x:  # stencil no longer resolvable in floating point
            break
        if spec.scheme is FiniteDiffScheme.CENTRAL4:
            d_full = _central4(f, x, h)
            d_half = _central4(f, x, 0.5 * h) if d_full is not None else None
            order_factor = 15.0  # next term is O(h^4)
        else:
            d_full = _central(f, x, h)
            d_half = _central(f, x, 0.5 * h) if d_full is not None else None
            order_factor = 3.0  # central difference error is O(h^2)
        if d_full is not None and d_half is not None:
            diff = abs(d_half - d_full)
            if spec.scheme is FiniteDiffScheme.RICHARDSON_CENTRAL:
                value = (4.0 * d_half - d_full) / 3.0
                return FDResult(value, diff / 3.0, h)
            return FDResult(d_half, diff / order_factor, 0.5 * h)
        h *= 0.5
    raise ValueError(
        f"no admissible finite-difference step at x={x} after {_MAX_SHRINKS} shrinks"
    )
