import math
import random

import pytest

from curvedcomb import (
    ArcProfile,
    FaceKind,
    FiniteDiffScheme,
    FiniteDiffSpec,
    PlanarProfile,
    QuadratureNonConvergence,
    QuadratureSpec,
    cap_concave,
    cap_convex,
    cap_planar,
    fd_derivative,
    integrate_adaptive,
    quad_capacitance,
)
from conftest import STD_GAP, STD_H


class TestAdaptiveQuadrature:
    def test_polynomial_exact(self):
        res = integrate_adaptive(lambda x: x * x, 0.0, 1.0)
        assert res.value == pytest.approx(1.0 / 3.0, rel=1e-14)
        assert abs(res.value - 1.0 / 3.0) <= max(res.error_estimate, 1e-16)

    def test_sine_over_half_period(self):
        res = integrate_adaptive(math.sin, 0.0, math.pi)
        assert res.value == pytest.approx(2.0, rel=1e-13)

    def test_subdivides_near_integrable_singularity(self):
        res = integrate_adaptive(lambda x: 1.0 / math.sqrt(x + 1e-8), 0.0, 1.0)
        exact = 2.0 * (math.sqrt(1.0 + 1e-8) - math.sqrt(1e-8))
        assert res.value == pytest.approx(exact, rel=1e-10)
        assert res.subdivisions > 10

    def test_reversed_interval_changes_sign(self):
        fwd = integrate_adaptive(math.exp, 0.0, 1.0)
        rev = integrate_adaptive(math.exp, 1.0, 0.0)
        assert rev.value == pytest.approx(-fwd.value, rel=1e-14)

    def test_budget_exhaustion_raises_with_partial_value(self):
        spec = QuadratureSpec(rel_tol=1e-15, abs_tol=0.0, max_subdivisions=3)
        with pytest.raises(QuadratureNonConvergence) as err:
            integrate_adaptive(lambda x: 1.0 / math.sqrt(x + 1e-12), 0.0, 1.0, spec)
        assert err.value.value == pytest.approx(2.0, rel=1e-2)
        assert err.value.error_estimate > 0

    def test_deterministic_replay(self):
        f = lambda x: math.sin(37.0 * x) / (1.0 + x * x)
        a = integrate_adaptive(f, 0.0, 3.0)
        b = integrate_adaptive(f, 0.0, 3.0)
        assert a.value == b.value
        assert a.subdivisions == b.subdivisions

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol=-1.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_subdivisions=0)


class TestQuadCapacitance:
    def test_matches_closed_forms_on_random_cells(self, profile):
        rng = random.Random(91)
        for _ in range(50):
            r = rng.uniform(10e-6, 1000e-6)
            phi = rng.uniform(1e-3, 1.0)
            d = rng.uniform(0.5e-6, 10e-6)
            prof = ArcProfile(r, phi, STD_H)
            quad = quad_capacitance(FaceKind.CONVEX, prof, d)
            assert cap_convex(prof, d) == pytest.approx(quad.value, rel=1e-12)
            if d > prof.sagitta() * (1 + 1e-3):
                quad = quad_capacitance(FaceKind.CONCAVE, prof, d)
                assert cap_concave(prof, d) == pytest.approx(quad.value, rel=1e-12)

    def test_flat_route(self):
        face = PlanarProfile(20e-6, STD_H)
        quad = quad_capacitance(FaceKind.FLAT, face, STD_GAP)
        assert cap_planar(face, STD_GAP) == pytest.approx(quad.value, rel=1e-13)

    def test_domain_guards_mirror_closed_forms(self, profile):
        with pytest.raises(ValueError):
            quad_capacitance(FaceKind.CONVEX, profile, 0.0)
        with pytest.raises(ValueError):
            quad_capacitance(FaceKind.CONCAVE, profile, profile.sagitta())

    def test_agrees_with_external_quadrature(self, profile):
        # same integrand, third implementation: guards against a shared
        # bias between the closed forms and the in-house rule
        scipy_integrate = pytest.importorskip("scipy.integrate")
        eps = 8.854e-12
        r, phi, h, d = (
            profile.radius_m,
            profile.angular_extent_rad,
            profile.thickness_m,
            STD_GAP,
        )

        def convex_integrand(theta):
            return eps * h * r / (d + r - r * math.cos(theta))

        def concave_integrand(theta):
            return eps * h * r / (d + r * math.cos(theta) - r)

        for kind, f in (
            (FaceKind.CONVEX, convex_integrand),
            (FaceKind.CONCAVE, concave_integrand),
        ):
            external, _ = scipy_integrate.quad(
                f, -phi / 2, phi / 2, epsabs=1e-30, epsrel=1e-12
            )
            ours = quad_capacitance(kind, profile, d)
            assert ours.value == pytest.approx(external, rel=1e-11)


class TestFiniteDifferences:
    def test_exponential_at_zero(self):
        res = fd_derivative(math.exp, 0.0)
        assert res.value == pytest.approx(1.0, rel=1e-10)
        assert abs(res.value - 1.0) <= 10 * max(res.error_estimate, 1e-14)

    def test_scheme_accuracy_ordering(self):
        # same generous step for all three schemes: higher order wins
        errs = {}
        for scheme in FiniteDiffScheme:
            spec = FiniteDiffSpec(scheme=scheme, base_step=1e-3)
            res = fd_derivative(math.exp, 1.0, spec)
            errs[scheme] = abs(res.value - math.e)
        assert errs[FiniteDiffScheme.RICHARDSON_CENTRAL] < errs[FiniteDiffScheme.CENTRAL2]
        assert errs[FiniteDiffScheme.CENTRAL4] < errs[FiniteDiffScheme.CENTRAL2]

    def test_step_shrinks_into_narrow_domain(self):
        # f only defined on (0.9999, 1.0001); default first step is ~6e-5
        def fenced(x):
            if abs(x - 1.0) > 1e-4:
                raise ValueError("outside domain")
            return x * x

        res = fd_derivative(fenced, 1.0)
        assert res.value == pytest.approx(2.0, rel=1e-9)
        assert res.step_m < 1e-4

    def test_raises_when_no_step_admissible(self):
        def spike(x):
            if x != 1.0:
                raise ValueError("only defined at one point")
            return 0.0

        with pytest.raises(ValueError, match="admissible"):
            fd_derivative(spike, 1.0)

    def test_rejects_nonpositive_step(self):
        with pytest.raises(ValueError):
            FiniteDiffSpec(base_step=0.0)
