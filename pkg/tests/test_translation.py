"""Tests for the plane-parabola translation elements and the wave-expansion oracle."""

import cmath
import math

import numpy as np
import pytest
import scipy.integrate
from hypothesis import given, settings
from hypothesis import strategies as st

from paracasimir.specfun import DomainError, ParabolicPoint
from paracasimir.translation import (
    AccuracyError,
    SpectralPoint,
    green_parabolic,
    theta0_element,
    tilted_element,
)


def quadrature_oracle(n, n2, q, d):
    """Direct u-integral of the untilted element, scipy adaptive rule.

    After kx = q sinh u the integrand is
    (-1)^{(n+n2)/2} tanh^{n+n2}(u/2) sech^2(u/2) e^{-2qd cosh u},
    normalized by 1/(2 sqrt(2 pi)).
    """
    w = 2.0 * q * d
    total = n + n2

    def integrand(u):
        return (
            math.tanh(u / 2.0) ** total
            * (1.0 / math.cosh(u / 2.0)) ** 2
            * math.exp(-w * (math.cosh(u) - 1.0))
        )

    upper = math.acosh(1.0 + 45.0 / w)
    value, _ = scipy.integrate.quad(integrand, 0.0, upper, epsabs=1e-14, epsrel=1e-12)
    sign = (-1.0) ** (total // 2)
    return sign * 2.0 * value * math.exp(-w) / (2.0 * math.sqrt(2.0 * math.pi))


class TestSpectralPoint:
    @given(
        st.floats(1e-3, 50.0, allow_subnormal=False),
        st.floats(-50.0, 50.0, allow_subnormal=False),
        st.floats(-50.0, 50.0, allow_subnormal=False),
    )
    @settings(max_examples=80)
    def test_q_composition(self, kappa, kz, kx):
        point = SpectralPoint(kappa=kappa, kz=kz, kx=kx)
        assert point.q == pytest.approx(math.hypot(kappa, kz), rel=1e-14)
        assert point.ky_mag == pytest.approx(math.hypot(point.q, kx), rel=1e-14)

    def test_half_angle_substitution(self):
        # With kx = q sinh u the complex half angle obeys
        # tan(phi/2) = -i tanh(u/2).
        q = 1.7
        for u in (-2.0, -0.3, 0.0, 0.9, 3.1):
            point = SpectralPoint(kappa=q, kz=0.0, kx=q * math.sinh(u))
            got = cmath.tan(point.phi / 2.0)
            want = -1j * math.tanh(u / 2.0)
            assert got == pytest.approx(want, abs=1e-14)

    def test_damping_form(self):
        # e^{i ky d} continues to e^{-q d cosh u} on the imaginary
        # frequency contour.
        q, d, u = 0.8, 1.3, 1.1
        point = SpectralPoint(kappa=0.5, kz=math.sqrt(q * q - 0.25), kx=q * math.sinh(u))
        assert point.ky_mag * d == pytest.approx(q * d * math.cosh(u), rel=1e-14)


class TestTheta0Element:
    def test_odd_sums_vanish_exactly(self):
        for n, n2 in ((0, 1), (1, 2), (3, 0), (2, 5), (7, 8)):
            assert theta0_element(n, n2, 1.2, 0.9) == 0.0

    def test_against_direct_quadrature(self):
        value = theta0_element(0, 0, 1.0, 1.0)
        assert value == pytest.approx(quadrature_oracle(0, 0, 1.0, 1.0), rel=1e-8)

    def test_bateman_identity_random_orders(self):
        rng = np.random.default_rng(915)
        for _ in range(20):
            n = int(rng.integers(0, 13))
            n2 = n + 2 * int(rng.integers(0, 4))
            q = float(rng.uniform(0.3, 3.0))
            d = float(rng.uniform(0.4, 2.0))
            closed = theta0_element(n, n2, q, d)
            assert closed == pytest.approx(quadrature_oracle(n, n2, q, d), rel=1e-8)

    def test_symmetrized_orders_coincide(self):
        # Only n + n2 enters the closed form in the symmetrized
        # convention, so (2, 0) and (0, 2) are the same number.
        assert theta0_element(2, 0, 0.7, 1.1) == theta0_element(0, 2, 0.7, 1.1)
        assert theta0_element(5, 1, 2.0, 0.6) == theta0_element(1, 5, 2.0, 0.6)

    @pytest.mark.parametrize("args", [(0, 0, 0.0, 1.0), (0, 0, 1.0, -0.5)])
    def test_domain_errors(self, args):
        with pytest.raises(DomainError):
            theta0_element(*args)


class TestTiltedElement:
    @pytest.mark.parametrize(
        "n,n2,q,d",
        [(0, 0, 1.0, 1.0), (2, 0, 0.5, 1.5), (3, 3, 1.7, 0.8), (6, 2, 2.5, 1.2)],
    )
    def test_zero_tilt_reduces_to_closed_form(self, n, n2, q, d):
        assert tilted_element(n, n2, q, d, 0.0) == pytest.approx(
            theta0_element(n, n2, q, d), rel=1e-9
        )

    def test_swap_symmetry(self):
        for theta in (0.3, -0.7, 1.1):
            a = tilted_element(3, 5, 1.2, 0.9, theta)
            b = tilted_element(5, 3, 1.2, 0.9, -theta)
            assert a == pytest.approx(b, rel=1e-12)

    def test_doubling_distance_damps(self):
        for theta in (0.0, 0.5, 1.2):
            near = abs(tilted_element(2, 2, 1.0, 0.8, theta))
            far = abs(tilted_element(2, 2, 1.0, 1.6, theta))
            assert far < near

    def test_values_are_real_floats(self):
        for theta in (-1.3, -0.2, 0.4, 1.45):
            value = tilted_element(4, 2, 1.5, 1.0, theta)
            assert isinstance(value, float)
            assert math.isfinite(value)

    def test_coarse_quadrature_raises_accuracy_error(self):
        with pytest.raises(AccuracyError) as excinfo:
            tilted_element(30, 28, 2.0, 1.5, 1.2, node_count=2)
        assert excinfo.value.estimate > 0.0

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            tilted_element(0, 0, 1.0, 1.0, math.pi / 2)
        with pytest.raises(DomainError):
            tilted_element(0, 0, -1.0, 1.0, 0.0)


class TestGreenOracle:
    R1 = ParabolicPoint(0.8, 0.5, 0.0)
    R2 = ParabolicPoint(-0.3, 1.6, 0.4)

    @staticmethod
    def free_space(r1, r2, kappa):
        dist = math.dist(r1.to_cartesian(), r2.to_cartesian())
        return math.exp(-kappa * dist) / (4.0 * math.pi * dist)

    def test_converges_to_free_space(self):
        target = self.free_space(self.R1, self.R2, 1.0)
        errors = [
            abs(green_parabolic(self.R1, self.R2, 1.0, nu_max=nm) - target) / target
            for nm in (10, 20, 40)
        ]
        assert errors[0] > errors[1] > errors[2]
        assert errors[2] < 1e-6

    def test_unit_separation_value(self):
        # Shrink the pair to exactly unit separation; the limit value is
        # e^{-1}/(4 pi).
        scale = math.dist(self.R1.to_cartesian(), self.R2.to_cartesian())
        root = math.sqrt(scale)
        r1 = ParabolicPoint(self.R1.lam / root, self.R1.mu / root, self.R1.z / scale)
        r2 = ParabolicPoint(self.R2.lam / root, self.R2.mu / root, self.R2.z / scale)
        target = math.exp(-1.0) / (4.0 * math.pi)
        got = green_parabolic(r1, r2, 1.0, nu_max=120)
        assert got == pytest.approx(target, rel=2e-6)

    def test_symmetry_under_swap(self):
        a = green_parabolic(self.R1, self.R2, 1.0, nu_max=30)
        b = green_parabolic(self.R2, self.R1, 1.0, nu_max=30)
        assert a == b

    def test_coincident_points_rejected(self):
        with pytest.raises(DomainError):
            green_parabolic(self.R1, self.R1, 1.0)

    def test_equal_mu_rejected(self):
        with pytest.raises(DomainError):
            green_parabolic(
                ParabolicPoint(0.4, 0.7, 0.0), ParabolicPoint(-0.9, 0.7, 0.3), 1.0
            )
