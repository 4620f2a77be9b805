"""Tests for the scattering amplitudes and geometry container."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paracasimir.scattering import (
    BoundaryMode,
    Geometry,
    mode_for_parity,
    parabolic_amplitude,
    parabolic_amplitude_table,
    plane_amplitude,
)
from paracasimir.specfun import DomainError


class TestPlaneAmplitude:
    def test_perfect_mirror_signs(self):
        assert plane_amplitude(BoundaryMode.NEUMANN) == 1.0
        assert plane_amplitude(BoundaryMode.DIRICHLET) == -1.0


class TestGeometry:
    def test_derived_quantities(self):
        geom = Geometry(R=2.0, H=0.5, theta=0.1)
        assert geom.d == 0.5 + 1.0
        assert geom.d - geom.R / 2 == geom.H
        assert geom.mu0 == pytest.approx(math.sqrt(2.0), rel=1e-15)

    def test_knife_edge(self):
        geom = Geometry(R=0.0, H=1.0)
        assert geom.mu0 == 0.0
        assert geom.d == geom.H

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"R": -0.1, "H": 1.0},
            {"R": 1.0, "H": 0.0},
            {"R": 1.0, "H": -2.0},
            {"R": 1.0, "H": 1.0, "theta": math.pi / 2},
            {"R": 1.0, "H": 1.0, "theta": -math.pi / 2},
            {"R": 1.0, "H": 1.0, "theta": 2.0},
        ],
    )
    def test_invalid_geometry_rejected(self, kwargs):
        with pytest.raises(DomainError):
            Geometry(**kwargs)


class TestKnifeEdgeAmplitudes:
    def test_spot_values(self):
        expected = -math.sqrt(2.0 / math.pi)
        amp = parabolic_amplitude(0, BoundaryMode.DIRICHLET, 0.0)
        assert amp.value == pytest.approx(expected, rel=1e-13)
        amp = parabolic_amplitude(1, BoundaryMode.NEUMANN, 0.0)
        assert amp.value == pytest.approx(expected, rel=1e-13)
        for mode in BoundaryMode:
            amp = parabolic_amplitude(5, mode, 0.0)
            assert amp.value == pytest.approx(-120.0 * math.sqrt(2.0 / math.pi), rel=1e-13)

    def test_factorial_form_up_to_60(self):
        # At the knife edge, the amplitude of the parity-matched channel
        # is exactly -n! sqrt(2/pi); compare in log space so 60! cannot
        # overflow the check itself.
        for n in range(61):
            amp = parabolic_amplitude(n, mode_for_parity(n), 0.0)
            assert amp.sign == -1
            expected_log = math.lgamma(n + 1) + 0.5 * math.log(2.0 / math.pi)
            assert amp.logmag == pytest.approx(expected_log, abs=1e-10, rel=0.0)

    def test_parity_helper(self):
        assert mode_for_parity(0) is BoundaryMode.DIRICHLET
        assert mode_for_parity(4) is BoundaryMode.DIRICHLET
        assert mode_for_parity(1) is BoundaryMode.NEUMANN
        assert mode_for_parity(7) is BoundaryMode.NEUMANN

    def test_continuity_at_small_radius(self):
        # No branch jump between the closed form at 0 and the ratio
        # formula just off it.
        for n in range(0, 12):
            at_zero = parabolic_amplitude(n, mode_for_parity(n), 0.0)
            nearby = parabolic_amplitude(n, mode_for_parity(n), 1e-8)
            assert nearby.sign == at_zero.sign
            assert nearby.logmag == pytest.approx(at_zero.logmag, abs=1e-6)


class TestFiniteRadiusAmplitudes:
    @pytest.mark.parametrize("mu0_scaled", [0.3, 1.0, 2.7, 8.0])
    def test_dirichlet_sign_alternation(self, mu0_scaled):
        # f_n^D carries sign (-1)^{n+1} at positive argument.
        signs, _ = parabolic_amplitude_table(20, BoundaryMode.DIRICHLET, mu0_scaled)
        assert np.array_equal(signs, -((-1.0) ** np.arange(21)))

    @pytest.mark.parametrize("mu0_scaled", [0.3, 1.0, 2.7, 8.0])
    def test_neumann_sign_alternation(self, mu0_scaled):
        signs, _ = parabolic_amplitude_table(20, BoundaryMode.NEUMANN, mu0_scaled)
        assert np.array_equal(signs, (-1.0) ** np.arange(21))

    def test_table_matches_scalar(self):
        signs, logs = parabolic_amplitude_table(9, BoundaryMode.NEUMANN, 1.7)
        for n in (0, 3, 9):
            amp = parabolic_amplitude(n, BoundaryMode.NEUMANN, 1.7)
            assert amp.sign == signs[n]
            # The scalar path runs its own shorter backward recurrence,
            # so agreement is at the last-few-digits level, not bitwise.
            assert amp.logmag == pytest.approx(logs[n], abs=1e-12)

    @given(st.integers(0, 80), st.floats(1e-3, 10.0, allow_subnormal=False))
    @settings(max_examples=60, deadline=None)
    def test_amplitudes_finite(self, n, mu0_scaled):
        for mode in BoundaryMode:
            amp = parabolic_amplitude(n, mode, mu0_scaled)
            assert amp.sign in (-1, 1)
            assert math.isfinite(amp.logmag)

    def test_negative_argument_rejected(self):
        with pytest.raises(DomainError):
            parabolic_amplitude(0, BoundaryMode.DIRICHLET, -0.5)
