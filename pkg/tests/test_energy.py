"""Tests for spectral integration, extrapolation, channels, and temperature."""

import math

import numpy as np
import pytest

from paracasimir.energy import (
    EnergyResult,
    FitRejectedError,
    QuadratureSpec,
    c_theta,
    classical_coefficient,
    default_quadrature,
    energy_per_length,
    extrapolate_numax,
    thermal_energy,
)
from paracasimir.scattering import BoundaryMode, Geometry
from paracasimir.specfun import DomainError

KNIFE = Geometry(0.0, 1.0)
LADDER = (8, 16, 32, 64)


class TestExtrapolation:
    def test_constant_series(self):
        series = [(n, 0.25) for n in (10, 20, 40, 80)]
        limit, err = extrapolate_numax(series)
        assert limit == 0.25
        assert err == 0.0

    def test_synthetic_geometric_tail(self):
        series = [(n, 1.0 + 2.0 * 0.5**n) for n in range(10, 61, 10)]
        limit, err = extrapolate_numax(series)
        assert limit == pytest.approx(1.0, abs=1e-10)
        assert err < 1e-8

    def test_synthetic_algebraic_tail(self):
        series = [(n, 1.0 + 5.0 / n**2) for n in (10, 20, 40, 80, 160)]
        limit, err = extrapolate_numax(series)
        assert abs(limit - 1.0) < abs(series[-1][1] - 1.0)
        assert abs(limit - 1.0) <= err

    def test_too_few_points_rejected(self):
        with pytest.raises(FitRejectedError):
            extrapolate_numax([(10, 1.0), (20, 0.9), (40, 0.85)])

    def test_alternating_tail_rejected(self):
        series = [(n, 1.0 + (-0.5) ** (n // 10)) for n in (10, 20, 30, 40, 50)]
        with pytest.raises(FitRejectedError):
            extrapolate_numax(series)

    def test_expanding_differences_rejected(self):
        series = [(10, 1.0), (20, 1.1), (40, 1.3), (80, 1.7), (160, 2.5)]
        with pytest.raises(FitRejectedError):
            extrapolate_numax(series)


class TestQuadratureSpec:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"node_count": 1},
            {"mapping": "bogus"},
            {"tolerance": -1.0},
            {"qmin_scaled": 2.0, "qmax_scaled": 1.0},
        ],
    )
    def test_invalid_specs_rejected(self, kwargs):
        with pytest.raises(DomainError):
            QuadratureSpec(**kwargs)

    def test_default_widens_for_positive_radius(self):
        knife = default_quadrature(KNIFE)
        body = default_quadrature(Geometry(2.0, 1.0))
        assert body.qmax_scaled > knife.qmax_scaled

    def test_node_count_tightens_error_estimate(self):
        coarse = energy_per_length(KNIFE, QuadratureSpec(node_count=6), nu_max=32)
        fine = energy_per_length(KNIFE, QuadratureSpec(node_count=12), nu_max=32)
        assert fine.quad_error <= coarse.quad_error
        assert fine.value == pytest.approx(coarse.value, rel=1e-9)

    def test_linear_panels_mapping_agrees(self):
        spec = QuadratureSpec(mapping="linear-panels", panel_count=40)
        direct = energy_per_length(KNIFE, spec, nu_max=32)
        mapped = energy_per_length(KNIFE, nu_max=32)
        assert direct.value == pytest.approx(mapped.value, rel=1e-4)


class TestEnergyPerLength:
    def test_result_anatomy(self):
        result = energy_per_length(KNIFE, nu_max=LADDER)
        assert isinstance(result, EnergyResult)
        assert [n for n, _ in result.series] == list(LADDER)
        assert result.value < 0.0
        assert result.extrapolated < 0.0
        assert result.trunc_error >= 0.0
        assert result.quad_error >= 0.0
        assert result.channel == "em"
        assert abs(result.extrapolated) >= abs(result.series[-1][1]) * (1 - 1e-6)

    def test_knife_edge_ballpark(self):
        # Tight agreement with the frozen constants is the acceptance
        # suite's job; here only the level of the plateau is pinned.
        result = energy_per_length(KNIFE, nu_max=LADDER)
        assert result.extrapolated == pytest.approx(-0.0067415, abs=2e-5)

    def test_channel_additivity(self):
        parts = {
            ch: energy_per_length(KNIFE, nu_max=32, channel=ch)
            for ch in ("em", "dirichlet", "neumann")
        }
        assert parts["em"].value == pytest.approx(
            parts["dirichlet"].value + parts["neumann"].value, abs=1e-12
        )
        assert parts["dirichlet"].channel == "dirichlet"

    def test_scale_invariance(self):
        scaled = [
            h * h * energy_per_length(Geometry(0.0, h), nu_max=24).value
            for h in (0.5, 1.0, 2.0)
        ]
        assert scaled[0] == pytest.approx(scaled[1], rel=1e-10)
        assert scaled[2] == pytest.approx(scaled[1], rel=1e-10)

    def test_magnitude_nondecreasing_in_numax(self):
        values = [
            abs(energy_per_length(KNIFE, nu_max=n).value) for n in (4, 8, 16, 32)
        ]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_finite_radius_negative_and_stronger(self):
        knife = energy_per_length(KNIFE, nu_max=24)
        body = energy_per_length(Geometry(1.0, 1.0), nu_max=24)
        assert body.value < knife.value < 0.0

    def test_tilted_channel_values(self):
        geom = Geometry(0.0, 1.0, theta=0.5)
        em = energy_per_length(geom, nu_max=(8, 16, 32, 64))
        d = energy_per_length(geom, nu_max=(8, 16, 32, 64), channel="dirichlet")
        n = energy_per_length(geom, nu_max=(8, 16, 32, 64), channel="neumann")
        assert em.value == pytest.approx(d.value + n.value, abs=1e-12)
        assert em.value < 0.0

    def test_unknown_channel_rejected(self):
        with pytest.raises(DomainError):
            energy_per_length(KNIFE, nu_max=16, channel="scalar")


class TestCTheta:
    def test_zero_tilt_matches_untilted_constant(self):
        assert c_theta(0.0, nu_max=LADDER) == pytest.approx(0.0067415, abs=2e-5)

    def test_mirror_symmetry(self):
        assert c_theta(0.4, nu_max=32) == pytest.approx(
            c_theta(-0.4, nu_max=32), rel=1e-10
        )

    def test_analytic_endpoint(self):
        assert c_theta(math.pi / 2) == pytest.approx(math.pi**2 / 1440, rel=1e-15)
        assert c_theta(-math.pi / 2) == pytest.approx(math.pi**2 / 1440, rel=1e-15)
        for ch in ("dirichlet", "neumann"):
            assert c_theta(math.pi / 2, channel=ch) == pytest.approx(
                math.pi**2 / 2880, rel=1e-15
            )

    def test_near_parallel_floor_warning(self):
        with pytest.warns(UserWarning):
            value = c_theta(math.radians(86.0), nu_max=64)
        assert math.pi**2 / 2880 < value < math.pi**2 / 1440

    def test_interior_angle_between_endpoints(self):
        value = c_theta(math.radians(45.0), nu_max=(16, 32, 64, 128))
        assert 0.0060 < value < 0.0070


class TestThermal:
    def test_zero_temperature_delegates(self):
        cold = thermal_energy(KNIFE, 0.0, nu_max=16)
        direct = energy_per_length(KNIFE, nu_max=16)
        assert cold.value == direct.value

    def test_negative_temperature_rejected(self):
        with pytest.raises(DomainError):
            thermal_energy(KNIFE, -0.1, nu_max=16)

    def test_small_temperature_approach(self):
        base = energy_per_length(KNIFE, nu_max=32).value
        gaps = [
            abs(thermal_energy(KNIFE, ts, nu_max=32).value - base)
            for ts in (0.2, 0.1, 0.05)
        ]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 5e-4

    def test_thermal_strengthens_attraction(self):
        base = energy_per_length(KNIFE, nu_max=32).value
        warm = thermal_energy(KNIFE, 0.3, nu_max=32)
        assert isinstance(warm, EnergyResult)
        assert warm.value < base < 0.0

    def test_channel_additivity(self):
        em = thermal_energy(KNIFE, 0.25, nu_max=24).value
        d = thermal_energy(KNIFE, 0.25, nu_max=24, channel="dirichlet").value
        n = thermal_energy(KNIFE, 0.25, nu_max=24, channel="neumann").value
        assert em == pytest.approx(d + n, abs=1e-12)


class TestClassicalCoefficient:
    def test_combined_channel_level(self):
        # Full-accuracy channel targets are exercised by the acceptance
        # suite at nu_max = 200; this guards the integrator plumbing.
        value = classical_coefficient(nu_max=24)
        assert value == pytest.approx(0.0472, abs=8e-4)
        assert value > 0.0
