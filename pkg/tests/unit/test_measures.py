"""Tests for qcarleson/core/measures.py - declarative measures on the ball."""

import math

import numpy as np
import pytest

from qcarleson.core.geometry import Region, disc_area, disc_geometry
from qcarleson.core.measures import (
    Atomic,
    DirectionLaw,
    GridExhausted,
    RadialDensity,
    Rotational,
    SliceLebesgue,
    TubeCounterexample,
    build_counterexample,
    measure_from_json,
    measure_to_json,
    separation,
)
from qcarleson.core.quaternion import I_AXIS, embed
from qcarleson.core.series import SliceSeries


class TestDescriptors:
    """Tests for RadialDensity and DirectionLaw."""

    def test_density_must_be_non_negative(self):
        with pytest.raises(ValueError):
            RadialDensity((1.0, -2.0))

    def test_density_needs_coefficients(self):
        with pytest.raises(ValueError):
            RadialDensity(())

    def test_radial_moment(self):
        density = RadialDensity((1.0, 1.0))
        # int_0^1 (1 + t) t dt
        assert density.radial_moment(0.0, 1.0) == pytest.approx(0.5 + 1.0 / 3.0)

    def test_density_json(self):
        assert RadialDensity.from_json({"type": "constant", "value": 2.0}).coeffs == (2.0,)
        assert RadialDensity((1.0, 0.5)).to_json() == {"type": "radial", "coeffs": [1.0, 0.5]}
        with pytest.raises(ValueError):
            RadialDensity.from_json({"type": "gaussian"})

    def test_law_bounds(self):
        with pytest.raises(ValueError):
            DirectionLaw(1.5)

    def test_law_normalizes_pole(self):
        law = DirectionLaw(0.5, (0.0, 3.0, 4.0))
        assert law.pole == pytest.approx((0.0, 0.6, 0.8))
        assert float(law(np.array([0.0, 0.6, 0.8]))) == pytest.approx(1.5)

    def test_law_json(self):
        assert DirectionLaw().to_json() == {"type": "uniform"}
        assert DirectionLaw.from_json(None) == DirectionLaw()
        law = DirectionLaw.from_json({"type": "zonal", "kappa": 0.3})
        assert law.kappa == 0.3


class TestAtomic:
    """Tests for atomic measures."""

    def test_validation(self):
        with pytest.raises(ValueError):
            Atomic([[0.0, 0.0, 0.0, 0.0]], [1.0, 2.0])
        with pytest.raises(ValueError):
            Atomic([[0.0, 0.0, 0.0, 0.0]], [-1.0])
        with pytest.raises(ValueError):
            Atomic([[1.0, 0.0, 0.0, 0.0]], [1.0])

    def test_atom_at_origin_integrates_point_value(self):
        mu = Atomic([[0.0, 0.0, 0.0, 0.0]], [2.0])
        f = SliceSeries.real([3.0, 1.0])
        assert mu.integrate(f, 2.0) == pytest.approx(2.0 * 9.0)

    def test_region_mass(self, atom_measure):
        assert atom_measure.region_mass(Region.ball([0.0, 0.9, 0.0, 0.0], 0.1)) == 1.0
        assert atom_measure.region_mass(Region.ball([0.0, 0.0, 0.9, 0.0], 0.1)) == 0.0

    def test_slice_disc_mass(self, atom_measure):
        alpha = np.array([0.0, 0.9, 0.0, 0.0])
        assert atom_measure.region_mass(Region.slice_disc(alpha, 0.1)) == 1.0
        # rho(0.9 I, 0.5 I) = 0.4 / 0.55 > 0.5
        assert atom_measure.region_mass(Region.slice_disc(0.5 * alpha / 0.9, 0.5)) == 0.0

    def test_slice_box_mass_respects_slice(self, atom_measure):
        assert atom_measure.slice_box_mass(math.pi / 2, 0.875, I_AXIS) == 1.0
        assert atom_measure.slice_box_mass(math.pi / 2, 0.875, [0.0, 1.0, 0.0]) == 0.0

    def test_preferred_axes(self, atom_measure):
        np.testing.assert_allclose(atom_measure.preferred_axes(), [I_AXIS])
        assert Atomic([[0.5, 0.0, 0.0, 0.0]], [1.0]).preferred_axes().shape == (0, 3)

    def test_empty_measure(self):
        mu = Atomic()
        assert mu.total_mass() == 0.0
        assert mu.integrate(SliceSeries.constant(1.0), 2.0) == 0.0

    def test_json_round_trip(self, atom_measure):
        again = measure_from_json(measure_to_json(atom_measure))
        assert isinstance(again, Atomic)
        np.testing.assert_array_equal(again.points, atom_measure.points)


class TestSliceLebesgue:
    """Tests for Lebesgue measure on one slice."""

    def test_total_mass(self, slice_measure):
        assert slice_measure.total_mass() == pytest.approx(math.pi)

    def test_integrate_constant(self, slice_measure):
        assert slice_measure.integrate(SliceSeries.constant(1.0), 2.0) == pytest.approx(math.pi, rel=1e-10)

    def test_integrate_monomial(self, slice_measure):
        assert slice_measure.integrate(SliceSeries.monomial(1), 2.0) == pytest.approx(math.pi / 2, rel=1e-8)

    def test_slice_box_mass(self, slice_measure):
        r = 0.75
        assert slice_measure.slice_box_mass(0.3, r, I_AXIS) == pytest.approx((1 - r) * (1 - r * r))
        assert slice_measure.slice_box_mass(0.3, r, -I_AXIS) == pytest.approx((1 - r) * (1 - r * r))
        assert slice_measure.slice_box_mass(0.3, r, [0.0, 1.0, 0.0]) == 0.0

    def test_ball_on_slice_is_disc_area(self, slice_measure):
        alpha = np.array([0.3, 0.4, 0.0, 0.0])
        assert slice_measure.region_mass(Region.ball(alpha, 0.5)) == pytest.approx(disc_area(alpha, 0.5), rel=1e-8)

    @pytest.mark.parametrize("modulus", [0.0, 0.5, 0.9, 0.99])
    @pytest.mark.parametrize("angle", [0.0, math.pi / 3, math.pi / 2])
    def test_slice_disc_is_pseudohyperbolic_disc_area(self, slice_measure, modulus, angle):
        alpha = embed(modulus * math.cos(angle), modulus * math.sin(angle), I_AXIS)
        region = Region.slice_disc(alpha, 0.5, I_AXIS)
        assert slice_measure.region_mass(region) == pytest.approx(disc_area(alpha, 0.5), rel=1e-8)

    def test_slice_disc_near_boundary_is_not_euclidean(self, slice_measure):
        alpha = embed(0.0, 0.5, I_AXIS)
        mass = slice_measure.region_mass(Region.slice_disc(alpha, 0.5, I_AXIS))
        # r1 = 0.5 * 0.75 / (1 - 0.0625) = 0.4
        assert mass == pytest.approx(math.pi * 0.16, rel=1e-8)
        assert mass != pytest.approx(math.pi * 0.25, rel=1e-2)

    def test_slice_disc_on_opposite_axis(self, slice_measure):
        alpha = embed(0.2, -0.7, I_AXIS)
        region = Region.slice_disc(alpha, 0.3, -I_AXIS)
        assert slice_measure.region_mass(region) == pytest.approx(disc_area(alpha, 0.3), rel=1e-8)

    def test_slice_disc_off_slice_is_empty(self, slice_measure):
        axis = np.array([0.0, 1.0, 0.0])
        alpha = embed(0.1, 0.6, axis)
        assert slice_measure.region_mass(Region.slice_disc(alpha, 0.4, axis)) == 0.0

    def test_slice_disc_radial_density_matches_membership(self, rng):
        mu = SliceLebesgue(I_AXIS.copy(), RadialDensity((0.0, 1.0)))
        alpha = embed(0.3, 0.6, I_AXIS)
        region = Region.slice_disc(alpha, 0.4, I_AXIS)
        # Monte Carlo over the unit disc of the slice with density |z|
        z = rng.uniform(-1.0, 1.0, (400_000, 2))
        z = z[np.hypot(z[:, 0], z[:, 1]) < 1.0]
        inside = region.contains(embed(z[:, 0], z[:, 1], I_AXIS))
        estimate = math.pi * float(np.mean(inside * np.hypot(z[:, 0], z[:, 1])))
        assert mu.region_mass(region) == pytest.approx(estimate, rel=0.03)

    def test_tube_counts_both_discs(self, slice_measure):
        alpha = np.array([0.0, 0.0, 0.9, 0.0])
        assert slice_measure.region_mass(Region.tube(alpha, 0.2)) == pytest.approx(2.0 * disc_area(alpha, 0.2))

    def test_radial_density_tube(self):
        mu = SliceLebesgue(I_AXIS.copy(), RadialDensity((0.0, 1.0)))
        g = disc_geometry(0.0, 0.5)
        # int_{|z| < 1/2} |z| = 2 pi / 24
        assert mu.region_mass(Region.tube(0.0, 0.5)) == pytest.approx(2 * math.pi / 24, rel=1e-6)
        assert g.euclidean_radius == pytest.approx(0.5)

    def test_json_round_trip(self, slice_measure):
        again = measure_from_json(slice_measure.to_json())
        assert isinstance(again, SliceLebesgue)
        np.testing.assert_allclose(again.axis, I_AXIS)


class TestRotational:
    """Tests for axially symmetric measures."""

    def test_uniform_is_eta(self):
        mu = Rotational()
        assert mu.total_mass() == pytest.approx(1.0)
        assert mu.integrate(SliceSeries.constant(1.0), 2.0) == pytest.approx(1.0, rel=1e-8)

    def test_second_moment(self):
        assert Rotational().integrate(SliceSeries.monomial(1), 2.0) == pytest.approx(2.0 / 3.0, rel=1e-6)

    def test_monte_carlo_agrees(self):
        value, stderr = Rotational().mc_integrate(SliceSeries.monomial(1), 2.0, n=100_000, seed=5)
        assert abs(value - 2.0 / 3.0) < 5.0 * stderr

    def test_tube_at_origin(self):
        assert Rotational().region_mass(Region.tube(0.0, 0.5)) == pytest.approx(0.0625, rel=1e-8)

    def test_zonal_ball_keeps_mass_when_centred(self):
        mu = Rotational(law=DirectionLaw(0.7))
        assert mu.region_mass(Region.ball(0.0, 0.5)) == pytest.approx(0.0625, rel=1e-8)

    def test_slices_carry_no_box_mass(self):
        assert Rotational().region_mass(Region.carleson_box(0.0, 0.5)) == 0.0

    def test_json_round_trip(self):
        mu = Rotational(RadialDensity((1.0, 1.0)), DirectionLaw(0.2, (0.0, 0.0, 1.0)))
        again = measure_from_json(mu.to_json())
        assert again.density == mu.density
        assert again.law == mu.law


class TestCounterexample:
    """Tests for the disjoint-tube measure."""

    @pytest.fixture
    def measure(self) -> TubeCounterexample:
        return build_counterexample(0.3, 0.5, 4)

    def test_centres(self, measure):
        assert measure.tubes == 4
        assert measure.centers[0] == 0.5
        assert np.all(np.diff(measure.centers) > 0)

    def test_centres_are_separated(self, measure):
        y = measure.centers
        gaps = (y[1:] - y[:-1]) / (1.0 - y[1:] * y[:-1])
        assert np.all(gaps >= separation(0.3) - 1e-12)

    def test_masses(self, measure):
        np.testing.assert_allclose(measure.masses, (1.0 - measure.centers ** 2) ** ((4.0 - 0.5) / 2))

    def test_integral_of_one_is_total_mass(self, measure):
        assert measure.integrate(SliceSeries.constant(1.0), 1.0) == pytest.approx(measure.total_mass(), rel=1e-10)

    def test_tube_mass(self, measure):
        for k in range(measure.tubes):
            assert measure.region_mass(Region.tube(measure.alpha(k), 0.3)) == pytest.approx(measure.masses[k])

    def test_density_inside_and_outside(self, measure):
        inside = measure.density_eta(measure.alpha(0))
        assert float(inside) == pytest.approx(measure.densities[0])
        assert float(measure.density_eta(np.zeros(4))) == 0.0

    def test_json_round_trip(self, measure):
        again = TubeCounterexample.from_json(measure.to_json())
        np.testing.assert_allclose(again.centers, measure.centers)
        assert again.eps == measure.eps

    def test_json_from_parameters_rebuilds(self, measure):
        again = measure_from_json({"kind": "tube_counterexample", "r": 0.3, "eps": 0.5, "tubes": 4})
        np.testing.assert_allclose(again.centers, measure.centers)

    @pytest.mark.parametrize("r,eps,tubes", [(0.0, 0.5, 4), (0.3, 4.0, 4), (0.3, 0.5, 0)])
    def test_rejects_parameters(self, r, eps, tubes):
        with pytest.raises(ValueError):
            build_counterexample(r, eps, tubes)

    def test_grid_exhausted(self):
        with pytest.raises(GridExhausted):
            build_counterexample(0.3, 0.5, 40)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            measure_from_json({"kind": "dirac_comb"})
