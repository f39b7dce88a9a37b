"""Tests for qcarleson/core/geometry.py - pseudohyperbolic distance and regions."""

import math

import numpy as np
import pytest

from qcarleson.core.geometry import (
    DifferentSlices,
    Region,
    RegionKind,
    arc_length,
    boundary_distance,
    boundary_scale,
    direction_fraction,
    disc_area,
    disc_area_mc,
    disc_geometry,
    is_real,
    lebesgue_bound,
    real_axis_distance,
    rho,
    rho_slice,
    triangle_defect,
    tube_slice_area,
)
from qcarleson.core.quaternion import embed, from_complex, sphere_sample

ALPHA = np.array([0.3, 0.4, 0.0, 0.0])


def moebius(z, a):
    return abs(z - a) / abs(1 - z * a.conjugate())


class TestDistances:
    """Tests for rho and its slice form."""

    def test_boundary_distance_and_scale(self):
        assert boundary_distance(ALPHA) == pytest.approx(0.5)
        assert float(boundary_scale(ALPHA)) == pytest.approx(math.sqrt(0.75))

    def test_rho_vanishes_at_centre(self):
        assert float(rho(ALPHA, ALPHA)) == pytest.approx(0.0, abs=1e-15)

    def test_rho_on_one_slice_is_moebius(self, rng):
        z = 0.9 * np.sqrt(rng.random(20)) * np.exp(2j * np.pi * rng.random(20))
        q = from_complex(z, [1.0, 0.0, 0.0])
        expected = [moebius(zz, 0.3 + 0.4j) for zz in z]
        np.testing.assert_allclose(rho(q, ALPHA), expected, atol=1e-12)

    def test_rho_slice_matches_rho(self):
        q = np.array([-0.2, 0.1, 0.0, 0.0])
        assert rho_slice(q, ALPHA) == pytest.approx(float(rho(q, ALPHA)))

    def test_rho_slice_needs_common_slice(self):
        with pytest.raises(DifferentSlices):
            rho_slice([0.1, 0.0, 0.2, 0.0], ALPHA)

    def test_real_point_shares_every_slice(self):
        assert rho_slice([0.5, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.3]) == pytest.approx(moebius(0.5, 0.3j))

    def test_triangle_inequality_on_one_slice(self, rng):
        pts = [from_complex(0.9 * rng.random(50) * np.exp(2j * np.pi * rng.random(50)), [0, 1.0, 0])
               for _ in range(3)]
        assert np.max(triangle_defect(*pts)) <= 1e-12


class TestDirectionFraction:
    """Tests for the exact cap fraction."""

    @pytest.mark.parametrize("x,y", [(0.3, 0.4), (0.2, 0.5), (0.35, 0.3)])
    def test_matches_sampled_directions(self, x, y):
        dirs = sphere_sample(4000)
        q = embed(np.full(4000, x), np.full(4000, y), dirs)
        sampled = float(np.mean(rho(q, ALPHA) < 0.5))
        assert float(direction_fraction(np.array(x), np.array(y), ALPHA, 0.5)) == pytest.approx(sampled, abs=0.01)

    def test_real_point_is_all_or_nothing(self):
        inside = direction_fraction(np.array(0.3), np.array(0.0), np.array([0.3, 0.0, 0.0, 0.0]), 0.5)
        outside = direction_fraction(np.array(-0.9), np.array(0.0), np.array([0.3, 0.0, 0.0, 0.0]), 0.5)
        assert float(inside) == 1.0
        assert float(outside) == 0.0

    def test_weighted_fraction_stays_in_unit_interval(self):
        frac = direction_fraction(np.array([0.3, 0.2]), np.array([0.4, 0.5]), ALPHA, 0.5, kappa=0.8)
        assert np.all((frac >= 0.0) & (frac <= 1.0))


class TestRegions:
    """Tests for Region membership."""

    def test_tube_contains_whole_sphere(self):
        tube = Region.tube(ALPHA, 0.3)
        rotated = np.array([0.3, 0.0, 0.4 * 0.6, 0.4 * 0.8])
        assert tube.contains(rotated)
        assert tube.contains(ALPHA)

    def test_slice_disc_stays_on_its_slice(self):
        disc = Region.slice_disc(ALPHA, 0.3)
        assert disc.contains(ALPHA)
        assert not disc.contains(np.array([0.3, 0.0, 0.4, 0.0]))

    def test_ball_contains_centre_not_boundary(self):
        ball = Region.ball(ALPHA, 0.3)
        assert ball.contains(ALPHA)
        assert not ball.contains(np.array([0.0, 0.0, 0.0, 0.99]))

    def test_carleson_box(self):
        box = Region.carleson_box(0.0, 0.5, [1.0, 0.0, 0.0])
        assert box.contains(np.array([0.7, 0.2, 0.0, 0.0]))
        assert not box.contains(np.array([0.3, 0.0, 0.0, 0.0]))
        assert not box.contains(np.array([0.7, 0.0, 0.2, 0.0]))

    def test_carleson_box_wraps_around(self):
        box = Region.carleson_box(math.pi, 0.5)
        assert box.contains(from_complex(0.8 * np.exp(1j * (math.pi + 0.3)), [1.0, 0.0, 0.0]))

    def test_symmetric_box_ignores_unit(self):
        box = Region.symmetric_box(0.5, 0.5)
        points = embed(np.full(3, 0.8 * math.cos(0.5)), np.full(3, 0.8 * math.sin(0.5)), np.eye(3))
        assert np.all(box.contains(points))

    def test_to_json(self):
        data = Region.carleson_box(0.25, 0.75).to_json()
        assert data["kind"] == "carleson_box"
        assert data["theta0"] == 0.25
        assert data["axis"] == [1.0, 0.0, 0.0]
        assert Region.ball(ALPHA, 0.5).to_json()["center"] == pytest.approx(ALPHA.tolist())

    def test_kind_is_string_enum(self):
        assert Region.tube(ALPHA, 0.2).kind == "tube"
        assert RegionKind("ball") is RegionKind.BALL

    def test_arc_length(self):
        assert arc_length(0.75) == pytest.approx(0.5)


class TestDiscGeometry:
    """Tests for disc_geometry and areas."""

    def test_origin(self):
        g = disc_geometry(0.0, 0.5)
        assert g.euclidean_radius == pytest.approx(0.5)
        assert g.euclidean_center.norm() == 0.0
        assert g.area == pytest.approx(math.pi / 4)

    def test_real_centre(self):
        g = disc_geometry(0.5, 0.5)
        assert g.euclidean_center.w == pytest.approx(0.4)
        assert g.euclidean_radius == pytest.approx(0.4)

    @pytest.mark.parametrize("alpha,r", [(0.0, 0.0), (0.0, 1.0), (1.0, 0.5)])
    def test_rejects(self, alpha, r):
        with pytest.raises(ValueError):
            disc_geometry(alpha, r)

    def test_to_json(self):
        data = disc_geometry(ALPHA, 0.5).to_json()
        assert data["d"] == pytest.approx(0.5)
        assert data["eta_volume"] is None

    def test_monte_carlo_area(self):
        value, sigma = disc_area_mc(ALPHA, 0.5, n=200_000, seed=3)
        assert abs(value - disc_area(ALPHA, 0.5)) < 5.0 * sigma + 1e-9

    def test_lebesgue_bound_encloses_disc(self):
        g = disc_geometry(ALPHA, 0.5)
        shift = np.linalg.norm(g.euclidean_center.to_array() - ALPHA)
        assert g.euclidean_radius + shift <= lebesgue_bound(ALPHA, 0.5) + 1e-12

    def test_tube_area_on_real_axis_is_one_disc(self):
        assert tube_slice_area(0.4, 0.3) == pytest.approx(disc_area(0.4, 0.3))

    def test_tube_area_far_from_axis_is_two_discs(self):
        alpha = np.array([0.0, 0.0, 0.9, 0.0])
        assert tube_slice_area(alpha, 0.2) == pytest.approx(2.0 * disc_area(alpha, 0.2))

    def test_real_axis_helpers(self):
        assert is_real(0.4)
        assert not is_real(ALPHA)
        assert real_axis_distance(0.4) == pytest.approx(0.0, abs=1e-15)
        assert real_axis_distance(ALPHA) == pytest.approx(moebius(0.3, 0.3 + 0.4j))
