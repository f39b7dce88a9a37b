"""Tests for qcarleson/core/quaternion.py - quaternion arithmetic and slices."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcarleson.core.quaternion import (
    I_AXIS,
    REAL,
    Quaternion,
    UnitImaginary,
    as_array,
    axis_of,
    embed,
    qconj,
    qinv,
    qmul,
    qnorm,
    same_slice,
    slice_apply,
    sphere_sample,
    split_axis,
    uniform_ball,
    uniform_sphere,
)

components = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)
quaternions = st.tuples(components, components, components, components).map(np.array)


class TestHamiltonProduct:
    """Tests for qmul and friends."""

    def test_basis_relations(self):
        """i j = k, j k = i, k i = j and i^2 = -1."""
        i, j, k = np.eye(4)[1], np.eye(4)[2], np.eye(4)[3]
        np.testing.assert_allclose(qmul(i, j), k)
        np.testing.assert_allclose(qmul(j, k), i)
        np.testing.assert_allclose(qmul(k, i), j)
        np.testing.assert_allclose(qmul(i, i), [-1.0, 0.0, 0.0, 0.0])

    def test_not_commutative(self):
        i, j = np.eye(4)[1], np.eye(4)[2]
        np.testing.assert_allclose(qmul(j, i), -qmul(i, j))

    @given(quaternions, quaternions)
    @settings(max_examples=50)
    def test_norm_is_multiplicative(self, p, q):
        assert qnorm(qmul(p, q)) == pytest.approx(qnorm(p) * qnorm(q), abs=1e-9)

    @given(quaternions, quaternions)
    @settings(max_examples=50)
    def test_conjugate_reverses_products(self, p, q):
        np.testing.assert_allclose(qconj(qmul(p, q)), qmul(qconj(q), qconj(p)), atol=1e-9)

    def test_inverse(self, rng):
        q = rng.normal(size=(20, 4))
        np.testing.assert_allclose(qmul(q, qinv(q)), np.tile([1.0, 0, 0, 0], (20, 1)), atol=1e-12)

    def test_broadcasts_over_leading_axes(self, rng):
        p = rng.normal(size=(3, 1, 4))
        q = rng.normal(size=(5, 4))
        assert qmul(p, q).shape == (3, 5, 4)

    def test_as_array_rejects_bad_shape(self):
        with pytest.raises(ValueError):
            as_array(np.zeros(3))

    def test_as_array_accepts_real(self):
        np.testing.assert_allclose(as_array(2.5), [2.5, 0.0, 0.0, 0.0])


class TestQuaternionValue:
    """Tests for the Quaternion value type."""

    def test_parse_four_components(self):
        assert Quaternion.parse("0.1, 0.2,0.3,0.4") == Quaternion(0.1, 0.2, 0.3, 0.4)

    def test_parse_bare_real(self):
        assert Quaternion.parse("0.5") == Quaternion(0.5)

    @pytest.mark.parametrize("text", ["1,2", "a,b,c,d", "1,2,3,4,5"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            Quaternion.parse(text)

    def test_operators(self):
        i = Quaternion(0, 1, 0, 0)
        j = Quaternion(0, 0, 1, 0)
        assert i * j == Quaternion(0, 0, 0, 1)
        assert (i + 1) - 1 == i
        assert -i == Quaternion(0, -1, 0, 0)
        assert (2 * i).norm() == pytest.approx(2.0)
        assert i.conj() == -i

    def test_unit_imaginary_requires_norm_one(self):
        with pytest.raises(ValueError):
            UnitImaginary(1.0, 1.0, 0.0)

    def test_axis_of_real_point(self):
        point = axis_of(Quaternion(0.3))
        assert point.axis is REAL
        assert point.embed() == Quaternion(0.3)

    def test_axis_of_round_trips(self):
        q = Quaternion(0.1, 0.0, 0.3, 0.4)
        point = axis_of(q)
        assert point.im == pytest.approx(0.5)
        np.testing.assert_allclose(point.embed().to_array(), q.to_array(), atol=1e-15)


class TestSlices:
    """Tests for the slice decomposition."""

    def test_split_axis_real_points_default_to_i(self):
        re, im, axis, real = split_axis(np.array([[0.4, 0.0, 0.0, 0.0]]))
        assert real[0]
        assert im[0] == 0.0
        np.testing.assert_allclose(axis[0], I_AXIS)

    def test_split_then_embed(self, rng):
        q = rng.normal(size=(10, 4))
        re, im, axis, _ = split_axis(q)
        np.testing.assert_allclose(embed(re, im, axis), q, atol=1e-14)

    def test_same_slice(self):
        assert same_slice([0.1, 0.2, 0.0, 0.0], [0.5, -0.7, 0.0, 0.0])
        assert same_slice([0.3, 0.0, 0.0, 0.0], [0.0, 0.0, 0.5, 0.0])
        assert not same_slice([0.1, 0.2, 0.0, 0.0], [0.0, 0.0, 0.5, 0.0])

    def test_slice_apply_matches_complex_square(self, rng):
        q = uniform_ball(rng, 50, 0.9)
        np.testing.assert_allclose(slice_apply(lambda z: z * z, q), qmul(q, q), atol=1e-12)


class TestSampling:
    """Tests for sphere and ball sampling."""

    def test_sphere_sample_pairs_antipodes(self):
        points = sphere_sample(10)
        np.testing.assert_allclose(points[5:], -points[:5])
        np.testing.assert_allclose(np.linalg.norm(points, axis=1), 1.0)

    def test_sphere_sample_two_points(self):
        np.testing.assert_allclose(sphere_sample(2), [I_AXIS, -I_AXIS], atol=1e-15)

    def test_sphere_sample_pole(self):
        pole = np.array([0.0, 0.6, 0.8])
        np.testing.assert_allclose(sphere_sample(4, pole=pole)[0], pole, atol=1e-12)

    def test_sphere_sample_rejects_zero(self):
        with pytest.raises(ValueError):
            sphere_sample(0)

    def test_uniform_ball_radius(self, rng):
        assert np.all(qnorm(uniform_ball(rng, 1000, 0.5)) <= 0.5)

    def test_uniform_sphere_is_unit(self, rng):
        np.testing.assert_allclose(np.linalg.norm(uniform_sphere(rng, 100), axis=1), 1.0)
