"""Tests for qcarleson/core/series.py - slice regular power series."""

import numpy as np
import pytest

from qcarleson.core.quaternion import qmul, qnorm, uniform_ball
from qcarleson.core.series import (
    AxesNotOrthogonal,
    BranchCut,
    NonInvertibleAtZero,
    OutOfDisk,
    SliceSeries,
    compose_intrinsic,
    eval_series,
    ext_from_slice,
    is_intrinsic,
    power,
    reg_conj,
    split,
    star_eval,
    star_inv,
    star_mul,
    symmetrize,
)


def random_series(rng, degree=4, scale=0.5):
    return SliceSeries(rng.normal(scale=scale, size=(degree + 1, 4)))


class TestSliceSeries:
    """Tests for construction and evaluation."""

    def test_constructors(self):
        assert SliceSeries.constant(2.0).truncation == 0
        m = SliceSeries.monomial(3, [0, 1, 0, 0])
        assert m.truncation == 3
        assert not m.is_real
        assert SliceSeries.real([1.0, 2.0]).is_real

    def test_empty_coefficients_become_zero(self):
        assert SliceSeries([]).truncation == 0

    def test_radius_must_be_in_unit_interval(self):
        with pytest.raises(ValueError):
            SliceSeries.real([1.0], radius=1.5)

    def test_coefficients_are_read_only(self):
        f = SliceSeries.real([1.0, 2.0])
        with pytest.raises(ValueError):
            f.coeffs[0, 0] = 5.0

    def test_json_round_trip(self, rng):
        f = random_series(rng)
        g = SliceSeries.from_json(f.to_json())
        np.testing.assert_array_equal(f.coeffs, g.coeffs)

    def test_monomial_evaluates_to_power(self, rng):
        q = uniform_ball(rng, 20, 0.9)
        np.testing.assert_allclose(SliceSeries.monomial(2)(q), qmul(q, q), atol=1e-12)

    def test_right_coefficients(self):
        """f(q) = q a, not a q."""
        i, j = np.eye(4)[1], np.eye(4)[2]
        f = SliceSeries.monomial(1, j)
        np.testing.assert_allclose(f(0.5 * i), 0.5 * qmul(i, j))

    def test_out_of_disk(self):
        f = SliceSeries.real([0.0, 1.0], radius=0.5)
        with pytest.raises(OutOfDisk):
            f([0.49, 0.0, 0.0, 0.0])

    def test_margin_can_be_relaxed(self):
        f = SliceSeries.real([0.0, 1.0])
        value = eval_series(f, [0.97, 0.0, 0.0, 0.0], margin=0.99)
        assert value[0] == pytest.approx(0.97)


class TestStarProduct:
    """Tests for the *-product and its companions."""

    def test_truncation_length(self, rng):
        f, g = random_series(rng, 3), random_series(rng, 5)
        assert star_mul(f, g).truncation == 8
        assert star_mul(f, g, n_max=4).truncation == 4

    def test_real_left_factor_is_pointwise(self, rng):
        f = SliceSeries.real([1.0, -0.5, 0.25])
        g = random_series(rng)
        q = uniform_ball(rng, 30, 0.8)
        np.testing.assert_allclose(star_mul(f, g)(q), qmul(f(q), g(q)), atol=1e-12)

    def test_star_eval_formula(self, rng):
        f, g = random_series(rng, 3), random_series(rng, 3)
        f = SliceSeries(f.coeffs + np.array([2.0, 0, 0, 0]))
        q = uniform_ball(rng, 30, 0.8)
        np.testing.assert_allclose(star_mul(f, g)(q), star_eval(f, g, q), atol=1e-10)

    def test_symmetrization_is_real(self, rng):
        assert symmetrize(random_series(rng)).is_real

    def test_regular_conjugate_is_involution(self, rng):
        f = random_series(rng)
        np.testing.assert_array_equal(reg_conj(reg_conj(f)).coeffs, f.coeffs)

    def test_star_inverse(self, rng):
        f = SliceSeries([[1.0, 0.0, 0.0, 0.0], [0.0, 0.3, 0.2, 0.0]])
        product = star_mul(f, star_inv(f, 64), 64)
        np.testing.assert_allclose(product.coeffs[0], [1.0, 0, 0, 0], atol=1e-12)
        np.testing.assert_allclose(product.coeffs[1:], 0.0, atol=1e-12)

    def test_star_inverse_needs_nonzero_constant(self):
        with pytest.raises(NonInvertibleAtZero):
            star_inv(SliceSeries.monomial(1))


class TestComposition:
    """Tests for composition with intrinsic inner series."""

    def test_compose_with_identity(self, rng):
        f = random_series(rng)
        g = compose_intrinsic(f, SliceSeries.real([0.0, 1.0]), 16)
        np.testing.assert_allclose(g.coeffs, f.coeffs, atol=1e-15)

    def test_compose_with_square(self, rng):
        f = random_series(rng, 3)
        g = SliceSeries.real([0.0, 0.0, 1.0])
        q = uniform_ball(rng, 20, 0.8)
        np.testing.assert_allclose(compose_intrinsic(f, g, 16)(q), f(qmul(q, q)), atol=1e-12)

    def test_inner_series_must_be_real(self):
        with pytest.raises(ValueError):
            compose_intrinsic(SliceSeries.real([1.0]), SliceSeries.monomial(1, [0, 1, 0, 0]))

    def test_inner_series_must_vanish_at_zero(self):
        with pytest.raises(ValueError):
            compose_intrinsic(SliceSeries.real([1.0]), SliceSeries.real([0.1, 1.0]))


class TestSplitting:
    """Tests for splitting and the extension formula."""

    def test_split_reproduces_restriction(self, rng):
        f = random_series(rng)
        I, J = np.array([1.0, 0, 0]), np.array([0, 1.0, 0])
        pair = split(f, I, J)
        z = 0.7 * np.exp(1j * np.linspace(0, 2 * np.pi, 17))
        q = np.stack([z.real, z.imag, 0 * z.real, 0 * z.real], axis=1)
        np.testing.assert_allclose(pair.evaluate(z), f(q), atol=1e-12)

    def test_split_needs_orthogonal_axes(self, rng):
        with pytest.raises(AxesNotOrthogonal):
            split(random_series(rng), [1.0, 0, 0], [0.6, 0.8, 0])

    def test_extension_from_one_slice(self, rng):
        f = random_series(rng)
        extension = ext_from_slice(f, [0.0, 0.0, 1.0])
        q = uniform_ball(rng, 40, 0.85)
        np.testing.assert_allclose(extension(q), f(q), atol=1e-12)


class TestPowersAndIntrinsic:
    """Tests for slice powers and the intrinsic test."""

    def test_integer_power(self, rng):
        q = uniform_ball(rng, 10, 0.9)
        np.testing.assert_allclose(power(q, 3), qmul(q, qmul(q, q)), atol=1e-12)

    def test_fractional_power_squares_back(self, rng):
        q = uniform_ball(rng, 10, 0.9)
        q[:, 0] = np.abs(q[:, 0])
        root = power(q, 0.5)
        np.testing.assert_allclose(qmul(root, root), q, atol=1e-12)

    def test_branch_cut(self):
        with pytest.raises(BranchCut):
            power(np.array([-0.5, 0.0, 0.0, 0.0]), 0.5)

    def test_real_series_is_intrinsic(self):
        assert is_intrinsic(SliceSeries.real([1.0, 0.5, 0.25])).intrinsic

    def test_imaginary_coefficient_is_not(self):
        check = is_intrinsic(SliceSeries.monomial(1, [0, 0, 1, 0]))
        assert not check.intrinsic
        assert check.witness is not None
        assert check.defect > 0.0
        assert qnorm(check.witness.to_array()) <= 0.9
