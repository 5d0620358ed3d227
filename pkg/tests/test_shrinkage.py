import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sfdenoise.shrinkage import ShrinkParams, lp_shrink


def scalar_shrink(theta, p, tau):
    # Independent scalar oracle built on the math module.
    if theta == 0.0:
        return 0.0
    magnitude = abs(theta) - math.pow(tau, 2.0 - p) * math.pow(abs(theta), p - 1.0)
    return math.copysign(max(magnitude, 0.0), theta)


def soft_threshold(theta, tau):
    return np.sign(theta) * np.maximum(np.abs(theta) - tau, 0.0)


class TestExamples:
    def test_zero_maps_to_zero(self):
        for p in (0.2, 0.5, 1.0):
            assert float(lp_shrink(np.array(0.0), ShrinkParams(p, 3.0))) == 0.0

    def test_p1_is_soft_thresholding(self):
        params = ShrinkParams(1.0, 2.0)
        assert float(lp_shrink(np.array(5.0), params)) == 3.0
        assert float(lp_shrink(np.array(-1.0), params)) == 0.0

    def test_hand_computed_half_power(self):
        out = float(lp_shrink(np.array(2.0), ShrinkParams(0.5, 1.0)))
        assert out == pytest.approx(2.0 - 2.0**-0.5, abs=1e-12)
        assert out == pytest.approx(1.29289, abs=1e-5)

    def test_matrix_input_elementwise(self):
        theta = np.array([[-3.0, 0.0], [0.4, 10.0]])
        params = ShrinkParams(0.7, 1.5)
        out = lp_shrink(theta, params)
        expected = [[scalar_shrink(v, 0.7, 1.5) for v in row] for row in theta]
        assert np.allclose(out, expected, atol=1e-14)


def test_matches_scalar_oracle_on_grid():
    thetas = np.linspace(-8.0, 8.0, 51)
    taus = (0.3, 1.0, 2.5, 7.0)
    ps = (0.2, 0.4, 0.7, 0.85, 1.0)
    checked = 0
    for p in ps:
        for tau in taus:
            out = lp_shrink(thetas, ShrinkParams(p, tau))
            for theta, got in zip(thetas, out):
                assert abs(got - scalar_shrink(theta, p, tau)) <= 1e-12
                checked += 1
    assert checked >= 1000


def test_p1_bitwise_equals_soft_threshold():
    thetas = np.linspace(-50.0, 50.0, 1001)
    for tau in (0.1, 1.0, 3.7, 20.0):
        out = lp_shrink(thetas, ShrinkParams(1.0, tau))
        assert np.array_equal(out, soft_threshold(thetas, tau))


finite_theta = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
valid_p = st.floats(min_value=0.05, max_value=1.0)
valid_tau = st.floats(min_value=1e-3, max_value=100.0)


@given(theta=finite_theta, p=valid_p, tau=valid_tau)
def test_odd_symmetry(theta, p, tau):
    params = ShrinkParams(p, tau)
    assert float(lp_shrink(np.array(-theta), params)) == -float(lp_shrink(np.array(theta), params))


@given(theta=finite_theta, p=valid_p, tau=valid_tau)
def test_never_grows_and_keeps_sign(theta, p, tau):
    out = float(lp_shrink(np.array(theta), ShrinkParams(p, tau)))
    assert abs(out) <= abs(theta)
    assert out == 0.0 or math.copysign(1.0, out) == math.copysign(1.0, theta)


@given(theta=finite_theta, p=valid_p, tau=valid_tau, bump=st.floats(min_value=1e-3, max_value=10.0))
def test_monotone_in_tau(theta, p, tau, bump):
    small = float(lp_shrink(np.array(theta), ShrinkParams(p, tau)))
    large = float(lp_shrink(np.array(theta), ShrinkParams(p, tau + bump)))
    assert abs(large) <= abs(small) + 1e-12


@given(p=valid_p, tau=valid_tau)
def test_large_magnitude_passes_through(p, tau):
    theta = 1e6
    out = float(lp_shrink(np.array(theta), ShrinkParams(p, tau)))
    assert abs(out / theta - 1.0) <= 1e-3


class TestValidation:
    @pytest.mark.parametrize("p", [0.0, -0.5, 1.5])
    def test_bad_exponent(self, p):
        with pytest.raises(ValueError):
            ShrinkParams(p, 1.0)

    def test_bad_threshold(self):
        with pytest.raises(ValueError):
            ShrinkParams(0.5, -1.0)

    def test_zero_threshold_is_identity(self):
        theta = np.array([-4.0, 0.0, 2.5])
        assert np.array_equal(lp_shrink(theta, ShrinkParams(0.5, 0.0)), theta)

    def test_non_finite_input_rejected(self):
        with pytest.raises(ValueError):
            lp_shrink(np.array([np.inf]), ShrinkParams(0.5, 1.0))
