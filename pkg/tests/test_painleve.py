import math

import numpy as np
import pytest

from rmedge.painleve import solve_pii, tw_cdf, tw_cdf_det
from rmedge.specfun import airy


class TestSolvePii:
    def test_validation(self):
        with pytest.raises(ValueError):
            solve_pii(0.0, -5.0, 8.0)
        with pytest.raises(ValueError):
            solve_pii(1.2, -5.0, 8.0)
        with pytest.raises(ValueError):
            solve_pii(1.0, -5.0, 5.0)   # x_max too small for the Airy anchor
        with pytest.raises(ValueError):
            solve_pii(1.0, 7.0, 6.5)

    def test_vanishing_coupling_limit(self):
        # w scales like -sqrt(t) Ai, so tiny t gives a tiny solution
        sol = solve_pii(1e-10, -4.0, 6.0)
        assert np.abs(sol.w).max() < 1e-4

    def test_airy_anchor_ratio(self):
        for t in (0.5, 1.0):
            sol = solve_pii(t, -4.0, 6.0)
            ratio = sol.w_at(6.0) / (-math.sqrt(t) * airy(6.0)[0])
            assert abs(ratio - 1.0) < 1e-6

    def test_ode_residual_on_grid(self):
        sol = solve_pii(1.0, -4.0, 6.0)
        h = 1e-4
        for x in (-3.0, -1.0, 0.0, 2.0):
            w = sol.w_at(np.array([x - h, x, x + h]))
            second = (w[2] - 2 * w[1] + w[0]) / h ** 2
            assert abs(second - 2 * w[1] ** 3 - x * w[1]) < 1e-7

    def test_sign_convention_at_right_end(self):
        sol = solve_pii(1.0, -2.0, 6.0)
        assert sol.w_at(6.0) < 0  # matches -sqrt(t) Ai > 0 flipped


class TestTwCdf:
    def test_validation(self):
        with pytest.raises(ValueError):
            tw_cdf(1.0, np.array([0.5, 0.2]))

    def test_right_tail_is_one(self):
        c = tw_cdf(1.0, np.array([2.0, 6.0]))
        assert abs(c.F_values[-1] - 1.0) < 1e-10

    def test_value_at_zero_against_determinant(self):
        # soft-edge probability of no scaled eigenvalue above 0
        xs = np.array([0.0])
        fp = tw_cdf(1.0, xs).F_values[0]
        fd = tw_cdf_det(1.0, xs).F_values[0]
        assert abs(fp - fd) < 1e-6

    def test_dual_route_at_negative_x(self):
        xs = np.array([-2.0])
        fp = tw_cdf(0.5, xs).F_values[0]
        fd = tw_cdf_det(0.5, xs).F_values[0]
        assert abs(fp - fd) < 1e-6

    def test_monotone_in_x_and_in_t(self):
        xs = np.round(np.arange(-4.0, 2.01, 0.25), 10)
        c1 = tw_cdf(0.5, xs)
        c2 = tw_cdf(1.0, xs)
        assert np.all(np.diff(c1.F_values) >= 0)
        assert np.all(np.diff(c2.F_values) >= 0)
        # more mass is pushed down as the coupling grows
        assert np.all(c2.F_values <= c1.F_values + 1e-12)

    def test_values_in_unit_interval(self):
        xs = np.round(np.arange(-5.0, 2.01, 0.5), 10)
        for t in (0.5, 1.0):
            F = tw_cdf(t, xs).F_values
            assert np.all(F >= 0.0) and np.all(F <= 1.0)

    def test_curve_routes_are_tagged(self):
        xs = np.array([-1.0, 0.0])
        assert tw_cdf(1.0, xs).route == "painleve"
        assert tw_cdf_det(1.0, xs).route == "determinant"


def test_second_derivative_identity():
    # w(x;t)^2 = -d^2/dx^2 log det(I - t Gamma_x^2), five-point stencil
    h = 0.05
    xs = np.round(np.arange(-2.0, 1.01, h), 10)
    for t in (0.5, 1.0):
        wide = np.round(np.arange(xs[0] - 2 * h, xs[-1] + 2 * h + 1e-9, h), 10)
        ld = np.log(tw_cdf_det(t, wide).F_values)
        sol = solve_pii(t, float(xs[0]), 8.0)
        w2 = sol.w_at(xs) ** 2
        d2 = (-ld[4:] + 16 * ld[3:-1] - 30 * ld[2:-2] + 16 * ld[1:-3] - ld[:-4]) \
            / (12 * h * h)
        assert np.abs(w2 + d2).max() < 1e-4


def test_pii_value_recovered_from_determinant_curvature():
    # |w(0;1)| from the determinant route, second x-derivative of log det
    h = 0.05
    xs5 = np.array([-2 * h, -h, 0.0, h, 2 * h])
    ld = np.log(tw_cdf_det(1.0, xs5).F_values)
    d2 = (-ld[4] + 16 * ld[3] - 30 * ld[2] + 16 * ld[1] - ld[0]) / (12 * h * h)
    sol = solve_pii(1.0, -1.0, 8.0)
    assert abs(abs(sol.w_at(0.0)) - math.sqrt(-d2)) < 1e-5
