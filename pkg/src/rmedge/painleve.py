"""Tracy-Widom distribution via Painleve II, cross-checked by determinants.

w(x; t) solves w'' = 2 w^3 + x w with w ~ -sqrt(t) Ai(x) as x -> +infinity
(the sign is a convention; the distribution depends only on w^2).  The
solution is stable under backward integration, so the boundary condition is
imposed at a finite anchor on the right and integrated down.  The cumulative
distribution is

    F(x; t) = exp( - int_x^inf (y - x) w(y; t)^2 dy ),

which must agree with the determinant route det(I - t Gamma_(x)^2) over the
Airy Hankel operator.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DivergenceError
from .kernels import airy_symbol_kernel
from .linop import discretize, sym_eigen
from .specfun import airy, gauss_legendre

__all__ = ["TWCurve", "PIISolution", "solve_pii", "tw_cdf", "tw_cdf_det"]

_ANCHOR = 8.0


@dataclass(frozen=True)
class TWCurve:
    t: float
    xs: np.ndarray
    F_values: np.ndarray
    w_values: Optional[np.ndarray]
    route: str


@dataclass(frozen=True)
class PIISolution:
    t: float
    anchor: float
    xs: np.ndarray
    w: np.ndarray
    w_prime: np.ndarray
    _dense: object

    def w_at(self, x):
        return self._dense(np.asarray(x, dtype=float))[0]


def _integrate_pii(t, x_min, anchor):
    ai, aip = airy(anchor)
    y0 = [-np.sqrt(t) * ai, -np.sqrt(t) * aip]

    def rhs(x, y):
        return [y[1], 2.0 * y[0] ** 3 + x * y[0]]

    def blowup(x, y):
        return abs(y[0]) - 1e6
    blowup.terminal = True

    # 1e-13/1e-15 keeps the dense-output error two orders below the dual-route
    # tolerance; the anchor value sqrt(t) Ai(8) ~ 5e-8 stays well above atol
    sol = solve_ivp(rhs, (anchor, x_min), y0, method="DOP853",
                    rtol=1e-13, atol=1e-15, dense_output=True, events=blowup)
    if sol.t_events[0].size or not sol.success:
        last = float(sol.t[-1])
        raise DivergenceError(
            f"Painleve II solution blew up near x = {last:.6g}", last_x=last)
    return sol


def solve_pii(t, x_min, x_max, num=None):
    """Solution of w'' = 2w^3 + xw anchored to -sqrt(t) Ai at the right end."""
    if not 0.0 < t <= 1.0:
        raise ValueError("t must lie in (0, 1]")
    if x_max < 6.0:
        raise ValueError("x_max must be at least 6 so the Airy anchor is accurate")
    if not x_min < x_max:
        raise ValueError("empty range")
    anchor = max(x_max, _ANCHOR)
    sol = _integrate_pii(t, x_min, anchor)
    if num is None:
        num = max(64, int((x_max - x_min) / 0.05) + 1)
    xs = np.linspace(x_min, x_max, num)
    vals = sol.sol(xs)
    return PIISolution(t=float(t), anchor=anchor, xs=xs,
                       w=vals[0], w_prime=vals[1], _dense=sol.sol)


def _tail_moment(t, anchor, x):
    """t * int_anchor^inf (y - x) Ai(y)^2 dy, the residual mass beyond the anchor."""
    rule = gauss_legendre(60, anchor, anchor + 12.0)
    ai = airy(rule.nodes)[0]
    vals = rule.weights * ai * ai
    return t * (float(np.dot(vals, rule.nodes)) - x * float(np.sum(vals)))


_PANEL = gauss_legendre(10, 0.0, 1.0)


def _moment_integral(sol, x, anchor):
    """int_x^anchor (y - x) w(y)^2 dy by composite panel quadrature."""
    npan = max(40, int((anchor - x) / 0.2))
    bounds = np.linspace(x, anchor, npan + 1)
    widths = np.diff(bounds)
    ys = (bounds[:-1, None] + widths[:, None] * _PANEL.nodes[None, :]).ravel()
    wts = (widths[:, None] * _PANEL.weights[None, :]).ravel()
    w = sol.sol(ys)[0]
    return float(np.dot(wts, (ys - x) * w * w))


def tw_cdf(t, xs):
    """F(x; t) on the requested grid through the Painleve II representation."""
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 1 or xs.size == 0 or np.any(np.diff(xs) <= 0):
        raise ValueError("xs must be a nonempty increasing grid")
    x_lo = float(xs[0])
    anchor = max(float(xs[-1]) + 2.0, _ANCHOR)
    sol = _integrate_pii(t, x_lo, anchor)
    F = np.empty_like(xs)
    for i, x in enumerate(xs):
        integral = _moment_integral(sol, x, anchor) + _tail_moment(t, anchor, x)
        F[i] = np.exp(-integral)
    w_req = sol.sol(xs)[0]
    return TWCurve(t=float(t), xs=xs, F_values=F, w_values=w_req, route="painleve")


def tw_cdf_det(t, xs, n=100):
    """F(x; t) = det(I - t Gamma_(x)^2) from the Airy Hankel spectrum."""
    if not 0.0 < t <= 1.0:
        raise ValueError("t must lie in (0, 1]")
    xs = np.asarray(xs, dtype=float)
    F = np.empty_like(xs)
    for i, x in enumerate(xs):
        op = discretize(airy_symbol_kernel(shift=float(x)), (0.0, np.inf), n)
        gam = sym_eigen(op).eigenvalues
        F[i] = float(np.prod(1.0 - t * gam * gam))
    return TWCurve(t=float(t), xs=xs, F_values=F, w_values=None, route="determinant")
