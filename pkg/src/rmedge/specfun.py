"""Special functions and quadrature rules underlying every kernel evaluation.

All operations are pure and reentrant.  Special-function values are delegated
to scipy.special (AMOS/Cephes), which delivers full double precision on the
whole parameter range we need; the test suite validates them against
independent series oracles and the defining ODEs.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

__all__ = [
    "QuadRule",
    "gauss_legendre",
    "periodic_rule",
    "airy",
    "bessel_j",
    "log_gamma_complex",
]


@dataclass(frozen=True)
class QuadRule:
    """Quadrature rule on an interval: positive weights, increasing interior nodes."""

    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple

    def __post_init__(self):
        lo, hi = self.interval
        if not np.all(self.weights > 0):
            raise ValueError("quadrature weights must be positive")
        if abs(self.weights.sum() - (hi - lo)) > 1e-12 * max(1.0, hi - lo):
            raise ValueError("weights must sum to the interval length")
        if not (np.all(np.diff(self.nodes) > 0)
                and self.nodes[0] > lo and self.nodes[-1] < hi):
            raise ValueError("nodes must be strictly increasing inside the interval")

    def __len__(self):
        return self.nodes.size

    def integrate(self, values):
        return float(np.dot(self.weights, values))


def gauss_legendre(n, lo, hi):
    """Gauss-Legendre rule with n points on (lo, hi).

    Nodes are roots of the degree-n Legendre polynomial, found by Newton
    iteration from the Chebyshev-like initial guess; exact for polynomials of
    degree <= 2n-1.
    """
    if n < 1:
        raise ValueError("need at least one quadrature node")
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    k = np.arange(n)
    x = np.cos(np.pi * (4 * k + 3) / (4 * n + 2))
    for _ in range(100):
        # evaluate P_n and P_{n-1} by the three-term recurrence
        p_prev = np.ones_like(x)
        p = x.copy()
        for j in range(2, n + 1):
            p, p_prev = ((2 * j - 1) * x * p - (j - 1) * p_prev) / j, p
        if n == 1:
            dp = np.ones_like(x)
        else:
            dp = n * (p_prev - x * p) / (1.0 - x * x)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    # final derivative for the weights
    p_prev = np.ones_like(x)
    p = x.copy()
    for j in range(2, n + 1):
        p, p_prev = ((2 * j - 1) * x * p - (j - 1) * p_prev) / j, p
    dp = np.ones_like(x) if n == 1 else n * (p_prev - x * p) / (1.0 - x * x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    # map from (-1, 1); initial guesses are descending, so flip
    half = 0.5 * (hi - lo)
    nodes = (0.5 * (lo + hi) + half * x)[::-1].copy()
    weights = (half * w)[::-1].copy()
    return QuadRule(nodes=nodes, weights=weights, interval=(lo, hi))


def periodic_rule(n, lo, hi):
    """Equal-weight midpoint rule; spectrally accurate for smooth periodic kernels."""
    if n < 1:
        raise ValueError("need at least one quadrature node")
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    h = (hi - lo) / n
    nodes = lo + h * (np.arange(n) + 0.5)
    weights = np.full(n, h)
    return QuadRule(nodes=nodes, weights=weights, interval=(lo, hi))


def airy(x):
    """Airy function of the first kind and its derivative, (Ai, Ai').

    Underflows cleanly to (0, 0) for large positive arguments.
    """
    if not np.all(np.isfinite(x)):
        raise ValueError("airy requires finite arguments")
    ai, aip, _, _ = _sp.airy(x)
    return ai, aip


def bessel_j(nu, x):
    """Bessel function of the first kind J_nu and its derivative, nu > -1/2, x >= 0."""
    if not nu > -0.5:
        raise ValueError("order must exceed -1/2")
    if np.any(np.asarray(x) < 0):
        raise ValueError("argument must be nonnegative")
    return _sp.jv(nu, x), _sp.jvp(nu, x, 1)


def log_gamma_complex(z):
    """Principal branch of log Gamma on the right half-plane Re z > 0."""
    z = complex(z)
    if not z.real > 0:
        raise ValueError("log_gamma_complex is restricted to Re z > 0")
    return complex(_sp.loggamma(z))


def _lgamma_half(nu, x):
    # log Gamma((1 + nu + i x)/2); helper shared with the hard-edge symbol
    return log_gamma_complex(complex(0.5 * (1.0 + nu), 0.5 * x))


def unimodular_gamma_ratio(nu, x):
    """2^{ix} Gamma((1+nu+ix)/2) / Gamma((1+nu-ix)/2); unimodular for real x."""
    x = float(x)
    lg_num = _lgamma_half(nu, x)
    lg_den = _lgamma_half(nu, -x)
    return complex(np.exp(1j * x * math.log(2.0) + lg_num - lg_den))
