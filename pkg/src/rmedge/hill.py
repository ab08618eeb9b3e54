"""Hill's equation with potential alpha cos(2x): discriminant, periodic
spectrum, infinite-product formula, and the associated periodic kernels.

The discriminant is the trace of the monodromy matrix S(pi) of

    y'' + (lambda + alpha cos 2x) y = 0,    S(0) = I,

and the periodic spectrum consists of the lambda with Delta(lambda)^2 = 4:
roots of Delta = 2 carry pi-periodic solutions, roots of Delta = -2 carry
solutions of period 2 pi only.  A 2 pi-periodic solution A built from the
anti-periodic monodromy eigenvector yields the doubly periodic kernel

    W(x, y) = (A(x) A'(y) - A'(x) A(y)) / sin(x - y),

whose eigenfunctions at simple nonzero eigenvalues again solve the equation.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .errors import ResolutionError, WrongPeriodError
from .kernels import KernelSpec
from .specfun import periodic_rule

__all__ = [
    "HillModel",
    "PeriodicSpectrum",
    "MathieuKernel",
    "monodromy",
    "discriminant",
    "discriminant_and_derivative",
    "periodic_spectrum",
    "product_formula_check",
    "mathieu_tw_kernel",
    "mathieu_eigencheck",
]

# vmax threshold below which an instability gap is numerically closed: the
# double-precision discriminant cannot resolve narrower gaps (quadratic
# conditioning), and the paired roots collapse to the extremum of Delta
_TANGENT_TOL = 2e-9


@dataclass(frozen=True)
class HillModel:
    alpha: float
    lam: float


def _rhs_factory(alpha, lam, with_deriv):
    if not with_deriv:
        def rhs(x, y):
            q = alpha * math.cos(2.0 * x)
            # columns of S stacked: y = [s11, s21, s12, s22]
            return [y[1], -(lam + q) * y[0], y[3], -(lam + q) * y[2]]
        return rhs

    def rhs(x, y):
        q = alpha * math.cos(2.0 * x)
        k = lam + q
        # S and dS/dlambda stacked; d/dlambda of the companion matrix is
        # [[0, 0], [-1, 0]]
        return [y[1], -k * y[0], y[3], -k * y[2],
                y[5], -k * y[4] - y[0], y[7], -k * y[6] - y[2]]
    return rhs


def _propagate(alpha, lam, x_end=math.pi, with_deriv=False):
    n = 8 if with_deriv else 4
    y0 = np.zeros(n)
    y0[0] = 1.0
    y0[3] = 1.0
    sol = solve_ivp(_rhs_factory(alpha, lam, with_deriv), (0.0, x_end), y0,
                    method="DOP853", rtol=1e-12, atol=1e-14)
    return sol.y[:, -1]


def monodromy(model):
    """Fundamental matrix S(pi); det S = 1 by Wronskian conservation."""
    y = _propagate(model.alpha, model.lam)
    return np.array([[y[0], y[2]], [y[1], y[3]]])


def discriminant(model):
    """Delta(lambda) = trace S(pi)."""
    y = _propagate(model.alpha, model.lam)
    return float(y[0] + y[3])


def discriminant_and_derivative(alpha, lam):
    """(Delta, dDelta/dlambda) through the variational system."""
    y = _propagate(alpha, lam, with_deriv=True)
    return float(y[0] + y[3]), float(y[4] + y[7])


def _discriminants_batch(alpha, lams):
    """Delta on a grid of spectral parameters through one stacked integration."""
    lams = np.asarray(lams, dtype=float)
    m = lams.size
    y0 = np.zeros(4 * m)
    y0[0::4] = 1.0
    y0[3::4] = 1.0

    def rhs(x, y):
        q = alpha * math.cos(2.0 * x)
        k = lams + q
        out = np.empty_like(y)
        out[0::4] = y[1::4]
        out[1::4] = -k * y[0::4]
        out[2::4] = y[3::4]
        out[3::4] = -k * y[2::4]
        return out

    sol = solve_ivp(rhs, (0.0, math.pi), y0, method="DOP853",
                    rtol=1e-12, atol=1e-14)
    y = sol.y[:, -1]
    return y[0::4] + y[3::4]


@dataclass(frozen=True)
class PeriodicSpectrum:
    lambdas: np.ndarray
    period_tags: tuple  # "pi-periodic" or "2pi-periodic" per entry
    alpha: float


def _lowest_eigenvalue(alpha):
    # Delta decreases through 2 at lambda_0; bracket by marching right
    lo = -abs(alpha) - 2.0
    f = lambda lam: discriminant(HillModel(alpha, lam)) - 2.0
    flo = f(lo)
    if flo < 0:
        raise ResolutionError("failed to bracket the lowest eigenvalue from below")
    hi = lo + 0.5
    while f(hi) > 0:
        hi += 0.5
        if hi > 4.0 + abs(alpha):
            raise ResolutionError("failed to bracket the lowest eigenvalue")
    return brentq(f, hi - 0.5, hi, xtol=1e-12, rtol=8.9e-16)


def _gap_pair(alpha, m):
    """The two periodic eigenvalues flanking the m-th instability gap.

    Locates the extremum of sigma * Delta (sigma = (-1)^m) near m^2 through
    the root of Delta', then splits into two simple roots when the gap is
    numerically open.  Closed gaps return the extremum twice.
    """
    sigma = 1.0 if m % 2 == 0 else -1.0
    left = m * m - m + 0.5
    right = m * m + m + 0.5
    grid = np.linspace(left, right, 25)
    vals = sigma * _discriminants_batch(alpha, grid)
    i = int(np.argmax(vals))
    blo = grid[max(i - 1, 0)]
    bhi = grid[min(i + 1, len(grid) - 1)]
    dlo = discriminant_and_derivative(alpha, blo)[1]
    dhi = discriminant_and_derivative(alpha, bhi)[1]
    if np.sign(dlo) == np.sign(dhi):
        raise ResolutionError(
            f"could not bracket the discriminant extremum near {m * m}")
    lam_star = brentq(lambda lam: discriminant_and_derivative(alpha, lam)[1],
                      blo, bhi, xtol=1e-13, rtol=8.9e-16)
    vmax = sigma * discriminant(HillModel(alpha, lam_star)) - 2.0
    if vmax <= _TANGENT_TOL:
        return lam_star, lam_star
    f = lambda lam: sigma * discriminant(HillModel(alpha, lam)) - 2.0
    lo_edge = left
    while f(lo_edge) > 0:
        lo_edge -= 0.25
    hi_edge = right
    while f(hi_edge) > 0:
        hi_edge += 0.25
    r1 = brentq(f, lo_edge, lam_star, xtol=1e-12, rtol=8.9e-16)
    r2 = brentq(f, lam_star, hi_edge, xtol=1e-12, rtol=8.9e-16)
    return r1, r2


def _spectrum_entries(alpha, count):
    lams = [_lowest_eigenvalue(alpha)]
    tags = ["pi-periodic"]
    m = 1
    while len(lams) < count:
        r1, r2 = _gap_pair(alpha, m)
        tag = "2pi-periodic" if m % 2 else "pi-periodic"
        lams.extend([r1, r2])
        tags.extend([tag, tag])
        m += 1
    return np.array(lams[:count]), tuple(tags[:count])


def periodic_spectrum(alpha, count):
    """First ``count`` periodic eigenvalues with the interlacing multiplicity.

    Entries beyond the first few gaps of a weak potential sit at numerically
    closed gaps; their paired values are reported at the gap midpoint, which
    is exact to ~sqrt(eps) of the gap width.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if count > 40:
        raise ValueError("count > 40 is outside the supported resolution")
    lams, tags = _spectrum_entries(alpha, count)
    return PeriodicSpectrum(lambdas=lams, period_tags=tags, alpha=float(alpha))


def product_formula_check(alpha, lam, n_terms, spectrum=None):
    """Truncated spectral product for 4 - Delta^2 against the discriminant.

    4 - Delta^2 is entire of order 1/2 with zeros at the periodic spectrum,

        4 - Delta^2 = 4 pi^2 (lam - l_0) prod_j (l_{2j-1} - lam)(l_{2j} - lam) / j^4

    (the constant is pinned by the free case Delta = 2 cos(pi sqrt(lam))).
    Returns (lhs, rhs, gap); the truncation error decays like exp(2 lam / n),
    so the gap shrinks as terms are added.
    """
    if spectrum is None:
        ev = _spectrum_entries(alpha, 2 * n_terms + 1)[0]
    else:
        ev = spectrum.lambdas
        if ev.size < 2 * n_terms + 1:
            raise ValueError("spectrum holds too few entries for n_terms")
    delta = discriminant(HillModel(alpha, lam))
    lhs = 4.0 - delta * delta
    rhs = 4.0 * math.pi ** 2 * (lam - ev[0])
    for j in range(1, n_terms + 1):
        rhs *= (ev[2 * j - 1] - lam) * (ev[2 * j] - lam) / j ** 4
    return lhs, rhs, abs(lhs - rhs)


# ---------------------------------------------------------------------------
# the periodic Tracy-Widom kernel


@dataclass(frozen=True)
class MathieuKernel:
    alpha: float
    lam: float
    spectral_index: int
    x_grid: np.ndarray
    A_values: np.ndarray
    A_prime_values: np.ndarray
    spec: KernelSpec = field(repr=False)


def _periodic_solution(alpha, lam, n_grid=2048):
    """A 2pi-periodic solution from the anti-periodic monodromy eigenvector."""
    S = monodromy(HillModel(alpha, lam))
    D = S + np.eye(2)
    if np.abs(D).max() < 1e-6:
        v = np.array([0.0, 1.0])  # closed gap: sine-like start
    else:
        # eigenvector for eigenvalue -1: smallest singular direction of S + I
        _, _, vt = np.linalg.svd(D)
        v = vt[-1]

    def rhs(x, y):
        return [y[1], -(lam + alpha * math.cos(2.0 * x)) * y[0]]

    sol = solve_ivp(rhs, (0.0, 2.0 * math.pi), v, method="DOP853",
                    rtol=1e-12, atol=1e-14, dense_output=True)
    xs = np.linspace(0.0, 2.0 * math.pi, n_grid + 1)
    vals = sol.sol(xs)
    # normalize ||A||^2 = pi over the period (sin-like convention) and fix sign
    mass = np.trapezoid(vals[0] ** 2, xs)
    scale = math.sqrt(math.pi / mass)
    a, ap = vals[0] * scale, vals[1] * scale
    anchor = ap[0] if abs(ap[0]) > 1e-8 else a[np.argmax(np.abs(a))]
    if anchor < 0:
        a, ap, scale = -a, -ap, -scale
    dense = sol.sol

    def eval_ab(x):
        x = np.mod(np.asarray(x, dtype=float), 2.0 * math.pi)
        shape = x.shape
        y = dense(x.ravel())
        return (y[0] * scale).reshape(shape), (y[1] * scale).reshape(shape)

    return xs, a, ap, eval_ab


def mathieu_tw_kernel(alpha, spectral_index, n_grid=2048):
    """Doubly periodic kernel from the 2pi-periodic solution at a spectrum point.

    ``spectral_index`` refers to entries of :func:`periodic_spectrum`; indices
    tagged pi-periodic are refused since the construction needs the
    anti-periodic Floquet eigenvector.
    """
    spectrum = periodic_spectrum(alpha, spectral_index + 1)
    tag = spectrum.period_tags[spectral_index]
    if tag != "2pi-periodic":
        raise WrongPeriodError(
            f"spectral index {spectral_index} is {tag}; the kernel needs a "
            "2pi-periodic eigenfunction")
    lam = float(spectrum.lambdas[spectral_index])
    xs, a, ap, eval_ab = _periodic_solution(alpha, lam, n_grid)

    def raw(x, y):
        ax, apx = eval_ab(x)
        ay_, apy = eval_ab(y)
        return (ax * apy - apx * ay_) / np.sin(x - y)

    def ev(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        d = np.sin(x - y)
        near = np.abs(d) < 1e-6
        if not np.any(near):
            return raw(x, y)
        # symmetric limit across the removable zeros of sin(x - y), with one
        # Richardson step in the first argument
        h = 1e-5
        k1 = 0.5 * (raw(x + h, y) + raw(x - h, y))
        k2 = 0.5 * (raw(x + h / 2, y) + raw(x - h / 2, y))
        lim = (4.0 * k2 - k1) / 3.0
        far = raw(np.where(near, y + 1.0, x), y)
        return np.where(near, lim, far)

    spec = KernelSpec("mathieu", {"alpha": float(alpha), "index": spectral_index},
                      (-math.inf, math.inf), ev)
    return MathieuKernel(alpha=float(alpha), lam=lam, spectral_index=spectral_index,
                         x_grid=xs, A_values=a, A_prime_values=ap, spec=spec)


def _fft_second_derivative(f, period=2.0 * math.pi):
    n = f.size
    k = 2.0 * math.pi * np.fft.rfftfreq(n, d=period / n)
    return np.fft.irfft(-(k * k) * np.fft.rfft(f), n=n)


def mathieu_eigencheck(kernel, n=256, top=6):
    """ODE residuals of the discretized kernel's leading simple eigenfunctions.

    The kernel is discretized with the equal-weight midpoint rule (spectrally
    accurate for smooth periodic kernels).  For each retained eigenfunction f
    the residual of f'' + (mu + alpha cos 2x) f with the least-squares mu is
    reported, normalized by (1 + |mu|) ||f||.  Eigenvalues that are not simple
    are skipped, as are near-zero ones.
    """
    rule = periodic_rule(n, 0.0, 2.0 * math.pi)
    xs = rule.nodes
    h = rule.weights[0]
    K = np.asarray(kernel.spec.evaluator(xs[:, None], xs[None, :]))
    M = 0.5 * (K + K.T) * h
    vals, vecs = np.linalg.eigh(M)
    order = np.argsort(-np.abs(vals))
    scale = np.abs(vals[order[0]])
    report = []
    skipped = 0
    for idx in order[:top]:
        lam_op = vals[idx]
        if abs(lam_op) < 1e-6 * scale:
            continue
        gaps = np.abs(vals - lam_op)
        gaps[idx] = np.inf
        if gaps.min() < 1e-6 * scale:
            skipped += 1
            continue
        f = vecs[:, idx]
        f2 = _fft_second_derivative(f)
        cos2 = np.cos(2.0 * xs)
        mu = -float(np.dot(f, f2 + kernel.alpha * cos2 * f) / np.dot(f, f))
        resid = f2 + (mu + kernel.alpha * cos2) * f
        rel = float(np.linalg.norm(resid) / ((1.0 + abs(mu)) * np.linalg.norm(f)))
        report.append({"eigenvalue": float(lam_op), "mu": mu, "residual": rel})
    worst = max((r["residual"] for r in report), default=0.0)
    return {"checks": report, "skipped_degenerate": skipped, "max_residual": worst}
