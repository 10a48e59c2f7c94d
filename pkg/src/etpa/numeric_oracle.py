"""Brute-force numerical transforms used to cross-check the analytic formulas.

Nothing here calls the Si/Ci kernels or the closed-form spectra: every
value is produced by generic adaptive quadrature (QUADPACK through
``scipy.integrate.quad``, Gauss-Kronrod panels, with the QAWO rule for
oscillatory weights). Spectra passed in are treated as black-box
integrands.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import DomainError, PoleInBand, QuadratureNotConverged
from .freq_domain import SpectralAmplitude

#: Default convergence-factor ladder in units of omega_gf.
EPS_LADDER = (1e-3, 1e-4)
#: Default integration window in units of 1/epsilon.
WINDOW_FACTOR = 30.0


def _quad(f, a, b, **kw):
    kw.setdefault("limit", 500)
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, err = integrate.quad(f, a, b, **kw)
        except integrate.IntegrationWarning as exc:
            raise QuadratureNotConverged(f"quad on [{a}, {b}]: {exc}") from None
    return value, err


@dataclass(frozen=True, eq=False)
class RegularizedFTParams:
    epsilon: float
    omega_grid: np.ndarray = field(repr=False)
    integration_window: float | None = None

    def __post_init__(self):
        if not self.epsilon > 0:
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")
        object.__setattr__(self, "omega_grid", np.atleast_1d(np.asarray(self.omega_grid, float)))
        window = self.integration_window
        if window is None:
            window = WINDOW_FACTOR / self.epsilon
        if not window >= 20.0 / self.epsilon:
            raise DomainError(
                f"integration window {window} is shorter than 20/epsilon = {20 / self.epsilon}")
        object.__setattr__(self, "integration_window", float(window))


@dataclass(frozen=True, eq=False)
class RegularizedFT:
    closed_form: np.ndarray
    quadrature: np.ndarray

    def max_relative_deviation(self) -> float:
        scale = np.maximum(np.abs(self.closed_form), np.finfo(float).tiny)
        return float(np.max(np.abs(self.quadrature - self.closed_form) / scale))


def _damped_cos_sin(k, eps, window):
    """int_0^W exp(-eps t) cos(k t) dt and the sine counterpart, by QAWO."""
    def damp(t):
        return np.exp(-eps * t)

    if k == 0.0:
        c, _ = _quad(damp, 0.0, window, epsabs=1e-14, epsrel=1e-11)
        return c, 0.0
    kw = dict(epsabs=1e-14, epsrel=1e-11)
    c, _ = _quad(damp, 0.0, window, weight="cos", wvar=abs(k), **kw)
    s, _ = _quad(damp, 0.0, window, weight="sin", wvar=abs(k), **kw)
    return c, np.sign(k) * s


def regularized_ft(nu, params: RegularizedFTParams) -> RegularizedFT:
    """Transform of ``exp(-eps|t|) exp(-i nu |t|)`` with kernel ``exp(i w t)``.

    Returns both the closed form ``1/(eps + i(nu - w)) + 1/(eps + i(nu + w))``
    and a direct quadrature over ``|t| <= integration_window``.
    """
    eps = params.epsilon
    w = params.omega_grid
    closed = 1.0 / (eps + 1j * (nu - w)) + 1.0 / (eps + 1j * (nu + w))
    quad = np.empty(w.shape, dtype=complex)
    for j, wj in enumerate(w):
        total = 0.0 + 0.0j
        for k in (nu - wj, nu + wj):
            c, s = _damped_cos_sin(float(k), eps, params.integration_window)
            total += c - 1j * s
        quad[j] = total
    return RegularizedFT(closed_form=closed, quadrature=quad)


def richardson_limit(nu, omega_grid, epsilons=None, omega_gf=1.0):
    """Linear eps -> 0 extrapolation of the quadrature values over two epsilons."""
    if epsilons is None:
        epsilons = tuple(e * omega_gf for e in EPS_LADDER)
    e1, e2 = epsilons
    f1 = regularized_ft(nu, RegularizedFTParams(e1, omega_grid)).quadrature
    f2 = regularized_ft(nu, RegularizedFTParams(e2, omega_grid)).quadrature
    return (e1 * f2 - e2 * f1) / (e1 - e2)


def pv_quadrature(f, pole, a, b, tol=1e-10, points=None, max_refinements=12):
    """Cauchy principal value of ``int_a^b f`` where ``f`` has a simple pole.

    The interval is split into the two outer pieces and a symmetric excision
    ``[pole - r, pole + r]`` whose contribution is integrated as
    ``int_0^r f(pole + s) + f(pole - s) ds`` (the pole cancels). The radius
    is halved until two successive estimates differ by less than ``tol``.
    """
    if not a < pole < b:
        raise DomainError(f"pole {pole} must lie strictly inside ({a}, {b})")
    # breakpoints that coincide with the pole up to rounding would pin the excision radius
    near = 1e-9 * (b - a)
    pts = sorted(p for p in (points or ()) if a < p < b and abs(p - pole) > near)
    r = 0.5 * min([pole - a, b - pole] + [abs(p - pole) for p in pts])
    kw = dict(epsabs=0.1 * tol, epsrel=1e-12, limit=1000)

    def estimate(r):
        left_pts = [p for p in pts if a < p < pole - r]
        right_pts = [p for p in pts if pole + r < p < b]
        left, _ = _quad(f, a, pole - r, points=left_pts or None, **kw)
        right, _ = _quad(f, pole + r, b, points=right_pts or None, **kw)
        inner, _ = _quad(lambda s: f(pole + s) + f(pole - s), 0.0, r, **kw)
        return left + right + inner

    prev = None
    for _ in range(max_refinements):
        try:
            est = estimate(r)
        except QuadratureNotConverged:
            est = None
        if est is not None and prev is not None and abs(est - prev) < tol:
            return est
        prev = est
        r *= 0.5
    raise QuadratureNotConverged(
        f"principal value around {pole} did not settle to {tol} after "
        f"{max_refinements} excision refinements")


def _pv_complex(f, pole, a, b, tol, points):
    re = pv_quadrature(lambda x: f(x).real, pole, a, b, tol=tol, points=points)
    im = pv_quadrature(lambda x: f(x).imag, pole, a, b, tol=tol, points=points)
    return re + 1j * im


def _smooth_piece(fn, a, b, t, tol):
    """int_a^b fn(w) exp(-i w t) dw for a smooth complex fn."""
    kw = dict(epsabs=tol, epsrel=1e-12)

    def fr(w):
        return complex(fn(w)).real

    def fi(w):
        return complex(fn(w)).imag

    if t == 0.0:
        re, _ = _quad(fr, a, b, **kw)
        im, _ = _quad(fi, a, b, **kw)
        return re + 1j * im
    # exp(-i w t) = cos(w t) - i sin(w t)
    rc, _ = _quad(fr, a, b, weight="cos", wvar=t, **kw)
    rs, _ = _quad(fr, a, b, weight="sin", wvar=t, **kw)
    ic, _ = _quad(fi, a, b, weight="cos", wvar=t, **kw)
    is_, _ = _quad(fi, a, b, weight="sin", wvar=t, **kw)
    return (rc + is_) + 1j * (ic - rs)


def bandlimited_inverse_ft(spectrum: SpectralAmplitude, t_grid, tol=1e-12) -> np.ndarray:
    """``(1/2pi) int_{-B}^{B} Gamma(w) exp(-i w t) dw`` for each ``t``.

    Delta terms contribute ``weight * exp(-i location t) / 2pi`` analytically
    (only those inside the band when the spectrum is truncated). Poles of the
    smooth part inside the band are integrated as principal values.
    """
    band = spectrum.band
    t_grid = np.asarray(t_grid, dtype=float)
    fn = spectrum.evaluate_smooth
    poles = sorted(p for p in spectrum.poles if -band <= p <= band)
    for p in poles:
        if abs(abs(p) - band) < 1e-12 * band:
            raise PoleInBand(f"pole at {p} sits on the band edge and cannot be bracketed")
    edges = [-band] + [0.5 * (p + q) for p, q in zip(poles[:-1], poles[1:])] + [band]
    deltas = [(loc, w) for loc, w in spectrum.delta_terms
              if not spectrum.truncated or abs(loc) < band]

    out = np.empty(t_grid.shape, dtype=complex)
    for j, t in enumerate(t_grid.ravel()):
        total = 0.0 + 0.0j
        if not poles:
            total = _smooth_piece(fn, -band, band, float(t), tol)
        else:
            for p, lo, hi in zip(poles, edges[:-1], edges[1:]):
                total += _pv_complex(lambda w, t=t: complex(fn(w)) * np.exp(-1j * w * t),
                                     p, lo, hi, tol, None)
        for loc, weight in deltas:
            total += weight * np.exp(-1j * loc * t)
        out.flat[j] = total / (2.0 * np.pi)
    return out


def forward_ft(fn, omega_grid, window, panel_width, nodes=16, taper=0.0):
    """``int_{-window}^{window} fn(t) exp(i w t) dt`` by composite Gauss-Legendre.

    ``fn`` is called once with the full node array, so expensive samplers
    (such as :func:`bandlimited_inverse_ft`) are evaluated in one batch.
    With ``taper > 0`` the outer ``taper * window`` of each side is weighted
    by a linear ramp to zero. This equals averaging the sharp-window result
    over window lengths and cancels the slowly decaying oscillatory error
    left by spectra with jumps.
    """
    n_panels = int(np.ceil(2.0 * window / panel_width))
    x, wts = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(-window, window, n_panels + 1)
    if taper > 0.0:
        ramp_start = (1.0 - taper) * window
        edges = np.union1d(edges, [-ramp_start, ramp_start])
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    w = (half[:, None] * wts[None, :]).ravel()
    if taper > 0.0:
        w = w * np.clip((window - np.abs(t)) / (taper * window), 0.0, 1.0)
    values = np.asarray(fn(t), dtype=complex)
    omega = np.atleast_1d(np.asarray(omega_grid, dtype=float))
    return np.array([np.sum(w * values * np.exp(1j * om * t)) for om in omega])
