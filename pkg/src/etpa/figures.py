"""Data and shape metrics for the above-band time-profile figures.

All curves are normalized to their value at ``t_minus = 0`` and use the
time unit ``T = 2*pi/omega_gf``.
"""
from __future__ import annotations

import numpy as np
from scipy.integrate import trapezoid

from .special_functions import gamma_m, log_weight, sinc_approx

#: Detunings of the band-edge comparison, in units of B = omega_gf/2.
FIG1_RATIOS = (1.02, 1.1, 2.0)
#: Detunings of the exact-versus-sinc comparison.
FIG2_RATIOS = (1.02, 2.0)
DEFAULT_SPAN = (0.0, 20.0)
DEFAULT_POINTS = 2001


def time_unit(omega_gf):
    return 2.0 * np.pi / omega_gf


def normalized_profile(ratio, omega_gf, t):
    nu = ratio * 0.5 * omega_gf
    return gamma_m(nu, omega_gf, t) / log_weight(nu, omega_gf)


def fig1_curves(omega_gf, t, ratios=FIG1_RATIOS):
    """Normalized exact profiles, one column per detuning ratio."""
    return {r: normalized_profile(r, omega_gf, t) for r in ratios}


def fig2_curves(omega_gf, t, ratios=FIG2_RATIOS):
    """(exact, sinc) pairs of normalized profiles per detuning ratio."""
    out = {}
    for r in ratios:
        nu = r * 0.5 * omega_gf
        w = log_weight(nu, omega_gf)
        out[r] = (gamma_m(nu, omega_gf, t) / w, sinc_approx(nu, omega_gf, t) / w)
    return out


def zero_crossings(t, y):
    """Linearly interpolated sign changes of ``y`` sampled on ``t``."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    s = np.signbit(y)
    k = np.flatnonzero(s[:-1] != s[1:])
    return t[k] - y[k] * (t[k + 1] - t[k]) / (y[k + 1] - y[k])


def oscillation_period(t, y, t_min=0.0):
    """Twice the mean spacing of zero crossings beyond ``t_min``.

    Returns ``(period, spacings)``; ``period`` is nan with fewer than two
    crossings.
    """
    z = zero_crossings(t, y)
    z = z[z > t_min]
    if len(z) < 2:
        return float("nan"), np.array([])
    gaps = np.diff(z)
    return float(2.0 * gaps.mean()), gaps


def amplitude_near(t, y, t0, half_window):
    """max |y| over ``|t - t0| <= half_window``."""
    t = np.asarray(t, dtype=float)
    sel = np.abs(t - t0) <= half_window
    return float(np.max(np.abs(np.asarray(y)[sel])))


def relative_l2(a, b, t=None):
    """||a - b|| / ||b|| by the trapezoid rule on ``t`` (plain sums when ``t`` is None)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if t is None:
        return float(np.linalg.norm(a - b) / np.linalg.norm(b))
    num = trapezoid(np.abs(a - b) ** 2, t)
    den = trapezoid(np.abs(b) ** 2, t)
    return float(np.sqrt(num / den))
