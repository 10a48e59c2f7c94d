r"""Sine/cosine integrals and band-limited time profiles of above-band levels.

An intermediate level above the final state (``nu_m > B`` with
``B = omega_gf / 2``) contributes only its off-resonant term
``nu_m / (nu_m**2 - w**2)`` once frequency differences are restricted to the
physical band ``(-B, B)``. Transforming that band-limited spectrum back to
time difference gives the real shape function

.. math::

    \gamma_m(t) = \cos(\nu t)\,[\mathrm{Ci}((\nu+B)|t|) - \mathrm{Ci}((\nu-B)|t|)]
                + \sin(\nu |t|)\,[\mathrm{Si}((\nu+B)|t|) - \mathrm{Si}((\nu-B)|t|)]

which equals ``int_{-B}^{B} nu/(nu^2 - w^2) exp(-i w t) dw``. The Ci
arguments are taken at their absolute values (the real branch), which keeps
``gamma_m`` real and even.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .errors import DomainError, InBandLevelPresent
from .level_model import CouplingSet, LevelClass, classify_detunings

EULER_GAMMA = 0.57721566490153286060651209


def si(x):
    """Sine integral Si(x) = int_0^x sin(u)/u du (odd in x)."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("Si requires finite arguments")
    s, _ = kernels.sici(x)
    return s[()] if s.ndim == 0 else s


def ci(x):
    """Cosine integral Ci(x) = gamma_E + ln x + int_0^x (cos u - 1)/u du for x > 0."""
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)) or not np.all(np.isfinite(x)):
        raise DomainError("Ci is defined here for finite x > 0 only")
    _, c = kernels.sici(x)
    return c[()] if c.ndim == 0 else c


def cin(x):
    """Entire cosine integral Cin(x) = int_0^x (1 - cos u)/u du (even in x)."""
    x = np.asarray(x, dtype=float)
    out = kernels.cin(x)
    return out[()] if np.ndim(out) == 0 else out


def _check_above_band(nu_m, omega_gf):
    if not omega_gf > 0:
        raise DomainError(f"omega_gf must be positive, got {omega_gf}")
    band = 0.5 * omega_gf
    if not nu_m > band:
        raise DomainError(
            f"nu_m = {nu_m} must exceed omega_gf/2 = {band} (level above the final state)")
    return band


def log_weight(nu_m, omega_gf):
    """gamma_m(0) = log((nu_m + B) / (nu_m - B))."""
    band = _check_above_band(nu_m, omega_gf)
    return float(np.log((nu_m + band) / (nu_m - band)))


def gamma_m(nu_m, omega_gf, t_minus):
    """Time profile of one above-band level; real and even in ``t_minus``.

    For ``|t_minus| < 1e-8 * 2*pi/omega_gf`` the analytic limit
    ``log((nu_m + B)/(nu_m - B))`` is returned.
    """
    band = _check_above_band(float(nu_m), float(omega_gf))
    t = np.asarray(t_minus, dtype=float)
    out = kernels.gamma_profile(float(nu_m), band, t)
    return out[()] if np.ndim(out) == 0 else out


def sinc_approx(nu_m, omega_gf, t_minus):
    """Rectangular-spectrum approximation ``gamma_m(0) * sin(B t)/(B t)``."""
    band = _check_above_band(float(nu_m), float(omega_gf))
    weight = np.log((nu_m + band) / (nu_m - band))
    t = np.asarray(t_minus, dtype=float)
    return weight * np.sinc(band * t / np.pi)


@dataclass(frozen=True, eq=False)
class GammaProfile:
    nu_m: float
    band: float
    t_grid: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def normalized(self) -> np.ndarray:
        return self.values / log_weight(self.nu_m, 2.0 * self.band)


def gamma_profile(nu_m, omega_gf, t_grid) -> GammaProfile:
    t = np.asarray(t_grid, dtype=float)
    return GammaProfile(nu_m=float(nu_m), band=0.5 * float(omega_gf), t_grid=t,
                        values=np.asarray(gamma_m(nu_m, omega_gf, t), dtype=float))


def _require_above_final(couplings: CouplingSet):
    classes = classify_detunings(couplings.nu, couplings.band, couplings.omega_gf)
    for k, cls in enumerate(classes):
        if cls is LevelClass.IN_BAND:
            raise InBandLevelPresent(
                f"level {k} (nu = {couplings.nu[k]}) lies inside the physical band")
        if cls is LevelClass.BELOW_GROUND:
            raise DomainError(
                f"level {k} (nu = {couplings.nu[k]}) lies below the ground state; "
                "the summed profile covers levels above the final state only")


def summed_profile(couplings: CouplingSet, t_grid, approximate=False) -> np.ndarray:
    """Band-limited time-difference wave function of a set of above-band levels.

    With ``approximate=False`` returns ``sum_m 4i c_m gamma_m(t)``; with
    ``approximate=True`` the collapsed form
    ``(sum_m 4i c_m log((nu_m+B)/(nu_m-B))) * sin(B t)/(B t)``.
    """
    _require_above_final(couplings)
    t = np.asarray(t_grid, dtype=float)
    omega_gf = couplings.omega_gf
    if approximate:
        weight = sum(4j * c * log_weight(nu, omega_gf)
                     for nu, c in zip(couplings.nu, couplings.c))
        return weight * np.sinc(couplings.band * t / np.pi)
    out = np.zeros(t.shape, dtype=complex)
    for nu, c in zip(couplings.nu, couplings.c):
        out += 4j * c * gamma_m(nu, omega_gf, t)
    return out
