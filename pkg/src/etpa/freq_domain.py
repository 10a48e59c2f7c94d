r"""Frequency-difference representation of the optimally absorbed state.

Fourier convention: ``Gamma(w) = int f(t) exp(i w t) dt`` with no prefactor,
inverse ``f(t) = (1/2pi) int Gamma(w) exp(-i w t) dw``. In the limit of a
vanishing convergence factor each level contributes

.. math::

    c_m \left[\pi\delta(w - \nu_m) + \pi\delta(w + \nu_m)
        - \frac{2 i \nu_m}{\nu_m^2 - w^2}\right],

a resonant delta pair and an off-resonant principal-value term related by
Kramers-Kronig relations. Delta terms are kept symbolic as
``(location, weight)`` pairs and never rasterized.

``CONVENTION_K`` relates this smooth part to the off-resonant kernel
``4 i c_m nu_m / (nu_m**2 - w**2)`` returned by
:func:`gamma_spectrum_offresonant`; it was pinned against the
eps-regularized quadrature oracle in ``numeric_oracle`` and is re-measured
by ``etpa verify``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import BandViolation, InBandLevelPresent, PoleOnGrid
from .level_model import CouplingSet, LevelClass, classify_detunings

#: Smooth part of the regularized transform per unit of 4i*c*nu/(nu^2 - w^2).
CONVENTION_K = -0.5
#: Weight of each resonant delta per unit coupling.
DELTA_WEIGHT = np.pi
#: Grid points closer than this (relative to omega_gf) to a pole are snapped away.
POLE_SNAP_FRACTION = 1e-9


@dataclass(frozen=True, eq=False)
class SpectralAmplitude:
    band: float
    grid: np.ndarray = field(repr=False)
    smooth: np.ndarray = field(repr=False)
    delta_terms: tuple[tuple[float, complex], ...] = ()
    truncated: bool = False
    poles: tuple[float, ...] = ()
    smooth_fn: Callable | None = field(default=None, repr=False)

    def evaluate_smooth(self, w):
        """Evaluate the smooth part off-grid (falls back to spline interpolation)."""
        if self.smooth_fn is not None:
            return self.smooth_fn(np.asarray(w, dtype=float))
        from scipy.interpolate import CubicSpline

        re = CubicSpline(self.grid, self.smooth.real)
        im = CubicSpline(self.grid, self.smooth.imag)
        return re(w) + 1j * im(w)


def _offresonant_kernel(nu, c):
    nu = np.asarray(nu, dtype=float)
    c = np.asarray(c, dtype=complex)
    # zero-detuning levels carry only delta weight
    keep = nu != 0.0
    nu, c = nu[keep], c[keep]

    def kernel(w):
        w = np.asarray(w, dtype=float)
        ww = w[..., None]
        return np.sum(4j * c * nu / (nu * nu - ww * ww), axis=-1)

    return kernel


def _snap_grid(grid, poles, omega_gf):
    grid = np.array(grid, dtype=float)
    if grid.ndim != 1:
        raise ValueError("frequency grid must be one-dimensional")
    tol = POLE_SNAP_FRACTION * omega_gf
    for p in poles:
        hit = grid == p
        if np.any(hit):
            k = int(np.flatnonzero(hit)[0])
            raise PoleOnGrid(f"grid point {k} (w = {grid[k]!r}) coincides with a pole")
        near = np.abs(grid - p) < tol
        if np.any(near):
            warnings.warn(
                f"{int(near.sum())} grid point(s) within {tol:.3g} of the pole at {p!r} "
                "were moved to that distance", RuntimeWarning, stacklevel=3)
            grid[near] = p + np.sign(grid[near] - p) * tol
    return grid


def gamma_spectrum_full(couplings: CouplingSet, grid) -> SpectralAmplitude:
    """Resonant delta pairs plus the principal-value smooth part on ``grid``."""
    nus = np.asarray(couplings.nu, dtype=float)
    cs = np.asarray(couplings.c, dtype=complex)
    poles = tuple(sorted({float(p) for n in nus if n != 0.0 for p in (n, -n)}))
    grid = _snap_grid(grid, poles, couplings.omega_gf)
    kernel = _offresonant_kernel(nus, cs)

    def smooth_fn(w):
        return CONVENTION_K * kernel(w)

    deltas = []
    for n, c in zip(nus, cs):
        deltas.append((float(n), complex(DELTA_WEIGHT * c)))
        deltas.append((float(-n), complex(DELTA_WEIGHT * c)))
    return SpectralAmplitude(
        band=couplings.band,
        grid=grid,
        smooth=smooth_fn(grid),
        delta_terms=tuple(deltas),
        truncated=False,
        poles=poles,
        smooth_fn=smooth_fn,
    )


def _inside_band(grid, band):
    return np.all(np.abs(grid) < band)


def gamma_spectrum_offresonant(couplings: CouplingSet, grid) -> SpectralAmplitude:
    """Off-resonant spectrum ``sum_m 4i c_m nu_m/(nu_m^2 - w^2)`` on the physical band.

    Valid only when no level lies inside the band; the result is already
    truncated and carries no delta terms.
    """
    classes = classify_detunings(couplings.nu, couplings.band, couplings.omega_gf)
    for k, cls in enumerate(classes):
        if cls is LevelClass.IN_BAND:
            raise InBandLevelPresent(
                f"level {k} (nu = {couplings.nu[k]}) is resonant inside the physical band")
    grid = np.asarray(grid, dtype=float)
    if not _inside_band(grid, couplings.band):
        raise BandViolation(
            f"grid spans [{grid.min()}, {grid.max()}], outside the open band "
            f"(-{couplings.band}, {couplings.band})")
    kernel = _offresonant_kernel(couplings.nu, couplings.c)
    return SpectralAmplitude(
        band=couplings.band,
        grid=grid,
        smooth=kernel(grid),
        delta_terms=(),
        truncated=True,
        poles=(),
        smooth_fn=kernel,
    )


def truncate_physical(spectrum: SpectralAmplitude) -> SpectralAmplitude:
    """Drop delta terms and grid samples outside the open band (-B, B)."""
    if spectrum.truncated:
        return spectrum
    band = spectrum.band
    keep = np.abs(spectrum.grid) < band
    return replace(
        spectrum,
        grid=spectrum.grid[keep],
        smooth=spectrum.smooth[keep],
        delta_terms=tuple((loc, w) for loc, w in spectrum.delta_terms if abs(loc) < band),
        truncated=True,
        poles=tuple(p for p in spectrum.poles if abs(p) < band),
    )


def resonant_branches(couplings: CouplingSet):
    """Delta terms split by the half of the time axis they come from.

    The ``t > 0`` half of ``exp(-i nu |t|)`` puts its delta at ``+nu``, the
    ``t < 0`` half at ``-nu``. Returns two lists of ``(location, weight)``.
    """
    plus = [(float(n), complex(DELTA_WEIGHT * c)) for n, c in zip(couplings.nu, couplings.c)]
    minus = [(float(-n), complex(DELTA_WEIGHT * c)) for n, c in zip(couplings.nu, couplings.c)]
    return plus, minus


def kk_consistency_check(couplings: CouplingSet, grid, linewidth=None, window=None,
                         tol=None) -> float:
    r"""Rebuild the smooth part from the delta terms by a numerical Hilbert transform.

    Each delta is given a Lorentzian profile of half-width ``linewidth``
    (default ``1e-4 * B``) and the principal-value integral

    .. math::

        \frac{i}{\pi}\, PV\!\int \frac{R_+(w') - R_-(w')}{w - w'}\, dw'

    is evaluated with :func:`etpa.numeric_oracle.pv_quadrature` at each grid
    point. Returns ``max|rebuilt - smooth| / max|smooth|`` over the grid
    (0 when the smooth part vanishes identically). ``tol`` is the PV
    refinement tolerance, by default ``1e-8 * max|smooth|``.
    """
    from .numeric_oracle import pv_quadrature

    band = couplings.band
    eta = 1e-4 * band if linewidth is None else float(linewidth)
    nus = np.asarray(couplings.nu, dtype=float)
    spectrum = gamma_spectrum_full(couplings, grid)
    smooth = spectrum.smooth
    scale = np.max(np.abs(smooth)) if smooth.size else 0.0
    if scale == 0.0:
        return 0.0
    if tol is None:
        tol = 1e-8 * scale
    if window is None:
        window = 1e4 * (np.max(np.abs(nus)) + band)
    plus, minus = resonant_branches(couplings)
    locs = np.array([loc for loc, _ in plus] + [loc for loc, _ in minus])
    signed = np.array([w for _, w in plus] + [-w for _, w in minus])
    # breakpoints at each peak and at decades of the linewidth around it, plus
    # geometric shells out to the window, keep QUADPACK off roundoff limits
    ladder = eta * 10.0 ** np.arange(5)
    shells = np.geomspace(10.0 * band, window, 6)
    peaks = set(np.concatenate([shells, -shells]).tolist())
    for loc in locs:
        peaks.update((loc + ladder).tolist())
        peaks.update((loc - ladder).tolist())
        peaks.add(float(loc))
    peaks = sorted(peaks)

    def resonant(x):
        # delta(x) -> (eta/pi) / (x^2 + eta^2)
        return np.sum(signed * (eta / np.pi) / ((x - locs) ** 2 + eta * eta))

    rebuilt = np.empty(len(spectrum.grid), dtype=complex)
    for k, w in enumerate(spectrum.grid):
        def re_part(x, w=w):
            return resonant(x).real / (w - x)

        def im_part(x, w=w):
            return resonant(x).imag / (w - x)

        pv_re = pv_quadrature(re_part, w, -window, window, tol=tol, points=peaks)
        pv_im = pv_quadrature(im_part, w, -window, window, tol=tol, points=peaks)
        rebuilt[k] = (1j / np.pi) * (pv_re + 1j * pv_im)
    return float(np.max(np.abs(rebuilt - smooth)) / scale)
