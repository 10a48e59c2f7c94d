"""Time-basis optimal absorption state and TPA probability versus delay.

Coordinates are the mean arrival time ``t_plus = (t1 + t2)/2`` and the
arrival-time difference ``t_minus = t2 - t1``. The optimally absorbed state
delayed by ``tau`` on photon 2 is

    A(t_plus, t_minus; tau) = sigma_tp * O(|t_minus + tau|) * exp(i omega_gf (t_plus + tau/2))

with the intermediate overlap ``O(dt) = sum_m (c_m/sigma_tp) exp(-i nu_m dt)``
(the omega_av phase already folded into the detunings). ``A`` is the
coefficient <mu_abs(tau)|t_plus, t_minus> that multiplies the input wave
function, so the probability is ``|int int A psi dt_plus dt_minus|^2`` with
photon wave functions carrying ``exp(-i omega t)``.

Ideal-input probabilities use the normalization
``P(tau) = sigma_tp^2 |O(|tau|)|^2`` (the squared sum-frequency delta of the
ideal state is dropped).
"""
from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from ._backend import kernels
from .errors import DomainError, NegativeFrequencySupport, QuadratureNotConverged
from .level_model import AbsorberSpec, CouplingSet, coupling_set

#: Relative amplitude below which spectral tails count as absent.
NEGATIVE_FREQUENCY_TOL = 1e-6
_TAIL_WIDTHS = np.sqrt(2.0 * np.log(1.0 / NEGATIVE_FREQUENCY_TOL))
#: Tolerance of the projection quadrature, relative to the integral of |integrand|.
QUAD_RTOL = 1e-6


def dipole_correlation(spec: AbsorberSpec, t1, t2):
    """Two-time dipole correlation sum_m d_mf d_gm exp(-i nu_m|t2-t1|) exp(i omega_gf (t1+t2)/2)."""
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    d_gm, d_mf = spec.dipoles()
    dt = np.abs(t2 - t1)
    amp = kernels.overlap(spec.detunings(), d_mf * d_gm, np.ravel(dt)).reshape(dt.shape)
    out = amp * np.exp(1j * spec.omega_gf * 0.5 * (t1 + t2))
    return out[()] if out.ndim == 0 else out


def intermediate_overlap(couplings: CouplingSet, dt):
    """exp(i omega_av dt) <Phi_muf|U(dt)|Phi_gmu>, i.e. sum_m (c_m/sigma_tp) exp(-i nu_m dt)."""
    dt = np.asarray(dt, dtype=float)
    if np.any(dt < 0):
        raise DomainError("intermediate_overlap requires dt >= 0")
    w = _unit_weights(couplings)
    out = kernels.overlap(couplings.nu, w, np.ravel(dt)).reshape(dt.shape)
    return out[()] if out.ndim == 0 else out


def _unit_weights(couplings: CouplingSet):
    if couplings.sigma_tp == 0:
        raise DomainError("sigma_tp = 0 leaves the intermediate overlap undefined")
    return np.asarray(couplings.c, dtype=complex) / couplings.sigma_tp


def optimal_amplitude(spec: AbsorberSpec, t_plus, t_minus, tau=0.0):
    """<mu_abs(tau)|t_plus, t_minus> for the delayed optimally absorbed state."""
    cs = coupling_set(spec)
    t_plus = np.asarray(t_plus, dtype=float)
    t_minus = np.asarray(t_minus, dtype=float)
    dt = np.abs(t_minus + tau)
    ov = kernels.overlap(cs.nu, cs.c, np.ravel(dt)).reshape(dt.shape)
    out = ov * np.exp(1j * spec.omega_gf * (t_plus + 0.5 * tau))
    return out[()] if out.ndim == 0 else out


def tpa_probability_ideal(spec: AbsorberSpec, tau):
    """sigma_tp^2 |<Phi_muf|U(|tau|)|Phi_gmu>|^2 for the ideal energy-time entangled input."""
    return _ideal(coupling_set(spec), tau)


def _ideal(cs: CouplingSet, tau):
    tau = np.asarray(tau, dtype=float)
    amp = kernels.overlap(cs.nu, cs.c, np.ravel(np.abs(tau))).reshape(tau.shape)
    out = np.abs(amp) ** 2
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# input states


@dataclass(frozen=True)
class IdealEntangled:
    """Sum-frequency eigenstate at omega_gf with t_minus = 0."""


@dataclass(frozen=True)
class GaussianEntangled:
    """Entangled pair with a Gaussian sum-frequency spectrum and time-difference envelope.

    psi(t_plus, t_minus) = f(t_plus) g(t_minus) with
    ``f = (s+^2/pi)^(1/4) exp(-s+^2 t^2/2) exp(-i (omega_gf + delta_plus) t)`` and
    ``g = (pi s-^2)^(-1/4) exp(-t^2/(2 s-^2))``. ``sigma_plus`` is the 1/e
    half-width of the sum-frequency amplitude, ``sigma_minus`` the 1/e
    half-width of the time-difference amplitude. Both photons are centred at
    half the sum frequency.
    """

    delta_plus: float = 0.0
    sigma_plus: float = 1.0
    sigma_minus: float = 1.0

    def __post_init__(self):
        if not (self.sigma_plus > 0 and self.sigma_minus > 0):
            raise DomainError("GaussianEntangled bandwidths must be positive")

    def wavefunction(self, t_plus, t_minus, omega_gf):
        sp, sm = self.sigma_plus, self.sigma_minus
        t_plus = np.asarray(t_plus, dtype=float)
        t_minus = np.asarray(t_minus, dtype=float)
        f = (sp * sp / np.pi) ** 0.25 * np.exp(-0.5 * (sp * t_plus) ** 2
                                              - 1j * (omega_gf + self.delta_plus) * t_plus)
        g = (np.pi * sm * sm) ** -0.25 * np.exp(-0.5 * (t_minus / sm) ** 2)
        return f * g

    def sum_frequency_projection(self, t_minus, omega_gf):
        """int exp(i omega_gf t_plus) psi(t_plus, t_minus) dt_plus, in closed form."""
        sp, sm = self.sigma_plus, self.sigma_minus
        t_minus = np.asarray(t_minus, dtype=float)
        fplus = ((sp * sp / np.pi) ** 0.25 * np.sqrt(2 * np.pi) / sp
                 * np.exp(-0.5 * (self.delta_plus / sp) ** 2))
        return fplus * (np.pi * sm * sm) ** -0.25 * np.exp(-0.5 * (t_minus / sm) ** 2)

    def support(self):
        return 0.0, 9.0 * self.sigma_minus

    def check_positive_frequencies(self, omega_gf):
        centre = 0.5 * (omega_gf + self.delta_plus)
        reach = _TAIL_WIDTHS * (0.5 * self.sigma_plus + 1.0 / self.sigma_minus)
        if centre - reach <= 0:
            raise NegativeFrequencySupport(
                f"Gaussian entangled state reaches negative photon frequencies "
                f"(centre {centre:.4g}, spectral reach {reach:.4g}); narrow the bandwidths")

    def ideal_limit_factor(self):
        """P_general / P_ideal as sigma_plus, sigma_minus, delta_plus -> 0."""
        return 4.0 * np.pi * self.sigma_minus / self.sigma_plus


@dataclass(frozen=True)
class ProductGaussian:
    """Separable pair of Gaussian photons centred at omega1, omega2.

    psi(t1, t2) = f1(t1) f2(t2),
    ``f_j = (s_j^2/pi)^(1/4) exp(-s_j^2 t^2/2) exp(-i omega_j t)``.
    """

    omega1: float
    omega2: float
    sigma1: float = 1.0
    sigma2: float = 1.0

    def __post_init__(self):
        if not (self.sigma1 > 0 and self.sigma2 > 0):
            raise DomainError("ProductGaussian bandwidths must be positive")

    def wavefunction(self, t_plus, t_minus, omega_gf=None):
        t_plus = np.asarray(t_plus, dtype=float)
        t_minus = np.asarray(t_minus, dtype=float)
        t1 = t_plus - 0.5 * t_minus
        t2 = t_plus + 0.5 * t_minus
        f1 = (self.sigma1 ** 2 / np.pi) ** 0.25 * np.exp(
            -0.5 * (self.sigma1 * t1) ** 2 - 1j * self.omega1 * t1)
        f2 = (self.sigma2 ** 2 / np.pi) ** 0.25 * np.exp(
            -0.5 * (self.sigma2 * t2) ** 2 - 1j * self.omega2 * t2)
        return f1 * f2

    def sum_frequency_projection(self, t_minus, omega_gf):
        """int exp(i omega_gf t_plus) psi(t_plus, t_minus) dt_plus, Gaussian integral in closed form."""
        s1, s2 = self.sigma1 ** 2, self.sigma2 ** 2
        t = np.asarray(t_minus, dtype=float)
        a = 0.5 * (s1 + s2)
        b = 0.5 * (s1 - s2) * t + 1j * (omega_gf - self.omega1 - self.omega2)
        c = -(s1 + s2) * t * t / 8.0 + 0.5j * (self.omega1 - self.omega2) * t
        norm = (s1 * s2) ** 0.25 / np.sqrt(np.pi)
        return norm * np.sqrt(np.pi / a) * np.exp(b * b / (4.0 * a) + c)

    def support(self):
        width = np.sqrt(self.sigma1 ** 2 + self.sigma2 ** 2) / (self.sigma1 * self.sigma2)
        return 0.0, 9.0 * width

    def check_positive_frequencies(self, omega_gf=None):
        for k, (om, s) in enumerate(((self.omega1, self.sigma1), (self.omega2, self.sigma2))):
            if om - _TAIL_WIDTHS * s <= 0:
                raise NegativeFrequencySupport(
                    f"photon {k + 1} spectrum (centre {om:.4g}, width {s:.4g}) reaches "
                    "negative frequencies")


InputState = IdealEntangled | GaussianEntangled | ProductGaussian


def _oscillatory(h, nu, length, tol):
    """int_0^length h(s) exp(-i nu s) ds for real h, by the QAWO rule."""
    kw = dict(limit=1000, epsabs=tol, epsrel=1e-12)
    if nu == 0.0:
        v, e = integrate.quad(h, 0.0, length, **kw)
        return complex(v), abs(e)
    c, ec = integrate.quad(h, 0.0, length, weight="cos", wvar=abs(nu), **kw)
    s, es = integrate.quad(h, 0.0, length, weight="sin", wvar=abs(nu), **kw)
    return complex(c, -np.sign(nu) * s), ec + es


def _projection(cs: CouplingSet, state, tau, omega_gf):
    """|sum_m c_m I_m|^2 with I_m = int exp(-i nu_m |t + tau|) P(t) dt.

    ``P`` is the closed-form sum-frequency projection of the input. With
    ``s = |t + tau|`` each level integral becomes a one-sided Fourier
    integral of ``h(s) = P(s - tau) + P(-s - tau)``; the kink at
    ``t = -tau`` sits at the endpoint. The level weights ``I_m`` do not
    depend on the couplings, so phases of the c_m only enter through the
    final sum.
    """
    centre, half = state.support()
    length = abs(centre - tau) + half

    def h(s):
        return (state.sum_frequency_projection(s - tau, omega_gf)
                + state.sum_frequency_projection(-s - tau, omega_gf))

    parts = [lambda s: float(np.real(h(s)))]
    if not np.isrealobj(state.sum_frequency_projection(0.0, omega_gf)):
        parts.append(lambda s: float(np.imag(h(s))))

    # QUADPACK warnings are not fatal here: convergence is judged below from
    # the returned error estimates against the documented bound
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        scale = sum(integrate.quad(lambda s, f=f: abs(f(s)), 0.0, length, limit=500)[0]
                    for f in parts)
        tol = 1e-2 * QUAD_RTOL * scale
        value, err = 0.0 + 0.0j, 0.0
        for nu in np.unique(cs.nu):
            weight = np.sum(cs.c[cs.nu == nu])
            level, level_err = 0.0 + 0.0j, 0.0
            for unit, f in zip((1.0, 1.0j), parts):
                v, e = _oscillatory(f, float(nu), length, tol)
                level += unit * v
                level_err += e
            value += weight * level
            err += abs(weight) * level_err
    if not np.isfinite(value):
        raise QuadratureNotConverged(f"projection integral at tau={tau} is not finite")
    # relative to int |h| * sum |c_m|, which stays meaningful at fringe nulls
    bound = QUAD_RTOL * scale * float(np.sum(np.abs(cs.c)))
    if err > bound:
        raise QuadratureNotConverged(
            f"projection integral at tau={tau} reached only {err:.3g} absolute error "
            f"(bound {bound:.3g})")
    return abs(value) ** 2


def tpa_probability_general(spec: AbsorberSpec, state, tau):
    """|<mu_abs(tau)|psi>|^2 for a normalized input state.

    The mean-time integral is done in closed form (the absorber depends on
    ``t_plus`` only through ``exp(i omega_gf t_plus)``); the time-difference
    integral by oscillatory adaptive quadrature, one integral per distinct
    detuning, folded about the kink at ``t_minus = -tau``.
    """
    cs = coupling_set(spec)
    if isinstance(state, IdealEntangled):
        return _ideal(cs, tau)
    state.check_positive_frequencies(spec.omega_gf)
    return _projection(cs, state, float(tau), spec.omega_gf)


@dataclass(frozen=True, eq=False)
class DelayScan:
    tau_grid: np.ndarray = field(repr=False)
    p_values: np.ndarray = field(repr=False)
    normalization: str = ""


def _describe(state):
    if isinstance(state, IdealEntangled):
        return "ideal: P = sigma_tp^2 |<Phi_muf|U(|tau|)|Phi_gmu>|^2 (sum-frequency delta dropped)"
    return f"projection: P = |<mu_abs(tau)|psi>|^2 with unit-norm input {state!r}"


def _general_point(args):
    cs, state, tau, omega_gf, k = args
    try:
        return _projection(cs, state, tau, omega_gf)
    except QuadratureNotConverged as exc:
        raise QuadratureNotConverged(str(exc), index=k) from None


def delay_scan(spec: AbsorberSpec, state, tau_grid, workers=None) -> DelayScan:
    """Evaluate P(tau) on a strictly increasing delay grid.

    ``workers`` > 1 spreads projection integrals over processes; the output
    order always follows ``tau_grid``.
    """
    tau_grid = np.asarray(tau_grid, dtype=float)
    if tau_grid.ndim != 1 or tau_grid.size == 0:
        raise DomainError("tau_grid must be a non-empty one-dimensional array")
    if np.any(np.diff(tau_grid) <= 0):
        raise DomainError("tau_grid must be strictly increasing")
    cs = coupling_set(spec)
    if isinstance(state, IdealEntangled):
        p = np.asarray(_ideal(cs, tau_grid), dtype=float)
    else:
        state.check_positive_frequencies(spec.omega_gf)
        jobs = [(cs, state, float(t), spec.omega_gf, k) for k, t in enumerate(tau_grid)]
        if workers and workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                p = np.array(list(pool.map(_general_point, jobs)))
        else:
            p = np.array([_general_point(j) for j in jobs])
    return DelayScan(tau_grid=tau_grid, p_values=p, normalization=_describe(state))
