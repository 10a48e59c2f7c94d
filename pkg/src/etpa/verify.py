"""Cross-checks of the analytic formulas against the quadrature oracle.

Each check yields a :class:`CheckResult` with the measured residual and the
tolerance it was held to. :func:`run_checks` runs the lot and
:func:`format_report` renders the text report written by ``etpa verify``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EtpaError
from .freq_domain import CONVENTION_K, gamma_spectrum_full, gamma_spectrum_offresonant
from .freq_domain import kk_consistency_check
from .level_model import AbsorberSpec, CouplingSet, IntermediateLevel, coupling_set, zeeman_pair
from .numeric_oracle import (RegularizedFTParams, bandlimited_inverse_ft, pv_quadrature,
                             regularized_ft, richardson_limit)
from .special_functions import gamma_m
from .time_domain import IdealEntangled, delay_scan

SEED = 20240611


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tolerance)


def random_in_band_couplings(n_levels=5, omega_gf=2.0, seed=SEED) -> CouplingSet:
    """Couplings of ``n_levels`` random levels strictly inside the band."""
    rng = np.random.default_rng(seed)
    band = 0.5 * omega_gf
    omegas = rng.uniform(0.1 * band, 1.9 * band, n_levels)
    levels = tuple(
        IntermediateLevel(float(w), complex(*rng.normal(size=2)), complex(*rng.normal(size=2)))
        for w in omegas)
    return coupling_set(AbsorberSpec(omega_g=0.0, omega_f=omega_gf, levels=levels))


def pole_free_grid(couplings: CouplingSet, n=9, margin=0.02):
    """``n`` points spanning 0.9 of the band, each shifted off the poles by ``margin * B``."""
    band = couplings.band
    grid = np.linspace(-0.9 * band, 0.9 * band, n)
    poles = np.concatenate([couplings.nu, -couplings.nu])
    for _ in range(20):
        d = grid[:, None] - poles[None, :]
        close = np.abs(d) < margin * band
        if not close.any():
            break
        grid = grid + np.where(close.any(axis=1), 0.5 * margin * band, 0.0)
    return grid


def check_regularized_ft(omega_gf=2.0, epsilon=1e-3, n=100, seed=SEED):
    rng = np.random.default_rng(seed)
    eps = epsilon * omega_gf
    worst = 0.0
    for _ in range(n):
        nu = rng.uniform(-2.0, 2.0) * omega_gf
        w = rng.uniform(-2.0, 2.0) * omega_gf
        r = regularized_ft(nu, RegularizedFTParams(eps, [w]))
        worst = max(worst, r.max_relative_deviation())
    return CheckResult("regularized FT closed form vs quadrature", worst, 1e-8,
                       f"{n} random (nu, w), eps = {epsilon:g} omega_gf")


def check_gamma_oracle(omega_gf=2.0, ratio=2.0, n=41):
    band = 0.5 * omega_gf
    nu = ratio * band
    T = 2.0 * np.pi / omega_gf
    t = np.linspace(0.1 * T, 20.0 * T, n)
    cs = CouplingSet(nu=np.array([nu]), c=np.array([1.0 + 0j]), band=band,
                     omega_gf=omega_gf, sigma_tp=1.0)
    spec = gamma_spectrum_offresonant(cs, np.array([0.0]))
    # inverse FT of sum 4i c nu/(nu^2 - w^2) is 4i c gamma_m / 2pi
    oracle = bandlimited_inverse_ft(spec, t) * 2.0 * np.pi / 4j
    exact = gamma_m(nu, omega_gf, t)
    resid = float(np.max(np.abs(oracle - exact)) / np.max(np.abs(exact)))
    return CheckResult("gamma_m vs band-limited inverse FT", resid, 1e-4,
                       f"nu = {ratio:g} B, {n} points on [0.1, 20] T")


def measure_k(couplings: CouplingSet, grid, epsilon=1e-3):
    """Ratio of the eps -> 0 oracle to ``4i sum c nu/(nu^2 - w^2)`` on ``grid``."""
    og = couplings.omega_gf
    eps = (epsilon * og, 0.1 * epsilon * og)
    total = np.zeros(len(grid), dtype=complex)
    for nu, c in zip(couplings.nu, couplings.c):
        total += c * richardson_limit(nu, grid, epsilons=eps)
    kernel = np.array([np.sum(4j * couplings.c * couplings.nu / (couplings.nu ** 2 - w * w))
                       for w in grid])
    return total / kernel


def check_convention_k(couplings: CouplingSet, epsilon=1e-3):
    grid = pole_free_grid(couplings, n=7, margin=0.05)
    k = measure_k(couplings, grid, epsilon)
    full = gamma_spectrum_full(couplings, grid).smooth
    oracle = full / CONVENTION_K * k
    resid = float(np.max(np.abs(oracle - full) / np.abs(full)))
    spread = float(np.max(np.abs(k - k.mean())))
    return [
        CheckResult("smooth part vs Richardson oracle", resid, 1e-3,
                    f"measured K = {k.real.mean():.7f}{k.imag.mean():+.1e}i, "
                    f"declared {CONVENTION_K}"),
        CheckResult("K constant across the grid", spread, 1e-3,
                    f"max |K - mean K| over {len(grid)} frequencies"),
    ]


def check_kk(couplings: CouplingSet):
    grid = pole_free_grid(couplings, n=7)
    resid = kk_consistency_check(couplings, grid)
    return CheckResult("Kramers-Kronig rebuild of the smooth part", resid, 1e-3,
                       f"{len(couplings)} levels, {len(grid)} frequencies")


def check_zeeman(splitting=0.5, omega_mu=10.0, n=200):
    spec = zeeman_pair(omega_mu, splitting)
    tau = np.linspace(0.0, 4.0 * np.pi / splitting, n)
    p = delay_scan(spec, IdealEntangled(), tau).p_values
    resid = float(np.max(np.abs(p - 0.5 * (1.0 + np.cos(splitting * tau)))))
    return CheckResult("Zeeman pair delay scan vs closed form", resid, 1e-9,
                       f"{n} delays over two fringe periods")


def check_pv():
    a = pv_quadrature(lambda x: 1.0 / (x - 1.0), 1.0, 0.0, 3.0)
    b = pv_quadrature(lambda x: x / (x - 1.0), 1.0, 0.0, 2.0)
    resid = max(abs(a - np.log(2.0)), abs(b - 2.0))
    return CheckResult("principal-value quadrature reference integrals", float(resid), 1e-9,
                       "PV 1/(x-1) on [0,3] and x/(x-1) on [0,2]")


def run_checks(couplings: CouplingSet | None = None, epsilon=1e-3):
    """Run every check; ``couplings`` replaces the seeded random level set."""
    if couplings is None:
        couplings = random_in_band_couplings()
    results = []
    steps = [
        lambda: [check_regularized_ft(couplings.omega_gf, epsilon)],
        lambda: [check_gamma_oracle(couplings.omega_gf)],
        lambda: check_convention_k(couplings, epsilon),
        lambda: [check_kk(couplings)],
        lambda: [check_zeeman()],
        lambda: [check_pv()],
    ]
    for step in steps:
        try:
            results.extend(step())
        except EtpaError as exc:
            results.append(CheckResult(f"error: {type(exc).__name__}", float("nan"), 0.0,
                                       str(exc)))
    return results


def format_report(results) -> str:
    lines = ["check                                          residual    tolerance  status"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name:<46} {r.residual:10.3e}  {r.tolerance:9.1e}  {status}")
        if r.detail:
            lines.append(f"    {r.detail}")
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
