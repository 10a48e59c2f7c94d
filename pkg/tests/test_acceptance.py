"""Acceptance criteria A1-A9, each at its stated tolerance.

Every test records a one-line verdict through the ``acceptance`` fixture;
the lines are printed in the terminal summary.
"""
import itertools
import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etpa import figures
from etpa.freq_domain import CONVENTION_K, gamma_spectrum_full, truncate_physical
from etpa.level_model import AbsorberSpec, CouplingSet, IntermediateLevel, coupling_set, zeeman_pair
from etpa.numeric_oracle import bandlimited_inverse_ft
from etpa.special_functions import gamma_m
from etpa.time_domain import (GaussianEntangled, IdealEntangled, delay_scan,
                              tpa_probability_general, tpa_probability_ideal)
from etpa.verify import check_kk, check_regularized_ft, random_in_band_couplings

OMEGA_GF = 2.0
B = 0.5 * OMEGA_GF
T = 2.0 * np.pi / OMEGA_GF


def test_a1_zeeman_closed_form(acceptance):
    omega = 0.5
    spec = zeeman_pair(10.0, omega)
    tau = np.linspace(0.0, 4.0 * np.pi / omega, 200)
    start = time.perf_counter()
    scan = delay_scan(spec, IdealEntangled(), tau)
    elapsed = time.perf_counter() - start
    err = np.max(np.abs(scan.p_values - 0.5 * (1.0 + np.cos(omega * tau))))
    ok = err <= 1e-9 and elapsed < 1.0
    acceptance("A1", ok, f"max |P - (1 + cos)/2| = {err:.2e} (tol 1e-9), {elapsed * 1e3:.1f} ms")
    assert err <= 1e-9
    assert elapsed < 1.0


def test_a2_gamma_at_zero(acceptance):
    worst = 0.0
    for ratio in (1.02, 1.1, 2.0, 5.0):
        nu = ratio * B
        exact = np.log((nu + B) / (nu - B))
        worst = max(worst, abs(gamma_m(nu, OMEGA_GF, 0.0) - exact) / exact)
    acceptance("A2", worst <= 1e-6, f"max relative error at t=0: {worst:.2e} (tol 1e-6)")
    assert worst <= 1e-6


def test_a3_fig1_shape(acceptance):
    start = time.perf_counter()
    t = np.linspace(0.0, 20.0 * T, 2001)
    curves = figures.fig1_curves(OMEGA_GF, t)
    target = 4.0 * np.pi / OMEGA_GF
    period_err, gap_err, amps = {}, {}, {}
    for r, y in curves.items():
        period, gaps = figures.oscillation_period(t, y, t_min=T)
        period_err[r] = abs(period / target - 1.0)
        gap_err[r] = float(np.max(np.abs(2.0 * gaps / target - 1.0)))
        amps[r] = figures.amplitude_near(t, y, 5.0 * T, 0.5 * T)
    elapsed = time.perf_counter() - start
    decreasing = amps[1.02] > amps[1.1] > amps[2.0]
    ok = max(period_err.values()) <= 0.02 and decreasing and elapsed < 5.0
    acceptance("A3", ok,
               "period error " + ", ".join(f"{r:g}B {e:.2%}" for r, e in period_err.items())
               + " (tol 2%); worst single gap "
               + f"{max(gap_err.values()):.2%}; amplitude at 5T "
               + " > ".join(f"{amps[r]:.3f}" for r in (1.02, 1.1, 2.0))
               + f"; {elapsed:.2f} s")
    assert max(period_err.values()) <= 0.02
    assert decreasing
    assert elapsed < 5.0


def test_a4_gamma_oracle(acceptance):
    nu = 2.0 * B
    cs = CouplingSet(nu=np.array([nu]), c=np.array([1.0 + 0j]), band=B, omega_gf=OMEGA_GF,
                     sigma_tp=1.0)
    spectrum = truncate_physical(gamma_spectrum_full(cs, np.linspace(-0.9 * B, 0.9 * B, 5)))
    t = np.linspace(0.1 * T, 20.0 * T, 200)
    start = time.perf_counter()
    raw = bandlimited_inverse_ft(spectrum, t)
    elapsed = time.perf_counter() - start
    # smooth part is K * 4i c nu/(nu^2 - w^2), whose inverse transform is K * 4i c gamma_m / 2pi
    oracle = raw * 2.0 * np.pi / (4j * CONVENTION_K)
    exact = gamma_m(nu, OMEGA_GF, t)
    err = np.max(np.abs(oracle - exact)) / np.max(np.abs(exact))
    ok = err <= 1e-4 and elapsed < 30.0
    acceptance("A4", ok, f"relative L-inf vs oracle {err:.2e} (tol 1e-4), {elapsed:.1f} s")
    assert err <= 1e-4
    assert elapsed < 30.0


def test_a5_sinc_approximation(acceptance):
    t = np.linspace(-10.0 * T, 10.0 * T, 2001)
    curves = figures.fig2_curves(OMEGA_GF, t)
    dist = {r: figures.relative_l2(exact, approx, t) for r, (exact, approx) in curves.items()}
    ok = dist[2.0] <= 0.10 and dist[1.02] > dist[2.0]
    acceptance("A5", ok, f"relative L2: 2B {dist[2.0]:.2%} (bound 10%), 1.02B {dist[1.02]:.2%}")
    assert dist[2.0] <= 0.10
    assert dist[1.02] > dist[2.0]


def test_a6_kramers_kronig(acceptance):
    cs = random_in_band_couplings(5, OMEGA_GF)
    assert np.all(np.abs(cs.nu) < B)
    result = check_kk(cs)
    acceptance("A6", result.passed, f"residual {result.residual:.2e} (tol 1e-3)")
    assert result.residual < 1e-3


def test_a7_regularized_ft(acceptance):
    result = check_regularized_ft(OMEGA_GF, epsilon=1e-3, n=100)
    acceptance("A7", result.passed,
               f"max relative deviation {result.residual:.2e} over 100 pairs (tol 1e-8)")
    assert result.residual <= 1e-8


# ---------------------------------------------------------------------------
# A8: property tests, >= 100 cases each

TOL = 1e-10
_A8 = {}

finite = st.floats(-2.0, 2.0, allow_nan=False)
levels = st.lists(
    st.tuples(st.floats(-3.0, 5.0), finite, finite, finite, finite), min_size=1, max_size=5)


def _spec(raw, omega_f=OMEGA_GF):
    lv = tuple(IntermediateLevel(w, complex(a, b), complex(c, d)) for w, a, b, c, d in raw)
    return AbsorberSpec(0.0, omega_f, lv)


def _usable(raw):
    d = [complex(a, b) * complex(c, e) for _, a, b, c, e in raw]
    g = [complex(a, b) for _, a, b, _, _ in raw]
    f = [complex(c, e) for _, _, _, c, e in raw]
    bands = [abs(abs(w - 1.0) - 1.0) for w, *_ in raw]
    return (max(map(abs, d)) > 1e-3 and max(map(abs, g)) > 1e-3 and max(map(abs, f)) > 1e-3
            and min(bands) > 1e-3)


def _note(name, value):
    count, worst = _A8.get(name, (0, 0.0))
    _A8[name] = (count + 1, max(worst, value))


@settings(max_examples=120)
@given(levels.filter(_usable), st.lists(st.floats(0.0, 3.0), min_size=1, max_size=6))
def test_a8_spectrum_even(raw, ws):
    cs = coupling_set(_spec(raw))
    poles = np.abs(cs.nu)
    w = np.array([x for x in ws if np.all(np.abs(x - poles) > 1e-3)])
    if w.size == 0:
        w = np.array([0.0])
    plus = gamma_spectrum_full(cs, w).smooth
    minus = gamma_spectrum_full(cs, -w).smooth
    scale = max(1.0, float(np.max(np.abs(plus))))
    dev = float(np.max(np.abs(plus - minus)) / scale)
    deltas = dict()
    for loc, weight in gamma_spectrum_full(cs, w).delta_terms:
        deltas.setdefault(round(abs(loc), 12), []).append((np.sign(loc), weight))
    for entries in deltas.values():
        pos = sum(wt for s, wt in entries if s > 0)
        neg = sum(wt for s, wt in entries if s < 0)
        if all(s != 0 for s, _ in entries):
            dev = max(dev, abs(pos - neg))
    _note("Gamma(w) even", dev)
    assert dev <= TOL


@settings(max_examples=120)
@given(st.floats(1.001, 20.0), st.lists(st.floats(0.0, 60.0), min_size=1, max_size=8))
def test_a8_gamma_even(ratio, ts):
    t = np.array(ts)
    a = gamma_m(ratio * B, OMEGA_GF, t)
    b = gamma_m(ratio * B, OMEGA_GF, -t)
    dev = float(np.max(np.abs(a - b)))
    _note("gamma_m(t) even", dev)
    assert dev <= TOL


@settings(max_examples=120)
@given(levels.filter(_usable), st.lists(st.floats(0.0, 50.0), min_size=1, max_size=8))
def test_a8_probability_even(raw, taus):
    spec = _spec(raw)
    tau = np.array(taus)
    dev = float(np.max(np.abs(tpa_probability_ideal(spec, tau)
                              - tpa_probability_ideal(spec, -tau))))
    _note("P(tau) even", dev)
    assert dev <= TOL


@settings(max_examples=120)
@given(levels.filter(_usable), st.floats(0.0, 2.0 * np.pi), st.floats(-20.0, 20.0))
def test_a8_global_phase(raw, theta, tau):
    spec = _spec(raw)
    phase = np.exp(1j * theta)
    rotated = AbsorberSpec(
        spec.omega_g, spec.omega_f,
        tuple(IntermediateLevel(lv.omega_m, phase * lv.d_gm, lv.d_mf) for lv in spec.levels))
    p0 = tpa_probability_ideal(spec, tau)
    p1 = tpa_probability_ideal(rotated, tau)
    dev = abs(p0 - p1) / max(1.0, abs(p0))
    # the projection path: a narrow entangled Gaussian keeps the quadrature cheap
    state = GaussianEntangled(0.0, 0.01, 5.0)
    spec_n = AbsorberSpec(0.0, 20.0, tuple(IntermediateLevel(lv.omega_m + 9.0, lv.d_gm, lv.d_mf)
                                           for lv in spec.levels))
    rot_n = AbsorberSpec(0.0, 20.0, tuple(IntermediateLevel(lv.omega_m + 9.0, phase * lv.d_gm,
                                                            lv.d_mf) for lv in spec.levels))
    g0 = tpa_probability_general(spec_n, state, tau)
    g1 = tpa_probability_general(rot_n, state, tau)
    dev = max(dev, abs(g0 - g1) / max(1.0, abs(g0)))
    _note("global phase invariance", dev)
    assert dev <= TOL


def test_a8_summary(acceptance):
    names = ("Gamma(w) even", "gamma_m(t) even", "P(tau) even", "global phase invariance")
    ran = {n: _A8.get(n, (0, float("nan"))) for n in names}
    ok = all(c >= 100 and w <= TOL for c, w in ran.values())
    acceptance("A8", ok, "; ".join(f"{n}: {c} cases, worst {w:.1e}" for n, (c, w) in ran.items())
               + " (tol 1e-10)")
    if not any(c for c, _ in ran.values()):
        pytest.skip("property tests were not run in this session")
    assert ok


# ---------------------------------------------------------------------------


def test_a9_profile_independent_of_detuning(acceptance):
    t = np.linspace(0.0, 10.0 * T, 2001)
    prof = {r: figures.normalized_profile(r, OMEGA_GF, t) for r in (2.0, 3.0, 5.0)}
    dist = {(a, b): figures.relative_l2(prof[a], prof[b], t)
            for a, b in itertools.combinations(prof, 2)}
    worst = max(dist.values())
    acceptance("A9", worst <= 0.05,
               "pairwise relative L2 " + ", ".join(f"{a:g}B/{b:g}B {d:.2%}"
                                                   for (a, b), d in dist.items())
               + " (tol 5%)")
    assert worst <= 0.05
