import numpy as np
import pytest

from etpa.errors import DomainError, PoleInBand, QuadratureNotConverged
from etpa.freq_domain import SpectralAmplitude, gamma_spectrum_offresonant
from etpa.level_model import CouplingSet
from etpa.numeric_oracle import (RegularizedFTParams, bandlimited_inverse_ft, forward_ft,
                                 pv_quadrature, regularized_ft, richardson_limit)

B = 1.0


def test_regularized_ft_matches_closed_form():
    res = regularized_ft(0.8, RegularizedFTParams(0.05, np.array([-1.7, 0.0, 0.3, 0.79])))
    assert res.max_relative_deviation() < 1e-6


def test_regularized_ft_zero_detuning():
    eps = 0.1
    res = regularized_ft(0.0, RegularizedFTParams(eps, np.array([0.0])))
    assert res.closed_form[0] == pytest.approx(2 / eps)
    assert res.quadrature[0] == pytest.approx(2 / eps, rel=1e-9)


@pytest.mark.parametrize("kw", [dict(epsilon=0.0), dict(epsilon=-1.0),
                                dict(epsilon=0.1, integration_window=100.0)])
def test_regularized_params_validation(kw):
    with pytest.raises(DomainError):
        RegularizedFTParams(omega_grid=np.zeros(1), **kw)


def test_default_window():
    p = RegularizedFTParams(0.01, [0.0])
    assert p.integration_window == pytest.approx(3000.0)
    assert p.omega_grid.shape == (1,)


def test_richardson_improves_on_smallest_epsilon():
    nu, w = 0.7, np.array([0.1, 1.3])
    # the exact eps -> 0 limit away from the poles is -2i nu/(nu^2 - w^2)
    exact = -2j * nu / (nu * nu - w * w)
    small = regularized_ft(nu, RegularizedFTParams(1e-3, w)).quadrature
    extrap = richardson_limit(nu, w, epsilons=(1e-2, 1e-3))
    assert np.max(np.abs(extrap - exact)) * 10 <= np.max(np.abs(small - exact))


def test_pv_known_values():
    # PV int_0^3 dx/(x-1) = ln 2
    assert pv_quadrature(lambda x: 1 / (x - 1), 1.0, 0.0, 3.0) == pytest.approx(np.log(2),
                                                                               abs=1e-9)
    # PV int_{-1}^{1} (x + 1)/x dx = 2
    assert pv_quadrature(lambda x: (x + 1) / x, 0.0, -1.0, 1.0) == pytest.approx(2.0, abs=1e-9)
    assert abs(pv_quadrature(lambda x: 1 / x, 0.0, -2.0, 2.0)) < 1e-9


def test_pv_breakpoints_on_pole_ignored():
    val = pv_quadrature(lambda x: 1 / (x - 0.6), 0.6, 0.0, 1.2,
                        points=[0.4 + 0.2, 0.3, 0.9])
    assert abs(val) < 1e-9


def test_pv_pole_outside():
    with pytest.raises(DomainError):
        pv_quadrature(lambda x: 1 / x, 0.0, 0.0, 1.0)


def test_pv_not_converged():
    # 1/|x| is even about the pole, so no principal value exists
    with pytest.raises(QuadratureNotConverged):
        pv_quadrature(lambda x: 1 / abs(x) if x else 0.0, 0.0, -0.5, 0.7, max_refinements=4)


def _rectangle(height=1.0):
    grid = np.linspace(-B, B, 5)
    return SpectralAmplitude(band=B, grid=grid, smooth=np.full(5, height, complex),
                             truncated=True, smooth_fn=lambda w: np.full(np.shape(w), height,
                                                                         complex))


def test_inverse_of_rectangle():
    t = np.array([0.0, 0.5, 3.0, np.pi])
    got = bandlimited_inverse_ft(_rectangle(), t)
    assert got[0] == pytest.approx(B / np.pi)
    np.testing.assert_allclose(got[1:], np.sin(B * t[1:]) / (np.pi * t[1:]), atol=1e-12)


def test_inverse_of_zero():
    np.testing.assert_array_equal(bandlimited_inverse_ft(_rectangle(0.0), np.linspace(0, 5, 4)),
                                  0.0)


def test_inverse_delta_terms():
    sp = SpectralAmplitude(band=B, grid=np.array([0.0]), smooth=np.zeros(1, complex),
                           delta_terms=((0.4, 2 * np.pi), (1.5, 2 * np.pi)), truncated=True,
                           smooth_fn=lambda w: np.zeros(np.shape(w), complex))
    # the delta at 1.5 lies outside the band and is dropped after truncation
    assert bandlimited_inverse_ft(sp, np.array([2.0]))[0] == pytest.approx(np.exp(-0.8j))


def test_pole_on_band_edge():
    sp = SpectralAmplitude(band=B, grid=np.array([0.0]), smooth=np.zeros(1, complex),
                           poles=(B,), smooth_fn=lambda w: 1 / (B - w))
    with pytest.raises(PoleInBand):
        bandlimited_inverse_ft(sp, np.array([0.0]))


def test_forward_ft_gaussian():
    got = forward_ft(lambda t: np.exp(-t * t / 2), np.array([0.0, 1.5]), 12.0, 1.0)
    np.testing.assert_allclose(got, np.sqrt(2 * np.pi) * np.exp(-np.array([0.0, 1.5]) ** 2 / 2),
                               rtol=1e-12)


def test_round_trip_interior():
    cs = CouplingSet(nu=np.array([2.0]), c=np.array([1.0 + 0j]), band=B, omega_gf=2.0,
                     sigma_tp=1.0)
    sp = gamma_spectrum_offresonant(cs, np.array([0.0]))
    w = np.array([0.0, 0.2, 0.4, 0.5])
    back = forward_ft(lambda t: bandlimited_inverse_ft(sp, t), w, 40 * np.pi / B, 2.0,
                      nodes=12, taper=0.5)
    exact = sp.evaluate_smooth(w)
    np.testing.assert_allclose(back, exact, rtol=1e-3)
