"""Decay-curve fitting, spectral overlaps, sensitivity."""

import numpy as np
import pytest

from nvcr import (
    DecayCurve,
    DecayModel,
    LineProfile,
    LineShape,
    decay_signal,
    fit_beta,
    fit_decay,
    sensitivity,
    spectral_overlap,
)
from nvcr.analysis import _t1_starts

T1PH = 3.62e-3


def _synthetic(t1_dd, t1_ph=T1PH, n=48):
    tau = np.geomspace(2e-5, 6.0 * t1_dd, n)
    model = DecayModel(t1_dd_s=t1_dd, t1_ph_s=t1_ph)
    return DecayCurve(tau, decay_signal(tau, model))


def test_fixed_phonon_roundtrip_band():
    res = fit_decay(_synthetic(0.6e-3), fixed_t1_ph_s=T1PH)
    assert res.converged
    assert 0.588e-3 <= res.model.t1_dd_s <= 0.612e-3
    assert res.model.t1_ph_s == T1PH


def test_free_phonon_roundtrip():
    tau = np.geomspace(2e-5, 3e-2, 64)
    model = DecayModel(t1_dd_s=0.6e-3, t1_ph_s=T1PH)
    curve = DecayCurve(tau, decay_signal(tau, model))
    res = fit_decay(curve)
    assert res.converged
    assert res.model.t1_dd_s == pytest.approx(0.6e-3, rel=0.02)
    assert res.model.t1_ph_s == pytest.approx(T1PH, rel=0.02)
    assert res.model.amplitude == pytest.approx(1.0, rel=0.02)


def test_constant_curve_rejected():
    tau = np.linspace(1e-5, 1e-3, 16)
    with pytest.raises(ValueError):
        fit_decay(DecayCurve(tau, np.ones_like(tau)), fixed_t1_ph_s=T1PH)


def test_fit_determinism():
    curve = _synthetic(1.3e-3)
    r1 = fit_decay(curve, fixed_t1_ph_s=T1PH, seed=3)
    r2 = fit_decay(curve, fixed_t1_ph_s=T1PH, seed=3)
    assert r1.model == r2.model
    assert r1.residual_rss == r2.residual_rss
    assert r1.iterations == r2.iterations


def test_optimum_beats_every_start():
    curve = _synthetic(0.9e-3)
    res = fit_decay(curve, fixed_t1_ph_s=T1PH)
    for t1_start in _t1_starts(curve):
        start = DecayModel(t1_dd_s=float(t1_start), t1_ph_s=T1PH,
                           amplitude=float(curve.signal[0]))
        rss = float(np.sum((decay_signal(curve.tau_s, start)
                            - curve.signal) ** 2))
        assert res.residual_rss <= rss + 1e-15


def test_beta_roundtrip_intermediate():
    tau = np.geomspace(2e-5, 2e-2, 48)
    model = DecayModel(t1_dd_s=2.0e-3, beta=0.8)
    curve = DecayCurve(tau, decay_signal(tau, model, mode="stretched"))
    res = fit_beta(curve)
    assert res.converged
    assert res.model.beta == pytest.approx(0.8, abs=0.01)
    assert res.model.t1_dd_s == pytest.approx(2.0e-3, rel=0.02)


def test_beta_of_two_channel_curve_near_half():
    # fast dipolar channel with a slow phonon floor: the single-stretch
    # description lands much nearer beta = 1/2 than a pure exponential
    tau = np.geomspace(2e-5, 6e-3, 48)
    model = DecayModel(t1_dd_s=0.5e-3, t1_ph_s=10e-3)
    curve = DecayCurve(tau, decay_signal(tau, model))
    res = fit_beta(curve)
    assert res.converged
    assert abs(res.model.beta - 0.5) < abs(res.model.beta - 1.0)


def test_overlap_peak_and_symmetry():
    gauss = LineProfile(LineShape.GAUSSIAN, width_mhz=2.0)
    shifts = np.linspace(-10.0, 10.0, 41)
    s = spectral_overlap(gauss, gauss, shifts)
    assert np.argmax(s) == 20
    assert s == pytest.approx(s[::-1], abs=1e-10)


def test_overlap_swap_relation():
    p1 = LineProfile(LineShape.GAUSSIAN, width_mhz=1.5, center_mhz=2.0)
    p2 = LineProfile(LineShape.LORENTZIAN, width_mhz=3.0, center_mhz=-1.0)
    shifts = np.linspace(-12.0, 12.0, 49)
    assert spectral_overlap(p1, p2, shifts) == \
        pytest.approx(spectral_overlap(p2, p1, -shifts), abs=1e-8)


def test_overlap_scalar_argument():
    lor = LineProfile(LineShape.LORENTZIAN, width_mhz=4.02)
    assert np.ndim(spectral_overlap(lor, lor, 0.0)) == 0


def test_cr_width_consistency():
    # two half-width-4.02 lines overlap into a half-width-8.04 curve
    lor = LineProfile(LineShape.LORENTZIAN, width_mhz=4.02)
    s0, s_half = spectral_overlap(lor, lor, np.array([0.0, 8.04]))
    assert s_half == pytest.approx(0.5 * s0, rel=0.01)


def test_tabulated_profile_matches_analytic():
    grid = np.linspace(-30.0, 30.0, 4001)
    gauss = LineProfile(LineShape.GAUSSIAN, width_mhz=2.5)
    table = LineProfile(LineShape.TABULATED, table_nu_mhz=grid,
                        table_values=gauss(grid))
    shifts = np.linspace(-8.0, 8.0, 17)
    assert spectral_overlap(table, table, shifts) == \
        pytest.approx(spectral_overlap(gauss, gauss, shifts), abs=1e-4)


def test_line_profile_validation():
    with pytest.raises(ValueError):
        LineProfile(LineShape.GAUSSIAN, width_mhz=0.0)
    with pytest.raises(ValueError):
        LineProfile(LineShape.TABULATED, table_nu_mhz=np.array([0.0, 1.0]),
                    table_values=np.array([1.0, -1.0]))
    with pytest.raises(ValueError):
        LineProfile(LineShape.TABULATED,
                    table_nu_mhz=np.array([0.0, 1.0, 0.5]),
                    table_values=np.ones(3))
    with pytest.raises(ValueError):
        LineProfile(LineShape.TABULATED, table_nu_mhz=np.array([0.0, 1.0]),
                    table_values=np.zeros(2))


def test_sensitivity_values():
    assert sensitivity(1.5e-6, 3e-3) == pytest.approx(82e-9, abs=1e-9)
    assert sensitivity(3.0e-6, 3e-3) == \
        pytest.approx(2.0 * sensitivity(1.5e-6, 3e-3), rel=1e-12)
    assert sensitivity(2.2e-6, 1.0) == pytest.approx(2.2e-6, rel=1e-12)
    with pytest.raises(ValueError):
        sensitivity(0.0, 1.0)
    with pytest.raises(ValueError):
        sensitivity(1.0e-6, -1.0)


def test_decay_curve_validation():
    tau = np.linspace(0.0, 1.0, 8)
    with pytest.raises(ValueError):
        DecayCurve(tau[:5], np.ones(5))
    with pytest.raises(ValueError):
        DecayCurve(tau[::-1], np.ones(8))
    with pytest.raises(ValueError):
        DecayCurve(tau, np.full(8, np.nan))
    with pytest.raises(ValueError):
        DecayCurve(tau, np.ones(8), sigma=np.zeros(8))
    curve = DecayCurve(tau, np.ones(8), sigma=np.full(8, 0.5))
    assert curve.weights == pytest.approx(np.full(8, 4.0), abs=1e-15)
