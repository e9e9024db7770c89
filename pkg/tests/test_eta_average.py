"""Solid-angle averages and scenario rate multipliers."""

import numpy as np
import pytest

from nvcr import (
    BasisChoice,
    ConvergenceError,
    EtaScenario,
    FieldOrientationScenario,
    QuadratureSpec,
    XMode,
    ZAngle,
    angular_average,
    eta_bar,
    pair_average,
    rotation_matrix,
    scenario_frames,
    scenario_multiplier,
)
from nvcr.eta_average import ETA_PREFACTOR

# properties that hold at any resolution run on a cheap grid with the
# convergence ladder effectively off
LIGHT = QuadratureSpec(n_theta=16, n_phi=16, n_psi=16,
                       tolerance=1.0, max_doublings=0)
MEDIUM = QuadratureSpec(n_theta=64, n_phi=64, n_psi=32,
                        tolerance=5e-4, max_doublings=2)


def test_prefactor():
    assert ETA_PREFACTOR == pytest.approx(0.25 * np.sqrt(1.0 / 3.0), abs=1e-15)


def test_scenario_frames_geometry():
    cosines = {ZAngle.SAME: 1.0, ZAngle.CLOSE: 1.0 / 3.0,
               ZAngle.FAR: -1.0 / 3.0}
    for z, c in cosines.items():
        f1, f2 = scenario_frames(z)
        assert f1.z_hat @ f2.z_hat == pytest.approx(c, abs=1e-12)


def test_same_class_closed_form():
    value = angular_average(EtaScenario(BasisChoice.MAGNETIC, ZAngle.SAME),
                            LIGHT)
    assert value == pytest.approx(2.0 / (3.0 * np.sqrt(3.0)), abs=1e-12)


def test_eta_bar_same_is_one_eighteenth():
    value = eta_bar(EtaScenario(BasisChoice.MAGNETIC, ZAngle.SAME), LIGHT)
    assert value == pytest.approx(1.0 / 18.0, abs=1e-12)


def test_nonmagnetic_close_equals_far():
    close = angular_average(
        EtaScenario(BasisChoice.NONMAGNETIC, ZAngle.CLOSE, XMode.RANDOM),
        MEDIUM)
    far = angular_average(
        EtaScenario(BasisChoice.NONMAGNETIC, ZAngle.FAR, XMode.RANDOM),
        MEDIUM)
    assert close == pytest.approx(far, abs=MEDIUM.tolerance)


def test_aligned_mode_interpretations():
    # the aligned average couples the in-plane axes to a shared field
    # direction; freezing them to the canonical frames' common x axis
    # instead removes the relative-axis geometry and reproduces the
    # same-class value at every z angle
    f1, f2 = scenario_frames(ZAngle.CLOSE)
    shared = pair_average(f1, f2, BasisChoice.NONMAGNETIC, XMode.ALIGNED,
                          MEDIUM)
    frozen = pair_average(f1, f2, BasisChoice.NONMAGNETIC, XMode.ALIGNED,
                          MEDIUM, use_frame_x=True)
    assert shared == pytest.approx(0.6951, abs=2e-3)
    assert frozen == pytest.approx(4.0 / (3.0 * np.sqrt(3.0)), abs=1e-10)


def test_magnetic_mode_free():
    # flip-flop magnitudes carry no in-plane axis dependence
    for mode in (XMode.RANDOM, XMode.ALIGNED):
        value = angular_average(
            EtaScenario(BasisChoice.MAGNETIC, ZAngle.CLOSE, mode), LIGHT)
        assert value == pytest.approx(
            angular_average(EtaScenario(BasisChoice.MAGNETIC, ZAngle.CLOSE),
                            LIGHT), abs=1e-12)


def test_frame_invariance_nonmagnetic():
    rng = np.random.default_rng(5)
    f1, f2 = scenario_frames(ZAngle.FAR)
    base = pair_average(f1, f2, BasisChoice.NONMAGNETIC, XMode.RANDOM, LIGHT)
    for _ in range(3):
        rot = rotation_matrix(rng.normal(size=3),
                              float(rng.uniform(0.0, 2.0 * np.pi)))
        rotated = pair_average(f1.rotated(rot), f2.rotated(rot),
                               BasisChoice.NONMAGNETIC, XMode.RANDOM, LIGHT)
        assert abs(rotated - base) < 1e-8


def test_convergence_error_diagnostics():
    impossible = QuadratureSpec(n_theta=8, n_phi=8, n_psi=8,
                                tolerance=1e-14, max_doublings=0)
    with pytest.raises(ConvergenceError) as err:
        angular_average(EtaScenario(BasisChoice.MAGNETIC, ZAngle.CLOSE),
                        impossible)
    assert "tolerance" in str(err.value)
    assert "resolution" in str(err.value)


def test_random_direction_multiplier_is_unity():
    assert scenario_multiplier(FieldOrientationScenario.RANDOM_DIRECTION,
                               LIGHT) == pytest.approx(1.0, abs=1e-12)


def test_axis_100_composition():
    same = angular_average(EtaScenario(BasisChoice.MAGNETIC, ZAngle.SAME),
                           MEDIUM)
    close = angular_average(EtaScenario(BasisChoice.MAGNETIC, ZAngle.CLOSE),
                            MEDIUM)
    far = angular_average(EtaScenario(BasisChoice.MAGNETIC, ZAngle.FAR),
                          MEDIUM)
    expected = ((same + 2.0 * close + far) / same) ** 2
    assert scenario_multiplier(FieldOrientationScenario.AXIS_100, MEDIUM) == \
        pytest.approx(expected, abs=1e-12)


def test_zero_field_composition():
    same = angular_average(
        EtaScenario(BasisChoice.NONMAGNETIC, ZAngle.SAME, XMode.RANDOM),
        MEDIUM)
    diff = angular_average(
        EtaScenario(BasisChoice.NONMAGNETIC, ZAngle.CLOSE, XMode.RANDOM),
        MEDIUM)
    base = angular_average(EtaScenario(BasisChoice.MAGNETIC, ZAngle.SAME),
                           MEDIUM)
    expected = ((same + 3.0 * diff) / base) ** 2
    assert scenario_multiplier(FieldOrientationScenario.ZERO_FIELD_ELECTRIC,
                               MEDIUM) == pytest.approx(expected, abs=1e-12)


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(n_theta=4, n_phi=16, n_psi=16, tolerance=1e-3)
    with pytest.raises(ValueError):
        QuadratureSpec(n_theta=16, n_phi=16, n_psi=16, tolerance=0.0)


def test_quadrature_scaling():
    scaled = MEDIUM.scaled(2.0)
    assert (scaled.n_theta, scaled.n_phi, scaled.n_psi) == (128, 128, 64)
    assert scaled.tolerance == MEDIUM.tolerance
