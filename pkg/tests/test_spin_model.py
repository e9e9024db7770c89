"""Single-center Hamiltonian: construction, eigenstructure, scans."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nvcr import (
    CLASS_AXES,
    FieldConfiguration,
    NVClassFrame,
    build_hamiltonian,
    class_frame,
    diagonalize,
    eigenstate_map,
    rotation_matrix,
    transverse_field_scan,
    zero_field_states,
)
from nvcr.constants import DEFAULT_CONSTANTS

C = DEFAULT_CONSTANTS
D = C.d_ghz

field_components = st.floats(-200.0, 200.0, allow_nan=False)
fields = st.builds(
    FieldConfiguration,
    b_gauss=st.tuples(field_components, field_components, field_components),
    e_perp_mhz=st.floats(0.0, 10.0),
    phi_e_rad=st.floats(0.0, 2.0 * np.pi, exclude_max=True),
)


def _eigensystem(b_gauss, e_perp_mhz=0.0, phi_e_rad=0.0, class_id=0):
    frame = class_frame(class_id, np.asarray(b_gauss, dtype=float))
    f = FieldConfiguration(b_gauss=b_gauss, e_perp_mhz=e_perp_mhz,
                           phi_e_rad=phi_e_rad)
    return diagonalize(build_hamiltonian(frame, f, C))


def test_zero_field_eigenvalues():
    es = _eigensystem(np.zeros(3))
    assert es.energies_ghz == pytest.approx([0.0, D, D], abs=1e-12)


def test_electric_splitting():
    es = _eigensystem(np.zeros(3), e_perp_mhz=4.0)
    assert es.energies_ghz == pytest.approx([0.0, D - 0.004, D + 0.004],
                                            abs=1e-12)
    splitting_mhz = (es.energies_ghz[2] - es.energies_ghz[1]) * 1e3
    assert splitting_mhz == pytest.approx(8.0, abs=1e-9)


def test_axial_field_transitions():
    frame = class_frame(0)
    es = _eigensystem(50.0 * frame.z_hat)
    transitions = es.energies_ghz[1:] - es.energies_ghz[0]
    assert transitions == pytest.approx([2.730, 3.010], abs=1e-9)


def test_pure_zfs_ground_state():
    es = _eigensystem(np.zeros(3))
    assert es.overlaps["g_0"] == pytest.approx(1.0, abs=1e-12)
    # degenerate upper level is tie-broken to the zero-field reference pair
    assert es.overlaps["d_minus"] == pytest.approx(1.0, abs=1e-12)
    assert es.overlaps["e_plus"] == pytest.approx(1.0, abs=1e-12)


def test_dark_state_vector():
    es = _eigensystem(np.zeros(3), e_perp_mhz=4.0, phi_e_rad=0.0)
    # basis order (|-1>, |0>, |+1>)
    reference = np.array([-1.0, 0.0, 1.0]) / np.sqrt(2.0)
    assert abs(es.d.conj() @ reference) ** 2 == pytest.approx(1.0, abs=1e-12)


@given(f=fields)
def test_hamiltonian_trace_and_hermiticity(f):
    frame = class_frame(1, f.b_gauss)
    h = build_hamiltonian(frame, f, C)
    assert np.linalg.norm(h - h.conj().T) < 1e-12
    assert np.trace(h).real == pytest.approx(2.0 * D, abs=1e-10)


@given(f=fields)
def test_eigen_residuals(f):
    frame = class_frame(0, f.b_gauss)
    h = build_hamiltonian(frame, f, C)
    es = diagonalize(h)
    scale = max(np.linalg.norm(h), 1.0)
    for k in range(3):
        v = es.states[:, k]
        assert np.linalg.norm(h @ v - es.energies_ghz[k] * v) < 1e-10 * scale
    assert np.linalg.norm(es.states.conj().T @ es.states - np.eye(3)) < 1e-10
    assert all(0.0 <= es.overlaps[k] <= 1.0 + 1e-12 for k in es.overlaps)


def test_rotational_consistency():
    b = np.array([23.0, -4.0, 11.0])
    for i, j in ((0, 1), (2, 3), (1, 2)):
        zi, zj = CLASS_AXES[i], CLASS_AXES[j]
        rot = rotation_matrix(np.cross(zi, zj),
                              float(np.arccos(np.clip(zi @ zj, -1.0, 1.0))))
        ei = _eigensystem(b, e_perp_mhz=3.0, phi_e_rad=0.7, class_id=i)
        ej = _eigensystem(rot @ b, e_perp_mhz=3.0, phi_e_rad=0.7, class_id=j)
        assert ei.energies_ghz == pytest.approx(ej.energies_ghz, abs=1e-10)


@given(phi=st.floats(0.0, 2.0 * np.pi, exclude_max=True))
def test_phi_e_symmetry(phi):
    base = _eigensystem(np.zeros(3), e_perp_mhz=4.0, phi_e_rad=0.0)
    es = _eigensystem(np.zeros(3), e_perp_mhz=4.0, phi_e_rad=phi)
    assert es.energies_ghz == pytest.approx(base.energies_ghz, abs=1e-12)
    _, _, plus = zero_field_states(phi)
    assert abs(es.e.conj() @ plus) ** 2 == pytest.approx(1.0, abs=1e-10)


def test_diagonalize_rejects_non_hermitian():
    h = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]],
                 dtype=complex)
    with pytest.raises(ValueError):
        diagonalize(h)


def test_frame_rejects_non_orthonormal():
    with pytest.raises(ValueError):
        NVClassFrame(0, np.array([1.0, 0.1, 0.0]), np.array([0.0, 1.0, 0.0]),
                     np.array([0.0, 0.0, 1.0]))


def test_eigenstate_map_limits():
    frame = class_frame(0)
    o_p1, o_plus = eigenstate_map(frame, [0.0, 100.0, 145.0, 150.0],
                                  [0.0, np.pi / 2], e_perp_mhz=4.0)
    assert np.all((0.0 <= o_p1) & (o_p1 <= 1.0))
    assert np.all((0.0 <= o_plus) & (o_plus <= 1.0))
    # zero field: the eigenbasis is the zero-field reference basis
    assert o_plus[0] == pytest.approx([1.0, 1.0], abs=1e-12)
    # strong axial field: upper state goes over to |+1>
    assert o_p1[1, 0] > 0.99
    # strong transverse field: upper state follows |+>
    assert o_plus[2, 1] > 0.98
    # at 150 G the overlap sits just under the 0.98 floor it holds up
    # to ~149.7 G; the boundary value is pinned here
    assert o_plus[3, 1] == pytest.approx(0.97992, abs=2e-4)


def test_eigenstate_map_validation():
    frame = class_frame(0)
    with pytest.raises(ValueError):
        eigenstate_map(frame, [], [0.0], e_perp_mhz=4.0)
    with pytest.raises(ValueError):
        eigenstate_map(frame, [-1.0], [0.0], e_perp_mhz=4.0)


def test_transverse_scan_splitting():
    frame = class_frame(0)
    grid = np.linspace(0.0, 150.0, 31)
    energies, dnu, matching = transverse_field_scan(frame, grid,
                                                    e_perp_mhz=4.0)
    assert energies.shape == (31, 3)
    assert dnu[0] == pytest.approx(8.0, abs=1e-9)
    assert np.all(np.diff(dnu) > 0.0)
    assert dnu[grid.searchsorted(20.0)] > 8.0
    assert dnu[-1] == pytest.approx(70.0, abs=5.0)
    assert np.all(matching > 0.97)


def test_transverse_scan_rejects_non_orthogonal():
    frame = class_frame(0)
    with pytest.raises(ValueError):
        transverse_field_scan(frame, [10.0], e_perp_mhz=4.0,
                              direction=frame.z_hat)
