"""Single-NV ground-state Hamiltonian and eigenstructure.

The spin-1 ground state is modeled as

    H/h = D Sz^2 + gamma_e (B . S) + eps_perp (transverse electric term)
          [+ eps_par Sz^2]

with all operators written in the |m_s> basis ordered (|-1>, |0>, |+1>)
and energies in GHz.  ``eps_perp`` is the transverse electric energy
d_perp*E_perp; its azimuth phi_E is measured from the local x axis.

Sign convention: the transverse electric coupling is taken as
<+1|H|-1> = +eps_perp * exp(i phi_E), so the zero-field eigenstates are
|0> and |+-> = (|+1> +- exp(-i phi_E)|-1>)/sqrt(2) with |+> the upper
branch.  With this choice the upper eigenstate |e> tracks |+> as a
transverse magnetic field grows, and the d/e splitting increases
monotonically with B_perp.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .geometry import NVClassFrame, as_unit, class_frame

__all__ = [
    "FieldConfiguration",
    "SpinEigensystem",
    "spin_matrices",
    "zero_field_states",
    "build_hamiltonian",
    "diagonalize",
    "eigenstate_map",
    "transverse_field_scan",
]

_DEG_TOL = 1e-9   # GHz; eigenvalues closer than this are tie-broken


def spin_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin-1 operators (Sx, Sy, Sz) in the (|-1>, |0>, |+1>) basis."""
    sx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / np.sqrt(2.0)
    sy = np.array([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], dtype=complex) * (1j / np.sqrt(2.0))
    sz = np.diag([-1.0, 0.0, 1.0]).astype(complex)
    return sx, sy, sz


_SX, _SY, _SZ = spin_matrices()
_SZ2 = _SZ @ _SZ


def zero_field_states(phi_e_rad: float = 0.0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Reference states (|0>, |->, |+>) as columns in the m_s basis.

    |+-> = (|+1> +- exp(-i phi_E) |-1>)/sqrt(2).
    """
    s0 = np.array([0.0, 1.0, 0.0], dtype=complex)
    ph = np.exp(-1j * phi_e_rad)
    sp = np.array([ph, 0.0, 1.0], dtype=complex) / np.sqrt(2.0)
    sm = np.array([-ph, 0.0, 1.0], dtype=complex) / np.sqrt(2.0)
    return s0, sm, sp


@dataclass(frozen=True)
class FieldConfiguration:
    """Applied fields seen by one NV center.

    Attributes
    ----------
    b_gauss : array-like
        Magnetic field vector in the crystal frame (Gauss).
    e_perp_mhz : float
        Transverse electric energy d_perp*E_perp (MHz), >= 0.
    phi_e_rad : float
        Azimuth of the transverse electric field in the NV transverse
        plane, measured from the local x axis; folded into [0, 2*pi).
    e_par_mhz : float
        Longitudinal electric energy d_par*E_par (MHz); zero by default
        and normally left so.
    """

    b_gauss: np.ndarray = field(default_factory=lambda: np.zeros(3))
    e_perp_mhz: float = 0.0
    phi_e_rad: float = 0.0
    e_par_mhz: float = 0.0

    def __post_init__(self):
        b = np.asarray(self.b_gauss, dtype=float)
        if b.shape != (3,) or not np.all(np.isfinite(b)):
            raise ValueError("b_gauss must be a finite 3-vector")
        object.__setattr__(self, "b_gauss", b)
        if self.e_perp_mhz < 0.0:
            raise ValueError("e_perp_mhz must be >= 0")
        object.__setattr__(self, "phi_e_rad", float(self.phi_e_rad) % (2.0 * np.pi))


@dataclass(frozen=True)
class SpinEigensystem:
    """Ordered eigenstructure of the 3x3 ground-state Hamiltonian.

    ``energies_ghz`` are ascending and labeled (g, d, e); ``states``
    holds the eigenvectors as columns in the (|-1>, |0>, |+1>) basis.
    ``overlaps`` maps diagnostic labels to squared moduli against the
    phi_E = 0 reference states.
    """

    energies_ghz: np.ndarray
    states: np.ndarray
    overlaps: dict

    @property
    def g(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def d(self) -> np.ndarray:
        return self.states[:, 1]

    @property
    def e(self) -> np.ndarray:
        return self.states[:, 2]


def build_hamiltonian(cls: NVClassFrame, f: FieldConfiguration,
                      c: PhysicalConstants = DEFAULT_CONSTANTS) -> np.ndarray:
    """Assemble H/h in GHz for one NV center.

    The magnetic field is supplied in the crystal frame and projected
    onto the class triad internally; the electric term is specified
    directly as an energy so no susceptibility conversion is needed
    here.
    """
    cls.validate()
    c.validate()
    b = np.asarray(f.b_gauss, dtype=float)
    bx, by, bz = b @ cls.x_hat, b @ cls.y_hat, b @ cls.z_hat
    gam = c.gamma_e_mhz_per_g * 1e-3  # GHz per Gauss
    h = c.d_ghz * _SZ2 + gam * (bx * _SX + by * _SY + bz * _SZ)
    eps = f.e_perp_mhz * 1e-3
    if eps != 0.0:
        ph = np.exp(1j * f.phi_e_rad)
        h[2, 0] += eps * ph
        h[0, 2] += eps * np.conj(ph)
    if f.e_par_mhz != 0.0:
        h = h + (f.e_par_mhz * 1e-3) * _SZ2
    return h


def _tie_break_degenerate(energies: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """Rotate degenerate eigenvector groups onto the reference states.

    Within each degenerate group the eigenbasis is arbitrary; it is
    re-mixed to maximize overlap with |0>, |->, |+> in that order so
    zero-field labels come out deterministic.
    """
    refs = zero_field_states(0.0)
    out = vecs.copy()
    i = 0
    while i < 3:
        j = i + 1
        while j < 3 and energies[j] - energies[i] < _DEG_TOL:
            j += 1
        if j - i > 1:
            block = vecs[:, i:j]
            proj = block @ block.conj().T
            chosen: list[np.ndarray] = []
            for ref in refs:
                w = proj @ ref
                for prev in chosen:
                    w = w - (prev.conj() @ w) * prev
                n = np.linalg.norm(w)
                if n > 1e-6:
                    chosen.append(w / n)
                if len(chosen) == j - i:
                    break
            if len(chosen) == j - i:
                out[:, i:j] = np.stack(chosen, axis=1)
        i = j
    return out


def diagonalize(h: np.ndarray) -> SpinEigensystem:
    """Eigensystem of a Hermitian 3x3 Hamiltonian, energies ascending."""
    h = np.asarray(h, dtype=complex)
    scale = max(np.linalg.norm(h), 1.0)
    if np.linalg.norm(h - h.conj().T) > 1e-10 * scale:
        raise ValueError("Hamiltonian is not Hermitian")
    energies, vecs = np.linalg.eigh(h)
    vecs = _tie_break_degenerate(energies, vecs)
    # deterministic global phase: largest component real positive
    for k in range(3):
        idx = int(np.argmax(np.abs(vecs[:, k])))
        phase = vecs[idx, k] / abs(vecs[idx, k])
        vecs[:, k] = vecs[:, k] / phase
    resid = np.linalg.norm(h @ vecs - vecs * energies[None, :], axis=0)
    if np.any(resid > 1e-10 * scale):
        raise ArithmeticError(f"eigen-residual too large: {resid.max():.3e}")
    s0, sm, sp = zero_field_states(0.0)
    p1 = np.array([0.0, 0.0, 1.0], dtype=complex)
    overlaps = {
        "e_p1": float(abs(vecs[:, 2].conj() @ p1) ** 2),
        "e_plus": float(abs(vecs[:, 2].conj() @ sp) ** 2),
        "g_0": float(abs(vecs[:, 0].conj() @ s0) ** 2),
        "d_minus": float(abs(vecs[:, 1].conj() @ sm) ** 2),
    }
    return SpinEigensystem(energies, vecs, overlaps)


def eigenstate_map(cls: NVClassFrame, b_amplitude_gauss, theta_rad,
                   e_perp_mhz: float,
                   c: PhysicalConstants = DEFAULT_CONSTANTS):
    """Overlap maps of |e> with |+1> and |+> over (B amplitude, polar angle).

    The field is tilted by theta from the NV axis toward the local x
    axis; the electric azimuth is held at phi_E = 0, i.e. the electric
    field lies along the same transverse direction.

    Returns
    -------
    (overlap_e_p1, overlap_e_plus) : ndarray, ndarray
        Arrays of shape (len(b_amplitude_gauss), len(theta_rad)).
    """
    b_amplitude_gauss = np.atleast_1d(np.asarray(b_amplitude_gauss, dtype=float))
    theta_rad = np.atleast_1d(np.asarray(theta_rad, dtype=float))
    if b_amplitude_gauss.size == 0 or theta_rad.size == 0:
        raise ValueError("grids must be non-empty")
    if np.any(b_amplitude_gauss < 0.0):
        raise ValueError("amplitudes must be >= 0")
    o_p1 = np.empty((b_amplitude_gauss.size, theta_rad.size))
    o_plus = np.empty_like(o_p1)
    for i, b in enumerate(b_amplitude_gauss):
        for j, th in enumerate(theta_rad):
            b_vec = b * (np.cos(th) * cls.z_hat + np.sin(th) * cls.x_hat)
            f = FieldConfiguration(b_gauss=b_vec, e_perp_mhz=e_perp_mhz)
            es = diagonalize(build_hamiltonian(cls, f, c))
            o_p1[i, j] = es.overlaps["e_p1"]
            o_plus[i, j] = es.overlaps["e_plus"]
    return o_p1, o_plus


def transverse_field_scan(cls: NVClassFrame, b_perp_gauss, e_perp_mhz: float,
                          c: PhysicalConstants = DEFAULT_CONSTANTS,
                          direction=None):
    """Eigenstructure versus a purely transverse magnetic field.

    Parameters
    ----------
    b_perp_gauss : array-like
        Transverse field amplitudes (Gauss).
    direction : array-like, optional
        Transverse direction in the crystal frame; defaults to the
        frame's x axis.  Must be orthogonal to the NV axis.

    Returns
    -------
    energies_ghz : (n, 3) ndarray
        (g, d, e) energies per amplitude.
    dnu_mhz : (n,) ndarray
        d/e splitting nu_+ - nu_- in MHz.
    matching : (n,) ndarray
        |<e|+>|^2 per amplitude.
    """
    b_perp_gauss = np.atleast_1d(np.asarray(b_perp_gauss, dtype=float))
    if direction is None:
        direction = cls.x_hat
    direction = as_unit(direction)
    if abs(direction @ cls.z_hat) > 1e-9:
        raise ValueError("scan direction must be orthogonal to the NV axis")
    # keep the electric field along the scan direction so the d/e
    # splitting adds up coherently at all amplitudes
    phi_e = float(np.arctan2(direction @ cls.y_hat, direction @ cls.x_hat))
    energies = np.empty((b_perp_gauss.size, 3))
    dnu = np.empty(b_perp_gauss.size)
    matching = np.empty(b_perp_gauss.size)
    _, _, plus_ref = zero_field_states(phi_e)
    for i, b in enumerate(b_perp_gauss):
        f = FieldConfiguration(b_gauss=b * direction, e_perp_mhz=e_perp_mhz,
                               phi_e_rad=phi_e)
        es = diagonalize(build_hamiltonian(cls, f, c))
        energies[i] = es.energies_ghz
        dnu[i] = (es.energies_ghz[2] - es.energies_ghz[1]) * 1e3
        matching[i] = float(abs(es.e.conj() @ plus_ref) ** 2)
    return energies, dnu, matching
