"""Two-spin dipolar Hamiltonian and its exchange matrix elements.

For two spin-1 centers separated along the unit vector u_hat the
secular-relevant part of the dipolar coupling is, in units of J0/r^3,

    H / (J0/r^3) = -[ 3 (S1.u)(S2.u) - S1.S2 ]
                 = -sum_ab a_ab S_a^1 S_b^2,     a_ab = 3(u.a1)(u.b2) - a1.b2

where a, b run over each spin's local axes.  Terms mixing transverse
and longitudinal operators on the same spin (S_x S_z type) average out
for the processes of interest and are kept behind a flag.

Matrix elements can be taken in two single-spin eigenbases:

* MAGNETIC -- the |m_s> basis, ordered (|-1>, |0>, |+1>), appropriate
  when an axial magnetic field dominates.
* NONMAGNETIC -- the zero-field basis ordered (|->, |0>, |+>), the
  eigenbasis when a transverse electric (or magnetic) field dominates.
  Operator representations:

      Sx = [[0,1,0],[1,0,0],[0,0,0]]
      Sy = [[0,0,0],[0,0,1],[0,1,0]]
      Sz = [[0,0,-i],[0,0,0],[i,0,0]]

  realized by |-> = (|+1>+|-1>)/sqrt(2), |+> = -i(|+1>-|-1>)/sqrt(2).
  The phases (including the i in Sz) make the representation an exact
  unitary conjugation of the magnetic-basis operators; only magnitudes
  of matrix elements feed the downstream averages, so the phase and
  label conventions do not affect any physical output.

The flip-flop channels in the nonmagnetic basis are named by operator:
channel "x" exchanges the quantum coupled by the x-type operators
(amplitude a_xx) and channel "y" the one coupled by the y-type
operators (amplitude a_yy).  In the magnetic basis both flip-flop
elements have equal magnitude and the channel argument is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import spin_model
from .geometry import PairGeometry

__all__ = [
    "BasisChoice",
    "DipolarCoefficients",
    "nonmagnetic_spin_matrices",
    "nonmagnetic_change_of_basis",
    "dipolar_coefficients",
    "build_two_spin_hamiltonian",
    "flip_flop_amplitude",
    "double_flip_amplitude",
    "resonance_factor",
]


class BasisChoice(Enum):
    MAGNETIC = "magnetic"
    NONMAGNETIC = "nonmagnetic"


def nonmagnetic_spin_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin-1 operators in the zero-field basis ordered (|->, |0>, |+>)."""
    sx = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex)
    sy = np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex)
    sz = np.array([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]], dtype=complex)
    return sx, sy, sz


def nonmagnetic_change_of_basis() -> np.ndarray:
    """Unitary U with columns (|->, |0>, |+>) in the m_s representation.

    Satisfies U^dag S_a U = nonmagnetic_spin_matrices()[a] exactly for
    all three operators.
    """
    sq = 1.0 / np.sqrt(2.0)
    return np.array([
        [sq, 0.0, 1j * sq],
        [0.0, 1.0, 0.0],
        [sq, 0.0, -1j * sq],
    ], dtype=complex)


_AXES = ("x", "y", "z")


@dataclass(frozen=True)
class DipolarCoefficients:
    """Geometric weights a_ab = 3(u.a1)(u.b2) - a1.b2 of the retained terms."""

    a_xx: float
    a_yy: float
    a_xy: float
    a_yx: float
    a_zz: float

    def as_dict(self) -> dict:
        return {"xx": self.a_xx, "yy": self.a_yy, "xy": self.a_xy,
                "yx": self.a_yx, "zz": self.a_zz}


def _coefficient(g: PairGeometry, a: str, b: str) -> float:
    a1 = getattr(g.frame1, f"{a}_hat")
    b2 = getattr(g.frame2, f"{b}_hat")
    return float(3.0 * (g.u_hat @ a1) * (g.u_hat @ b2) - a1 @ b2)


def dipolar_coefficients(g: PairGeometry) -> DipolarCoefficients:
    g.frame1.validate()
    g.frame2.validate()
    return DipolarCoefficients(
        a_xx=_coefficient(g, "x", "x"),
        a_yy=_coefficient(g, "y", "y"),
        a_xy=_coefficient(g, "x", "y"),
        a_yx=_coefficient(g, "y", "x"),
        a_zz=_coefficient(g, "z", "z"),
    )


def _single_spin_ops(basis: BasisChoice):
    if basis is BasisChoice.MAGNETIC:
        return spin_model.spin_matrices()
    return nonmagnetic_spin_matrices()


def build_two_spin_hamiltonian(g: PairGeometry, basis: BasisChoice,
                               include_other: bool = False) -> np.ndarray:
    """9x9 pair Hamiltonian in units of J0/r^3.

    With ``include_other`` false only the five bilinears retained by the
    secular argument (xx, yy, xy, yx, zz) enter; setting it true adds
    the transverse-longitudinal cross terms for sensitivity studies.
    """
    ops = _single_spin_ops(basis)
    op = {"x": ops[0], "y": ops[1], "z": ops[2]}
    if include_other:
        terms = [(a, b) for a in _AXES for b in _AXES]
    else:
        terms = [("x", "x"), ("y", "y"), ("x", "y"), ("y", "x"), ("z", "z")]
    h = np.zeros((9, 9), dtype=complex)
    for a, b in terms:
        h -= _coefficient(g, a, b) * np.kron(op[a], op[b])
    return h


# basis-state index in the 9-dim product space; single-spin positions are
# 0, 1, 2 in the documented ordering of each basis
def _idx(i1: int, i2: int) -> int:
    return 3 * i1 + i2


def flip_flop_amplitude(g: PairGeometry, basis: BasisChoice,
                        channel: str = "x") -> float:
    """|<flip, 0| H/(J0/r^3) |0, flop>| for the one-quantum exchange.

    In the magnetic basis this is |<+1,0|H|0,+1>| (equal in magnitude to
    the -1 channel).  In the nonmagnetic basis ``channel`` picks the
    exchanged quantum: "x" or "y" per the module docstring, or "mean"
    for the average of both magnitudes.
    """
    h = build_two_spin_hamiltonian(g, basis)
    if basis is BasisChoice.MAGNETIC:
        # |+1,0><0,+1| block; ordering (|-1>,|0>,|+1>)
        return float(abs(h[_idx(2, 1), _idx(1, 2)]))
    # ordering (|->,|0>,|+>): x-type operators couple positions 0<->1,
    # y-type couple 1<->2
    amp_x = abs(h[_idx(0, 1), _idx(1, 0)])
    amp_y = abs(h[_idx(2, 1), _idx(1, 2)])
    if channel == "x":
        return float(amp_x)
    if channel == "y":
        return float(amp_y)
    if channel == "mean":
        return float(0.5 * (amp_x + amp_y))
    raise ValueError(f"unknown channel {channel!r}")


def double_flip_amplitude(g: PairGeometry, basis: BasisChoice) -> float:
    """|<up, 0| H/(J0/r^3) |0, down>|: both spins gain or lose a quantum.

    In the magnetic basis the two orderings of which spin goes up have
    equal magnitude for every geometry.  In the nonmagnetic basis the
    element reduces to a single cross coefficient (a_yx here), so for
    cross-class pairs the orderings can differ; the (up on spin 1)
    ordering is the one reported.
    """
    h = build_two_spin_hamiltonian(g, basis)
    return float(abs(h[_idx(2, 1), _idx(1, 0)]))


def resonance_factor(omega_f_mhz: float, omega_nv_mhz: float,
                     gamma_f_mhz: float) -> float:
    """Lorentzian resonance weight 4 g^2 / (detuning^2 + 4 g^2) in (0, 1]."""
    if gamma_f_mhz <= 0.0:
        raise ValueError("gamma_f must be positive")
    det = omega_f_mhz - omega_nv_mhz
    return 4.0 * gamma_f_mhz**2 / (det**2 + 4.0 * gamma_f_mhz**2)
