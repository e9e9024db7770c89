"""Physical constants of the NV- ground-state spin model.

Internal unit conventions, used consistently across the package:
energies and frequencies in GHz (Hamiltonians) or MHz (splittings,
linewidths), magnetic fields in Gauss, distances in nm, times in
seconds.  Every public output restates its units.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SQRT3 = np.sqrt(3.0)

# Default transverse electric energy d_perp*E_perp (MHz), typical of the
# local charge environment probed by the zero-field splitting feature.
DEFAULT_E_PERP_MHZ = 4.0

# Half width at half maximum of the zero-field cross-relaxation feature
# (MHz); doubles as the default interaction range in degeneracy analysis.
DEFAULT_CR_RANGE_MHZ = 8.04


@dataclass(frozen=True)
class PhysicalConstants:
    """Ground-state spin-1 parameters.

    Attributes
    ----------
    d_ghz : float
        Zero-field splitting D between ``|0>`` and ``|+-1>`` (GHz).
    gamma_e_mhz_per_g : float
        Electron gyromagnetic ratio (MHz per Gauss).
    d_perp_hz_cm_per_v : float
        Transverse electric susceptibility (Hz cm/V).
    d_par_hz_cm_per_v : float
        Longitudinal electric susceptibility (Hz cm/V).  The
        longitudinal term is carried by the model but defaults to zero
        field, so it normally does not contribute.
    j0_mhz_nm3 : float
        Characteristic dipole-dipole strength J0 (MHz nm^3): the
        coupling of two NV spins 1 nm apart.
    """

    d_ghz: float = 2.87
    gamma_e_mhz_per_g: float = 2.8
    d_perp_hz_cm_per_v: float = 17.0
    d_par_hz_cm_per_v: float = 0.35
    j0_mhz_nm3: float = 52.0

    def validate(self) -> "PhysicalConstants":
        for name in ("d_ghz", "gamma_e_mhz_per_g", "d_perp_hz_cm_per_v",
                     "d_par_hz_cm_per_v", "j0_mhz_nm3"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be strictly positive, got {value}")
        return self


DEFAULT_CONSTANTS = PhysicalConstants()
