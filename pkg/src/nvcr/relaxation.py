"""Fluctuator-bath relaxation: rate distribution and decay laws.

A dilute bath of fast-decaying spins ("fluctuators", lifetimes well
under 100 ns) relaxes the polarized NV population through resonant
dipolar flip-flops.  Averaging over fluctuator positions gives each NV
a random depolarization rate gamma with probability density

    rho(gamma) = exp(-1/(4 gamma T)) / sqrt(4 pi gamma^3 T),

whose characteristic time T is set by the density, coupling and
fluctuator linewidth.  The ensemble polarization is the Laplace
transform of rho, the square-root-stretched exponential
P(t) = exp(-sqrt(t/T)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .constants import DEFAULT_CONSTANTS

__all__ = [
    "FluctuatorParams",
    "DecayModel",
    "characteristic_rate",
    "rate_density",
    "polarization",
    "polarization_from_density",
    "decay_signal",
]


@dataclass(frozen=True)
class FluctuatorParams:
    """Bath parameters entering the characteristic rate.

    Attributes
    ----------
    n_f_per_nm3 : float
        Fluctuator number density (nm^-3).
    gamma_f_per_s : float
        Fluctuator decay rate (s^-1); the fast-bath regime corresponds
        to values above 1e7 s^-1 (lifetimes below 100 ns).
    eta_bar : float
        Dimensionless orientation-averaged coupling factor.
    j0_mhz_nm3 : float
        Dipole-dipole strength (MHz nm^3).
    """

    n_f_per_nm3: float
    gamma_f_per_s: float
    eta_bar: float
    j0_mhz_nm3: float = DEFAULT_CONSTANTS.j0_mhz_nm3

    def validate(self) -> "FluctuatorParams":
        for name in ("n_f_per_nm3", "gamma_f_per_s", "eta_bar", "j0_mhz_nm3"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")
        return self


@dataclass(frozen=True)
class DecayModel:
    """Parameters of the polarization decay laws.

    ``t1_dd_s`` is the dipolar (stretched) timescale, ``t1_ph_s`` the
    phonon-limited exponential one.  ``beta`` only enters the
    single-stretch form; it may run up to 1.5 so fitted values slightly
    above a pure exponential remain representable.
    """

    t1_dd_s: float
    t1_ph_s: float = np.inf
    amplitude: float = 1.0
    beta: float = 0.5

    def __post_init__(self):
        if self.t1_dd_s <= 0.0 or self.t1_ph_s <= 0.0:
            raise ValueError("timescales must be positive")
        if self.amplitude <= 0.0:
            raise ValueError("amplitude must be positive")
        if not 0.0 < self.beta <= 1.5:
            raise ValueError("beta must lie in (0, 1.5]")


def characteristic_rate(p: FluctuatorParams) -> float:
    """1/T in s^-1 for the fluctuator bath.

    1/T = (4 pi n_f J0 eta_bar / 3)^2 * pi / gamma_f, with J0 converted
    from MHz nm^3 to s^-1 nm^3 explicitly; the density cancels the nm^3.
    """
    p.validate()
    coupling_per_s = (4.0 * np.pi / 3.0) * p.n_f_per_nm3 \
        * (p.j0_mhz_nm3 * 1e6) * p.eta_bar
    return float(coupling_per_s**2 * np.pi / p.gamma_f_per_s)


def rate_density(gamma_per_s, t_s: float):
    """Probability density rho(gamma) of single-NV depolarization rates.

    Normalized over gamma in (0, inf); heavy-tailed with median near
    1/T and mode at 1/(6T).
    """
    if t_s <= 0.0:
        raise ValueError("T must be positive")
    gamma = np.asarray(gamma_per_s, dtype=float)
    if np.any(gamma <= 0.0):
        raise ValueError("gamma must be strictly positive")
    out = np.exp(-1.0 / (4.0 * gamma * t_s)) / np.sqrt(4.0 * np.pi * gamma**3 * t_s)
    return out if out.ndim else float(out)


def polarization(t_s, big_t_s: float):
    """Ensemble polarization P(t) = exp(-sqrt(t/T))."""
    if big_t_s <= 0.0:
        raise ValueError("T must be positive")
    t = np.asarray(t_s, dtype=float)
    if np.any(t < 0.0):
        raise ValueError("t must be >= 0")
    out = np.exp(-np.sqrt(t / big_t_s))
    return out if out.ndim else float(out)


def polarization_from_density(t_s: float, big_t_s: float) -> float:
    """P(t) as the Laplace transform of the rate density.

    Numerically integrates rho(gamma) exp(-gamma t) over (0, inf) with
    the substitution gamma = x/(1-x); rho has an essential zero at the
    origin and a gamma^(-3/2) tail, both of which the substitution
    tames.  Agrees with the closed form exp(-sqrt(t/T)) to ~1e-9; with
    t = 0 this is the normalization check.
    """
    if t_s < 0.0:
        raise ValueError("t must be >= 0")
    if big_t_s <= 0.0:
        raise ValueError("T must be positive")

    def integrand(x: float) -> float:
        g = x / (1.0 - x)
        if g <= 0.0:
            return 0.0
        expo = -g * t_s
        if expo < -700.0:
            return 0.0
        return rate_density(g, big_t_s) * np.exp(expo) / (1.0 - x) ** 2

    val, _ = integrate.quad(integrand, 0.0, 1.0, epsabs=1e-9, epsrel=1e-9,
                            limit=400)
    return float(val)


def decay_signal(t_s, m: DecayModel, mode: str = "two_channel"):
    """Model decay signal at times ``t_s``.

    mode "two_channel": S = A exp(-sqrt(t/T1_dd) - t/T1_ph), the
    dipolar-stretched channel in parallel with a phonon exponential.
    mode "stretched": S = A exp(-(t/T1_dd)^beta), a single stretched
    exponential with free exponent.
    """
    t = np.asarray(t_s, dtype=float)
    if np.any(t < 0.0):
        raise ValueError("t must be >= 0")
    if mode == "two_channel":
        log_s = -np.sqrt(t / m.t1_dd_s) - t / m.t1_ph_s
    elif mode == "stretched":
        log_s = -((t / m.t1_dd_s) ** m.beta)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    out = m.amplitude * np.exp(log_s)
    return out if out.ndim else float(out)
