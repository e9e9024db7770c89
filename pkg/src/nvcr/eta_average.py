"""Solid-angle averaged dipolar couplings and scenario rate multipliers.

The cross-relaxation rate of an NV spin against a bath of resonant
fluctuators scales as eta_bar^2, where eta_bar averages the flip-flop
magnitude over the inter-spin direction u_hat, the participating class
pairs, and (in the zero-field basis) the relative orientation of the
in-plane reference axes.  Resonance between classes is applied as a
binary rule: a class pair either contributes its full angular average
or does not contribute at all.

All averages are reported normalized as A = eta_bar / (1/4 * sqrt(1/3)),
the convention of the coupling table; ``eta_bar`` applies the prefactor.

Quadrature: product Gauss-Legendre in cos(theta) x uniform trapezoid in
phi over the sphere (and trapezoid in psi for RANDOM mode), evaluated on
a resolution ladder (half, nominal, doubled, ...) until two successive
rungs agree within tolerance.  Axially symmetric cases reduce to a 1-D
integral of |quadratic| and are integrated piecewise-exactly by
splitting at the kink.  All node sets are built in a triad derived from
the pair geometry itself, so every average is invariant under a common
rotation of the frames to rounding accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .dipolar import BasisChoice
from .geometry import NVClassFrame, as_unit

__all__ = [
    "ZAngle",
    "XMode",
    "FieldOrientationScenario",
    "EtaScenario",
    "QuadratureSpec",
    "ConvergenceError",
    "ETA_PREFACTOR",
    "scenario_frames",
    "pair_average",
    "angular_average",
    "eta_bar",
    "scenario_multiplier",
    "eta_table",
    "multiplier_table",
]

# eta_bar = (class population 1/4) * sqrt(1/3 resonance fraction) * A
ETA_PREFACTOR = 0.25 * np.sqrt(1.0 / 3.0)


class ZAngle(Enum):
    """Relative orientation of the two NV axes."""
    SAME = "same"      # parallel axes, z1.z2 = 1
    CLOSE = "close"    # arccos(1/3) = 70.5 deg, z1.z2 = +1/3
    FAR = "far"        # arccos(-1/3) = 109.5 deg, z1.z2 = -1/3


_Z_COS = {ZAngle.SAME: 1.0, ZAngle.CLOSE: 1.0 / 3.0, ZAngle.FAR: -1.0 / 3.0}


class XMode(Enum):
    """How the two in-plane reference axes relate."""
    ALIGNED = "aligned"   # both x axes from one shared field direction
    RANDOM = "random"     # independent uniform azimuths, averaged


class FieldOrientationScenario(Enum):
    """Applied-field configurations and their resonant class sets."""
    RANDOM_DIRECTION = "random_direction"
    PLANE_110 = "plane_110"
    PLANE_100 = "plane_100"
    AXIS_111 = "axis_111"
    AXIS_100 = "axis_100"
    ZERO_FIELD_ELECTRIC = "zero_field_electric"


@dataclass(frozen=True)
class EtaScenario:
    """One angular-average specification."""

    basis: BasisChoice
    z_angle: ZAngle
    x_mode: XMode = XMode.RANDOM
    weight: float = 0.25

    def __post_init__(self):
        if not 0.0 < self.weight <= 1.0:
            raise ValueError("weight must lie in (0, 1]")


@dataclass(frozen=True)
class QuadratureSpec:
    """Grid resolutions and the convergence target for angular averages."""

    n_theta: int = 128
    n_phi: int = 128
    n_psi: int = 64
    tolerance: float = 5e-4
    max_doublings: int = 3

    def __post_init__(self):
        for name in ("n_theta", "n_phi", "n_psi"):
            if getattr(self, name) < 8:
                raise ValueError(f"{name} must be >= 8")
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")

    def scaled(self, factor: float) -> "QuadratureSpec":
        return replace(
            self,
            n_theta=max(8, int(round(self.n_theta * factor))),
            n_phi=max(8, int(round(self.n_phi * factor))),
            n_psi=max(8, int(round(self.n_psi * factor))),
        )


class ConvergenceError(RuntimeError):
    """Raised when the quadrature ladder fails to settle."""


DEFAULT_QUADRATURE = QuadratureSpec()

_CHUNK_ELEMS = 1 << 23  # cap on the broadcast buffer, ~64 MB of float64


def _gl_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _abs_quadratic_average(a: float, b: float, n: int = 48) -> float:
    """(1/2) * integral_{-1}^{1} |a t^2 + b| dt, exact via kink splitting.

    Gauss-Legendre is exact for polynomials, so integrating each smooth
    piece separately gives machine-precision results.
    """
    x, w = _gl_nodes(n)

    def seg(lo: float, hi: float) -> float:
        t = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        return 0.5 * (hi - lo) * float(w @ np.abs(a * t * t + b))

    pieces = [0.0, 1.0]
    if a != 0.0 and 0.0 < -b / a < 1.0:
        pieces.insert(1, float(np.sqrt(-b / a)))
    total = sum(seg(lo, hi) for lo, hi in zip(pieces[:-1], pieces[1:]))
    return total  # integrand even in t, so (1/2)*int_{-1}^{1} = int_0^1


def _pair_kernel_batch(cosines: np.ndarray, n_theta: int, n_phi: int) -> np.ndarray:
    """Sphere average of |3 (u.a)(u.b) - a.b| for a batch of axis cosines.

    By rotational invariance the average depends only on c = a.b.  With
    the polar axis along the common normal of a and b the integrand is
    |(3/2)(1 - t^2)(c + cos 2 phi) - c|, which is evaluated on the
    product grid for every requested c in vectorized chunks.
    """
    t, w = _gl_nodes(n_theta)
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    s2 = 1.5 * (1.0 - t * t)                       # (3/2) sin^2(theta)
    quad = (s2[:, None] * np.cos(2.0 * phi)[None, :]).ravel()
    slope = np.repeat(s2, n_phi)                   # multiplies c
    weight = np.repeat(w, n_phi) / (2.0 * n_phi)   # sums to 1 on the sphere
    cosines = np.atleast_1d(np.asarray(cosines, dtype=float))
    out = np.empty(cosines.size)
    step = max(1, _CHUNK_ELEMS // weight.size)
    for i in range(0, cosines.size, step):
        c = cosines[i:i + step, None]
        out[i:i + step] = np.abs((slope[None, :] - 1.0) * c + quad[None, :]) @ weight
    return out


def _relative_triad(z1: np.ndarray, z2: np.ndarray):
    """Orthonormal triad built from the two NV axes.

    Returns (e1, e2, e3) with e1 = z1 and e3 normal to the (z1, z2)
    plane; for parallel axes any fixed normal completes the triad.  All
    downstream node sets live in this triad, which is what makes the
    averages rotation covariant.
    """
    e1 = as_unit(z1)
    cross = np.cross(z1, z2)
    n = np.linalg.norm(cross)
    if n > 1e-12:
        e3 = cross / n
    else:
        seed = np.array([1.0, 0.0, 0.0])
        if abs(seed @ e1) > 0.9:
            seed = np.array([0.0, 1.0, 0.0])
        e3 = as_unit(seed - (seed @ e1) * e1)
    e2 = np.cross(e3, e1)
    return e1, e2, e3


def _sphere_nodes_in_triad(n_theta: int, n_phi: int, triad):
    e1, e2, e3 = triad
    t, w = _gl_nodes(n_theta)
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    ct = np.repeat(t, n_phi)
    st = np.sqrt(np.clip(1.0 - ct * ct, 0.0, None))
    cp = np.tile(np.cos(phi), n_theta)
    sp = np.tile(np.sin(phi), n_theta)
    # polar axis e3 so u covers the sphere relative to the pair plane
    u = (st * cp)[:, None] * e1[None, :] + (st * sp)[:, None] * e2[None, :] \
        + ct[:, None] * e3[None, :]
    weight = np.repeat(w, n_phi) / (2.0 * n_phi)
    return u, weight


def _magnetic_pair_average(z1: np.ndarray, z2: np.ndarray,
                           n_theta: int, n_phi: int) -> float:
    """Sphere average of the magnetic-basis flip-flop magnitude."""
    czz = float(z1 @ z2)
    if abs(abs(czz) - 1.0) < 1e-12:
        # axial symmetry: |M| = |1 - 3 (u.z)^2| / 2
        return 0.5 * _abs_quadratic_average(-3.0, 1.0)
    triad = _relative_triad(z1, z2)
    u, w = _sphere_nodes_in_triad(n_theta, n_phi, triad)
    x_shared = triad[2]                  # normal to both axes
    y1 = np.cross(z1, x_shared)
    y2 = np.cross(z2, x_shared)
    # c_i = x_i + i y_i; the flip-flop element is (3 p1 p2 - s12)/2
    p1 = (u @ x_shared) - 1j * (u @ y1)
    p2 = (u @ x_shared) + 1j * (u @ y2)
    s12 = (1.0 + y1 @ y2) + 1j * (x_shared @ y2 - y1 @ x_shared)
    m = 0.5 * np.abs(3.0 * p1 * p2 - s12)
    return float(m @ w)


def _nonmagnetic_pair_average(z1: np.ndarray, z2: np.ndarray, x_mode: XMode,
                              n_theta: int, n_phi: int, n_psi: int,
                              x1=None, x2=None) -> float:
    """Average of the zero-field-basis flip-flop magnitude (x channel).

    The in-plane axes are either frozen (explicit x1/x2, or derived from
    a shared field direction averaged over the sphere for distinct
    axes), or independently randomized.  For a pair of in-plane axes the
    sphere average reduces to the kernel of _pair_kernel_batch at their
    mutual cosine.
    """
    czz = float(np.clip(z1 @ z2, -1.0, 1.0))
    same_axis = abs(abs(czz) - 1.0) < 1e-12
    if x_mode is XMode.ALIGNED:
        if x1 is not None and x2 is not None:
            c = float(np.clip(as_unit(x1) @ as_unit(x2), -1.0, 1.0))
            if abs(abs(c) - 1.0) < 1e-12:
                return _abs_quadratic_average(3.0, -1.0)
            return float(_pair_kernel_batch(np.array([c]), n_theta, n_phi)[0])
        if same_axis:
            # shared transverse plane: a common field projects onto the
            # same in-plane axis for both spins
            return _abs_quadratic_average(3.0, -1.0)
        # distinct axes: project a shared direction F, uniform over the
        # sphere, onto each transverse plane
        triad = _relative_triad(z1, z2)
        f, wf = _sphere_nodes_in_triad(n_psi, n_psi, triad)

        def in_plane(zhat):
            p = f - np.outer(f @ zhat, zhat)
            n = np.linalg.norm(p, axis=1)
            n[n < 1e-12] = 1.0  # measure-zero poles; numerator is ~0 there
            return p / n[:, None]

        p1 = in_plane(z1)
        p2 = in_plane(z2)
        c = np.clip(np.sum(p1 * p2, axis=1), -1.0, 1.0)
        return float(_pair_kernel_batch(c, n_theta, n_phi) @ wf)
    # RANDOM mode: independent uniform azimuths psi_1, psi_2 of the two
    # in-plane axes; x1.x2 = cos(psi1)cos(psi2) + (z1.z2) sin(psi1)sin(psi2)
    psi = np.linspace(0.0, 2.0 * np.pi, n_psi, endpoint=False)
    cp, sp = np.cos(psi), np.sin(psi)
    if same_axis:
        c = cp  # only the relative azimuth matters in a shared plane
    else:
        c = (cp[:, None] * cp[None, :] + czz * sp[:, None] * sp[None, :]).ravel()
    return float(np.mean(_pair_kernel_batch(c, n_theta, n_phi)))


def scenario_frames(z_angle: ZAngle) -> tuple[NVClassFrame, NVClassFrame]:
    """Canonical frame pair realizing a relative-axis class."""
    z1 = np.array([0.0, 0.0, 1.0])
    czz = _Z_COS[z_angle]
    z2 = np.array([np.sqrt(max(0.0, 1.0 - czz * czz)), 0.0, czz])
    frames = []
    for cid, z in ((0, z1), (1, z2)):
        x = np.array([0.0, 1.0, 0.0])  # orthogonal to both axes
        frames.append(NVClassFrame(cid, x, np.cross(z, x), z))
    return frames[0], frames[1]


def pair_average(frame1: NVClassFrame, frame2: NVClassFrame,
                 basis: BasisChoice, x_mode: XMode,
                 q: QuadratureSpec = DEFAULT_QUADRATURE,
                 use_frame_x: bool = False) -> float:
    """Converged angular average for an explicit frame pair.

    ``use_frame_x`` freezes the in-plane axes to the frames' x axes in
    ALIGNED mode instead of averaging over a shared field direction.
    """
    kwargs = {}
    if use_frame_x and x_mode is XMode.ALIGNED:
        kwargs = {"x1": frame1.x_hat, "x2": frame2.x_hat}

    def rung(spec: QuadratureSpec) -> float:
        if basis is BasisChoice.MAGNETIC:
            return _magnetic_pair_average(frame1.z_hat, frame2.z_hat,
                                          spec.n_theta, spec.n_phi)
        return _nonmagnetic_pair_average(frame1.z_hat, frame2.z_hat, x_mode,
                                         spec.n_theta, spec.n_phi, spec.n_psi,
                                         **kwargs)

    half = q.scaled(0.5)
    # at the resolution floor the half spec clamps back to q and would
    # compare a rung against itself; step the ladder up instead
    at_floor = (half.n_theta, half.n_phi, half.n_psi) == \
        (q.n_theta, q.n_phi, q.n_psi)
    prev = rung(half)
    for k in range(q.max_doublings + 1):
        factor = float(2 ** (k + 1)) if at_floor else float(2 ** k)
        cur = rung(q.scaled(factor))
        if abs(cur - prev) < q.tolerance:
            return cur
        prev = cur
    raise ConvergenceError(
        f"angular average did not settle within tolerance {q.tolerance:g}; "
        f"last change {abs(cur - prev):.3e} at {2 ** q.max_doublings}x resolution")


def angular_average(s: EtaScenario, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Normalized average A = eta_bar / (1/4 sqrt(1/3)) for one scenario.

    In the magnetic basis the result does not depend on x_mode (the
    flip-flop magnitude is invariant under in-plane axis rotations).
    """
    f1, f2 = scenario_frames(s.z_angle)
    return pair_average(f1, f2, s.basis, s.x_mode, q)


def eta_bar(s: EtaScenario, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Average coupling including the population and bandwidth prefactor."""
    return s.weight * np.sqrt(1.0 / 3.0) * angular_average(s, q)


# resonant class-pair composition per applied-field configuration: each
# term is (z_angle, count); basis/x_mode depend on the configuration
_MAGNETIC_COMPOSITION = {
    FieldOrientationScenario.RANDOM_DIRECTION: [(ZAngle.SAME, 1)],
    FieldOrientationScenario.PLANE_110: [(ZAngle.SAME, 1), (ZAngle.FAR, 1)],
    FieldOrientationScenario.PLANE_100: [(ZAngle.SAME, 1), (ZAngle.CLOSE, 1)],
    FieldOrientationScenario.AXIS_111: [(ZAngle.SAME, 1), (ZAngle.FAR, 2)],
    FieldOrientationScenario.AXIS_100: [(ZAngle.SAME, 1), (ZAngle.CLOSE, 2),
                                        (ZAngle.FAR, 1)],
}


def _composition_total(fs: FieldOrientationScenario, q: QuadratureSpec) -> float:
    if fs is FieldOrientationScenario.ZERO_FIELD_ELECTRIC:
        # all four classes resonant in the zero-field basis; in-plane
        # axes set by uncorrelated local electric fields
        same = angular_average(
            EtaScenario(BasisChoice.NONMAGNETIC, ZAngle.SAME, XMode.RANDOM), q)
        diff = angular_average(
            EtaScenario(BasisChoice.NONMAGNETIC, ZAngle.CLOSE, XMode.RANDOM), q)
        return same + 3.0 * diff
    total = 0.0
    for z_angle, count in _MAGNETIC_COMPOSITION[fs]:
        total += count * angular_average(
            EtaScenario(BasisChoice.MAGNETIC, z_angle), q)
    return total


def scenario_multiplier(fs: FieldOrientationScenario,
                        q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Rate multiplier (eta_bar / eta_bar_0)^2 for one field configuration.

    eta_bar_0 is the single-class magnetic-basis average, the rate unit
    of a generic field direction where only same-class pairs are
    resonant.
    """
    base = angular_average(EtaScenario(BasisChoice.MAGNETIC, ZAngle.SAME), q)
    total = _composition_total(fs, q)
    return float((total / base) ** 2)


def eta_table(q: QuadratureSpec = DEFAULT_QUADRATURE) -> dict:
    """The 3x3 table of normalized averages A per basis/mode and axis class.

    Rows: magnetic basis (mode-free), nonmagnetic with random in-plane
    axes, nonmagnetic with field-aligned axes.  Columns: same, close,
    far.
    """
    table = {}
    for z in ZAngle:
        table[("magnetic", z.value)] = angular_average(
            EtaScenario(BasisChoice.MAGNETIC, z), q)
    for mode in (XMode.RANDOM, XMode.ALIGNED):
        for z in ZAngle:
            key = (f"nonmagnetic_{mode.value}", z.value)
            table[key] = angular_average(
                EtaScenario(BasisChoice.NONMAGNETIC, z, mode), q)
    return table


def multiplier_table(q: QuadratureSpec = DEFAULT_QUADRATURE) -> dict:
    """Rate multiplier per field-orientation scenario."""
    return {fs.name: scenario_multiplier(fs, q) for fs in FieldOrientationScenario}
