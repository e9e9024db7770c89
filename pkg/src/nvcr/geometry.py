"""Crystallographic frames and pair geometry for NV spins.

The NV axis of a given center points along one of the four <111>
directions of the diamond lattice (the four "classes").  Each spin
carries a local right-handed orthonormal triad (x_hat, y_hat, z_hat)
with z_hat along its NV axis; the transverse axes fix the phase
reference for the in-plane electric field.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# The four <111> class axes, normalized.  Pairwise dot products are
# +-1/3: classes are either parallel (same), at arccos(1/3) = 70.5 deg
# (close), or at arccos(-1/3) = 109.5 deg (far).
CLASS_AXES = np.array(
    [
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ]
) / np.sqrt(3.0)

N_CLASSES = 4

_UNIT_TOL = 1e-12


def as_unit(v, tol: float = 1e-9) -> np.ndarray:
    """Return v normalized, rejecting near-zero vectors."""
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    n = np.linalg.norm(v)
    if not np.isfinite(n) or n < tol:
        raise ValueError("cannot normalize a near-zero vector")
    return v / n


def orthonormal_complement(z_hat: np.ndarray, prefer=None) -> tuple[np.ndarray, np.ndarray]:
    """Build (x_hat, y_hat) completing z_hat to a right-handed triad.

    If ``prefer`` is given and has a nonzero projection on the plane
    orthogonal to z_hat, x_hat is taken along that projection;
    otherwise a deterministic reference direction is used.
    """
    z_hat = as_unit(z_hat)
    candidates = []
    if prefer is not None:
        candidates.append(np.asarray(prefer, dtype=float))
    candidates.append(np.array([1.0, 0.0, 0.0]))
    candidates.append(np.array([0.0, 1.0, 0.0]))
    for cand in candidates:
        perp = cand - (cand @ z_hat) * z_hat
        n = np.linalg.norm(perp)
        if n > 1e-8:
            x_hat = perp / n
            return x_hat, np.cross(z_hat, x_hat)
    raise RuntimeError("unreachable: no transverse candidate survived")


@dataclass(frozen=True)
class NVClassFrame:
    """Local orthonormal triad of one NV center.

    ``z_hat`` is the NV axis; ``x_hat`` and ``y_hat`` span the
    transverse plane with y_hat = z_hat x x_hat.
    """

    class_id: int
    x_hat: np.ndarray
    y_hat: np.ndarray
    z_hat: np.ndarray

    def __post_init__(self):
        for name in ("x_hat", "y_hat", "z_hat"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        self.validate()

    def validate(self) -> "NVClassFrame":
        triad = np.stack([self.x_hat, self.y_hat, self.z_hat])
        gram = triad @ triad.T
        if not np.allclose(gram, np.eye(3), atol=1e-10):
            raise ValueError("frame axes are not orthonormal")
        if np.dot(np.cross(self.x_hat, self.y_hat), self.z_hat) < 0.0:
            raise ValueError("frame is not right-handed")
        return self

    def rotated(self, rot: np.ndarray) -> "NVClassFrame":
        return NVClassFrame(self.class_id, rot @ self.x_hat, rot @ self.y_hat, rot @ self.z_hat)


def class_frame(class_id: int, b_field=None) -> NVClassFrame:
    """Frame of one NV class, oriented against the applied field.

    The sign of z_hat is chosen so B.z_hat >= 0 (at B = 0 the positive
    <111> representative is kept), and x_hat points along the dominant
    transverse component of B when one exists.
    """
    if not 0 <= class_id < N_CLASSES:
        raise ValueError(f"class_id must be in 0..3, got {class_id}")
    z_hat = CLASS_AXES[class_id].copy()
    prefer = None
    if b_field is not None:
        b = np.asarray(b_field, dtype=float)
        if np.linalg.norm(b) > 0.0:
            if b @ z_hat < 0.0:
                z_hat = -z_hat
            prefer = b
    x_hat, y_hat = orthonormal_complement(z_hat, prefer=prefer)
    return NVClassFrame(class_id, x_hat, y_hat, z_hat)


@dataclass(frozen=True)
class PairGeometry:
    """Geometry of one spin pair: inter-spin direction plus both frames.

    Matrix elements downstream are expressed in units of J0/r^3, so the
    separation ``r_nm`` is optional and only used when absolute
    couplings are requested.
    """

    u_hat: np.ndarray
    frame1: NVClassFrame
    frame2: NVClassFrame
    r_nm: float | None = None

    def __post_init__(self):
        u = np.asarray(self.u_hat, dtype=float)
        if abs(np.linalg.norm(u) - 1.0) > 1e-9:
            raise ValueError("u_hat must be a unit vector")
        object.__setattr__(self, "u_hat", u)
        if self.r_nm is not None and self.r_nm <= 0.0:
            raise ValueError("r_nm must be positive when provided")

    def swapped(self) -> "PairGeometry":
        """Exchange the two spins (and flip the inter-spin direction)."""
        return PairGeometry(-self.u_hat, self.frame2, self.frame1, self.r_nm)

    def rotated(self, rot: np.ndarray) -> "PairGeometry":
        return PairGeometry(rot @ self.u_hat, self.frame1.rotated(rot),
                            self.frame2.rotated(rot), self.r_nm)


def rotation_matrix(axis, angle_rad: float) -> np.ndarray:
    """Rodrigues rotation about ``axis`` by ``angle_rad``."""
    axis = as_unit(axis)
    k = np.array([
        [0.0, -axis[2], axis[1]],
        [axis[2], 0.0, -axis[0]],
        [-axis[1], axis[0], 0.0],
    ])
    return np.eye(3) + np.sin(angle_rad) * k + (1.0 - np.cos(angle_rad)) * (k @ k)


def tilted_field_direction(tilt_deg: float = 24.0, azimuth_deg: float = 26.0) -> np.ndarray:
    """Unit field direction tilted away from the [100] crystal axis.

    ``azimuth_deg`` measures the tilt plane from [010] toward [001] in
    the plane normal to [100].  The default azimuth places the four
    class projections so that the slowest-splitting pair of transition
    lines separates by the cross-relaxation range near 15 G.
    """
    t = np.deg2rad(tilt_deg)
    a = np.deg2rad(azimuth_deg)
    return np.array([np.cos(t), np.sin(t) * np.cos(a), np.sin(t) * np.sin(a)])
