"""Colored isotropic Gaussians, closed-form overlap energies, and projection.

The pairwise overlap measure between two isotropic Gaussians with means
``mu_a, mu_b`` and standard deviations ``sigma_a, sigma_b`` is

    (2 sigma_a sigma_b / (sigma_a^2 + sigma_b^2))^p
        * exp(-||mu_a - mu_b||^2 / (sigma_a^2 + sigma_b^2))

with p = 1 in 2D and p = 3/2 in 3D. It is symmetric, lies in (0, 1], and
equals 1 exactly when the two Gaussians coincide. The exponential factor is
the squared exponential of the normalized Gaussian-product integral; the
p = 1 prefactor is the one realized by the squared L2 inner product of
unit-norm Gaussians in one dimension (see tests for the quadrature check).

All batch functions broadcast and are pure; analytic derivatives are
provided for the means and standard deviations of the first argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .colors import ColorHSV
from .errors import BehindCameraError, InvalidInputError

_MIN_DEPTH = 1e-12


def _check_sigma(sigma) -> None:
    sigma = np.asarray(sigma)
    if not np.all(np.isfinite(sigma)) or np.any(sigma <= 0):
        raise InvalidInputError("Gaussian sigma must be finite and > 0")


@dataclass(frozen=True)
class Gaussian2D:
    """Isotropic 2D Gaussian in pixel coordinates carrying an HSV color."""

    mu: np.ndarray
    sigma: float
    color: ColorHSV

    def __post_init__(self):
        object.__setattr__(self, "mu", np.asarray(self.mu, dtype=float).reshape(2))
        if not np.all(np.isfinite(self.mu)):
            raise InvalidInputError("Gaussian mean must be finite")
        _check_sigma(self.sigma)


@dataclass(frozen=True)
class Gaussian3D:
    """Isotropic 3D Gaussian in world coordinates carrying an HSV color."""

    mu: np.ndarray
    sigma: float
    color: ColorHSV

    def __post_init__(self):
        object.__setattr__(self, "mu", np.asarray(self.mu, dtype=float).reshape(3))
        if not np.all(np.isfinite(self.mu)):
            raise InvalidInputError("Gaussian mean must be finite")
        _check_sigma(self.sigma)


@dataclass(frozen=True)
class Camera:
    """Pinhole camera: world point p maps to focal * (x/z, y/z) + principal_point.

    ``rotation`` (world-to-camera) must be orthonormal within 1e-9;
    camera-space depth is the z component and must be positive for anything
    that gets projected.
    """

    rotation: np.ndarray
    translation: np.ndarray
    focal: float
    principal_point: np.ndarray
    width: int
    height: int

    def __post_init__(self):
        R = np.asarray(self.rotation, dtype=float).reshape(3, 3)
        t = np.asarray(self.translation, dtype=float).reshape(3)
        pp = np.asarray(self.principal_point, dtype=float).reshape(2)
        object.__setattr__(self, "rotation", R)
        object.__setattr__(self, "translation", t)
        object.__setattr__(self, "principal_point", pp)
        if not np.all(np.isfinite(R)) or np.max(np.abs(R @ R.T - np.eye(3))) > 1e-9:
            raise InvalidInputError("camera rotation must be orthonormal within 1e-9")
        if not (np.isfinite(self.focal) and self.focal > 0):
            raise InvalidInputError("camera focal length must be finite and > 0")
        if self.width <= 0 or self.height <= 0:
            raise InvalidInputError("camera image size must be positive")

    @classmethod
    def look_at(cls, position, target, focal, width, height, up=(0.0, 1.0, 0.0)) -> "Camera":
        """Camera at ``position`` with +z pointing at ``target``."""
        position = np.asarray(position, dtype=float)
        forward = np.asarray(target, dtype=float) - position
        fn = np.linalg.norm(forward)
        if fn < 1e-12:
            raise InvalidInputError("camera position and target coincide")
        zc = forward / fn
        xc = np.cross(np.asarray(up, dtype=float), zc)
        xn = np.linalg.norm(xc)
        if xn < 1e-12:
            raise InvalidInputError("camera view direction is parallel to the up vector")
        xc /= xn
        yc = np.cross(zc, xc)
        R = np.stack([xc, yc, zc])
        return cls(
            rotation=R,
            translation=-R @ position,
            focal=focal,
            principal_point=np.array([width / 2.0, height / 2.0]),
            width=width,
            height=height,
        )

    def to_camera(self, points) -> np.ndarray:
        """Map world points of shape (..., 3) into camera space."""
        p = np.asarray(points, dtype=float)
        return p @ self.rotation.T + self.translation

    def project_points(self, points):
        """Project world points; returns (uv (..., 2), depth (...)).

        Depths <= 0 yield non-finite uv; callers decide whether that is an
        error (``project_gaussian``) or simply invisible (energy sums).
        """
        p = self.to_camera(points)
        z = p[..., 2]
        with np.errstate(divide="ignore", invalid="ignore"):
            zz = np.where(z > _MIN_DEPTH, z, np.nan)
            uv = self.focal * p[..., :2] / zz[..., None] + self.principal_point
        return uv, z


# --- overlap kernels -------------------------------------------------------

def _overlap_core(mu_a, sigma_a, mu_b, sigma_b, power):
    mu_a = np.asarray(mu_a, dtype=float)
    mu_b = np.asarray(mu_b, dtype=float)
    sigma_a = np.asarray(sigma_a, dtype=float)
    sigma_b = np.asarray(sigma_b, dtype=float)
    s = sigma_a * sigma_a + sigma_b * sigma_b
    d2 = np.sum((mu_a - mu_b) ** 2, axis=-1)
    pref = 2.0 * sigma_a * sigma_b / s
    if power != 1:
        pref = pref**power
    return pref * np.exp(-d2 / s), s


def overlap2d_batch(mu_a, sigma_a, mu_b, sigma_b) -> np.ndarray:
    """Pairwise 2D overlap; broadcasts over leading dimensions."""
    return _overlap_core(mu_a, sigma_a, mu_b, sigma_b, 1)[0]


def overlap3d_batch(mu_a, sigma_a, mu_b, sigma_b) -> np.ndarray:
    """Pairwise 3D overlap; broadcasts over leading dimensions."""
    return _overlap_core(mu_a, sigma_a, mu_b, sigma_b, 1.5)[0]


def overlap2d(a: Gaussian2D, b: Gaussian2D) -> float:
    """Overlap measure of two 2D Gaussians, in (0, 1]; colors are ignored."""
    _check_sigma([a.sigma, b.sigma])
    return float(overlap2d_batch(a.mu, a.sigma, b.mu, b.sigma))


def overlap3d(a: Gaussian3D, b: Gaussian3D) -> float:
    """Overlap measure of two 3D Gaussians, in (0, 1]; colors are ignored."""
    _check_sigma([a.sigma, b.sigma])
    return float(overlap3d_batch(a.mu, a.sigma, b.mu, b.sigma))


def overlap2d_batch_grad(mu_a, sigma_a, mu_b, sigma_b):
    """2D overlap with derivatives w.r.t. the first Gaussian.

    Returns (value, d/dmu_a, d/dsigma_a) where d/dmu_a has a trailing axis
    of length 2. Broadcasts like :func:`overlap2d_batch`.
    """
    mu_a = np.asarray(mu_a, dtype=float)
    mu_b = np.asarray(mu_b, dtype=float)
    sigma_a = np.asarray(sigma_a, dtype=float)
    sigma_b = np.asarray(sigma_b, dtype=float)
    val, s = _overlap_core(mu_a, sigma_a, mu_b, sigma_b, 1)
    diff = mu_a - mu_b
    d_mu = (-2.0 / s)[..., None] * val[..., None] * diff
    d2 = np.sum(diff * diff, axis=-1)
    # product rule: d(pref)/dsigma_a * exp + pref * exp * d(-d2/s)/dsigma_a
    e = np.exp(-d2 / s)
    dpref = 2.0 * sigma_b * (sigma_b * sigma_b - sigma_a * sigma_a) / (s * s)
    d_sigma = dpref * e + val * (2.0 * sigma_a * d2 / (s * s))
    return val, d_mu, d_sigma


def overlap3d_batch_grad_mu(mu_a, sigma_a, mu_b, sigma_b):
    """3D overlap and its derivative w.r.t. mu_a (trailing axis 3)."""
    val, s = _overlap_core(mu_a, sigma_a, mu_b, sigma_b, 1.5)
    diff = np.asarray(mu_a, dtype=float) - np.asarray(mu_b, dtype=float)
    d_mu = (-2.0 / s)[..., None] * val[..., None] * diff
    return val, d_mu


def grad_overlap2d(a: Gaussian2D, b: Gaussian2D):
    """Analytic partials of overlap2d w.r.t. ``a.mu`` and ``a.sigma``."""
    _check_sigma([a.sigma, b.sigma])
    _, d_mu, d_sigma = overlap2d_batch_grad(a.mu, a.sigma, b.mu, b.sigma)
    return d_mu, float(d_sigma)


# --- projection ------------------------------------------------------------

def project_gaussian(g: Gaussian3D, cam: Camera) -> Gaussian2D:
    """Weak-perspective projection of a 3D Gaussian at its own depth.

    The mean projects through the pinhole model; the footprint scales by
    focal/depth, so sigma_2d = focal * sigma / depth. Color is preserved.
    """
    p = cam.to_camera(g.mu)
    if p[2] <= _MIN_DEPTH:
        raise BehindCameraError(f"Gaussian at camera depth {p[2]:.6g} cannot be projected")
    uv = cam.focal * p[:2] / p[2] + cam.principal_point
    return Gaussian2D(mu=uv, sigma=cam.focal * g.sigma / p[2], color=g.color)


def project_batch(mu, sigma, cam: Camera):
    """Project means (N, 3) with sigmas (N,); returns (uv, sigma2d, depth, in_front).

    Entries with depth <= 0 get NaN uv/sigma2d and in_front False.
    """
    uv, z = cam.project_points(mu)
    with np.errstate(divide="ignore", invalid="ignore"):
        zz = np.where(z > _MIN_DEPTH, z, np.nan)
        sigma2d = cam.focal * np.asarray(sigma, dtype=float) / zz
    return uv, sigma2d, z, z > _MIN_DEPTH


def projection_jacobian_batch(mu, sigma, cam: Camera) -> np.ndarray:
    """d(u, v, sigma2d)/d(mu_world) for means (N, 3); returns (N, 3, 3).

    Rows of each Jacobian correspond to (u, v, sigma2d). Entries for points
    behind the camera are zero.
    """
    mu = np.atleast_2d(np.asarray(mu, dtype=float))
    sigma = np.broadcast_to(np.asarray(sigma, dtype=float), mu.shape[:-1])
    p = cam.to_camera(mu)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    ok = z > _MIN_DEPTH
    zz = np.where(ok, z, 1.0)
    f = cam.focal
    n = mu.shape[0]
    Jp = np.zeros((n, 3, 3))
    Jp[:, 0, 0] = f / zz
    Jp[:, 0, 2] = -f * x / (zz * zz)
    Jp[:, 1, 1] = f / zz
    Jp[:, 1, 2] = -f * y / (zz * zz)
    Jp[:, 2, 2] = -f * sigma / (zz * zz)
    Jp[~ok] = 0.0
    # chain through p = R mu + t
    return Jp @ cam.rotation


def grad_project(g: Gaussian3D, cam: Camera) -> np.ndarray:
    """3x3 Jacobian of (mu2d_x, mu2d_y, sigma2d) w.r.t. g.mu."""
    p = cam.to_camera(g.mu)
    if p[2] <= _MIN_DEPTH:
        raise BehindCameraError(f"Gaussian at camera depth {p[2]:.6g} cannot be projected")
    return projection_jacobian_batch(g.mu[None, :], np.asarray([g.sigma]), cam)[0]
