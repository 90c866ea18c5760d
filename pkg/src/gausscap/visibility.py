"""Per-camera visibility: z-buffer rasterization, vertex classification,
and construction of the per-camera surface and border Gaussian sets.

A vertex is *visible* when its projected depth agrees with the depth buffer
at its pixel within a tolerance; a visible vertex is *border* when its
projection lies within a band around the outer silhouette contour, and
*interior* otherwise. Interior vertices carry one small Gaussian at the
vertex; border vertices carry a pair displaced by one sigma along the
outward normal, acting as an implicit color-edge detector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import InvalidInputError, InvalidModelError
from .gaussians import Camera
from .images import save_mask_png, save_pfm

HIDDEN, INTERIOR, BORDER = 0, 1, 2

_MIN_DEPTH = 1e-12


@dataclass
class RasterBuffers:
    """Depth buffer (+inf where empty); the coverage mask is depth < +inf."""

    depth: np.ndarray

    @property
    def mask(self) -> np.ndarray:
        return np.isfinite(self.depth)


def rasterize(vertices, faces, cam: Camera) -> RasterBuffers:
    """Perspective rasterization with z-buffering.

    Coverage uses the pixel-center rule; depth is perspective-correct
    (interpolated 1/z). Ties keep the earlier face, and triangles with any
    vertex at non-positive depth are skipped, so output is deterministic.
    """
    vertices = np.asarray(vertices, dtype=float).reshape(-1, 3)
    faces = np.asarray(faces, dtype=int).reshape(-1, 3)
    W, H = cam.width, cam.height
    depth = np.full((H, W), np.inf)
    if len(vertices) == 0 or len(faces) == 0:
        return RasterBuffers(depth)

    uv, z = cam.project_points(vertices)
    invz = np.where(z > _MIN_DEPTH, 1.0 / np.where(z > _MIN_DEPTH, z, 1.0), np.nan)

    for f in faces:
        za, zb, zc = z[f]
        if min(za, zb, zc) <= _MIN_DEPTH:
            continue
        (ax, ay), (bx, by), (cx, cy) = uv[f]
        lo_x = max(0, int(np.floor(min(ax, bx, cx) - 0.5)) + 1)
        hi_x = min(W - 1, int(np.floor(max(ax, bx, cx) - 0.5)))
        lo_y = max(0, int(np.floor(min(ay, by, cy) - 0.5)) + 1)
        hi_y = min(H - 1, int(np.floor(max(ay, by, cy) - 0.5)))
        if lo_x > hi_x or lo_y > hi_y:
            continue
        px = np.arange(lo_x, hi_x + 1) + 0.5
        py = np.arange(lo_y, hi_y + 1) + 0.5
        PX, PY = np.meshgrid(px, py)
        w0 = (bx - ax) * (PY - ay) - (by - ay) * (PX - ax)
        w1 = (cx - bx) * (PY - by) - (cy - by) * (PX - bx)
        w2 = (ax - cx) * (PY - cy) - (ay - cy) * (PX - cx)
        area = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        if area == 0.0:
            continue
        inside = ((w0 >= 0) & (w1 >= 0) & (w2 >= 0)) | ((w0 <= 0) & (w1 <= 0) & (w2 <= 0))
        if not inside.any():
            continue
        # barycentric weights: w1 opposes a, w2 opposes b, w0 opposes c
        inv_interp = (w1 * invz[f[0]] + w2 * invz[f[1]] + w0 * invz[f[2]]) / area
        with np.errstate(divide="ignore"):
            zpix = 1.0 / inv_interp
        tile = depth[lo_y : hi_y + 1, lo_x : hi_x + 1]
        write = inside & (zpix < tile)
        tile[write] = zpix[write]
    return RasterBuffers(depth)


def vertex_normals(vertices, faces) -> np.ndarray:
    """Area-weighted vertex normals (unit length, CCW-outward winding)."""
    vertices = np.asarray(vertices, dtype=float).reshape(-1, 3)
    faces = np.asarray(faces, dtype=int).reshape(-1, 3)
    if faces.size == 0:
        raise InvalidModelError("mesh has no faces")
    fn = np.cross(
        vertices[faces[:, 1]] - vertices[faces[:, 0]],
        vertices[faces[:, 2]] - vertices[faces[:, 0]],
    )
    acc = np.zeros_like(vertices)
    cnt = np.zeros(len(vertices))
    for col in range(3):
        np.add.at(acc, faces[:, col], fn)
        np.add.at(cnt, faces[:, col], 1.0)
    if np.any(cnt == 0):
        raise InvalidModelError(f"isolated vertex {int(np.argmin(cnt))} has no incident face")
    norms = np.linalg.norm(acc, axis=1)
    if np.any(norms < 1e-14):
        raise InvalidModelError(
            f"vertex {int(np.argmin(norms))} accumulated a zero-area normal"
        )
    return acc / norms[:, None]


def silhouette_contour(mask: np.ndarray) -> np.ndarray:
    """Pixels of the outer silhouette contour.

    These are mask pixels that touch the exterior-connected background
    (4-connectivity) or the image edge; interior holes do not contribute.
    """
    if not mask.any():
        return np.zeros_like(mask)
    bg = ~mask
    labels, _ = ndimage.label(bg)
    edge_labels = np.unique(
        np.concatenate([labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]])
    )
    exterior = np.isin(labels, edge_labels[edge_labels > 0])
    grown = ndimage.binary_dilation(
        exterior, structure=np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
    )
    contour = mask & grown
    # mask pixels on the image edge are silhouette boundary as well
    rim = np.zeros_like(mask)
    rim[0, :] = rim[-1, :] = rim[:, 0] = rim[:, -1] = True
    return contour | (mask & rim)


@dataclass
class VertexClass:
    """Per-camera vertex tags plus contour distance for border vertices."""

    tag: np.ndarray  # (N,) int8: HIDDEN / INTERIOR / BORDER
    contour_distance: np.ndarray  # (N,) float, NaN unless border

    @property
    def hidden(self) -> np.ndarray:
        return np.flatnonzero(self.tag == HIDDEN)

    @property
    def interior(self) -> np.ndarray:
        return np.flatnonzero(self.tag == INTERIOR)

    @property
    def border(self) -> np.ndarray:
        return np.flatnonzero(self.tag == BORDER)


def classify_vertices(
    vertices, cam: Camera, buffers: RasterBuffers, delta: float, eps_depth: float
) -> VertexClass:
    """Tag every vertex hidden / interior / border for one camera.

    Vertices behind the camera or projecting off-image are hidden. A vertex
    is visible when its depth is within ``eps_depth`` of the buffer value at
    its pixel, and border when additionally its image-plane distance to the
    outer silhouette contour is at most ``delta`` pixels.
    """
    if delta < 0 or eps_depth < 0:
        raise InvalidInputError("delta and eps_depth must be nonnegative")
    vertices = np.asarray(vertices, dtype=float).reshape(-1, 3)
    n = len(vertices)
    tag = np.zeros(n, dtype=np.int8)
    dist = np.full(n, np.nan)

    uv, z = cam.project_points(vertices)
    with np.errstate(invalid="ignore"):
        ix = np.floor(uv[:, 0]).astype(np.int64, casting="unsafe")
        iy = np.floor(uv[:, 1]).astype(np.int64, casting="unsafe")
    on_image = (
        (z > _MIN_DEPTH) & (ix >= 0) & (ix < cam.width) & (iy >= 0) & (iy < cam.height)
    )
    ixs = np.where(on_image, ix, 0)
    iys = np.where(on_image, iy, 0)
    visible = on_image & (z <= buffers.depth[iys, ixs] + eps_depth)

    contour = silhouette_contour(buffers.mask)
    if contour.any():
        contour_dist = ndimage.distance_transform_edt(~contour)
    else:
        contour_dist = np.full(buffers.depth.shape, np.inf)
    vdist = contour_dist[iys, ixs]
    is_border = visible & (vdist <= delta)
    tag[visible] = INTERIOR
    tag[is_border] = BORDER
    dist[is_border] = vdist[is_border]
    return VertexClass(tag, dist)


def default_border_delta(vertices, sigma, cam: Camera, lo: float = 1.0, hi: float = 10.0) -> float:
    """Contour band width: twice the mean projected vertex sigma, clamped."""
    vertices = np.asarray(vertices, dtype=float).reshape(-1, 3)
    _, z = cam.project_points(vertices)
    ok = z > _MIN_DEPTH
    if not ok.any():
        return lo
    sigma = np.broadcast_to(np.asarray(sigma, dtype=float), z.shape)
    proj_sigma = cam.focal * sigma[ok] / z[ok]
    return float(np.clip(2.0 * proj_sigma.mean(), lo, hi))


def default_eps_depth(vertices) -> float:
    """Depth-agreement tolerance: 1% of the posed bounding-box diagonal."""
    vertices = np.asarray(vertices, dtype=float).reshape(-1, 3)
    return 0.01 * float(np.linalg.norm(vertices.max(axis=0) - vertices.min(axis=0)))


@dataclass
class SurfaceGaussianSet:
    """One Gaussian per interior vertex (arrays indexed in vertex order)."""

    vertex_indices: np.ndarray  # (S,)
    means: np.ndarray  # (S, 3)
    sigmas: np.ndarray  # (S,)
    colors: np.ndarray  # (S, 3) HSV

    def __len__(self) -> int:
        return len(self.vertex_indices)


@dataclass
class BorderGaussianSet:
    """Inside/outside Gaussian pairs for border vertices."""

    vertex_indices: np.ndarray  # (B,)
    inside: np.ndarray  # (B, 3)
    outside: np.ndarray  # (B, 3)
    sigmas: np.ndarray  # (B,)
    colors: np.ndarray  # (B, 3) HSV of the source vertex

    def __len__(self) -> int:
        return len(self.vertex_indices)


def build_surface_gaussians(cls: VertexClass, vertices, colors, sigma) -> SurfaceGaussianSet:
    idx = cls.interior
    vertices = np.asarray(vertices, dtype=float).reshape(-1, 3)
    sigma = np.broadcast_to(np.asarray(sigma, dtype=float), (len(vertices),))
    colors = np.asarray(colors, dtype=float).reshape(-1, 3)
    return SurfaceGaussianSet(idx, vertices[idx], sigma[idx], colors[idx])


def build_border_gaussians(cls: VertexClass, vertices, normals, colors, sigma) -> BorderGaussianSet:
    idx = cls.border
    vertices = np.asarray(vertices, dtype=float).reshape(-1, 3)
    normals = np.asarray(normals, dtype=float).reshape(-1, 3)
    sigma = np.broadcast_to(np.asarray(sigma, dtype=float), (len(vertices),))
    colors = np.asarray(colors, dtype=float).reshape(-1, 3)
    s = sigma[idx][:, None]
    return BorderGaussianSet(
        idx,
        vertices[idx] - s * normals[idx],
        vertices[idx] + s * normals[idx],
        sigma[idx],
        colors[idx],
    )


def dump_buffers(buffers: RasterBuffers, mask_path=None, depth_path=None) -> None:
    """Debug output: silhouette mask as PNG and/or depth buffer as PFM."""
    if mask_path is not None:
        save_mask_png(mask_path, buffers.mask)
    if depth_path is not None:
        finite = buffers.mask
        depth = np.where(finite, buffers.depth, 0.0)
        save_pfm(depth_path, depth)
