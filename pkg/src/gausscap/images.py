"""Image frames and their conversion to colored 2D Gaussian sets.

Frames load from 8-bit PNG (RGB/RGBA, alpha dropped) or binary PPM (P6) into
float RGB in [0, 1]. A quad-tree recursively splits the frame while the
per-channel RGB variance of a node exceeds a threshold; every leaf becomes
one Gaussian whose support roughly covers the node. Leaves tile the image
exactly and are emitted in a fixed depth-first order (TL, TR, BL, BR), so
the decomposition is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError
from sklearn.base import BaseEstimator, TransformerMixin

from .colors import ColorHSV, rgb_to_hsv
from .errors import CorruptDataError, InvalidInputError, MissingFileError, UnsupportedFormatError
from .gaussians import Gaussian2D

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


@dataclass
class ImageFrame:
    """One camera frame: (H, W, 3) float RGB in [0, 1]."""

    pixels: np.ndarray
    camera_id: int = 0
    frame_id: int = 0

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=float)
        if px.ndim != 3 or px.shape[2] != 3 or px.shape[0] < 1 or px.shape[1] < 1:
            raise InvalidInputError(f"expected (H, W, 3) pixel array, got shape {px.shape}")
        if not np.all(np.isfinite(px)) or px.min() < 0.0 or px.max() > 1.0:
            raise InvalidInputError("pixel values must be finite and in [0, 1]")
        self.pixels = px

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


@dataclass(frozen=True)
class QuadTreeParams:
    """Quad-tree split control.

    A node splits while its per-channel RGB variance exceeds
    ``color_var_threshold``, the split would not produce children thinner
    than ``min_node_px``, and the depth stays below ``max_depth``.
    """

    max_depth: int = 8
    min_node_px: int = 4
    color_var_threshold: float = 0.01

    def __post_init__(self):
        if self.max_depth < 1 or self.min_node_px < 1:
            raise InvalidInputError("max_depth and min_node_px must be >= 1")
        if self.color_var_threshold < 0:
            raise InvalidInputError("color_var_threshold must be >= 0")


@dataclass
class ImageGaussianSet:
    """All Gaussians approximating one frame, plus array views for math."""

    gaussians: list[Gaussian2D]
    camera_id: int = 0
    frame_id: int = 0

    def __len__(self) -> int:
        return len(self.gaussians)

    @cached_property
    def means(self) -> np.ndarray:
        return np.array([g.mu for g in self.gaussians], dtype=float).reshape(-1, 2)

    @cached_property
    def sigmas(self) -> np.ndarray:
        return np.array([g.sigma for g in self.gaussians], dtype=float)

    @cached_property
    def colors(self) -> np.ndarray:
        return np.array([g.color for g in self.gaussians], dtype=float).reshape(-1, 3)


# --- file I/O ---------------------------------------------------------------

def _load_ppm(data: bytes, path: Path) -> np.ndarray:
    # P6 header: magic, width, height, maxval, single whitespace, then binary
    pos = 2
    fields = []
    while len(fields) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise CorruptDataError(f"{path}: truncated PPM header")
        fields.append(data[start:pos])
    pos += 1  # single whitespace after maxval
    try:
        width, height, maxval = (int(f) for f in fields)
    except ValueError as exc:
        raise CorruptDataError(f"{path}: malformed PPM header") from exc
    if maxval != 255:
        raise UnsupportedFormatError(f"{path}: only 8-bit PPM (maxval 255) is supported")
    if width < 1 or height < 1:
        raise CorruptDataError(f"{path}: bad PPM dimensions {width}x{height}")
    payload = data[pos : pos + width * height * 3]
    if len(payload) < width * height * 3:
        raise CorruptDataError(f"{path}: PPM payload truncated")
    arr = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3)
    return arr.astype(float) / 255.0


def load_frame(path, camera_id: int = 0, frame_id: int = 0) -> ImageFrame:
    """Load a PNG or binary-PPM image into an ImageFrame; format is sniffed."""
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"image file not found: {path}")
    data = path.read_bytes()
    if data.startswith(_PNG_MAGIC):
        try:
            with Image.open(path) as img:
                rgb = np.asarray(img.convert("RGB"))
        except (UnidentifiedImageError, OSError, SyntaxError) as exc:
            raise CorruptDataError(f"{path}: undecodable PNG") from exc
        return ImageFrame(rgb.astype(float) / 255.0, camera_id, frame_id)
    if data.startswith(b"P6"):
        return ImageFrame(_load_ppm(data, path), camera_id, frame_id)
    raise UnsupportedFormatError(f"{path}: not a PNG or binary PPM file")


def save_png(path, rgb: np.ndarray) -> None:
    """Write an (H, W, 3) array as 8-bit RGB PNG; floats in [0,1] are scaled."""
    arr = np.asarray(rgb)
    if arr.dtype != np.uint8:
        arr = np.clip(np.rint(np.asarray(arr, dtype=float) * 255.0), 0, 255).astype(np.uint8)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(arr, mode="RGB").save(path, format="PNG")


def save_mask_png(path, mask: np.ndarray) -> None:
    """Write a boolean mask as an 8-bit grayscale PNG (255 = foreground)."""
    arr = np.where(np.asarray(mask, dtype=bool), 255, 0).astype(np.uint8)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(arr, mode="L").save(path, format="PNG")


def load_mask_png(path) -> np.ndarray:
    """Load a binary mask PNG: any nonzero pixel counts as foreground."""
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"mask file not found: {path}")
    try:
        with Image.open(path) as img:
            arr = np.asarray(img.convert("L"))
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise CorruptDataError(f"{path}: undecodable mask PNG") from exc
    return arr > 0


def save_pfm(path, data: np.ndarray) -> None:
    """Write a single-channel float32 PFM (little-endian, top row first, scale -1)."""
    arr = np.asarray(data, dtype=np.float32)
    if arr.ndim != 2:
        raise InvalidInputError("PFM writer expects a 2D array")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(b"Pf\n")
        fh.write(f"{arr.shape[1]} {arr.shape[0]}\n".encode())
        fh.write(b"-1.0\n")
        fh.write(arr[::-1].tobytes())  # PFM stores bottom row first


# --- quad-tree decomposition -------------------------------------------------

def _integral(img: np.ndarray) -> np.ndarray:
    """Summed-area table padded with a zero row/column."""
    out = np.zeros((img.shape[0] + 1, img.shape[1] + 1, img.shape[2]))
    np.cumsum(np.cumsum(img, axis=0), axis=1, out=out[1:, 1:])
    return out


def _rect_stats(s1, s2, x0, y0, w, h):
    n = w * h
    tot = s1[y0 + h, x0 + w] - s1[y0, x0 + w] - s1[y0 + h, x0] + s1[y0, x0]
    tot2 = s2[y0 + h, x0 + w] - s2[y0, x0 + w] - s2[y0 + h, x0] + s2[y0, x0]
    mean = tot / n
    var = np.maximum(tot2 / n - mean * mean, 0.0)
    return mean, var


def quadtree_leaves(frame: ImageFrame, params: QuadTreeParams) -> list[tuple[int, int, int, int]]:
    """Leaf rectangles (x0, y0, w, h) of the quad-tree, in depth-first order.

    The rectangles tile the image exactly. A split produces floor/ceil
    halves; splitting is allowed only when both halves stay at least
    ``min_node_px`` wide, which bounds the leaf count by the per-axis node
    budget.
    """
    if params.min_node_px > min(frame.width, frame.height):
        raise InvalidInputError(
            f"min_node_px {params.min_node_px} exceeds image side "
            f"{min(frame.width, frame.height)}"
        )
    px = frame.pixels
    s1 = _integral(px)
    s2 = _integral(px * px)
    leaves: list[tuple[int, int, int, int]] = []

    def descend(x0, y0, w, h, depth):
        _, var = _rect_stats(s1, s2, x0, y0, w, h)
        splittable = (
            depth < params.max_depth
            and w // 2 >= params.min_node_px
            and h // 2 >= params.min_node_px
        )
        if splittable and var.max() > params.color_var_threshold:
            wl, hl = w // 2, h // 2
            descend(x0, y0, wl, hl, depth + 1)
            descend(x0 + wl, y0, w - wl, hl, depth + 1)
            descend(x0, y0 + hl, wl, h - hl, depth + 1)
            descend(x0 + wl, y0 + hl, w - wl, h - hl, depth + 1)
        else:
            leaves.append((x0, y0, w, h))

    descend(0, 0, frame.width, frame.height, 0)
    return leaves


def quadtree_decompose(frame: ImageFrame, params: QuadTreeParams | None = None) -> ImageGaussianSet:
    """Cluster a frame into colored Gaussians by recursive quad-tree splitting.

    Each leaf of the tree yields one Gaussian: mean at the node center,
    sigma = half the longer node side, color = HSV of the node's mean RGB.
    """
    params = params or QuadTreeParams()
    leaves = quadtree_leaves(frame, params)
    px = frame.pixels
    s1 = _integral(px)
    s2 = _integral(px * px)

    gaussians = []
    for x0, y0, w, h in leaves:
        mean, _ = _rect_stats(s1, s2, x0, y0, w, h)
        hsv = rgb_to_hsv(np.clip(mean, 0.0, 1.0))
        gaussians.append(
            Gaussian2D(
                mu=np.array([x0 + w / 2.0, y0 + h / 2.0]),
                sigma=max(w, h) / 2.0,
                color=ColorHSV(*hsv),
            )
        )
    return ImageGaussianSet(gaussians, camera_id=frame.camera_id, frame_id=frame.frame_id)


class GaussianImageEncoder(BaseEstimator, TransformerMixin):
    """Stateless transformer turning ImageFrames into ImageGaussianSets."""

    def __init__(self, max_depth: int = 8, min_node_px: int = 4, color_var_threshold: float = 0.01):
        self.max_depth = max_depth
        self.min_node_px = min_node_px
        self.color_var_threshold = color_var_threshold

    def _params(self) -> QuadTreeParams:
        return QuadTreeParams(self.max_depth, self.min_node_px, self.color_var_threshold)

    def fit(self, X=None, y=None):
        self._params()  # validate
        return self

    def transform(self, X):
        params = self._params()
        return [quadtree_decompose(frame, params) for frame in X]
