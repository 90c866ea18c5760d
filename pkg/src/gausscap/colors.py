"""HSV color handling: conversions, circular hue distance, smooth-step similarity.

Colors are (h, s, v) triples with every channel in [0, 1] and hue treated as
a circular coordinate (wraps modulo 1). Array-valued functions accept any
shape (..., 3) and broadcast.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidInputError


class ColorHSV(NamedTuple):
    """A single HSV color; hue is wrapped into [0, 1)."""

    h: float
    s: float
    v: float

    @staticmethod
    def of(h: float, s: float, v: float) -> "ColorHSV":
        if not np.all(np.isfinite([h, s, v])):
            raise InvalidInputError("HSV components must be finite")
        if not (0.0 <= s <= 1.0 and 0.0 <= v <= 1.0):
            raise InvalidInputError(f"saturation/value out of [0,1]: s={s}, v={v}")
        return ColorHSV(float(h) % 1.0, float(s), float(v))


@dataclass(frozen=True)
class ColorSimilarityConfig:
    """Parameters of the smooth-step color similarity.

    Distances below ``d0`` count as identical (similarity 1), distances above
    ``d1`` as fully distinct (similarity 0), with a C1 smoothstep in between.
    ``weights`` scale the squared hue/saturation/value differences.
    """

    d0: float = 0.1
    d1: float = 0.45
    weights: tuple[float, float, float] = (1.0, 1.0, 1.0)

    def __post_init__(self) -> None:
        if not (0.0 <= self.d0 < self.d1):
            raise InvalidInputError(f"require 0 <= d0 < d1, got d0={self.d0}, d1={self.d1}")
        if any(w < 0 for w in self.weights):
            raise InvalidInputError(f"color weights must be nonnegative: {self.weights}")


def rgb_to_hsv(rgb) -> np.ndarray:
    """Convert RGB in [0,1] to HSV with hue in [0,1). Accepts shape (..., 3).

    Achromatic inputs get hue 0 and saturation 0.
    """
    rgb = np.asarray(rgb, dtype=float)
    if rgb.shape[-1] != 3:
        raise InvalidInputError(f"expected (..., 3) RGB array, got shape {rgb.shape}")
    if not np.all(np.isfinite(rgb)) or rgb.min() < 0.0 or rgb.max() > 1.0:
        raise InvalidInputError("RGB components must be finite and in [0, 1]")

    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    maxc = np.max(rgb, axis=-1)
    minc = np.min(rgb, axis=-1)
    delta = maxc - minc

    v = maxc
    s = np.where(maxc > 0, delta / np.where(maxc > 0, maxc, 1.0), 0.0)

    with np.errstate(invalid="ignore", divide="ignore"):
        dd = np.where(delta > 0, delta, 1.0)
        h_r = ((g - b) / dd) % 6.0
        h_g = (b - r) / dd + 2.0
        h_b = (r - g) / dd + 4.0
    h = np.where(maxc == r, h_r, np.where(maxc == g, h_g, h_b))
    h = np.where(delta > 0, h / 6.0, 0.0)
    return np.stack([h % 1.0, s, v], axis=-1)


def hsv_to_rgb(hsv) -> np.ndarray:
    """Inverse of :func:`rgb_to_hsv`; accepts shape (..., 3)."""
    hsv = np.asarray(hsv, dtype=float)
    if hsv.shape[-1] != 3:
        raise InvalidInputError(f"expected (..., 3) HSV array, got shape {hsv.shape}")
    h, s, v = hsv[..., 0] % 1.0, hsv[..., 1], hsv[..., 2]
    i = np.floor(h * 6.0).astype(int) % 6
    f = h * 6.0 - np.floor(h * 6.0)
    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))
    r = np.select([i == 0, i == 1, i == 2, i == 3, i == 4, i == 5], [v, q, p, p, t, v])
    g = np.select([i == 0, i == 1, i == 2, i == 3, i == 4, i == 5], [t, v, v, q, p, p])
    b = np.select([i == 0, i == 1, i == 2, i == 3, i == 4, i == 5], [p, p, t, v, v, q])
    return np.stack([r, g, b], axis=-1)


def hue_distance(ha, hb) -> np.ndarray:
    """Circular distance between hues, in [0, 0.5]."""
    d = np.abs(np.asarray(ha, dtype=float) - np.asarray(hb, dtype=float)) % 1.0
    return np.minimum(d, 1.0 - d)


def hsv_distance(a, b, cfg: ColorSimilarityConfig) -> np.ndarray:
    """Weighted HSV distance with circular hue; broadcasts over (..., 3) inputs."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape[-1] != 3 or b.shape[-1] != 3:
        raise InvalidInputError("HSV inputs must have trailing dimension 3")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise InvalidInputError("HSV components must be finite")
    wh, ws, wv = cfg.weights
    dh = hue_distance(a[..., 0], b[..., 0])
    ds = a[..., 1] - b[..., 1]
    dv = a[..., 2] - b[..., 2]
    return np.sqrt(wh * dh * dh + ws * ds * ds + wv * dv * dv)


def color_similarity(delta, cfg: ColorSimilarityConfig) -> np.ndarray:
    """Map a color distance to [0, 1]: 1 below d0, 0 above d1, C1 smoothstep between."""
    delta = np.asarray(delta, dtype=float)
    if np.any(delta < 0) or not np.all(np.isfinite(delta)):
        raise InvalidInputError("color distance must be finite and nonnegative")
    t = np.clip((delta - cfg.d0) / (cfg.d1 - cfg.d0), 0.0, 1.0)
    out = 1.0 - (3.0 * t * t - 2.0 * t * t * t)
    if out.ndim == 0:
        return float(out)
    return out
