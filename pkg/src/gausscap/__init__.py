"""gausscap: performance capture on unsegmented multi-view video.

A rigged, colored template mesh is fitted to image sequences by maximizing
overlap energies between colored Gaussians: a coarse skeletal stage followed
by joint pose and non-rigid surface refinement, evaluated by silhouette
overlap.
"""

__version__ = "0.1.0"

from .colors import ColorHSV, ColorSimilarityConfig, color_similarity, hsv_distance, rgb_to_hsv
from .gaussians import (
    Camera,
    Gaussian2D,
    Gaussian3D,
    grad_overlap2d,
    grad_project,
    overlap2d,
    overlap3d,
    project_gaussian,
)

__all__ = [
    "ColorHSV",
    "ColorSimilarityConfig",
    "Camera",
    "Gaussian2D",
    "Gaussian3D",
    "color_similarity",
    "hsv_distance",
    "rgb_to_hsv",
    "overlap2d",
    "overlap3d",
    "grad_overlap2d",
    "grad_project",
    "project_gaussian",
]
