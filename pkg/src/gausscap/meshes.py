"""Procedural triangle-mesh primitives with outward (CCW) winding."""

from __future__ import annotations

import numpy as np


def uv_sphere(rings: int, segments: int, radius: float = 1.0, center=(0.0, 0.0, 0.0)):
    """Latitude/longitude sphere; returns (vertices, faces).

    ``rings`` counts latitude bands (>= 2); ``segments`` longitudes (>= 3).
    Poles are single vertices.
    """
    center = np.asarray(center, dtype=float)
    verts = [center + [0.0, radius, 0.0]]
    for i in range(1, rings):
        phi = np.pi * i / rings
        y = radius * np.cos(phi)
        r = radius * np.sin(phi)
        for j in range(segments):
            t = 2.0 * np.pi * j / segments
            verts.append(center + [r * np.cos(t), y, r * np.sin(t)])
    verts.append(center + [0.0, -radius, 0.0])
    vertices = np.asarray(verts)

    faces = []
    def ring(i, j):
        return 1 + (i - 1) * segments + (j % segments)

    top, bottom = 0, len(vertices) - 1
    for j in range(segments):
        faces.append([top, ring(1, j), ring(1, j + 1)])
    for i in range(1, rings - 1):
        for j in range(segments):
            a, b = ring(i, j), ring(i, j + 1)
            c, d = ring(i + 1, j), ring(i + 1, j + 1)
            faces.append([a, c, b])
            faces.append([b, c, d])
    for j in range(segments):
        faces.append([bottom, ring(rings - 1, j + 1), ring(rings - 1, j)])
    faces = np.asarray(faces, dtype=int)[:, [0, 2, 1]]
    return vertices, faces


def capped_cylinder(rings: int, segments: int, radius: float, length: float, base=(0.0, 0.0, 0.0)):
    """Cylinder along +y from ``base``, with pole-capped ends; returns (vertices, faces).

    ``rings`` is the number of interior vertex rings along the axis (>= 2).
    """
    base = np.asarray(base, dtype=float)
    verts = [base + [0.0, 0.0, 0.0]]
    ys = np.linspace(0.0, length, rings)
    for y in ys:
        for j in range(segments):
            t = 2.0 * np.pi * j / segments
            verts.append(base + [radius * np.cos(t), y, radius * np.sin(t)])
    verts.append(base + [0.0, length, 0.0])
    vertices = np.asarray(verts)

    def ring(i, j):
        return 1 + i * segments + (j % segments)

    bottom, top = 0, len(vertices) - 1
    faces = []
    for j in range(segments):
        faces.append([bottom, ring(0, j + 1), ring(0, j)])
    for i in range(rings - 1):
        for j in range(segments):
            a, b = ring(i, j), ring(i, j + 1)
            c, d = ring(i + 1, j), ring(i + 1, j + 1)
            faces.append([a, b, c])
            faces.append([b, d, c])
    for j in range(segments):
        faces.append([top, ring(rings - 1, j), ring(rings - 1, j + 1)])
    faces = np.asarray(faces, dtype=int)[:, [0, 2, 1]]
    return vertices, faces
