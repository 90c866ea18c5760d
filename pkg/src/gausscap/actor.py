"""The two-layer actor model.

Layer I is a kinematic skeleton with colored 3D Gaussians rigidly attached
to its joints; layer II is a rigged, per-vertex-colored triangle mesh tied
to the same skeleton by linear blend skinning. Both layers are posed by a
single parameter vector: 3 root translations, 3 root rotations (about the
world x, y, z axes, composed in that order), then each joint's angles about
its fixed axes, in joint order.

Forward kinematics also exposes, for every degree of freedom, its world
axis and rotation center plus which joints it affects; analytic Jacobians
of attached points follow from the standard rigid-chain rule
dp/dtheta = axis (translation) or axis x (p - center) (rotation).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .colors import ColorHSV, rgb_to_hsv
from .errors import CorruptDataError, InvalidInputError, InvalidModelError, MissingFileError
from .gaussians import Gaussian3D

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Joint:
    name: str
    parent: int | None
    rest_offset: np.ndarray
    dof_axes: np.ndarray  # (k, 3), k in 0..3, unit rows

    def __post_init__(self):
        object.__setattr__(self, "rest_offset", np.asarray(self.rest_offset, dtype=float).reshape(3))
        axes = np.asarray(self.dof_axes, dtype=float).reshape(-1, 3)
        object.__setattr__(self, "dof_axes", axes)
        if axes.shape[0] > 3:
            raise InvalidModelError(f"joint {self.name}: more than 3 dof axes")
        if axes.size and np.max(np.abs(np.linalg.norm(axes, axis=1) - 1.0)) > 1e-9:
            raise InvalidModelError(f"joint {self.name}: dof axes must be unit length")
        if not np.all(np.isfinite(self.rest_offset)):
            raise InvalidModelError(f"joint {self.name}: non-finite rest offset")


class Skeleton:
    """Joint hierarchy; joint 0 is the root and carries the 6 free DOFs."""

    def __init__(self, joints: list[Joint]):
        if not joints:
            raise InvalidModelError("skeleton needs at least one joint")
        if joints[0].parent is not None:
            raise InvalidModelError("joint 0 must be the root (parent none)")
        for j, joint in enumerate(joints[1:], start=1):
            if joint.parent is None or not (0 <= joint.parent < j):
                raise InvalidModelError(
                    f"joint {j} ({joint.name}): parent must precede it in the list"
                )
        self.joints = list(joints)

    @property
    def n_joints(self) -> int:
        return len(self.joints)

    @cached_property
    def n_theta(self) -> int:
        return 6 + sum(j.dof_axes.shape[0] for j in self.joints)

    def zero_theta(self) -> np.ndarray:
        return np.zeros(self.n_theta)

    @cached_property
    def _dof_slices(self) -> list[slice]:
        """Per-joint slice into theta for the joint's own angles."""
        out = []
        start = 6
        for j in self.joints:
            k = j.dof_axes.shape[0]
            out.append(slice(start, start + k))
            start += k
        return out


def _rot_about(axis: np.ndarray, angle: float) -> np.ndarray:
    """Rodrigues rotation about a unit axis."""
    c, s = np.cos(angle), np.sin(angle)
    x, y, z = axis
    K = np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])
    return c * np.eye(3) + s * K + (1.0 - c) * np.outer(axis, axis)


_EX = np.array([1.0, 0.0, 0.0])
_EY = np.array([0.0, 1.0, 0.0])
_EZ = np.array([0.0, 0.0, 1.0])


@dataclass
class ForwardKinematics:
    """World transforms of every joint plus per-DOF derivative bookkeeping."""

    rotations: np.ndarray  # (J, 3, 3)
    origins: np.ndarray  # (J, 3)
    dof_is_rotation: np.ndarray  # (n_theta,) bool
    dof_axis: np.ndarray  # (n_theta, 3) world axis
    dof_center: np.ndarray  # (n_theta, 3) world rotation center
    affects: np.ndarray  # (n_theta, J) bool

    def transform_points(self, joint: int, local_points) -> np.ndarray:
        p = np.asarray(local_points, dtype=float)
        return p @ self.rotations[joint].T + self.origins[joint]


def forward_kinematics(skeleton: Skeleton, theta) -> ForwardKinematics:
    """Pose the skeleton; transforms map joint-local points to world."""
    theta = np.asarray(theta, dtype=float).reshape(-1)
    if theta.shape[0] != skeleton.n_theta:
        raise InvalidModelError(
            f"theta has length {theta.shape[0]}, skeleton expects {skeleton.n_theta}"
        )
    if not np.all(np.isfinite(theta)):
        raise InvalidInputError("theta must be finite")

    J = skeleton.n_joints
    n = skeleton.n_theta
    R = np.zeros((J, 3, 3))
    t = np.zeros((J, 3))
    is_rot = np.zeros(n, dtype=bool)
    axis = np.zeros((n, 3))
    center = np.zeros((n, 3))
    affects = np.zeros((n, J), dtype=bool)

    # root: translation then rotations about world x, y, z
    root_t = theta[:3]
    ax, ay, az = theta[3:6]
    Rx = _rot_about(_EX, ax)
    Ry = _rot_about(_EY, ay)
    Rz = _rot_about(_EZ, az)
    axis[0:3] = np.eye(3)
    is_rot[3:6] = True
    axis[3] = _EX
    axis[4] = Rx @ _EY
    axis[5] = Rx @ Ry @ _EZ
    center[3:6] = root_t
    affects[0:6, :] = True

    R_root = Rx @ Ry @ Rz

    for j, joint in enumerate(skeleton.joints):
        if j == 0:
            R_parent, t_parent = R_root, root_t
        else:
            R_parent, t_parent = R[joint.parent], t[joint.parent]
            affects[:, j] |= affects[:, joint.parent]
        origin = R_parent @ joint.rest_offset + t_parent
        R_cur = R_parent
        sl = skeleton._dof_slices[j]
        for m in range(joint.dof_axes.shape[0]):
            k = sl.start + m
            is_rot[k] = True
            axis[k] = R_cur @ joint.dof_axes[m]
            center[k] = origin
            affects[k, j] = True
            R_cur = R_cur @ _rot_about(joint.dof_axes[m], theta[k])
        R[j] = R_cur
        t[j] = origin

    return ForwardKinematics(R, t, is_rot, axis, center, affects)


def point_jacobians(fk: ForwardKinematics, joint_idx, points) -> np.ndarray:
    """d(world point)/d(theta) for points rigidly attached to joints.

    points: (K, 3) world positions; joint_idx: (K,) owning joints.
    Returns (K, 3, n_theta).
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    joint_idx = np.atleast_1d(np.asarray(joint_idx, dtype=int))
    K = points.shape[0]
    n = fk.dof_axis.shape[0]
    contrib = np.empty((K, n, 3))
    rel = points[:, None, :] - fk.dof_center[None, :, :]
    contrib[:] = np.where(
        fk.dof_is_rotation[None, :, None],
        np.cross(np.broadcast_to(fk.dof_axis[None, :, :], (K, n, 3)), rel),
        fk.dof_axis[None, :, :],
    )
    mask = fk.affects[:, joint_idx].T  # (K, n)
    contrib *= mask[:, :, None]
    return np.transpose(contrib, (0, 2, 1))


class TemplateMesh:
    """Colored bind-pose triangle mesh with sparse skinning weights.

    Skinning is stored as flat COO triples (vertex, joint, weight) sorted by
    (vertex, joint); ``bind_offsets`` holds the joint-local rigid offset of
    each pair, computed from the bind pose so that posing with theta = 0
    reproduces the bind vertices.
    """

    def __init__(self, vertices, faces, vertex_colors, sk_vertex, sk_joint, sk_weight, skeleton: Skeleton):
        self.vertices = np.asarray(vertices, dtype=float).reshape(-1, 3)
        self.faces = np.asarray(faces, dtype=int).reshape(-1, 3)
        self.vertex_colors = np.asarray(vertex_colors, dtype=float).reshape(-1, 3)
        self.sk_vertex = np.asarray(sk_vertex, dtype=int)
        self.sk_joint = np.asarray(sk_joint, dtype=int)
        self.sk_weight = np.asarray(sk_weight, dtype=float)
        n = self.n_vertices
        if self.vertex_colors.shape[0] != n:
            raise InvalidModelError("vertex_colors length must match vertex count")
        if not np.all(np.isfinite(self.vertices)):
            raise InvalidModelError("non-finite vertex positions")
        if self.faces.size and (self.faces.min() < 0 or self.faces.max() >= n):
            raise InvalidModelError("face indices out of range")
        if np.any(self.sk_weight < 0):
            bad = int(self.sk_vertex[np.argmax(self.sk_weight < 0)])
            raise InvalidModelError(f"negative skinning weight on vertex {bad}")
        if self.sk_joint.size and (self.sk_joint.min() < 0 or self.sk_joint.max() >= skeleton.n_joints):
            raise InvalidModelError("skinning joint index out of range")
        sums = np.zeros(n)
        np.add.at(sums, self.sk_vertex, self.sk_weight)
        off = np.abs(sums - 1.0)
        if np.any(off > 1e-9):
            bad = int(np.argmax(off))
            raise InvalidModelError(
                f"skinning weights of vertex {bad} sum to {sums[bad]:.12g}, expected 1"
            )
        order = np.lexsort((self.sk_joint, self.sk_vertex))
        self.sk_vertex = self.sk_vertex[order]
        self.sk_joint = self.sk_joint[order]
        self.sk_weight = self.sk_weight[order]
        self._check_edge_manifold()

        fk0 = forward_kinematics(skeleton, skeleton.zero_theta())
        vb = self.vertices[self.sk_vertex]
        self.bind_offsets = np.einsum(
            "kij,kj->ki", np.transpose(fk0.rotations[self.sk_joint], (0, 2, 1)), vb - fk0.origins[self.sk_joint]
        )

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    def _check_edge_manifold(self):
        if not self.faces.size:
            return
        e = np.concatenate([self.faces[:, [0, 1]], self.faces[:, [1, 2]], self.faces[:, [2, 0]]])
        e.sort(axis=1)
        _, counts = np.unique(e, axis=0, return_counts=True)
        if np.any(counts > 2):
            raise InvalidModelError("mesh has an edge shared by more than 2 faces")

    @cached_property
    def edges(self) -> np.ndarray:
        e = np.concatenate([self.faces[:, [0, 1]], self.faces[:, [1, 2]], self.faces[:, [2, 0]]])
        e.sort(axis=1)
        return np.unique(e, axis=0)

    @cached_property
    def neighbor_lists(self) -> list[np.ndarray]:
        """Sorted 1-ring vertex neighbors."""
        nbr: list[set[int]] = [set() for _ in range(self.n_vertices)]
        for a, b in self.edges:
            nbr[a].add(int(b))
            nbr[b].add(int(a))
        return [np.array(sorted(s), dtype=int) for s in nbr]

    @cached_property
    def mean_incident_edge_length(self) -> np.ndarray:
        lengths = np.linalg.norm(self.vertices[self.edges[:, 0]] - self.vertices[self.edges[:, 1]], axis=1)
        total = np.zeros(self.n_vertices)
        count = np.zeros(self.n_vertices)
        for col in (0, 1):
            np.add.at(total, self.edges[:, col], lengths)
            np.add.at(count, self.edges[:, col], 1.0)
        if np.any(count == 0):
            raise InvalidModelError(f"isolated vertex {int(np.argmin(count))} has no incident edge")
        return total / count


def skin_vertices(mesh: TemplateMesh, fk: ForwardKinematics) -> np.ndarray:
    """Linear blend skinning: weighted sum of each joint's rigid image."""
    if fk.rotations.shape[0] <= mesh.sk_joint.max():
        raise InvalidModelError("transform list too short for mesh skinning joints")
    q = (
        np.einsum("kij,kj->ki", fk.rotations[mesh.sk_joint], mesh.bind_offsets)
        + fk.origins[mesh.sk_joint]
    )
    out = np.zeros((mesh.n_vertices, 3))
    np.add.at(out, mesh.sk_vertex, mesh.sk_weight[:, None] * q)
    return out


def skinned_point_jacobians(mesh: TemplateMesh, fk: ForwardKinematics) -> np.ndarray:
    """d(skinned vertex)/d(theta), shape (N, 3, n_theta)."""
    q = (
        np.einsum("kij,kj->ki", fk.rotations[mesh.sk_joint], mesh.bind_offsets)
        + fk.origins[mesh.sk_joint]
    )
    Jq = point_jacobians(fk, mesh.sk_joint, q)  # (P, 3, n_theta)
    out = np.zeros((mesh.n_vertices, 3, fk.dof_axis.shape[0]))
    np.add.at(out, mesh.sk_vertex, mesh.sk_weight[:, None, None] * Jq)
    return out


class ModelGaussianSet:
    """Colored 3D Gaussians rigidly attached to skeleton joints (layer I)."""

    def __init__(self, gaussians: list[tuple[Gaussian3D, int]], skeleton: Skeleton):
        if any(not (0 <= j < skeleton.n_joints) for _, j in gaussians):
            raise InvalidModelError("model Gaussian owning joint out of range")
        self.gaussians = list(gaussians)
        self.joints = np.array([j for _, j in gaussians], dtype=int)
        self.bind_means = np.array([g.mu for g, _ in gaussians], dtype=float).reshape(-1, 3)
        self.sigmas = np.array([g.sigma for g, _ in gaussians], dtype=float)
        self.colors = np.array([g.color for g, _ in gaussians], dtype=float).reshape(-1, 3)
        fk0 = forward_kinematics(skeleton, skeleton.zero_theta())
        self.bind_offsets = np.einsum(
            "kij,kj->ki",
            np.transpose(fk0.rotations[self.joints], (0, 2, 1)),
            self.bind_means - fk0.origins[self.joints],
        )

    def __len__(self) -> int:
        return len(self.gaussians)

    def posed_means(self, fk: ForwardKinematics) -> np.ndarray:
        """Means under the given pose; sigmas and colors never change."""
        return (
            np.einsum("kij,kj->ki", fk.rotations[self.joints], self.bind_offsets)
            + fk.origins[self.joints]
        )

    def with_colors(self, colors: np.ndarray) -> "ModelGaussianSet":
        out = object.__new__(ModelGaussianSet)
        out.gaussians = [
            (Gaussian3D(g.mu, g.sigma, ColorHSV(*c)), j)
            for (g, j), c in zip(self.gaussians, colors)
        ]
        out.joints = self.joints
        out.bind_means = self.bind_means
        out.sigmas = self.sigmas
        out.colors = np.asarray(colors, dtype=float).reshape(-1, 3)
        out.bind_offsets = self.bind_offsets
        return out


def pose_model_gaussians(gset: ModelGaussianSet, fk: ForwardKinematics) -> list[Gaussian3D]:
    """Posed copies of the model Gaussians (sigma and color preserved)."""
    means = gset.posed_means(fk)
    return [
        Gaussian3D(mu, g.sigma, g.color) for mu, (g, _) in zip(means, gset.gaussians)
    ]


def circular_mean_hsv(colors: np.ndarray) -> ColorHSV:
    """Mean HSV with hue averaged on the circle; s and v arithmetic."""
    colors = np.asarray(colors, dtype=float).reshape(-1, 3)
    ang = colors[:, 0] * 2.0 * np.pi
    x, y = np.cos(ang).mean(), np.sin(ang).mean()
    if np.hypot(x, y) < 1e-12:
        h = float(colors[0, 0])  # antipodal hues: fall back to the first sample
    else:
        h = float(np.arctan2(y, x) / (2.0 * np.pi)) % 1.0
    return ColorHSV(h, float(colors[:, 1].mean()), float(colors[:, 2].mean()))


def assign_model_gaussian_colors(gset: ModelGaussianSet, mesh: TemplateMesh) -> ModelGaussianSet:
    """Color each model Gaussian from template vertices within 2 sigma of it.

    Gaussians with no vertex in range take the nearest vertex's color.
    """
    if mesh.n_vertices == 0:
        raise InvalidModelError("cannot color model Gaussians from an empty mesh")
    colors = np.empty((len(gset), 3))
    for i, (g, _) in enumerate(gset.gaussians):
        d = np.linalg.norm(mesh.vertices - g.mu, axis=1)
        near = d <= 2.0 * g.sigma
        if near.any():
            colors[i] = circular_mean_hsv(mesh.vertex_colors[near])
        else:
            colors[i] = mesh.vertex_colors[int(np.argmin(d))]
    return gset.with_colors(colors)


@dataclass
class ActorModel:
    """Everything the trackers need: skeleton, mesh, model Gaussians, rigidity."""

    skeleton: Skeleton
    mesh: TemplateMesh
    model_gaussians: ModelGaussianSet
    rigidity: np.ndarray  # (N,) in [0, 1]

    def __post_init__(self):
        r = np.asarray(self.rigidity, dtype=float).reshape(-1)
        if r.shape[0] != self.mesh.n_vertices:
            raise InvalidModelError(
                f"rigidity mask has {r.shape[0]} entries for {self.mesh.n_vertices} vertices"
            )
        if r.size and (r.min() < 0.0 or r.max() > 1.0 or not np.all(np.isfinite(r))):
            raise InvalidModelError("rigidity values must lie in [0, 1]")
        self.rigidity = r

    @cached_property
    def vertex_sigma(self) -> np.ndarray:
        """Surface/border Gaussian size: half the mean incident bind edge length."""
        return 0.5 * self.mesh.mean_incident_edge_length

    @cached_property
    def bbox_diagonal(self) -> float:
        v = self.mesh.vertices
        return float(np.linalg.norm(v.max(axis=0) - v.min(axis=0)))


# --- file formats -------------------------------------------------------------

def save_obj(path, vertices, faces, colors_rgb=None) -> None:
    """Write an OBJ; with colors, each v line is `v x y z r g b`."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = []
    for i, v in enumerate(np.asarray(vertices, dtype=float)):
        x, y, z = (repr(float(c)) for c in v)
        if colors_rgb is not None:
            r, g, b = (repr(float(c)) for c in colors_rgb[i])
            lines.append(f"v {x} {y} {z} {r} {g} {b}")
        else:
            lines.append(f"v {x} {y} {z}")
    for f in np.asarray(faces, dtype=int):
        lines.append(f"f {f[0] + 1} {f[1] + 1} {f[2] + 1}")
    path.write_text("\n".join(lines) + "\n")


def load_obj(path):
    """Read vertices, faces, and optional per-vertex RGB from an OBJ file."""
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"mesh file not found: {path}")
    verts, faces, colors = [], [], []
    for ln, line in enumerate(path.read_text().splitlines(), start=1):
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            try:
                vals = [float(x) for x in parts[1:]]
            except ValueError as exc:
                raise CorruptDataError(f"{path}:{ln}: bad vertex line") from exc
            if len(vals) not in (3, 6):
                raise CorruptDataError(f"{path}:{ln}: vertex line needs 3 or 6 floats")
            verts.append(vals[:3])
            colors.append(vals[3:6] if len(vals) == 6 else [0.5, 0.5, 0.5])
        elif parts[0] == "f":
            try:
                idx = [int(tok.split("/")[0]) - 1 for tok in parts[1:]]
            except ValueError as exc:
                raise CorruptDataError(f"{path}:{ln}: bad face line") from exc
            if len(idx) != 3:
                raise CorruptDataError(f"{path}:{ln}: only triangle faces are supported")
            faces.append(idx)
    if not verts:
        raise CorruptDataError(f"{path}: no vertices found")
    return (
        np.asarray(verts, dtype=float),
        np.asarray(faces, dtype=int).reshape(-1, 3),
        np.asarray(colors, dtype=float),
    )


def save_skeleton_json(path, skeleton: Skeleton) -> None:
    data = [
        {
            "name": j.name,
            "parent": j.parent,
            "rest_offset": list(map(float, j.rest_offset)),
            "dof_axes": [list(map(float, a)) for a in j.dof_axes],
        }
        for j in skeleton.joints
    ]
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(json.dumps(data, indent=1))


def load_skeleton_json(path) -> Skeleton:
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"skeleton file not found: {path}")
    try:
        data = json.loads(path.read_text())
        joints = [
            Joint(
                name=str(e["name"]),
                parent=e["parent"],
                rest_offset=e["rest_offset"],
                dof_axes=np.asarray(e.get("dof_axes", []), dtype=float).reshape(-1, 3),
            )
            for e in data
        ]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise CorruptDataError(f"{path}: malformed skeleton JSON") from exc
    return Skeleton(joints)


def save_weights_json(path, sk_vertex, sk_joint, sk_weight, n_vertices: int) -> None:
    rows: list[list[dict]] = [[] for _ in range(n_vertices)]
    for v, j, w in zip(sk_vertex, sk_joint, sk_weight):
        rows[int(v)].append({"joint": int(j), "weight": float(w)})
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(json.dumps(rows))


def load_weights_json(path):
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"weights file not found: {path}")
    try:
        rows = json.loads(path.read_text())
        sk_vertex, sk_joint, sk_weight = [], [], []
        for v, entries in enumerate(rows):
            for e in entries:
                sk_vertex.append(v)
                sk_joint.append(int(e["joint"]))
                sk_weight.append(float(e["weight"]))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CorruptDataError(f"{path}: malformed weights JSON") from exc
    return np.asarray(sk_vertex, int), np.asarray(sk_joint, int), np.asarray(sk_weight, float)


def save_model_gaussians_json(path, gset: ModelGaussianSet) -> None:
    data = [
        {"joint": int(j), "mu": list(map(float, g.mu)), "sigma": float(g.sigma)}
        for g, j in gset.gaussians
    ]
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(json.dumps(data, indent=1))


def load_model_gaussians_json(path, skeleton: Skeleton) -> ModelGaussianSet:
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"model Gaussians file not found: {path}")
    gray = ColorHSV(0.0, 0.0, 0.5)
    try:
        data = json.loads(path.read_text())
        gaussians = [
            (Gaussian3D(np.asarray(e["mu"], float), float(e["sigma"]), gray), int(e["joint"]))
            for e in data
        ]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CorruptDataError(f"{path}: malformed model Gaussians JSON") from exc
    return ModelGaussianSet(gaussians, skeleton)


def save_rigidity(path, rigidity) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text("\n".join(repr(float(r)) for r in rigidity) + "\n")


def load_rigidity(path, n_vertices: int) -> np.ndarray:
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"rigidity file not found: {path}")
    try:
        vals = [float(tok) for tok in path.read_text().split()]
    except ValueError as exc:
        raise CorruptDataError(f"{path}: rigidity mask must be newline-separated floats") from exc
    if len(vals) != n_vertices:
        raise CorruptDataError(
            f"{path}: rigidity mask has {len(vals)} entries for {n_vertices} vertices"
        )
    return np.asarray(vals, dtype=float)


def load_template(mesh_path, skeleton_path, weights_path, gaussians_path, rigidity_path=None) -> ActorModel:
    """Load and validate a full actor bundle.

    Model Gaussian colors are assigned from the mesh (circular-mean HSV of
    vertices within 2 sigma). A missing rigidity file degrades to an
    all-zeros (fully free) mask with a warning.
    """
    vertices, faces, colors_rgb = load_obj(mesh_path)
    skeleton = load_skeleton_json(skeleton_path)
    sk_vertex, sk_joint, sk_weight = load_weights_json(weights_path)
    mesh = TemplateMesh(
        vertices, faces, rgb_to_hsv(np.clip(colors_rgb, 0.0, 1.0)), sk_vertex, sk_joint, sk_weight, skeleton
    )
    gset = load_model_gaussians_json(gaussians_path, skeleton)
    gset = assign_model_gaussian_colors(gset, mesh)
    if rigidity_path is not None and Path(rigidity_path).is_file():
        rigidity = load_rigidity(rigidity_path, mesh.n_vertices)
    else:
        if rigidity_path is not None:
            log.warning("rigidity mask %s missing; defaulting to all-free (zeros)", rigidity_path)
        rigidity = np.zeros(mesh.n_vertices)
    return ActorModel(skeleton, mesh, gset, rigidity)
