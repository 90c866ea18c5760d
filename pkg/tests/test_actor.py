import numpy as np
import pytest
from conftest import rel_err

from gausscap.actor import (
    ActorModel,
    Joint,
    ModelGaussianSet,
    Skeleton,
    TemplateMesh,
    assign_model_gaussian_colors,
    forward_kinematics,
    load_obj,
    load_skeleton_json,
    load_template,
    point_jacobians,
    pose_model_gaussians,
    save_model_gaussians_json,
    save_obj,
    save_rigidity,
    save_skeleton_json,
    save_weights_json,
    skin_vertices,
    skinned_point_jacobians,
)
from gausscap.colors import ColorHSV
from gausscap.errors import CorruptDataError, InvalidModelError
from gausscap.gaussians import Gaussian3D

EZ = np.array([0.0, 0.0, 1.0])


def two_joint_chain():
    return Skeleton(
        [
            Joint("root", None, [0.0, 0.0, 0.0], np.empty((0, 3))),
            Joint("elbow", 0, [1.0, 0.0, 0.0], [EZ]),
        ]
    )


def quad_mesh(skeleton, weights=None):
    """Two triangles in the z=0 plane, all vertices bound to the root."""
    vertices = np.array([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]], dtype=float)
    faces = np.array([[0, 1, 2], [0, 2, 3]])
    colors = np.tile([0.0, 1.0, 1.0], (4, 1))
    if weights is None:
        sk_v = np.arange(4)
        sk_j = np.zeros(4, dtype=int)
        sk_w = np.ones(4)
    else:
        sk_v, sk_j, sk_w = weights
    return TemplateMesh(vertices, faces, colors, sk_v, sk_j, sk_w, skeleton)


# --- forward kinematics -------------------------------------------------------

def test_fk_rest_pose_accumulates_offsets():
    sk = two_joint_chain()
    fk = forward_kinematics(sk, sk.zero_theta())
    assert np.allclose(fk.origins[0], [0, 0, 0])
    assert np.allclose(fk.origins[1], [1, 0, 0])
    assert np.allclose(fk.rotations, np.eye(3)[None])


def test_fk_parent_rotation_moves_child():
    # rotating the root 90 degrees about z carries the child to (0, 1, 0)
    sk = two_joint_chain()
    theta = sk.zero_theta()
    theta[5] = np.pi / 2
    fk = forward_kinematics(sk, theta)
    assert np.allclose(fk.origins[1], [0, 1, 0], atol=1e-12)


def test_fk_root_translation_shifts_everything():
    sk = two_joint_chain()
    theta = sk.zero_theta()
    theta[:3] = [5.0, 0.0, 0.0]
    fk = forward_kinematics(sk, theta)
    assert np.allclose(fk.origins[0], [5, 0, 0])
    assert np.allclose(fk.origins[1], [6, 0, 0])


def test_fk_rotations_stay_orthonormal():
    rng = np.random.default_rng(0)
    sk = Skeleton(
        [
            Joint("root", None, [0, 0, 0], np.empty((0, 3))),
            Joint("a", 0, [0.5, 0.1, 0], [[0, 0, 1], [1, 0, 0]]),
            Joint("b", 1, [0.4, 0, 0], [[0, 1, 0]]),
        ]
    )
    for _ in range(50):
        fk = forward_kinematics(sk, rng.uniform(-2, 2, sk.n_theta))
        for R in fk.rotations:
            assert np.max(np.abs(R.T @ R - np.eye(3))) < 1e-9


def test_fk_validates_theta_length():
    sk = two_joint_chain()
    with pytest.raises(InvalidModelError):
        forward_kinematics(sk, np.zeros(3))


def test_skeleton_rejects_bad_hierarchy():
    with pytest.raises(InvalidModelError):
        Skeleton([Joint("root", 0, [0, 0, 0], np.empty((0, 3)))])
    with pytest.raises(InvalidModelError):
        Skeleton(
            [
                Joint("root", None, [0, 0, 0], np.empty((0, 3))),
                Joint("bad", 5, [1, 0, 0], np.empty((0, 3))),
            ]
        )


def test_point_jacobians_match_finite_differences():
    rng = np.random.default_rng(1)
    sk = Skeleton(
        [
            Joint("root", None, [0, 0, 0], np.empty((0, 3))),
            Joint("a", 0, [0.6, 0.0, 0.1], [[0, 0, 1], [1, 0, 0]]),
            Joint("b", 1, [0.5, 0, 0], [[0, 1, 0]]),
        ]
    )
    local = np.array([0.3, 0.05, -0.1])
    for _ in range(50):
        theta = rng.uniform(-1.5, 1.5, sk.n_theta)
        fk = forward_kinematics(sk, theta)
        p = fk.transform_points(2, local)
        J = point_jacobians(fk, [2], p[None])[0]
        eps = 1e-6
        for k in range(sk.n_theta):
            tp, tm = theta.copy(), theta.copy()
            tp[k] += eps
            tm[k] -= eps
            fd = (
                forward_kinematics(sk, tp).transform_points(2, local)
                - forward_kinematics(sk, tm).transform_points(2, local)
            ) / (2 * eps)
            assert rel_err(J[:, k], fd) < 1e-6


# --- skinning -------------------------------------------------------------------

def test_skinning_rest_pose_reproduces_bind():
    sk = two_joint_chain()
    rng = np.random.default_rng(2)
    # random valid weights over both joints
    n = 6
    vertices = rng.uniform(-1, 1, size=(n, 3))
    faces = np.array([[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 5]])
    w0 = rng.uniform(0, 1, n)
    sk_v = np.repeat(np.arange(n), 2)
    sk_j = np.tile([0, 1], n)
    sk_w = np.column_stack([w0, 1 - w0]).ravel()
    mesh = TemplateMesh(vertices, faces, np.tile([0.1, 1, 1], (n, 1)), sk_v, sk_j, sk_w, sk)
    fk = forward_kinematics(sk, sk.zero_theta())
    assert np.max(np.abs(skin_vertices(mesh, fk) - vertices)) < 1e-9


def test_skinning_single_bone_rotates_rigidly():
    sk = two_joint_chain()
    mesh = quad_mesh(sk, weights=(np.arange(4), np.ones(4, int), np.ones(4)))
    theta = sk.zero_theta()
    theta[6] = np.pi / 2  # elbow about z
    fk = forward_kinematics(sk, theta)
    posed = skin_vertices(mesh, fk)
    # vertex (0,0,0) is offset (-1,0,0) from the elbow at (1,0,0); rotating
    # 90 degrees about z sends it to (1,-1,0)
    assert np.allclose(posed[0], [1, -1, 0], atol=1e-12)


def test_skinning_half_half_blend():
    sk = Skeleton(
        [
            Joint("root", None, [0, 0, 0], np.empty((0, 3))),
            Joint("spin", 0, [0, 0, 0], [EZ]),
        ]
    )
    vertices = np.array([[1.0, 0.0, 0.0]] * 3)
    faces = np.array([[0, 1, 2]])
    sk_v = np.array([0, 0, 1, 1, 2, 2])
    sk_j = np.array([0, 1, 0, 1, 0, 1])
    sk_w = np.array([0.5, 0.5, 0.5, 0.5, 0.5, 0.5])
    mesh = TemplateMesh(vertices, faces, np.tile([0, 1, 1], (3, 1)), sk_v, sk_j, sk_w, sk)
    theta = sk.zero_theta()
    theta[6] = np.pi / 2
    posed = skin_vertices(mesh, forward_kinematics(sk, theta))
    assert np.allclose(posed[0], [0.5, 0.5, 0.0], atol=1e-12)


def test_skinning_translation_equivariance():
    sk = two_joint_chain()
    rng = np.random.default_rng(3)
    mesh = quad_mesh(sk)
    theta = rng.uniform(-1, 1, sk.n_theta)
    base = skin_vertices(mesh, forward_kinematics(sk, theta))
    shift = np.array([0.3, -1.2, 2.0])
    theta2 = theta.copy()
    theta2[:3] += shift
    moved = skin_vertices(mesh, forward_kinematics(sk, theta2))
    assert np.allclose(moved, base + shift, atol=1e-12)


def test_skinning_weight_sum_validation_names_vertex():
    sk = two_joint_chain()
    with pytest.raises(InvalidModelError, match="vertex 2"):
        quad_mesh(sk, weights=(np.arange(4), np.zeros(4, int), np.array([1, 1, 0.9, 1])))


def test_skinned_point_jacobians_match_fd():
    sk = two_joint_chain()
    rng = np.random.default_rng(4)
    n = 5
    vertices = rng.uniform(-1, 1, size=(n, 3))
    faces = np.array([[0, 1, 2], [1, 2, 3], [2, 3, 4]])
    w0 = rng.uniform(0, 1, n)
    sk_v = np.repeat(np.arange(n), 2)
    sk_j = np.tile([0, 1], n)
    sk_w = np.column_stack([w0, 1 - w0]).ravel()
    mesh = TemplateMesh(vertices, faces, np.tile([0.5, 1, 1], (n, 1)), sk_v, sk_j, sk_w, sk)
    theta = rng.uniform(-1, 1, sk.n_theta)
    J = skinned_point_jacobians(mesh, forward_kinematics(sk, theta))
    eps = 1e-6
    for k in range(sk.n_theta):
        tp, tm = theta.copy(), theta.copy()
        tp[k] += eps
        tm[k] -= eps
        fd = (
            skin_vertices(mesh, forward_kinematics(sk, tp))
            - skin_vertices(mesh, forward_kinematics(sk, tm))
        ) / (2 * eps)
        assert rel_err(J[:, :, k], fd) < 1e-6


# --- model Gaussians ------------------------------------------------------------

def make_gset(sk):
    gray = ColorHSV(0.0, 0.0, 0.5)
    return ModelGaussianSet(
        [
            (Gaussian3D([0.5, 0.0, 0.0], 0.5, gray), 0),
            (Gaussian3D([1.5, 0.0, 0.0], 0.5, gray), 1),
        ],
        sk,
    )


def test_pose_model_gaussians_rest_identity():
    sk = two_joint_chain()
    gset = make_gset(sk)
    posed = pose_model_gaussians(gset, forward_kinematics(sk, sk.zero_theta()))
    assert np.allclose([g.mu for g in posed], gset.bind_means)
    assert all(g.sigma == 0.5 for g in posed)


def test_pose_model_gaussians_subtree_only():
    sk = two_joint_chain()
    gset = make_gset(sk)
    theta = sk.zero_theta()
    theta[6] = np.pi / 2
    posed = pose_model_gaussians(gset, forward_kinematics(sk, theta))
    assert np.allclose(posed[0].mu, [0.5, 0, 0], atol=1e-12)  # root Gaussian fixed
    assert np.allclose(posed[1].mu, [1.0, 0.5, 0.0], atol=1e-12)  # elbow Gaussian swings


def test_pose_model_gaussians_whole_body_translation():
    sk = two_joint_chain()
    gset = make_gset(sk)
    theta = sk.zero_theta()
    theta[:3] = [0, 0, 3.0]
    posed = pose_model_gaussians(gset, forward_kinematics(sk, theta))
    assert np.allclose([g.mu for g in posed], gset.bind_means + [0, 0, 3.0])


def test_assign_colors_uniform_mesh():
    sk = two_joint_chain()
    mesh = quad_mesh(sk)
    gset = assign_model_gaussian_colors(make_gset(sk), mesh)
    for g, _ in gset.gaussians:
        assert np.allclose(g.color, [0.0, 1.0, 1.0])


def test_assign_colors_circular_mean():
    sk = Skeleton([Joint("root", None, [0, 0, 0], np.empty((0, 3)))])
    vertices = np.array([[0.1, 0, 0], [-0.1, 0, 0], [0, 0.1, 0], [0, -0.1, 0]])
    faces = np.array([[0, 2, 1], [0, 1, 3]])
    colors = np.array([[0.2, 1, 1], [0.2, 1, 1], [0.4, 1, 1], [0.4, 1, 1]])
    mesh = TemplateMesh(vertices, faces, colors, np.arange(4), np.zeros(4, int), np.ones(4), sk)
    gset = ModelGaussianSet([(Gaussian3D([0, 0, 0], 0.5, ColorHSV(0, 0, 0.5)), 0)], sk)
    colored = assign_model_gaussian_colors(gset, mesh)
    assert np.isclose(colored.gaussians[0][0].color.h, 0.3)


def test_assign_colors_falls_back_to_nearest():
    sk = Skeleton([Joint("root", None, [0, 0, 0], np.empty((0, 3)))])
    vertices = np.array([[5.0, 0, 0], [5.1, 0, 0], [5.0, 0.1, 0]])
    faces = np.array([[0, 1, 2]])
    colors = np.array([[0.8, 1, 1], [0.1, 1, 1], [0.1, 1, 1]])
    mesh = TemplateMesh(vertices, faces, colors, np.arange(3), np.zeros(3, int), np.ones(3), sk)
    gset = ModelGaussianSet([(Gaussian3D([0, 0, 0], 0.1, ColorHSV(0, 0, 0.5)), 0)], sk)
    colored = assign_model_gaussian_colors(gset, mesh)
    assert np.isclose(colored.gaussians[0][0].color.h, 0.8)


# --- bundle I/O ------------------------------------------------------------------

def write_bundle(tmp_path, rigidity=True):
    sk = two_joint_chain()
    mesh = quad_mesh(sk)
    gset = make_gset(sk)
    paths = {
        "mesh": tmp_path / "template.obj",
        "skeleton": tmp_path / "skeleton.json",
        "weights": tmp_path / "weights.json",
        "gaussians": tmp_path / "model_gaussians.json",
        "rigidity": tmp_path / "rigidity.txt",
    }
    from gausscap.colors import hsv_to_rgb

    save_obj(paths["mesh"], mesh.vertices, mesh.faces, hsv_to_rgb(mesh.vertex_colors))
    save_skeleton_json(paths["skeleton"], sk)
    save_weights_json(paths["weights"], mesh.sk_vertex, mesh.sk_joint, mesh.sk_weight, 4)
    save_model_gaussians_json(paths["gaussians"], gset)
    if rigidity:
        save_rigidity(paths["rigidity"], [0.0, 0.5, 1.0, 0.25])
    return paths


def test_template_round_trip(tmp_path):
    paths = write_bundle(tmp_path)
    actor = load_template(
        paths["mesh"], paths["skeleton"], paths["weights"], paths["gaussians"], paths["rigidity"]
    )
    assert actor.mesh.n_vertices == 4
    assert actor.skeleton.n_joints == 2
    assert len(actor.model_gaussians) == 2
    assert np.allclose(actor.rigidity, [0.0, 0.5, 1.0, 0.25])
    # colors were assigned from the mesh
    assert np.allclose(actor.model_gaussians.colors[:, 1:], 1.0)


def test_template_missing_rigidity_defaults_to_free(tmp_path, caplog):
    paths = write_bundle(tmp_path, rigidity=False)
    with caplog.at_level("WARNING"):
        actor = load_template(
            paths["mesh"], paths["skeleton"], paths["weights"], paths["gaussians"], paths["rigidity"]
        )
    assert np.allclose(actor.rigidity, 0.0)
    assert any("rigidity" in r.message for r in caplog.records)


def test_bad_weight_sum_round_trip_is_rejected(tmp_path):
    paths = write_bundle(tmp_path)
    paths["weights"].write_text('[[{"joint": 0, "weight": 0.9}], [{"joint": 0, "weight": 1.0}], [{"joint": 0, "weight": 1.0}], [{"joint": 0, "weight": 1.0}]]')
    with pytest.raises(InvalidModelError, match="vertex 0"):
        load_template(
            paths["mesh"], paths["skeleton"], paths["weights"], paths["gaussians"], paths["rigidity"]
        )


def test_obj_round_trip(tmp_path):
    verts = np.array([[0.25, -1.5, 3.0], [1, 2, 3], [4, 5, 6]])
    faces = np.array([[0, 1, 2]])
    colors = np.array([[1.0, 0.5, 0.25], [0, 0, 0], [1, 1, 1]])
    p = tmp_path / "m.obj"
    save_obj(p, verts, faces, colors)
    v, f, c = load_obj(p)
    assert np.array_equal(v, verts)
    assert np.array_equal(f, faces)
    assert np.array_equal(c, colors)


def test_obj_rejects_garbage(tmp_path):
    p = tmp_path / "bad.obj"
    p.write_text("v 1 2\nf 1 2 3\n")
    with pytest.raises(CorruptDataError):
        load_obj(p)


def test_skeleton_json_round_trip(tmp_path):
    sk = two_joint_chain()
    p = tmp_path / "sk.json"
    save_skeleton_json(p, sk)
    sk2 = load_skeleton_json(p)
    assert sk2.n_joints == 2
    assert sk2.joints[1].parent == 0
    assert np.allclose(sk2.joints[1].dof_axes, [[0, 0, 1]])


def test_actor_model_rejects_bad_rigidity():
    sk = two_joint_chain()
    mesh = quad_mesh(sk)
    with pytest.raises(InvalidModelError):
        ActorModel(sk, mesh, make_gset(sk), np.array([0.0, 0.5, 1.5, 0.0]))
