"""Forward kinematics along the 16-joint tree, plus joint-axis helpers.

Local joint rotations compose bend-outermost: R = R_bend @ R_splay @
R_twist about the joint's rest-frame axes; `decompose_on_axes` inverts
that convention to recover per-axis angles for legality checks.
"""

import numpy as np

from ..rotations import axis_angle_to_matrix, make_rigid
from .types import J_JOINTS, HandTemplate, KinematicTree, Pose


def rest_joints(template: HandTemplate) -> np.ndarray:
    """Rest joint locations: R applied to the rest vertices (16, 3)."""
    return template.skinning.joint_regressor.T @ template.rest_vertices


def forward_kinematics(template: HandTemplate, pose: Pose) -> np.ndarray:
    """World transform per joint (16, 4, 4).

    transform[0] carries the root rotation and translation; every other
    joint composes its parent with the local rotation about the rest joint
    offset, so an identity pose yields identity rotations with rest joint
    positions in the translation column.
    """
    joints = rest_joints(template)
    rots = axis_angle_to_matrix(pose.rotations)
    parents = template.kinematic.parents
    out = np.empty((J_JOINTS, 4, 4), dtype=np.float64)
    out[0] = make_rigid(rots[0], joints[0] + pose.root_translation)
    for i in range(1, J_JOINTS):
        local = make_rigid(rots[i], joints[i] - joints[parents[i]])
        out[i] = out[parents[i]] @ local
    return out


def axis_angles_to_rotation(axes: np.ndarray, angles) -> np.ndarray:
    """Rotation matrix for (bend, splay, twist) angles about an axis triad."""
    b, s, t = float(angles[0]), float(angles[1]), float(angles[2])
    rb = axis_angle_to_matrix(axes[0] * b)
    rs = axis_angle_to_matrix(axes[1] * s)
    rt = axis_angle_to_matrix(axes[2] * t)
    return rb @ rs @ rt


def decompose_on_axes(axes: np.ndarray, rotation: np.ndarray) -> np.ndarray:
    """Recover (bend, splay, twist) from a rotation, inverting
    axis_angles_to_rotation. Expressed in the axis basis the convention is
    an intrinsic X-Y-Z Euler factorization."""
    basis = axes.T  # columns = bend, splay, twist
    m = basis.T @ rotation @ basis
    splay = np.arcsin(np.clip(m[0, 2], -1.0, 1.0))
    bend = np.arctan2(-m[1, 2], m[2, 2])
    twist = np.arctan2(-m[0, 1], m[0, 0])
    return np.array([bend, splay, twist])


def pose_axis_angles(tree: KinematicTree, pose: Pose) -> np.ndarray:
    """Per-axis angles (15, 3) of the non-root joints."""
    rots = axis_angle_to_matrix(pose.rotations[1:])
    out = np.empty((J_JOINTS - 1, 3), dtype=np.float64)
    for j in range(J_JOINTS - 1):
        out[j] = decompose_on_axes(tree.joint_axes[j], rots[j])
    return out


def pose_is_legal(tree: KinematicTree, pose: Pose, tol: float = 1e-6) -> bool:
    """True when every non-root joint's axis decomposition sits inside the
    tree's limits (advisory: the engine renders illegal poses too)."""
    angles = pose_axis_angles(tree, pose)
    lo = tree.joint_limits[..., 0] - tol
    hi = tree.joint_limits[..., 1] + tol
    return bool(np.all(angles >= lo) and np.all(angles <= hi))
