"""Articulated hand model: template storage, wrist extension, kinematics,
linear blend skinning, joint regression, keypoints, and a procedural test
template so the suite runs without licensed model assets."""

from .types import (
    J_JOINTS,
    N_POSE_BASIS,
    BASE_VERTEX_COUNT,
    WRIST_VERTEX_COUNT,
    EXTENDED_VERTEX_COUNT,
    HandTemplate,
    KinematicTree,
    Pose,
    PosedHand,
    SkinningData,
)
from .archive import load_template, save_template
from .kinematics import (
    axis_angles_to_rotation,
    decompose_on_axes,
    forward_kinematics,
    pose_is_legal,
    rest_joints,
)
from .skinning import keypoints21, regress_joints, skin
from .wrist import WristPatch, boundary_vertices, extend_with_wrist
from .procedural import make_test_template, make_test_wrist_patch

__all__ = [
    "J_JOINTS",
    "N_POSE_BASIS",
    "BASE_VERTEX_COUNT",
    "WRIST_VERTEX_COUNT",
    "EXTENDED_VERTEX_COUNT",
    "HandTemplate",
    "KinematicTree",
    "Pose",
    "PosedHand",
    "SkinningData",
    "load_template",
    "save_template",
    "rest_joints",
    "forward_kinematics",
    "axis_angles_to_rotation",
    "decompose_on_axes",
    "pose_is_legal",
    "skin",
    "regress_joints",
    "keypoints21",
    "WristPatch",
    "boundary_vertices",
    "extend_with_wrist",
    "make_test_template",
    "make_test_wrist_patch",
]
