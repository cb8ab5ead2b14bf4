"""Linear blend skinning with pose-corrective offsets, joint regression,
and the 21-keypoint convention (16 regressed joints + 5 fingertip
vertices, thumb to pinky)."""

import numpy as np

from ..rotations import axis_angle_to_matrix
from .kinematics import forward_kinematics, rest_joints
from .types import J_JOINTS, HandTemplate, Pose, PosedHand


def pose_blend_offsets(template: HandTemplate, pose: Pose) -> np.ndarray:
    """Rest-pose corrective offsets: P contracted with vec(R(theta) - I)
    over the 15 non-root joints (135 coefficients)."""
    rots = axis_angle_to_matrix(pose.rotations[1:])  # (15, 3, 3)
    feature = (rots - np.eye(3)).reshape(-1)  # (135,)
    return template.skinning.pose_blend @ feature


def skin(template: HandTemplate, pose: Pose) -> PosedHand:
    transforms = forward_kinematics(template, pose)
    joints0 = rest_joints(template)

    # remove each joint's rest location so transforms act on rest-frame points
    skin_mats = np.array(transforms)
    skin_mats[:, :3, 3] -= np.einsum("jab,jb->ja", transforms[:, :3, :3], joints0)

    shaped = template.rest_vertices + pose_blend_offsets(template, pose)
    per_vertex = np.einsum("vj,jab->vab", template.skinning.weights, skin_mats)
    posed = np.einsum("vab,vb->va", per_vertex[:, :3, :3], shaped) + per_vertex[:, :3, 3]

    joints = regress_joints(template, posed)
    return PosedHand(vertices=posed, joints16=joints, bone_transforms=transforms)


def regress_joints(template: HandTemplate, vertices: np.ndarray) -> np.ndarray:
    """joints16 = R^T @ vertices; linear and deterministic."""
    return template.skinning.joint_regressor.T @ np.asarray(vertices, dtype=np.float64)


def keypoints21(template: HandTemplate, posed: PosedHand) -> np.ndarray:
    """(21, 3): rows 0..15 the regressed joints, rows 16..20 the fingertip
    vertices in thumb..pinky order."""
    tips = posed.vertices[template.fingertip_vertex_ids]
    return np.concatenate([posed.joints16, tips], axis=0)


def joint_names():
    """Keypoint order used across annotations and the studio API."""
    fingers = ["thumb", "index", "middle", "ring", "pinky"]
    names = ["root"]
    for f in fingers:
        names += [f"{f}_mcp", f"{f}_pip", f"{f}_dip"]
    names += [f"{f}_tip" for f in fingers]
    assert len(names) == J_JOINTS + 5
    return names
