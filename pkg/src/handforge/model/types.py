"""Domain types for the articulated hand and their invariant checks.

All arrays are float64/int64 in memory (archives store 32-bit, see
docs/model-format.md) and are frozen read-only after construction so
templates can be shared across parallel workers.
"""

from dataclasses import dataclass, field

import numpy as np

from ..errors import DimensionMismatch, InvariantViolation

J_JOINTS = 16
N_POSE_BASIS = 9 * (J_JOINTS - 1)  # 135
BASE_VERTEX_COUNT = 778
WRIST_VERTEX_COUNT = 64
EXTENDED_VERTEX_COUNT = BASE_VERTEX_COUNT + WRIST_VERTEX_COUNT  # 842
ROOT_SENTINEL = -1

_WEIGHT_TOL = 1e-6
_AXES_TOL = 1e-6


def _freeze(arr, dtype=np.float64):
    out = np.ascontiguousarray(arr, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SkinningData:
    """Blend weights W (Nv x J), pose-corrective basis P (Nv x 3 x 135),
    joint regressor R (Nv x J)."""

    weights: np.ndarray
    pose_blend: np.ndarray
    joint_regressor: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "weights", _freeze(self.weights))
        object.__setattr__(self, "pose_blend", _freeze(self.pose_blend))
        object.__setattr__(self, "joint_regressor", _freeze(self.joint_regressor))

    def validate(self, n_vertices: int):
        w, p, r = self.weights, self.pose_blend, self.joint_regressor
        if w.shape != (n_vertices, J_JOINTS):
            raise DimensionMismatch("weights", (n_vertices, J_JOINTS), w.shape)
        if p.shape != (n_vertices, 3, N_POSE_BASIS):
            raise DimensionMismatch("pose_blend", (n_vertices, 3, N_POSE_BASIS), p.shape)
        if r.shape != (n_vertices, J_JOINTS):
            raise DimensionMismatch("joint_regressor", (n_vertices, J_JOINTS), r.shape)
        if np.any(w < -_WEIGHT_TOL):
            raise InvariantViolation("weights-nonnegative")
        row_sums = w.sum(axis=1)
        bad = np.abs(row_sums - 1.0) > _WEIGHT_TOL
        if np.any(bad):
            i = int(np.argmax(bad))
            raise InvariantViolation("weights-row-sum", f"row {i} sums to {row_sums[i]:.6g}")
        col_sums = r.sum(axis=0)
        bad = np.abs(col_sums - 1.0) > _WEIGHT_TOL
        if np.any(bad):
            j = int(np.argmax(bad))
            raise InvariantViolation("regressor-col-sum", f"column {j} sums to {col_sums[j]:.6g}")
        if n_vertices == EXTENDED_VERTEX_COUNT:
            wrist = slice(BASE_VERTEX_COUNT, EXTENDED_VERTEX_COUNT)
            if not np.array_equal(w[wrist], np.broadcast_to(w[BASE_VERTEX_COUNT - 1], (WRIST_VERTEX_COUNT, J_JOINTS))):
                raise InvariantViolation("wrist-weight-copy", "rows 778..841 must equal row 777")
            if np.any(p[wrist] != 0.0):
                raise InvariantViolation("wrist-pose-blend-zero")
            if np.any(r[wrist] != 0.0):
                raise InvariantViolation("wrist-regressor-zero")


@dataclass(frozen=True)
class KinematicTree:
    """parents (J,), per non-root joint orthonormal (bend, splay, twist)
    axes (J-1, 3, 3) in the rest frame, and per-axis limits (J-1, 3, 2)."""

    parents: np.ndarray
    joint_axes: np.ndarray
    joint_limits: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "parents", _freeze(self.parents, dtype=np.int64))
        object.__setattr__(self, "joint_axes", _freeze(self.joint_axes))
        object.__setattr__(self, "joint_limits", _freeze(self.joint_limits))

    def validate(self):
        p = self.parents
        if p.shape != (J_JOINTS,):
            raise DimensionMismatch("parents", (J_JOINTS,), p.shape)
        if p[0] != ROOT_SENTINEL:
            raise InvariantViolation("parents-root-sentinel", f"parents[0] = {p[0]}")
        for i in range(1, J_JOINTS):
            if not 0 <= p[i] < i:
                raise InvariantViolation("parents-topological", f"parents[{i}] = {p[i]}")
        axes = self.joint_axes
        if axes.shape != (J_JOINTS - 1, 3, 3):
            raise DimensionMismatch("joint_axes", (J_JOINTS - 1, 3, 3), axes.shape)
        gram = np.einsum("jab,jcb->jac", axes, axes)
        if np.max(np.abs(gram - np.eye(3))) > _AXES_TOL:
            raise InvariantViolation("axes-orthonormal")
        lim = self.joint_limits
        if lim.shape != (J_JOINTS - 1, 3, 2):
            raise DimensionMismatch("joint_limits", (J_JOINTS - 1, 3, 2), lim.shape)
        if np.any(lim[..., 0] > 0.0) or np.any(lim[..., 1] < 0.0):
            raise InvariantViolation("limits-contain-zero", "each axis needs min <= 0 <= max")

    def children(self, joint: int):
        return [i for i in range(J_JOINTS) if self.parents[i] == joint]

    def subtree(self, joint: int):
        """Joint indices at or below `joint` (joint included)."""
        out = [joint]
        for i in range(joint + 1, J_JOINTS):
            if self.parents[i] in out:
                out.append(i)
        return out


@dataclass(frozen=True)
class HandTemplate:
    rest_vertices: np.ndarray
    faces: np.ndarray
    uv_coords: np.ndarray
    skinning: SkinningData
    kinematic: KinematicTree
    fingertip_vertex_ids: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rest_vertices", _freeze(self.rest_vertices))
        object.__setattr__(self, "faces", _freeze(self.faces, dtype=np.int64))
        object.__setattr__(self, "uv_coords", _freeze(self.uv_coords))
        object.__setattr__(self, "fingertip_vertex_ids", _freeze(self.fingertip_vertex_ids, dtype=np.int64))

    @property
    def n_vertices(self) -> int:
        return self.rest_vertices.shape[0]

    @property
    def n_faces(self) -> int:
        return self.faces.shape[0]

    def validate(self):
        n = self.n_vertices
        if self.rest_vertices.ndim != 2 or self.rest_vertices.shape[1] != 3:
            raise DimensionMismatch("rest_vertices", "(Nv, 3)", self.rest_vertices.shape)
        if self.faces.ndim != 2 or self.faces.shape[1] != 3:
            raise DimensionMismatch("faces", "(Nf, 3)", self.faces.shape)
        if np.any(self.faces < 0) or np.any(self.faces >= n):
            raise InvariantViolation("face-indices-in-range")
        v = self.rest_vertices
        tri = v[self.faces]
        areas = 0.5 * np.linalg.norm(np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0]), axis=1)
        if np.any(areas <= 1e-14):
            i = int(np.argmin(areas))
            raise InvariantViolation("degenerate-face", f"face {i} has zero area")
        if self.uv_coords.shape != (n, 2):
            raise DimensionMismatch("uv_coords", (n, 2), self.uv_coords.shape)
        if np.any(self.uv_coords < 0.0) or np.any(self.uv_coords > 1.0):
            raise InvariantViolation("uv-range", "uv coordinates must lie in [0,1]^2")
        tips = self.fingertip_vertex_ids
        if tips.shape != (5,):
            raise DimensionMismatch("fingertip_vertex_ids", (5,), tips.shape)
        if np.any(tips < 0) or np.any(tips >= n):
            raise InvariantViolation("fingertip-ids", "index out of range")
        self.skinning.validate(n)
        self.kinematic.validate()


@dataclass(frozen=True)
class Pose:
    """One global root rotation plus 15 joint rotations (axis-angle,
    radians * unit axis) and a root translation in meters."""

    rotations: np.ndarray
    root_translation: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        object.__setattr__(self, "rotations", _freeze(self.rotations))
        object.__setattr__(self, "root_translation", _freeze(self.root_translation))
        if self.rotations.shape != (J_JOINTS, 3):
            raise DimensionMismatch("pose rotations", (J_JOINTS, 3), self.rotations.shape)
        if self.root_translation.shape != (3,):
            raise DimensionMismatch("root_translation", (3,), self.root_translation.shape)
        mags = np.linalg.norm(self.rotations, axis=1)
        if np.any(mags >= np.pi + 1e-9):
            j = int(np.argmax(mags))
            raise InvariantViolation("axis-angle-canonical", f"joint {j} magnitude {mags[j]:.6g} >= pi")

    @classmethod
    def rest(cls) -> "Pose":
        return cls(np.zeros((J_JOINTS, 3)), np.zeros(3))

    def with_root(self, rotation=None, translation=None) -> "Pose":
        rot = np.array(self.rotations)
        if rotation is not None:
            rot[0] = rotation
        t = self.root_translation if translation is None else np.asarray(translation, dtype=np.float64)
        return Pose(rot, t)

    def relative(self) -> np.ndarray:
        """The 15 non-root rotations (the quantity pose distance acts on)."""
        return self.rotations[1:]


@dataclass(frozen=True)
class PosedHand:
    vertices: np.ndarray
    joints16: np.ndarray
    bone_transforms: np.ndarray  # (J, 4, 4), world frame

    def __post_init__(self):
        object.__setattr__(self, "vertices", _freeze(self.vertices))
        object.__setattr__(self, "joints16", _freeze(self.joints16))
        object.__setattr__(self, "bone_transforms", _freeze(self.bone_transforms))
