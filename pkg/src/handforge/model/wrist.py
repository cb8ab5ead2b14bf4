"""Wrist extension: append the 64-vertex wrist patch to a 778-vertex base
template and align the skinning arrays.

The alignment only rewrites indices and weights: new weight rows copy base
row 777, new pose-blend and regressor rows are zero, so any pose moves the
original 778 vertices exactly as the base model would.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch, InvariantViolation
from .types import (
    BASE_VERTEX_COUNT,
    EXTENDED_VERTEX_COUNT,
    J_JOINTS,
    N_POSE_BASIS,
    WRIST_VERTEX_COUNT,
    HandTemplate,
    SkinningData,
)


@dataclass(frozen=True)
class WristPatch:
    """64 wrist vertices plus stitching faces.

    Faces are indexed globally: values below 778 refer to the base mesh's
    open wrist boundary, values in [778, 842) to the patch vertices.
    """

    vertices: np.ndarray  # (64, 3)
    faces: np.ndarray  # (Fp, 3)
    uv_coords: np.ndarray  # (64, 2)


def boundary_vertices(faces: np.ndarray, n_vertices: int) -> np.ndarray:
    """Vertex ids on open boundaries (edges used by exactly one face)."""
    f = np.asarray(faces, dtype=np.int64)
    edges = np.concatenate([f[:, [0, 1]], f[:, [1, 2]], f[:, [2, 0]]], axis=0)
    edges = np.sort(edges, axis=1)
    keys = edges[:, 0] * n_vertices + edges[:, 1]
    uniq, counts = np.unique(keys, return_counts=True)
    open_keys = uniq[counts == 1]
    verts = np.unique(np.stack([open_keys // n_vertices, open_keys % n_vertices]))
    return verts


def boundary_loop(faces: np.ndarray, n_vertices: int) -> np.ndarray:
    """The single open boundary as an ordered vertex loop."""
    f = np.asarray(faces, dtype=np.int64)
    edges = np.concatenate([f[:, [0, 1]], f[:, [1, 2]], f[:, [2, 0]]], axis=0)
    und = np.sort(edges, axis=1)
    keys = und[:, 0] * n_vertices + und[:, 1]
    uniq, first, counts = np.unique(keys, return_index=True, return_counts=True)
    open_edges = edges[first[counts == 1]]
    if len(open_edges) == 0:
        raise InvariantViolation("no-open-boundary", "mesh is closed")
    nxt = {}
    for a, b in open_edges:
        nxt[int(a)] = int(b)
    start = int(open_edges[0, 0])
    loop = [start]
    cur = nxt[start]
    while cur != start:
        loop.append(cur)
        if cur not in nxt or len(loop) > len(open_edges) + 1:
            raise InvariantViolation("boundary-not-a-loop")
        cur = nxt[cur]
    if len(loop) != len(open_edges):
        raise InvariantViolation("boundary-not-single-loop", f"{len(open_edges)} open edges, loop of {len(loop)}")
    return np.asarray(loop, dtype=np.int64)


def extend_with_wrist(base: HandTemplate, patch: WristPatch) -> HandTemplate:
    if base.n_vertices != BASE_VERTEX_COUNT:
        raise DimensionMismatch("base vertex count", BASE_VERTEX_COUNT, base.n_vertices)
    verts = np.asarray(patch.vertices, dtype=np.float64)
    if verts.shape != (WRIST_VERTEX_COUNT, 3):
        raise DimensionMismatch("wrist patch vertices", (WRIST_VERTEX_COUNT, 3), verts.shape)
    pfaces = np.asarray(patch.faces, dtype=np.int64)
    if np.any(pfaces < 0) or np.any(pfaces >= EXTENDED_VERTEX_COUNT):
        raise InvariantViolation("wrist-patch-face-range")

    # stitching faces may only grab base vertices on the open wrist boundary
    base_refs = np.unique(pfaces[pfaces < BASE_VERTEX_COUNT])
    allowed = set(boundary_vertices(base.faces, base.n_vertices).tolist())
    stray = [int(v) for v in base_refs if int(v) not in allowed]
    if stray:
        raise InvariantViolation("wrist-patch-not-stitchable", f"faces reference interior base vertices {stray[:8]}")

    w0 = base.skinning.weights
    p0 = base.skinning.pose_blend
    r0 = base.skinning.joint_regressor

    w = np.zeros((EXTENDED_VERTEX_COUNT, J_JOINTS))
    w[:BASE_VERTEX_COUNT] = w0
    w[BASE_VERTEX_COUNT:] = w0[BASE_VERTEX_COUNT - 1]
    p = np.zeros((EXTENDED_VERTEX_COUNT, 3, N_POSE_BASIS))
    p[:BASE_VERTEX_COUNT] = p0
    r = np.zeros((EXTENDED_VERTEX_COUNT, J_JOINTS))
    r[:BASE_VERTEX_COUNT] = r0

    extended = HandTemplate(
        rest_vertices=np.concatenate([base.rest_vertices, verts], axis=0),
        faces=np.concatenate([base.faces, pfaces], axis=0),
        uv_coords=np.concatenate([base.uv_coords, np.asarray(patch.uv_coords, dtype=np.float64)], axis=0),
        skinning=SkinningData(weights=w, pose_blend=p, joint_regressor=r),
        kinematic=base.kinematic,
        fingertip_vertex_ids=base.fingertip_vertex_ids,
    )
    extended.validate()
    return extended
