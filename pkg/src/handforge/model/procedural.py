"""Procedural low-poly stand-in hand.

Builds a 778-vertex, 16-joint, 5-finger cylinder hand satisfying every
template invariant, plus a matching 64-vertex wrist patch, so the full
suite (including wrist extension) runs without licensed model assets.

Layout: palm tube (16-vertex elliptical rings, open at the wrist end),
palm cap, five finger tubes (8-vertex rings with tip/base caps), then
filler vertices riding the palm to land on exactly 778. Joint positions
are the centroids of designated rings, which makes the joint regressor
exact by construction. All stored arrays are rounded to float32 so model
archives round-trip bit-identically.
"""

import numpy as np

from ..errors import EngineError
from ..seeding import derive_rng
from .types import (
    BASE_VERTEX_COUNT,
    J_JOINTS,
    N_POSE_BASIS,
    WRIST_VERTEX_COUNT,
    HandTemplate,
    KinematicTree,
    SkinningData,
)
from .wrist import WristPatch, boundary_loop

PALM_RING = 16
FINGER_RING = 8
_PALM_RX, _PALM_RZ = 0.042, 0.014
_Y_WRIST, _Y_PALM_END = -0.04, 0.08
_Y_MCP = 0.085
_FINGER_X = (-0.034, -0.017, 0.0, 0.017, 0.034)
_FINGER_LEN = (0.048, 0.065, 0.070, 0.065, 0.050)
_FINGER_R = 0.0065


def _f32(arr):
    return np.asarray(arr, dtype=np.float32).astype(np.float64)


def _ring(center, radii, count, jitter):
    ang = 2.0 * np.pi * np.arange(count) / count
    offs = np.stack([radii[0] * np.cos(ang), np.zeros(count), radii[1] * np.sin(ang)], axis=1)
    offs *= (1.0 + jitter)[:, None]
    return np.asarray(center, dtype=np.float64) + offs


def _tube_faces(rings, offset, ring_size):
    faces = []
    for k in range(len(rings) - 1):
        a0 = offset + k * ring_size
        b0 = offset + (k + 1) * ring_size
        for a in range(ring_size):
            a1 = (a + 1) % ring_size
            faces.append((a0 + a, a0 + a1, b0 + a1))
            faces.append((a0 + a, b0 + a1, b0 + a))
    return faces


def _fan_faces(ring_start, ring_size, center, flip=False):
    faces = []
    for a in range(ring_size):
        a1 = (a + 1) % ring_size
        if flip:
            faces.append((center, ring_start + a1, ring_start + a))
        else:
            faces.append((ring_start + a, ring_start + a1, center))
    return faces


def _ramp(y, center, half):
    """1 below center-half, 0 above center+half, linear between."""
    return np.clip((center + half - y) / (2.0 * half), 0.0, 1.0)


def make_test_template(n_segments: int, seed: int) -> HandTemplate:
    """Deterministic procedural hand; n_segments rings per phalanx (1..5)."""
    if n_segments < 1:
        raise EngineError(f"n_segments must be >= 1, got {n_segments}")
    if n_segments > 5:
        raise EngineError("n_segments > 5 cannot fit the 778-vertex budget")
    rng = derive_rng(seed, "test-template")
    s = n_segments

    rings_per_finger = 2 + 3 * s
    verts_per_finger = FINGER_RING * rings_per_finger + 2  # + tip and base caps
    finger_total = 5 * verts_per_finger
    remaining = BASE_VERTEX_COUNT - finger_total - 1  # palm cap center
    n_palm_rings = remaining // PALM_RING
    n_filler = remaining - n_palm_rings * PALM_RING

    verts = []
    faces = []

    # palm tube, ring 0 at the wrist (left open as the stitch boundary)
    palm_ys = np.linspace(_Y_WRIST, _Y_PALM_END, n_palm_rings)
    for y in palm_ys:
        verts.append(_ring((0.0, y, 0.0), (_PALM_RX, _PALM_RZ), PALM_RING, rng.uniform(-0.03, 0.03, PALM_RING)))
    faces += _tube_faces(palm_ys, 0, PALM_RING)
    palm_cap = n_palm_rings * PALM_RING
    verts.append(np.array([[0.0, _Y_PALM_END + 0.004, 0.0]]))
    faces += _fan_faces((n_palm_rings - 1) * PALM_RING, PALM_RING, palm_cap)

    root_ring = int(np.argmin(np.abs(palm_ys)))

    joint_ring_vertex_ids = [np.arange(root_ring * PALM_RING, (root_ring + 1) * PALM_RING)]
    tip_ids = []
    finger_vertex_ranges = []
    finger_knots = []

    cursor = palm_cap + 1
    for f in range(5):
        x = _FINGER_X[f]
        length = _FINGER_LEN[f]
        y_mcp = _Y_MCP
        y_pip = y_mcp + 0.45 * length
        y_dip = y_mcp + 0.75 * length
        y_tip = y_mcp + length
        y_base = y_mcp - 0.007
        knots = [y_base, y_mcp]
        for a, b in ((y_mcp, y_pip), (y_pip, y_dip), (y_dip, y_tip)):
            knots += list(np.linspace(a, b, s + 1)[1:])
        knots = np.asarray(knots)
        assert len(knots) == rings_per_finger

        start = cursor
        for y in knots:
            verts.append(_ring((x, y, 0.0), (_FINGER_R, _FINGER_R), FINGER_RING, rng.uniform(-0.03, 0.03, FINGER_RING)))
        faces += _tube_faces(knots, start, FINGER_RING)
        tip_center = start + rings_per_finger * FINGER_RING
        base_center = tip_center + 1
        verts.append(np.array([[x, y_tip + 0.004, 0.0]]))
        verts.append(np.array([[x, y_base - 0.003, 0.0]]))
        faces += _fan_faces(start + (rings_per_finger - 1) * FINGER_RING, FINGER_RING, tip_center)
        faces += _fan_faces(start, FINGER_RING, base_center, flip=True)

        for ring_idx in (1, 1 + s, 1 + 2 * s):  # MCP, PIP, DIP rings
            base_id = start + ring_idx * FINGER_RING
            joint_ring_vertex_ids.append(np.arange(base_id, base_id + FINGER_RING))
        tip_ids.append(tip_center)
        finger_vertex_ranges.append((start, base_center + 1))
        finger_knots.append((y_mcp, y_pip, y_dip, length))
        cursor = base_center + 1

    # unreferenced fillers on the palm top surface (pad to exactly 778)
    ang = 2.399963229728653 * np.arange(n_filler)  # golden angle spiral
    rad = 0.010 * np.sqrt((np.arange(n_filler) + 1.0) / max(n_filler, 1))
    verts.append(
        np.stack([rad * np.cos(ang), 0.02 + rad * np.sin(ang), np.full(n_filler, _PALM_RZ * 0.9)], axis=1)
    )

    vertices = np.concatenate(verts, axis=0)
    assert vertices.shape == (BASE_VERTEX_COUNT, 3), vertices.shape
    faces = np.asarray(faces, dtype=np.int64)

    # weights: palm and fillers ride the root; fingers ramp bone-to-bone
    weights = np.zeros((BASE_VERTEX_COUNT, J_JOINTS))
    weights[:, 0] = 1.0
    for f, (start, end) in enumerate(finger_vertex_ranges):
        y = vertices[start:end, 1]
        y_mcp, y_pip, y_dip, length = finger_knots[f]
        h = 0.1 * length
        a = _ramp(y, y_mcp, h)
        b = _ramp(y, y_pip, h)
        c = _ramp(y, y_dip, h)
        j0 = 1 + 3 * f
        weights[start:end, 0] = a
        weights[start:end, j0] = (1 - a) * b
        weights[start:end, j0 + 1] = (1 - a) * (1 - b) * c
        weights[start:end, j0 + 2] = (1 - a) * (1 - b) * (1 - c)
    weights /= weights.sum(axis=1, keepdims=True)

    # joint regressor: uniform over each joint's designated ring
    regressor = np.zeros((BASE_VERTEX_COUNT, J_JOINTS))
    for j, ids in enumerate(joint_ring_vertex_ids):
        regressor[ids, j] = 1.0 / len(ids)

    # pose-corrective basis, masked to each joint's weight-support subtree
    pose_blend = np.zeros((BASE_VERTEX_COUNT, 3, N_POSE_BASIS))
    for f, (start, end) in enumerate(finger_vertex_ranges):
        j0 = 1 + 3 * f
        w = weights[start:end]
        for k, j in enumerate((j0, j0 + 1, j0 + 2)):
            support = w[:, j0 + k :].sum(axis=1) > 1e-9  # subtree = joint and distal
            block = slice(9 * (j - 1), 9 * j)
            vals = rng.normal(0.0, 0.002, size=(end - start, 3, 9))
            pose_blend[start:end, :, block] = np.where(support[:, None, None], vals, 0.0)

    # planar uv over the (x, y) bounding box
    lo = vertices[:, :2].min(axis=0)
    hi = vertices[:, :2].max(axis=0)
    uv = 0.02 + 0.96 * (vertices[:, :2] - lo) / (hi - lo)

    parents = np.array([-1] + sum(([0, 1 + 3 * f, 2 + 3 * f] for f in range(5)), []), dtype=np.int64)
    axes = np.tile(np.array([[1.0, 0, 0], [0, 0, 1.0], [0, 1.0, 0]]), (J_JOINTS - 1, 1, 1))
    limits = np.zeros((J_JOINTS - 1, 3, 2))
    limits[:, 0] = (-0.4, 2.0)  # bend
    limits[:, 1] = (-0.06, 0.06)  # splay (widened below for MCPs)
    limits[:, 2] = (-0.06, 0.06)  # twist
    for f in range(5):
        limits[3 * f, 1] = (-0.35, 0.35)

    template = HandTemplate(
        rest_vertices=_f32(vertices),
        faces=faces,
        uv_coords=_f32(uv),
        skinning=SkinningData(weights=_f32(weights), pose_blend=_f32(pose_blend), joint_regressor=_f32(regressor)),
        kinematic=KinematicTree(parents=parents, joint_axes=_f32(axes), joint_limits=_f32(limits)),
        fingertip_vertex_ids=np.asarray(tip_ids, dtype=np.int64),
    )
    template.validate()
    return template


def make_test_wrist_patch(base: HandTemplate) -> WristPatch:
    """Wrist tube continuing the base mesh's open rim, 64 vertices."""
    loop = boundary_loop(base.faces, base.n_vertices)
    ring_len = len(loop)
    if WRIST_VERTEX_COUNT % ring_len != 0:
        raise EngineError(f"boundary loop of {ring_len} cannot tile {WRIST_VERTEX_COUNT} wrist vertices")
    n_rings = WRIST_VERTEX_COUNT // ring_len

    rim = base.rest_vertices[loop]
    center = rim.mean(axis=0)
    verts = []
    for g in range(n_rings):
        taper = 1.0 - 0.06 * (g + 1)
        ring = center + (rim - center) * taper
        ring[:, 1] = rim[:, 1].mean() - 0.016 * (g + 1)
        verts.append(ring)
    vertices = np.concatenate(verts, axis=0)

    first = BASE_VERTEX_COUNT
    faces = []
    for k in range(ring_len):
        k1 = (k + 1) % ring_len
        faces.append((int(loop[k]), int(loop[k1]), first + k1))
        faces.append((int(loop[k]), first + k1, first + k))
    for g in range(n_rings - 1):
        a0 = first + g * ring_len
        b0 = first + (g + 1) * ring_len
        for k in range(ring_len):
            k1 = (k + 1) % ring_len
            faces.append((a0 + k, a0 + k1, b0 + k1))
            faces.append((a0 + k, b0 + k1, b0 + k))

    uv = np.tile(base.uv_coords[loop], (n_rings, 1))
    return WristPatch(vertices=_f32(vertices), faces=np.asarray(faces, dtype=np.int64), uv_coords=_f32(uv))
