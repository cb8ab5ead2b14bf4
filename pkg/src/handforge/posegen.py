"""Pose synthesis.

Base poses come from permuting discretized per-axis angles inside the
joint limits (a Cartesian product per finger, then across fingers). Each
base pose is pushed toward the most different of k reference poses drawn
from an in-the-wild pool, via per-joint quaternion Slerp; viewpoints come
from uniform sphere sampling and become the root rotation.

Streams are indexable: every emitted pose is a pure function of
(spec, pool, seed, index), which is what makes parallel dataset
generation reproducible.
"""

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, EngineError, InvariantViolation
from .model.kinematics import axis_angles_to_rotation
from .model.types import J_JOINTS, KinematicTree, Pose
from .rotations import (
    axis_angle_to_quat,
    matrix_to_axis_angle,
    quat_geodesic_angle,
    quat_slerp,
    quat_to_axis_angle,
    rotation_about,
    rotation_between,
)
from .seeding import derive_rng

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


# ---------------------------------------------------------------------------
# grid of discretized base poses


@dataclass(frozen=True)
class PoseGridSpec:
    """Discrete angle levels per non-root joint per axis, plus the finger
    grouping of joint indices (joint ids 1..15)."""

    angles: tuple  # 15 x 3 tuples of floats (radians)
    fingers: tuple  # e.g. ((1,2,3), (4,5,6), ...)

    def validate(self, tree: KinematicTree):
        if len(self.angles) != J_JOINTS - 1:
            raise DimensionMismatch("grid angles", J_JOINTS - 1, len(self.angles))
        seen = sorted(j for grp in self.fingers for j in grp)
        if seen != list(range(1, J_JOINTS)):
            raise InvariantViolation("grid-finger-grouping", "fingers must partition joints 1..15")
        for j in range(J_JOINTS - 1):
            for axis in range(3):
                levels = self.angles[j][axis]
                if len(levels) == 0:
                    raise InvariantViolation("grid-axis-empty", f"joint {j + 1} axis {axis}")
                lo, hi = tree.joint_limits[j, axis]
                for a in levels:
                    if not (lo - 1e-9 <= a <= hi + 1e-9):
                        raise InvariantViolation(
                            "grid-angle-outside-limits", f"joint {j + 1} axis {axis} angle {a:.4f}"
                        )

    def finger_radices(self, finger_index: int):
        """Digit sizes of one finger's configuration, joint-major then axis,
        last digit fastest."""
        out = []
        for j in self.fingers[finger_index]:
            for axis in range(3):
                out.append(len(self.angles[j - 1][axis]))
        return out

    def finger_config_count(self, finger_index: int) -> int:
        n = 1
        for r in self.finger_radices(finger_index):
            n *= r
        return n

    def base_pose_count(self) -> int:
        n = 1
        for f in range(len(self.fingers)):
            n *= self.finger_config_count(f)
        return n


def default_grid_spec(
    tree: KinematicTree,
    bend_levels=(0.0, math.pi / 4, math.pi / 2),
    splay_levels=(-math.radians(10), 0.0, math.radians(10)),
) -> PoseGridSpec:
    """Bend levels on every joint, splay levels on the MCPs, twist fixed at
    zero; clipped nothing — levels must already sit inside the limits."""
    fingers = _finger_chains(tree)
    mcps = {grp[0] for grp in fingers}
    angles = []
    for j in range(1, J_JOINTS):
        bend = tuple(bend_levels)
        splay = tuple(splay_levels) if j in mcps else (0.0,)
        angles.append((bend, splay, (0.0,)))
    spec = PoseGridSpec(angles=tuple(angles), fingers=fingers)
    spec.validate(tree)
    return spec


def _finger_chains(tree: KinematicTree):
    roots = [i for i in range(1, J_JOINTS) if tree.parents[i] == 0]
    chains = []
    for r in roots:
        chain = [r]
        cur = r
        while True:
            kids = [i for i in range(1, J_JOINTS) if tree.parents[i] == cur]
            if not kids:
                break
            cur = kids[0]
            chain.append(cur)
        chains.append(tuple(chain))
    return tuple(chains)


def _decode_mixed_radix(index: int, radices) -> list:
    digits = [0] * len(radices)
    for i in range(len(radices) - 1, -1, -1):
        index, digits[i] = divmod(index, radices[i])
    if index != 0:
        raise EngineError("mixed-radix index out of range")
    return digits


def base_pose_at(spec: PoseGridSpec, tree: KinematicTree, index: int) -> Pose:
    """The index-th base pose in lexicographic order (finger 0 most
    significant; within a finger, joint-major then bend/splay/twist)."""
    finger_counts = [spec.finger_config_count(f) for f in range(len(spec.fingers))]
    finger_digits = _decode_mixed_radix(index, finger_counts)
    rotations = np.zeros((J_JOINTS, 3))
    for f, grp in enumerate(spec.fingers):
        radices = spec.finger_radices(f)
        digits = _decode_mixed_radix(finger_digits[f], radices)
        d = 0
        for j in grp:
            levels = spec.angles[j - 1]
            trip = (levels[0][digits[d]], levels[1][digits[d + 1]], levels[2][digits[d + 2]])
            d += 3
            rot = axis_angles_to_rotation(tree.joint_axes[j - 1], trip)
            rotations[j] = matrix_to_axis_angle(rot)
    return Pose(rotations)


def enumerate_base_poses(spec: PoseGridSpec, tree: KinematicTree):
    """Lazy stream over the full base-pose product (can be astronomically
    long — never materialize)."""
    total = spec.base_pose_count()
    for g in range(total):
        yield base_pose_at(spec, tree, g)


# ---------------------------------------------------------------------------
# viewpoints


@dataclass(frozen=True)
class ViewpointSample:
    direction: np.ndarray  # unit vector on S^2
    roll: float  # radians about the direction

    def __post_init__(self):
        d = np.ascontiguousarray(self.direction, dtype=np.float64)
        if abs(float(np.linalg.norm(d)) - 1.0) > 1e-9:
            raise InvariantViolation("viewpoint-direction-unit")
        d.setflags(write=False)
        object.__setattr__(self, "direction", d)


def sample_viewpoint(rng=None, *, lattice_index=None, total=None) -> ViewpointSample:
    """Area-uniform random viewpoint, or point `lattice_index` of a
    Fibonacci spiral of `total` points (roll 0 in lattice mode)."""
    if rng is not None:
        z = rng.uniform(-1.0, 1.0)
        az = rng.uniform(0.0, 2.0 * math.pi)
        roll = rng.uniform(0.0, 2.0 * math.pi)
        r = math.sqrt(max(0.0, 1.0 - z * z))
        return ViewpointSample(np.array([r * math.cos(az), r * math.sin(az), z]), roll)
    if lattice_index is None or total is None:
        raise EngineError("need either rng or (lattice_index, total)")
    if not 0 <= lattice_index < total:
        raise EngineError(f"lattice_index {lattice_index} out of range for total {total}")
    z = 1.0 if total == 1 else 1.0 - 2.0 * lattice_index / (total - 1)
    z = min(1.0, max(-1.0, z))
    az = GOLDEN_ANGLE * lattice_index
    r = math.sqrt(max(0.0, 1.0 - z * z))
    return ViewpointSample(np.array([r * math.cos(az), r * math.sin(az), z]), 0.0)


def viewpoint_to_rotation(vp: ViewpointSample) -> np.ndarray:
    """Root axis-angle: align +z with the direction, then roll about it."""
    align = rotation_between(np.array([0.0, 0.0, 1.0]), vp.direction)
    rot = rotation_about(vp.direction, vp.roll) @ align
    return matrix_to_axis_angle(rot)


# ---------------------------------------------------------------------------
# pose distance and reference selection


@dataclass(frozen=True)
class ReferencePosePool:
    """Relative rotations only (P, 15, 3) plus a provenance tag."""

    poses: np.ndarray
    source: str = "unknown"

    def __post_init__(self):
        p = np.ascontiguousarray(self.poses, dtype=np.float64)
        if p.ndim != 3 or p.shape[1:] != (J_JOINTS - 1, 3):
            raise DimensionMismatch("pool poses", ("P", J_JOINTS - 1, 3), p.shape)
        if p.shape[0] == 0:
            raise InvariantViolation("pool-nonempty")
        if np.any(np.linalg.norm(p, axis=2) >= math.pi + 1e-9):
            raise InvariantViolation("pool-axis-angle-canonical")
        p.setflags(write=False)
        object.__setattr__(self, "poses", p)

    def __len__(self):
        return self.poses.shape[0]


def pose_distance(a: Pose, b: Pose) -> float:
    """Sum over the 15 non-root joints of the geodesic angle
    2*acos(|<qa, qb>|); the root is excluded (viewpoints are resampled
    independently)."""
    qa = axis_angle_to_quat(a.relative())
    qb = axis_angle_to_quat(b.relative())
    return float(np.sum(quat_geodesic_angle(qa, qb)))


def _distances_to(query_rel_quats: np.ndarray, rel_rotations: np.ndarray) -> np.ndarray:
    qc = axis_angle_to_quat(rel_rotations)  # (m, 15, 4)
    return np.sum(quat_geodesic_angle(query_rel_quats[None, :, :], qc), axis=1)


def farthest_reference(pose: Pose, pool: ReferencePosePool, k: int = 2000, rng=None) -> Pose:
    """Draw min(k, |pool|) candidates uniformly without replacement and
    return the one farthest from `pose`; ties break to the lowest pool
    index. Returned pose has an identity root."""
    if len(pool) == 0:
        raise InvariantViolation("pool-nonempty")
    if k < 1:
        raise EngineError(f"k must be >= 1, got {k}")
    m = min(k, len(pool))
    if m == len(pool):
        candidates = np.arange(len(pool))
    else:
        if rng is None:
            raise EngineError("rng required when subsampling the pool")
        candidates = np.sort(rng.choice(len(pool), size=m, replace=False))
    qa = axis_angle_to_quat(pose.relative())
    dists = _distances_to(qa, pool.poses[candidates])
    best = candidates[int(np.argmax(dists))]  # argmax takes the first max: lowest index after sort
    rotations = np.zeros((J_JOINTS, 3))
    rotations[1:] = pool.poses[best]
    return Pose(rotations)


# ---------------------------------------------------------------------------
# slerp interpolation


def slerp_pose(a: Pose, b: Pose, t: float) -> Pose:
    """Per-joint quaternion Slerp (hemisphere corrected), root included;
    translation interpolated linearly. Endpoints are returned exactly."""
    if not 0.0 <= t <= 1.0:
        raise EngineError(f"t must be in [0, 1], got {t}")
    if t == 0.0:
        return Pose(a.rotations, a.root_translation)
    if t == 1.0:
        return Pose(b.rotations, b.root_translation)
    qa = axis_angle_to_quat(a.rotations)
    qb = axis_angle_to_quat(b.rotations)
    q = quat_slerp(qa, qb, t)
    trans = (1.0 - t) * a.root_translation + t * b.root_translation
    return Pose(quat_to_axis_angle(q), trans)


def interpolate_chain(a: Pose, b: Pose, n: int = 8):
    """n strictly interior poses at t_k = k/(n+1), k = 1..n."""
    if n < 1:
        raise EngineError(f"n must be >= 1, got {n}")
    return [slerp_pose(a, b, k / (n + 1)) for k in range(1, n + 1)]


# ---------------------------------------------------------------------------
# the full articulation pipeline


def pose_at(
    spec: PoseGridSpec,
    tree: KinematicTree,
    pool: ReferencePosePool,
    seed: int,
    index: int,
    n_interp: int = 8,
    k_candidates: int = 2000,
) -> Pose:
    """Pose at stream position `index`: groups of (1 + n_interp) poses share
    a base pose and its farthest reference; every emission gets a fresh
    sphere-sampled root. Pure in (spec, pool, seed, index)."""
    group, slot = divmod(index, n_interp + 1)
    base = base_pose_at(spec, tree, group % spec.base_pose_count())
    if slot == 0:
        rel = base
    else:
        ref = farthest_reference(base, pool, k_candidates, derive_rng(seed, "reference", group))
        rel = slerp_pose(base, ref, slot / (n_interp + 1))
    root = viewpoint_to_rotation(sample_viewpoint(derive_rng(seed, "viewpoint", index)))
    return rel.with_root(rotation=root)


def synthesize_pose_set(
    spec: PoseGridSpec,
    tree: KinematicTree,
    pool: ReferencePosePool,
    n_target: int,
    seed: int,
    n_interp: int = 8,
    k_candidates: int = 2000,
):
    """Stream of n_target poses; identical to indexing pose_at(0..n-1)."""
    for i in range(n_target):
        yield pose_at(spec, tree, pool, seed, i, n_interp=n_interp, k_candidates=k_candidates)


# ---------------------------------------------------------------------------
# serialization (documented in docs/dataset-format.md)


def save_grid_spec(path, spec: PoseGridSpec) -> None:
    doc = {
        "format": "pose-grid",
        "fingers": [list(g) for g in spec.fingers],
        "angles": [[list(axis) for axis in joint] for joint in spec.angles],
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def load_grid_spec(path) -> PoseGridSpec:
    doc = json.loads(Path(path).read_text())
    if doc.get("format") != "pose-grid":
        raise InvariantViolation("grid-spec-format")
    return PoseGridSpec(
        angles=tuple(tuple(tuple(axis) for axis in joint) for joint in doc["angles"]),
        fingers=tuple(tuple(g) for g in doc["fingers"]),
    )


def save_pool(path, pool: ReferencePosePool, binary: bool = False) -> None:
    path = Path(path)
    doc = {"format": "pose-pool", "source": pool.source, "count": len(pool)}
    if binary:
        bin_name = path.stem + ".bin"
        (path.parent / bin_name).write_bytes(np.ascontiguousarray(pool.poses, dtype="<f4").tobytes())
        doc["file"] = bin_name
        doc["dtype"] = "<f4"
        doc["shape"] = [len(pool), J_JOINTS - 1, 3]
    else:
        doc["poses"] = [[list(map(float, row)) for row in p] for p in pool.poses]
    path.write_text(json.dumps(doc, sort_keys=True) + "\n")


def load_pool(path) -> ReferencePosePool:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no pose pool at {path}")
    doc = json.loads(path.read_text())
    if doc.get("format") != "pose-pool":
        raise InvariantViolation("pool-format")
    if "file" in doc:
        raw = np.frombuffer((path.parent / doc["file"]).read_bytes(), dtype=np.dtype(doc["dtype"]))
        poses = raw.reshape(tuple(doc["shape"])).astype(np.float64)
    else:
        poses = np.asarray(doc["poses"], dtype=np.float64)
    return ReferencePosePool(poses=poses, source=doc.get("source", "unknown"))


def make_random_pool(tree: KinematicTree, n: int, seed: int, excursion: float = 1.15) -> ReferencePosePool:
    """Synthetic stand-in for an in-the-wild pose pool: per-axis angles
    drawn uniformly inside the limits scaled by `excursion` (slightly
    outside legal range, like real captures)."""
    rng = derive_rng(seed, "random-pool")
    lo = tree.joint_limits[:, :, 0] * excursion
    hi = tree.joint_limits[:, :, 1] * excursion
    poses = np.zeros((n, J_JOINTS - 1, 3))
    for i in range(n):
        trips = rng.uniform(lo, hi)
        for j in range(J_JOINTS - 1):
            rot = axis_angles_to_rotation(tree.joint_axes[j], trips[j])
            poses[i, j] = matrix_to_axis_angle(rot)
    return ReferencePosePool(poses=poses, source=f"procedural-random:{n}:{seed}")
