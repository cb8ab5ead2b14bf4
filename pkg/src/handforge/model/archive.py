"""Model archive I/O.

An archive is a directory holding `header.json` plus one raw little-endian
binary per array: float32 for real arrays, uint32 for index arrays, all
row-major. Layout is documented in docs/model-format.md. Loading validates
every skinning/kinematic invariant and converts to float64 in memory.
"""

import json
from pathlib import Path

import numpy as np

from ..errors import DimensionMismatch, InvariantViolation
from .types import J_JOINTS, N_POSE_BASIS, HandTemplate, KinematicTree, SkinningData

FORMAT_NAME = "hand-template"
FORMAT_VERSION = "1.0"

_REAL = "<f4"
_INDEX = "<u4"

# name -> (dtype tag, shape builder given (Nv, Nf))
_ARRAYS = {
    "rest_vertices": (_REAL, lambda nv, nf: (nv, 3)),
    "faces": (_INDEX, lambda nv, nf: (nf, 3)),
    "uv_coords": (_REAL, lambda nv, nf: (nv, 2)),
    "weights": (_REAL, lambda nv, nf: (nv, J_JOINTS)),
    "pose_blend": (_REAL, lambda nv, nf: (nv, 3, N_POSE_BASIS)),
    "joint_regressor": (_REAL, lambda nv, nf: (nv, J_JOINTS)),
    "joint_axes": (_REAL, lambda nv, nf: (J_JOINTS - 1, 3, 3)),
    "joint_limits": (_REAL, lambda nv, nf: (J_JOINTS - 1, 3, 2)),
}


def save_template(template: HandTemplate, archive_path) -> None:
    root = Path(archive_path)
    root.mkdir(parents=True, exist_ok=True)
    arrays = {
        "rest_vertices": template.rest_vertices,
        "faces": template.faces,
        "uv_coords": template.uv_coords,
        "weights": template.skinning.weights,
        "pose_blend": template.skinning.pose_blend,
        "joint_regressor": template.skinning.joint_regressor,
        "joint_axes": template.kinematic.joint_axes,
        "joint_limits": template.kinematic.joint_limits,
    }
    header = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "n_vertices": template.n_vertices,
        "n_faces": template.n_faces,
        "n_joints": J_JOINTS,
        "parents": template.kinematic.parents.tolist(),
        "fingertip_vertex_ids": template.fingertip_vertex_ids.tolist(),
        "arrays": {},
    }
    for name, arr in arrays.items():
        dtype, shape_fn = _ARRAYS[name]
        shape = shape_fn(template.n_vertices, template.n_faces)
        data = np.ascontiguousarray(arr, dtype=np.dtype(dtype))
        if data.shape != shape:
            raise DimensionMismatch(name, shape, data.shape)
        fname = f"{name}.bin"
        (root / fname).write_bytes(data.tobytes())
        header["arrays"][name] = {"file": fname, "dtype": dtype, "shape": list(shape)}
    tmp = root / "header.json.tmp"
    tmp.write_text(json.dumps(header, indent=2, sort_keys=True) + "\n")
    tmp.replace(root / "header.json")


def load_template(archive_path) -> HandTemplate:
    root = Path(archive_path)
    header_path = root / "header.json"
    if not header_path.is_file():
        raise FileNotFoundError(f"no model archive header at {header_path}")
    header = json.loads(header_path.read_text())
    if header.get("format") != FORMAT_NAME:
        raise InvariantViolation("archive-format", f"unexpected format {header.get('format')!r}")
    nv = int(header["n_vertices"])
    nf = int(header["n_faces"])
    if int(header.get("n_joints", -1)) != J_JOINTS:
        raise DimensionMismatch("n_joints", J_JOINTS, header.get("n_joints"))

    arrays = {}
    for name, (dtype, shape_fn) in _ARRAYS.items():
        meta = header["arrays"].get(name)
        if meta is None:
            raise FileNotFoundError(f"archive missing array entry {name!r}")
        path = root / meta["file"]
        if not path.is_file():
            raise FileNotFoundError(f"archive missing array file {path}")
        expected = shape_fn(nv, nf)
        declared = tuple(meta["shape"])
        if declared != expected:
            raise DimensionMismatch(name, expected, declared)
        raw = np.frombuffer(path.read_bytes(), dtype=np.dtype(meta["dtype"]))
        if raw.size != int(np.prod(expected)):
            raise DimensionMismatch(f"{name} byte size", int(np.prod(expected)), raw.size)
        arrays[name] = raw.reshape(expected)

    skinning = SkinningData(
        weights=arrays["weights"],
        pose_blend=arrays["pose_blend"],
        joint_regressor=arrays["joint_regressor"],
    )
    kinematic = KinematicTree(
        parents=np.asarray(header["parents"], dtype=np.int64),
        joint_axes=arrays["joint_axes"],
        joint_limits=arrays["joint_limits"],
    )
    template = HandTemplate(
        rest_vertices=arrays["rest_vertices"],
        faces=arrays["faces"].astype(np.int64),
        uv_coords=arrays["uv_coords"],
        skinning=skinning,
        kinematic=kinematic,
        fingertip_vertex_ids=np.asarray(header["fingertip_vertex_ids"], dtype=np.int64),
    )
    template.validate()
    return template
