"""Scene rasterization and full-sample rendering.

Kernel selection: the compiled Cython kernel is used when importable, the
NumPy kernel otherwise; HANDFORGE_KERNEL=python|compiled forces one. Both
produce byte-identical output (asserted in tests and the benchmark).
"""

import os
from dataclasses import dataclass, field

import numpy as np

from ..assets import AccessorySpec, AssetCatalog, AssetSelection, TextureMap, apply_skin_tone_offset, glove_skinning_weights
from ..errors import EngineError
from ..imaging import resize_bilinear, srgb_encode
from ..model.kinematics import rest_joints
from ..model.skinning import keypoints21, skin
from ..model.types import HandTemplate, Pose
from ..rotations import apply_rigid
from .camera import NEAR_PLANE, Camera, LightRig, project

from . import _kernel_np

try:  # pragma: no cover - exercised via the compiled build
    from . import _kernel as _kernel_compiled
except ImportError:
    _kernel_compiled = None

HIT_NONE = -1
HIT_HAND = 0


def available_kernels():
    names = [_kernel_np.NAME]
    if _kernel_compiled is not None:
        names.insert(0, _kernel_compiled.NAME)
    return names


def _select_kernel():
    forced = os.environ.get("HANDFORGE_KERNEL", "").strip()
    if forced == "python":
        return _kernel_np
    if forced == "compiled":
        if _kernel_compiled is None:
            raise EngineError("HANDFORGE_KERNEL=compiled but the extension is not built")
        return _kernel_compiled
    if forced:
        raise EngineError(f"unknown HANDFORGE_KERNEL {forced!r}")
    return _kernel_compiled if _kernel_compiled is not None else _kernel_np


def active_kernel_name() -> str:
    return _select_kernel().NAME


@dataclass(frozen=True)
class SceneMesh:
    """One textured draw call, world-frame vertices."""

    vertices: np.ndarray
    faces: np.ndarray
    uv_coords: np.ndarray
    texture: np.ndarray  # (S, S, 4) linear
    hit_id: int


@dataclass
class RenderOutput:
    color: np.ndarray  # (H, W, 3) uint8 sRGB
    depth: np.ndarray  # (H, W) float64 meters, +inf where empty
    mask: np.ndarray  # (H, W) bool
    hit: np.ndarray  # (H, W) int32: -1 none, 0 hand, 1+k accessory k

    def validate(self):
        finite = np.isfinite(self.depth)
        if not np.array_equal(finite, self.mask):
            raise EngineError("render-output mask/depth incoherent")


def rasterize(meshes, camera: Camera, lights: LightRig, background, feather: bool = False) -> RenderOutput:
    """Z-buffered textured rasterization over a background image.

    background: linear float (Hb, Wb, 3); resized to the camera resolution
    when it differs. Deterministic: triangles are drawn in mesh/face order
    by a single kernel invocation per mesh.
    """
    h, w = camera.height, camera.width
    bg = np.asarray(background, dtype=np.float64)
    if bg.shape[:2] != (h, w):
        bg = resize_bilinear(bg, h, w)
    if bg.shape != (h, w, 3):
        raise EngineError(f"background resized to {bg.shape}, expected {(h, w, 3)}")

    color = np.ascontiguousarray(bg, dtype=np.float64)
    depth = np.full((h, w), np.inf, dtype=np.float64)
    hit = np.full((h, w), HIT_NONE, dtype=np.int32)

    ambient = np.ascontiguousarray(lights.ambient_color * lights.ambient_intensity, dtype=np.float64)
    diffuse = np.ascontiguousarray(lights.directional_color * lights.directional_intensity, dtype=np.float64)
    light_dir = np.ascontiguousarray(lights.direction, dtype=np.float64)

    kernel = _select_kernel()
    for mesh in meshes:
        verts_cam = apply_rigid(camera.pose, mesh.vertices)
        kernel.raster_mesh(
            np.ascontiguousarray(verts_cam, dtype=np.float64),
            np.ascontiguousarray(mesh.faces, dtype=np.int64),
            np.ascontiguousarray(mesh.uv_coords, dtype=np.float64),
            np.ascontiguousarray(mesh.texture, dtype=np.float64),
            float(camera.fx), float(camera.fy), float(camera.cx), float(camera.cy), NEAR_PLANE,
            ambient, diffuse, light_dir,
            int(mesh.hit_id),
            color, depth, hit,
        )

    mask = hit >= HIT_NONE + 1
    if feather:
        color = _feather_edges(color, bg, mask)
    out = RenderOutput(color=srgb_encode(color), depth=depth, mask=mask, hit=hit)
    out.validate()
    return out


def _feather_edges(color, bg, mask):
    """Optional 1-px soft edge: boundary foreground pixels blend 50/50 with
    the background, approximating an alpha-blended composite."""
    m = mask.astype(np.uint8)
    interior = np.ones_like(m)
    interior[1:, :] &= m[:-1, :]
    interior[:-1, :] &= m[1:, :]
    interior[:, 1:] &= m[:, :-1]
    interior[:, :-1] &= m[:, 1:]
    edge = (m == 1) & (interior == 0)
    out = color.copy()
    out[edge] = 0.5 * color[edge] + 0.5 * bg[edge]
    return out


@dataclass(frozen=True)
class ResolvedAssets:
    """Concrete per-sample assets: texture with tone offset applied,
    optional accessory, decoded background."""

    texture: TextureMap
    accessory: AccessorySpec | None
    background: np.ndarray  # linear float (H, W, 3)


def resolve_assets(catalog: AssetCatalog, selection: AssetSelection) -> ResolvedAssets:
    texture = apply_skin_tone_offset(catalog.textures[selection.texture_id], selection.tone_offset)
    accessory = None if selection.accessory_id is None else catalog.accessories[selection.accessory_id]
    background = catalog.backgrounds[selection.background_id].image
    return ResolvedAssets(texture=texture, accessory=accessory, background=background)


def render_sample(template: HandTemplate, pose: Pose, assets: ResolvedAssets, camera: Camera, lights: LightRig,
                  feather: bool = False):
    """Skin the hand, place the accessory, rasterize, and project the 21
    keypoints. Returns (RenderOutput, joints3d camera frame (21, 3),
    joints2d (21, 2), valid (21,)); joints2d is exactly project(joints3d).
    """
    posed = skin(template, pose)
    meshes = [
        SceneMesh(
            vertices=posed.vertices,
            faces=template.faces,
            uv_coords=template.uv_coords,
            texture=assets.texture.image,
            hit_id=HIT_HAND,
        )
    ]
    acc = assets.accessory
    if acc is not None:
        if acc.category == "glove":
            weights = glove_skinning_weights(acc, template, rest_joints(template))
            rest_world = acc.vertices @ acc.local_rotation.T + acc.local_translation + rest_joints(template)[acc.parent_bone]
            mats = np.array(posed.bone_transforms)
            joints0 = rest_joints(template)
            mats[:, :3, 3] -= np.einsum("jab,jb->ja", posed.bone_transforms[:, :3, :3], joints0)
            per_vertex = np.einsum("vj,jab->vab", weights, mats)
            acc_verts = np.einsum("vab,vb->va", per_vertex[:, :3, :3], rest_world) + per_vertex[:, :3, 3]
        else:
            from ..assets import accessory_world_transform

            world = accessory_world_transform(acc, posed.bone_transforms)
            acc_verts = apply_rigid(world, acc.vertices)
        meshes.append(
            SceneMesh(
                vertices=acc_verts,
                faces=acc.faces,
                uv_coords=acc.uv_coords,
                texture=acc.texture.image,
                hit_id=HIT_HAND + 1,
            )
        )

    output = rasterize(meshes, camera, lights, assets.background, feather=feather)
    joints3d = apply_rigid(camera.pose, keypoints21(template, posed))
    joints2d, valid = project(camera, joints3d)
    return output, joints3d, joints2d, valid
