"""Deterministic software renderer: pinhole projection, z-buffered textured
triangles with perspective-correct UVs, ambient + directional Lambertian
shading, background compositing, and silhouette masks.

The per-pixel inner loop is the engine's hot kernel: a compiled Cython
extension is used when available, with a bit-identical NumPy fallback
selected at import (see benchmarks/bench_raster.py for the comparison).
"""

from .camera import Camera, LightRig, default_camera, default_lights, project
from .raster import (
    RenderOutput,
    SceneMesh,
    active_kernel_name,
    available_kernels,
    rasterize,
    render_sample,
    resolve_assets,
)

__all__ = [
    "Camera",
    "LightRig",
    "default_camera",
    "default_lights",
    "project",
    "RenderOutput",
    "SceneMesh",
    "rasterize",
    "render_sample",
    "resolve_assets",
    "active_kernel_name",
    "available_kernels",
]
