"""NumPy rasterizer kernel.

Pure-Python fallback for the compiled kernel in _kernel.pyx. The
arithmetic here is written expression-for-expression like the Cython
version (same operation order, float64 throughout, no fused multiply-add)
so both kernels produce byte-identical framebuffers.
"""

import math

import numpy as np

NAME = "python"


def raster_mesh(verts, faces, uv, texture, fx, fy, cx, cy, near,
                ambient, diffuse, light_dir, hit_id, color, depth, hit):
    """Rasterize one textured mesh into the shared framebuffers.

    verts: (N, 3) float64 camera-frame; faces: (F, 3) int64; uv: (N, 2);
    texture: (S, S, 4) float64 linear; color/depth/hit are (H, W[, 3])
    buffers mutated in place. Triangles touching the near plane are
    dropped (no clipping).
    """
    height, width = depth.shape
    tex_side = texture.shape[0]
    lx, ly, lz = float(light_dir[0]), float(light_dir[1]), float(light_dir[2])

    for f in range(faces.shape[0]):
        i0, i1, i2 = faces[f, 0], faces[f, 1], faces[f, 2]
        z0 = verts[i0, 2]
        z1 = verts[i1, 2]
        z2 = verts[i2, 2]
        if z0 <= near or z1 <= near or z2 <= near:
            continue

        x0 = fx * verts[i0, 0] / z0 + cx
        y0 = fy * verts[i0, 1] / z0 + cy
        x1 = fx * verts[i1, 0] / z1 + cx
        y1 = fy * verts[i1, 1] / z1 + cy
        x2 = fx * verts[i2, 0] / z2 + cx
        y2 = fy * verts[i2, 1] / z2 + cy

        area2 = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)
        if area2 == 0.0:
            continue

        px_lo = max(0, int(math.ceil(min(x0, x1, x2) - 0.5)))
        px_hi = min(width - 1, int(math.floor(max(x0, x1, x2) - 0.5)))
        py_lo = max(0, int(math.ceil(min(y0, y1, y2) - 0.5)))
        py_hi = min(height - 1, int(math.floor(max(y0, y1, y2) - 0.5)))
        if px_lo > px_hi or py_lo > py_hi:
            continue

        # flat shading: face normal flipped toward the camera
        e1x = verts[i1, 0] - verts[i0, 0]
        e1y = verts[i1, 1] - verts[i0, 1]
        e1z = z1 - z0
        e2x = verts[i2, 0] - verts[i0, 0]
        e2y = verts[i2, 1] - verts[i0, 1]
        e2z = z2 - z0
        nx = e1y * e2z - e1z * e2y
        ny = e1z * e2x - e1x * e2z
        nz = e1x * e2y - e1y * e2x
        nlen = math.sqrt(nx * nx + ny * ny + nz * nz)
        if nlen == 0.0:
            continue
        nx = nx / nlen
        ny = ny / nlen
        nz = nz / nlen
        ccx = (verts[i0, 0] + verts[i1, 0] + verts[i2, 0]) / 3.0
        ccy = (verts[i0, 1] + verts[i1, 1] + verts[i2, 1]) / 3.0
        ccz = (z0 + z1 + z2) / 3.0
        if nx * ccx + ny * ccy + nz * ccz > 0.0:
            nx = -nx
            ny = -ny
            nz = -nz
        lambert = -(nx * lx + ny * ly + nz * lz)
        if lambert < 0.0:
            lambert = 0.0
        shade_r = ambient[0] + diffuse[0] * lambert
        shade_g = ambient[1] + diffuse[1] * lambert
        shade_b = ambient[2] + diffuse[2] * lambert

        iz0 = 1.0 / z0
        iz1 = 1.0 / z1
        iz2 = 1.0 / z2
        u0z = uv[i0, 0] * iz0
        u1z = uv[i1, 0] * iz1
        u2z = uv[i2, 0] * iz2
        v0z = uv[i0, 1] * iz0
        v1z = uv[i1, 1] * iz1
        v2z = uv[i2, 1] * iz2

        pxs = np.arange(px_lo, px_hi + 1, dtype=np.float64) + 0.5
        pys = np.arange(py_lo, py_hi + 1, dtype=np.float64) + 0.5
        gx = pxs[None, :]
        gy = pys[:, None]

        w0 = ((x2 - x1) * (gy - y1) - (y2 - y1) * (gx - x1)) / area2
        w1 = ((x0 - x2) * (gy - y2) - (y0 - y2) * (gx - x2)) / area2
        w2 = ((x1 - x0) * (gy - y0) - (y1 - y0) * (gx - x0)) / area2
        inside = (w0 >= 0.0) & (w1 >= 0.0) & (w2 >= 0.0)
        if not inside.any():
            continue

        inv_z = w0 * iz0 + w1 * iz1 + w2 * iz2
        with np.errstate(divide="ignore", invalid="ignore"):
            z = 1.0 / inv_z
        depth_view = depth[py_lo : py_hi + 1, px_lo : px_hi + 1]
        write = inside & (z < depth_view)
        if not write.any():
            continue

        uoz = w0 * u0z + w1 * u1z + w2 * u2z
        voz = w0 * v0z + w1 * v1z + w2 * v2z
        u = uoz[write] * z[write]
        v = voz[write] * z[write]

        tx = u * tex_side - 0.5
        ty = v * tex_side - 0.5
        tx = np.minimum(np.maximum(tx, 0.0), tex_side - 1.0)
        ty = np.minimum(np.maximum(ty, 0.0), tex_side - 1.0)
        x0t = np.floor(tx).astype(np.int64)
        y0t = np.floor(ty).astype(np.int64)
        x1t = np.minimum(x0t + 1, tex_side - 1)
        y1t = np.minimum(y0t + 1, tex_side - 1)
        fxf = (tx - x0t)[:, None]
        fyf = (ty - y0t)[:, None]
        c00 = texture[y0t, x0t, :3]
        c01 = texture[y0t, x1t, :3]
        c10 = texture[y1t, x0t, :3]
        c11 = texture[y1t, x1t, :3]
        albedo = (c00 * (1.0 - fxf) + c01 * fxf) * (1.0 - fyf) + (c10 * (1.0 - fxf) + c11 * fxf) * fyf

        shaded = np.empty_like(albedo)
        shaded[:, 0] = albedo[:, 0] * shade_r
        shaded[:, 1] = albedo[:, 1] * shade_g
        shaded[:, 2] = albedo[:, 2] * shade_b

        color_view = color[py_lo : py_hi + 1, px_lo : px_hi + 1]
        hit_view = hit[py_lo : py_hi + 1, px_lo : px_hi + 1]
        color_view[write] = shaded
        depth_view[write] = z[write]
        hit_view[write] = hit_id
