# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled rasterizer kernel.

Mirrors _kernel_np.raster_mesh expression-for-expression (same operation
order, float64, no fused multiply-add — built with -ffp-contract=off) so
the two kernels produce byte-identical framebuffers.
"""

from libc.math cimport ceil, floor, sqrt

import numpy as np

NAME = "compiled"


def raster_mesh(const double[:, ::1] verts, const long long[:, ::1] faces, const double[:, ::1] uv,
                const double[:, :, ::1] texture,
                double fx, double fy, double cx, double cy, double near,
                const double[::1] ambient, const double[::1] diffuse, const double[::1] light_dir,
                int hit_id,
                double[:, :, ::1] color, double[:, ::1] depth, int[:, ::1] hit):
    cdef Py_ssize_t height = depth.shape[0]
    cdef Py_ssize_t width = depth.shape[1]
    cdef Py_ssize_t tex_side = texture.shape[0]
    cdef double lx = light_dir[0]
    cdef double ly = light_dir[1]
    cdef double lz = light_dir[2]

    cdef Py_ssize_t f, i0, i1, i2, px, py
    cdef double z0, z1, z2, x0, y0, x1, y1, x2, y2, area2
    cdef double e1x, e1y, e1z, e2x, e2y, e2z, nx, ny, nz, nlen
    cdef double ccx, ccy, ccz, lambert
    cdef double shade_r, shade_g, shade_b
    cdef double iz0, iz1, iz2, u0z, u1z, u2z, v0z, v1z, v2z
    cdef double gx, gy, w0, w1, w2, inv_z, z, uoz, voz, u, v
    cdef double tx, ty, fxf, fyf
    cdef Py_ssize_t px_lo, px_hi, py_lo, py_hi, x0t, y0t, x1t, y1t
    cdef double mn, mx
    cdef double a_r, a_g, a_b
    cdef double c00, c01, c10, c11

    for f in range(faces.shape[0]):
        i0 = <Py_ssize_t> faces[f, 0]
        i1 = <Py_ssize_t> faces[f, 1]
        i2 = <Py_ssize_t> faces[f, 2]
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

        mn = x0
        if x1 < mn: mn = x1
        if x2 < mn: mn = x2
        mx = x0
        if x1 > mx: mx = x1
        if x2 > mx: mx = x2
        px_lo = <Py_ssize_t> ceil(mn - 0.5)
        if px_lo < 0: px_lo = 0
        px_hi = <Py_ssize_t> floor(mx - 0.5)
        if px_hi > width - 1: px_hi = width - 1
        mn = y0
        if y1 < mn: mn = y1
        if y2 < mn: mn = y2
        mx = y0
        if y1 > mx: mx = y1
        if y2 > mx: mx = y2
        py_lo = <Py_ssize_t> ceil(mn - 0.5)
        if py_lo < 0: py_lo = 0
        py_hi = <Py_ssize_t> floor(mx - 0.5)
        if py_hi > height - 1: py_hi = height - 1
        if px_lo > px_hi or py_lo > py_hi:
            continue

        e1x = verts[i1, 0] - verts[i0, 0]
        e1y = verts[i1, 1] - verts[i0, 1]
        e1z = z1 - z0
        e2x = verts[i2, 0] - verts[i0, 0]
        e2y = verts[i2, 1] - verts[i0, 1]
        e2z = z2 - z0
        nx = e1y * e2z - e1z * e2y
        ny = e1z * e2x - e1x * e2z
        nz = e1x * e2y - e1y * e2x
        nlen = sqrt(nx * nx + ny * ny + nz * nz)
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

        for py in range(py_lo, py_hi + 1):
            gy = <double> py + 0.5
            for px in range(px_lo, px_hi + 1):
                gx = <double> px + 0.5
                w0 = ((x2 - x1) * (gy - y1) - (y2 - y1) * (gx - x1)) / area2
                if w0 < 0.0:
                    continue
                w1 = ((x0 - x2) * (gy - y2) - (y0 - y2) * (gx - x2)) / area2
                if w1 < 0.0:
                    continue
                w2 = ((x1 - x0) * (gy - y0) - (y1 - y0) * (gx - x0)) / area2
                if w2 < 0.0:
                    continue

                inv_z = w0 * iz0 + w1 * iz1 + w2 * iz2
                z = 1.0 / inv_z
                if z >= depth[py, px]:
                    continue

                uoz = w0 * u0z + w1 * u1z + w2 * u2z
                voz = w0 * v0z + w1 * v1z + w2 * v2z
                u = uoz * z
                v = voz * z

                tx = u * tex_side - 0.5
                ty = v * tex_side - 0.5
                if tx < 0.0: tx = 0.0
                if tx > tex_side - 1.0: tx = tex_side - 1.0
                if ty < 0.0: ty = 0.0
                if ty > tex_side - 1.0: ty = tex_side - 1.0
                x0t = <Py_ssize_t> floor(tx)
                y0t = <Py_ssize_t> floor(ty)
                x1t = x0t + 1
                if x1t > tex_side - 1: x1t = tex_side - 1
                y1t = y0t + 1
                if y1t > tex_side - 1: y1t = tex_side - 1
                fxf = tx - <double> x0t
                fyf = ty - <double> y0t

                c00 = texture[y0t, x0t, 0]
                c01 = texture[y0t, x1t, 0]
                c10 = texture[y1t, x0t, 0]
                c11 = texture[y1t, x1t, 0]
                a_r = (c00 * (1.0 - fxf) + c01 * fxf) * (1.0 - fyf) + (c10 * (1.0 - fxf) + c11 * fxf) * fyf
                c00 = texture[y0t, x0t, 1]
                c01 = texture[y0t, x1t, 1]
                c10 = texture[y1t, x0t, 1]
                c11 = texture[y1t, x1t, 1]
                a_g = (c00 * (1.0 - fxf) + c01 * fxf) * (1.0 - fyf) + (c10 * (1.0 - fxf) + c11 * fxf) * fyf
                c00 = texture[y0t, x0t, 2]
                c01 = texture[y0t, x1t, 2]
                c10 = texture[y1t, x0t, 2]
                c11 = texture[y1t, x1t, 2]
                a_b = (c00 * (1.0 - fxf) + c01 * fxf) * (1.0 - fyf) + (c10 * (1.0 - fxf) + c11 * fxf) * fyf

                color[py, px, 0] = a_r * shade_r
                color[py, px, 1] = a_g * shade_g
                color[py, px, 2] = a_b * shade_b
                depth[py, px] = z
                hit[py, px] = hit_id
