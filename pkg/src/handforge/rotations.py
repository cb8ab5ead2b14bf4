"""Rotation math: axis-angle, quaternions, matrices, rigid transforms.

Conventions
-----------
* quaternions are (w, x, y, z), unit norm
* axis-angle vectors are angle * unit_axis, canonical angle in [0, pi]
* matrices act on column vectors; rigid transforms are 4x4 homogeneous
* functions accept stacked inputs: leading dimensions are broadcast

Axis-angle magnitudes below 1e-8 are treated as the identity rotation to
avoid normalization blow-up.
"""

import numpy as np

TINY_ANGLE = 1e-8


def axis_angle_to_quat(aa):
    aa = np.asarray(aa, dtype=np.float64)
    angle = np.linalg.norm(aa, axis=-1, keepdims=True)
    half = 0.5 * angle
    # sin(x)/x -> 1 as x -> 0; switch to the limit under TINY_ANGLE
    small = angle < TINY_ANGLE
    safe = np.where(small, 1.0, angle)
    k = np.where(small, 0.5, np.sin(half) / safe)
    w = np.cos(half)
    return np.concatenate([w, aa * k], axis=-1)


def quat_to_axis_angle(q):
    q = np.asarray(q, dtype=np.float64)
    w = q[..., :1]
    v = q[..., 1:]
    # canonicalize to w >= 0 so the angle lands in [0, pi]
    sign = np.where(w < 0.0, -1.0, 1.0)
    w = w * sign
    v = v * sign
    vnorm = np.linalg.norm(v, axis=-1, keepdims=True)
    angle = 2.0 * np.arctan2(vnorm, w)
    small = vnorm < TINY_ANGLE
    safe = np.where(small, 1.0, vnorm)
    return np.where(small, 2.0 * v, v / safe * angle)


def quat_normalize(q):
    q = np.asarray(q, dtype=np.float64)
    return q / np.linalg.norm(q, axis=-1, keepdims=True)


def quat_mul(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def quat_to_matrix(q):
    q = np.asarray(q, dtype=np.float64)
    w, x, y, z = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    xx, yy, zz = x * x, y * y, z * z
    xy, xz, yz = x * y, x * z, y * z
    wx, wy, wz = w * x, w * y, w * z
    m = np.empty(q.shape[:-1] + (3, 3), dtype=np.float64)
    m[..., 0, 0] = 1 - 2 * (yy + zz)
    m[..., 0, 1] = 2 * (xy - wz)
    m[..., 0, 2] = 2 * (xz + wy)
    m[..., 1, 0] = 2 * (xy + wz)
    m[..., 1, 1] = 1 - 2 * (xx + zz)
    m[..., 1, 2] = 2 * (yz - wx)
    m[..., 2, 0] = 2 * (xz - wy)
    m[..., 2, 1] = 2 * (yz + wx)
    m[..., 2, 2] = 1 - 2 * (xx + yy)
    return m


def matrix_to_quat(m):
    """Shepperd's method, numerically stable for all rotations."""
    m = np.asarray(m, dtype=np.float64)
    single = m.ndim == 2
    m = m.reshape((-1, 3, 3))
    n = m.shape[0]
    q = np.empty((n, 4), dtype=np.float64)
    for i in range(n):
        r = m[i]
        tr = r[0, 0] + r[1, 1] + r[2, 2]
        if tr > 0:
            s = np.sqrt(tr + 1.0) * 2
            q[i] = [0.25 * s, (r[2, 1] - r[1, 2]) / s, (r[0, 2] - r[2, 0]) / s, (r[1, 0] - r[0, 1]) / s]
        elif r[0, 0] > r[1, 1] and r[0, 0] > r[2, 2]:
            s = np.sqrt(1.0 + r[0, 0] - r[1, 1] - r[2, 2]) * 2
            q[i] = [(r[2, 1] - r[1, 2]) / s, 0.25 * s, (r[0, 1] + r[1, 0]) / s, (r[0, 2] + r[2, 0]) / s]
        elif r[1, 1] > r[2, 2]:
            s = np.sqrt(1.0 + r[1, 1] - r[0, 0] - r[2, 2]) * 2
            q[i] = [(r[0, 2] - r[2, 0]) / s, (r[0, 1] + r[1, 0]) / s, 0.25 * s, (r[1, 2] + r[2, 1]) / s]
        else:
            s = np.sqrt(1.0 + r[2, 2] - r[0, 0] - r[1, 1]) * 2
            q[i] = [(r[1, 0] - r[0, 1]) / s, (r[0, 2] + r[2, 0]) / s, (r[1, 2] + r[2, 1]) / s, 0.25 * s]
    q = quat_normalize(q)
    return q[0] if single else q


def axis_angle_to_matrix(aa):
    return quat_to_matrix(axis_angle_to_quat(aa))


def matrix_to_axis_angle(m):
    return quat_to_axis_angle(matrix_to_quat(m))


def compose_axis_angle(a, b):
    """Axis-angle of R(a) @ R(b), canonicalized."""
    return quat_to_axis_angle(quat_mul(axis_angle_to_quat(a), axis_angle_to_quat(b)))


def rotation_about(axis, angle):
    axis = np.asarray(axis, dtype=np.float64)
    return axis_angle_to_matrix(axis * angle)


def rotation_between(u, v):
    """Minimal rotation matrix taking unit vector u to unit vector v."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    c = float(np.dot(u, v))
    axis = np.cross(u, v)
    s = float(np.linalg.norm(axis))
    if s < TINY_ANGLE:
        if c > 0:
            return np.eye(3)
        # antipodal: rotate pi about any axis orthogonal to u
        ortho = np.array([1.0, 0.0, 0.0])
        if abs(u[0]) > 0.9:
            ortho = np.array([0.0, 1.0, 0.0])
        ortho = ortho - u * np.dot(ortho, u)
        ortho /= np.linalg.norm(ortho)
        return axis_angle_to_matrix(ortho * np.pi)
    angle = np.arctan2(s, c)
    return axis_angle_to_matrix(axis / s * angle)


def quat_geodesic_angle(qa, qb):
    """Geodesic angle between two rotations: 2*acos(|<qa, qb>|)."""
    qa = np.asarray(qa, dtype=np.float64)
    qb = np.asarray(qb, dtype=np.float64)
    dot = np.abs(np.sum(qa * qb, axis=-1))
    return 2.0 * np.arccos(np.clip(dot, -1.0, 1.0))


def quat_slerp(qa, qb, t):
    """Slerp with hemisphere correction (qb negated when dot < 0).

    Scalar t; qa/qb may be stacked (..., 4). Near-parallel quaternions fall
    back to normalized lerp.
    """
    qa = np.asarray(qa, dtype=np.float64)
    qb = np.asarray(qb, dtype=np.float64)
    dot = np.sum(qa * qb, axis=-1, keepdims=True)
    qb = np.where(dot < 0.0, -qb, qb)
    dot = np.abs(dot)
    dot = np.clip(dot, -1.0, 1.0)
    omega = np.arccos(dot)
    sin_omega = np.sin(omega)
    near = sin_omega < 1e-9
    safe_sin = np.where(near, 1.0, sin_omega)
    s0 = np.where(near, 1.0 - t, np.sin((1.0 - t) * omega) / safe_sin)
    s1 = np.where(near, t, np.sin(t * omega) / safe_sin)
    return quat_normalize(s0 * qa + s1 * qb)


def make_rigid(rotation, translation):
    rotation = np.asarray(rotation, dtype=np.float64)
    translation = np.asarray(translation, dtype=np.float64)
    out = np.eye(4, dtype=np.float64)
    out[:3, :3] = rotation
    out[:3, 3] = translation
    return out


def rigid_inverse(transform):
    r = transform[:3, :3]
    t = transform[:3, 3]
    return make_rigid(r.T, -r.T @ t)


def apply_rigid(transform, points):
    points = np.asarray(points, dtype=np.float64)
    return points @ transform[:3, :3].T + transform[:3, 3]
