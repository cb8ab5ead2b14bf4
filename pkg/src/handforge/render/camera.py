"""Pinhole camera and light rig."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import InvariantViolation

NEAR_PLANE = 0.01  # meters


def _ro(arr):
    out = np.ascontiguousarray(arr, dtype=np.float64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Camera:
    fx: float
    fy: float
    cx: float
    cy: float
    width: int
    height: int
    pose: np.ndarray = field(default_factory=lambda: np.eye(4))  # world -> camera

    def __post_init__(self):
        if self.fx <= 0 or self.fy <= 0:
            raise InvariantViolation("camera-focal-positive")
        if self.width < 1 or self.height < 1:
            raise InvariantViolation("camera-size-positive")
        object.__setattr__(self, "pose", _ro(self.pose))

    def intrinsics_dict(self):
        return {
            "fx": self.fx, "fy": self.fy, "cx": self.cx, "cy": self.cy,
            "width": self.width, "height": self.height,
        }

    def scaled(self, width: int, height: int) -> "Camera":
        """Same field of view at a different resolution."""
        sx = width / self.width
        sy = height / self.height
        return Camera(self.fx * sx, self.fy * sy, self.cx * sx, self.cy * sy, width, height, self.pose)


def default_camera(size: int = 512) -> Camera:
    """f = size px, principal point centered; the default scene places the
    hand root about 0.5 m out so it spans roughly half the frame."""
    return Camera(fx=float(size), fy=float(size), cx=size / 2.0, cy=size / 2.0, width=size, height=size)


def project(camera: Camera, points_cam: np.ndarray):
    """Pinhole projection of camera-frame points.

    Returns (pixels (N, 2), valid (N,)); valid is False at or behind the
    near plane (0.01 m). Pixel values at invalid rows are computed with a
    clamped depth so they stay finite.
    """
    p = np.asarray(points_cam, dtype=np.float64)
    z = p[:, 2]
    valid = z > NEAR_PLANE
    zs = np.where(valid, z, NEAR_PLANE)
    u = camera.fx * p[:, 0] / zs + camera.cx
    v = camera.fy * p[:, 1] / zs + camera.cy
    return np.stack([u, v], axis=1), valid


@dataclass(frozen=True)
class LightRig:
    ambient_color: np.ndarray = field(default_factory=lambda: np.ones(3))
    ambient_intensity: float = 0.35
    direction: np.ndarray = field(default_factory=lambda: np.array([0.3, -0.5, 0.8]) / np.linalg.norm([0.3, -0.5, 0.8]))
    directional_color: np.ndarray = field(default_factory=lambda: np.ones(3))
    directional_intensity: float = 0.65

    def __post_init__(self):
        object.__setattr__(self, "ambient_color", _ro(self.ambient_color))
        object.__setattr__(self, "directional_color", _ro(self.directional_color))
        d = np.asarray(self.direction, dtype=np.float64)
        n = float(np.linalg.norm(d))
        if n < 1e-12:
            raise InvariantViolation("light-direction-unit")
        object.__setattr__(self, "direction", _ro(d / n))
        if self.ambient_intensity < 0 or self.directional_intensity < 0:
            raise InvariantViolation("light-intensity-nonnegative")

    def to_dict(self):
        return {
            "ambient_color": self.ambient_color.tolist(),
            "ambient_intensity": self.ambient_intensity,
            "direction": self.direction.tolist(),
            "directional_color": self.directional_color.tolist(),
            "directional_intensity": self.directional_intensity,
        }

    @classmethod
    def from_dict(cls, doc) -> "LightRig":
        return cls(
            ambient_color=np.asarray(doc["ambient_color"], dtype=np.float64),
            ambient_intensity=float(doc["ambient_intensity"]),
            direction=np.asarray(doc["direction"], dtype=np.float64),
            directional_color=np.asarray(doc["directional_color"], dtype=np.float64),
            directional_intensity=float(doc["directional_intensity"]),
        )


def default_lights() -> LightRig:
    return LightRig()
