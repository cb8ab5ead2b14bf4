"""Texture maps, decals, accessories, backgrounds: types, compositing,
attachment transforms, sampling, and the on-disk catalog format
(docs/asset-format.md).

Color math happens in linear space; sRGB applies only at PNG encode and
decode. The catalog ships procedural placeholder assets (3 skin tones,
parametric decals, torus rings / boxy watches / bracelet / glove) so the
pipeline runs without hand-crafted artist content.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import AssetError, EngineError
from .imaging import load_png, save_png, srgb_decode, srgb_encode, _sample_grid
from .model.types import J_JOINTS, HandTemplate
from .rotations import make_rigid
from .seeding import derive_rng

SKIN_TONES = ("dark", "brown", "light")
DECAL_KINDS = ("bandage", "palm_prints", "scars", "tattoos", "moles", "nail_colors")
ACCESSORY_CATEGORIES = ("ring", "watch", "bracelet", "glove")
TONE_OFFSET_LIMIT = 0.15

_TONE_RGB = {
    "dark": (0.110, 0.065, 0.042),
    "brown": (0.430, 0.240, 0.140),
    "light": (0.760, 0.570, 0.460),
}


def _ro(arr, dtype=np.float32):
    out = np.ascontiguousarray(arr, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class TextureMap:
    """Square linear RGBA float32 (S, S, 4), channels in [0, 1]."""

    image: np.ndarray
    skin_tone: str = "light"
    decal_tags: tuple = ()

    def __post_init__(self):
        img = _ro(self.image)
        if img.ndim != 3 or img.shape[2] != 4 or img.shape[0] != img.shape[1]:
            raise AssetError(f"texture must be square RGBA, got {img.shape}")
        if float(img.min()) < 0.0 or float(img.max()) > 1.0:
            raise AssetError("texture channels must lie in [0, 1]")
        object.__setattr__(self, "image", img)

    @property
    def side(self) -> int:
        return self.image.shape[0]


@dataclass(frozen=True)
class Decal:
    """RGBA patch composited over a UV rectangle (u0, v0, u1, v1)."""

    image: np.ndarray
    uv_rect: tuple
    kind: str = "moles"

    def __post_init__(self):
        object.__setattr__(self, "image", _ro(self.image))
        u0, v0, u1, v1 = self.uv_rect
        if not (0.0 <= u0 < u1 <= 1.0 and 0.0 <= v0 < v1 <= 1.0):
            raise AssetError(f"decal rectangle {self.uv_rect} outside [0,1]^2")


@dataclass(frozen=True)
class AccessorySpec:
    """Textured mesh rigidly attached in a parent bone's rest frame.

    Gloves deviate: they are skinned at render time with weights copied
    from the nearest hand vertex (rest pose), since a rigid glove is
    wrong the moment a finger bends.
    """

    vertices: np.ndarray
    faces: np.ndarray
    uv_coords: np.ndarray
    texture: TextureMap
    category: str
    parent_bone: int
    local_rotation: np.ndarray  # (3, 3), det +1
    local_translation: np.ndarray  # (3,)

    def __post_init__(self):
        object.__setattr__(self, "vertices", _ro(self.vertices, np.float64))
        object.__setattr__(self, "faces", _ro(self.faces, np.int64))
        object.__setattr__(self, "uv_coords", _ro(self.uv_coords, np.float64))
        object.__setattr__(self, "local_rotation", _ro(self.local_rotation, np.float64))
        object.__setattr__(self, "local_translation", _ro(self.local_translation, np.float64))
        if self.category not in ACCESSORY_CATEGORIES:
            raise AssetError(f"unknown accessory category {self.category!r}")
        if not 0 <= self.parent_bone < J_JOINTS:
            raise AssetError(f"parent_bone {self.parent_bone} out of range")
        r = self.local_rotation
        if np.max(np.abs(r @ r.T - np.eye(3))) > 1e-6 or np.linalg.det(r) < 0:
            raise AssetError("local_transform rotation must be orthonormal with det +1")

    def local_transform(self) -> np.ndarray:
        return make_rigid(self.local_rotation, self.local_translation)


@dataclass(frozen=True)
class BackgroundImage:
    """Linear RGB float32 (H, W, 3); path kept when loaded from disk."""

    image: np.ndarray
    path: str = ""

    def __post_init__(self):
        object.__setattr__(self, "image", _ro(self.image))


@dataclass(frozen=True)
class AssetCatalog:
    """Asset lists; an entry's id is its position (dense by construction)."""

    textures: tuple = ()
    decals: tuple = ()
    accessories: tuple = ()
    backgrounds: tuple = ()

    def require(self, section: str):
        items = getattr(self, section)
        if len(items) == 0:
            raise AssetError(f"catalog section {section!r} is empty")
        return items


@dataclass(frozen=True)
class AssetSelection:
    """One sample's asset draw."""

    texture_id: int
    tone_offset: float
    accessory_id: int | None
    background_id: int


# ---------------------------------------------------------------------------
# texture operations


def apply_skin_tone_offset(tex: TextureMap, offset: float) -> TextureMap:
    """Add a global offset to the linear RGB channels, clamped to [0, 1];
    alpha untouched. |offset| must be <= 0.15."""
    if abs(offset) > TONE_OFFSET_LIMIT + 1e-12:
        raise EngineError(f"tone offset {offset} outside [-0.15, +0.15]")
    img = np.array(tex.image, dtype=np.float32)
    img[..., :3] = np.clip(img[..., :3] + np.float32(offset), 0.0, 1.0)
    return TextureMap(image=img, skin_tone=tex.skin_tone, decal_tags=tex.decal_tags)


def composite_decals(base: TextureMap, decals) -> TextureMap:
    """Source-over compositing of each decal into its UV rectangle, in list
    order. The decal patch is bilinearly resized to the rectangle."""
    out = np.array(base.image, dtype=np.float64)
    side = base.side
    tags = list(base.decal_tags)
    for decal in decals:
        u0, v0, u1, v1 = decal.uv_rect
        # v follows image convention: v=0 is the top row
        x0, x1 = int(round(u0 * side)), int(round(u1 * side))
        y0, y1 = int(round(v0 * side)), int(round(v1 * side))
        w, h = max(x1 - x0, 1), max(y1 - y0, 1)
        ph, pw = decal.image.shape[:2]
        ys = (np.arange(h) + 0.5) * (ph / h) - 0.5
        xs = (np.arange(w) + 0.5) * (pw / w) - 0.5
        patch = _sample_grid(decal.image.astype(np.float64), ys[:, None] * np.ones((1, w)), np.ones((h, 1)) * xs[None, :], pad=None)
        src_rgb = patch[..., :3]
        src_a = patch[..., 3:4]
        dst = out[y0:y1, x0:x1]
        dst_rgb = dst[..., :3]
        dst_a = dst[..., 3:4]
        out_a = src_a + dst_a * (1.0 - src_a)
        out[y0:y1, x0:x1, :3] = src_rgb * src_a + dst_rgb * (1.0 - src_a)
        out[y0:y1, x0:x1, 3:4] = out_a
        if decal.kind not in tags:
            tags.append(decal.kind)
    return TextureMap(image=np.clip(out, 0.0, 1.0).astype(np.float32), skin_tone=base.skin_tone, decal_tags=tuple(tags))


# ---------------------------------------------------------------------------
# accessories


def accessory_world_transform(spec: AccessorySpec, bone_transforms: np.ndarray) -> np.ndarray:
    """World placement: parent bone transform composed with the fixed local
    transform. Wrist-parented accessories therefore move with the root
    rotation alone."""
    if not 0 <= spec.parent_bone < bone_transforms.shape[0]:
        raise EngineError(f"bone index {spec.parent_bone} out of range")
    return bone_transforms[spec.parent_bone] @ spec.local_transform()


def glove_skinning_weights(spec: AccessorySpec, template: HandTemplate, rest_joints_xyz: np.ndarray) -> np.ndarray:
    """Nearest-neighbor weight transfer in rest pose: each glove vertex
    copies the blend weights of the closest hand vertex."""
    rest_world = spec.vertices @ spec.local_rotation.T + spec.local_translation + rest_joints_xyz[spec.parent_bone]
    hand = template.rest_vertices
    weights = np.empty((rest_world.shape[0], J_JOINTS))
    for i, p in enumerate(rest_world):
        d2 = np.sum((hand - p) ** 2, axis=1)
        weights[i] = template.skinning.weights[int(np.argmin(d2))]
    return weights


# ---------------------------------------------------------------------------
# sampling


def sample_assets(catalog: AssetCatalog, rng, accessory_prob: float = 0.25) -> AssetSelection:
    """Uniform texture/background, accessory with probability
    accessory_prob (uniform when present), tone offset ~ U[-0.15, +0.15].

    Draw order is fixed (texture, tone, accessory coin, accessory id,
    background) so streams are reproducible.
    """
    textures = catalog.require("textures")
    backgrounds = catalog.require("backgrounds")
    texture_id = int(rng.integers(len(textures)))
    tone = float(rng.uniform(-TONE_OFFSET_LIMIT, TONE_OFFSET_LIMIT))
    accessory_id = None
    if accessory_prob > 0.0 and rng.random() < accessory_prob:
        accessories = catalog.require("accessories")
        accessory_id = int(rng.integers(len(accessories)))
    background_id = int(rng.integers(len(backgrounds)))
    return AssetSelection(texture_id, tone, accessory_id, background_id)


# ---------------------------------------------------------------------------
# procedural placeholder catalog


def _mottle(rng, side, base_rgb, amplitude=0.035):
    """Low-frequency multiplicative mottling over a flat tone."""
    coarse = rng.normal(0.0, 1.0, size=(8, 8))
    ys = (np.arange(side) + 0.5) * (8 / side) - 0.5
    fine = _sample_grid(coarse, ys[:, None] * np.ones((1, side)), np.ones((side, 1)) * ys[None, :], pad=None)
    img = np.empty((side, side, 4), dtype=np.float64)
    img[..., :3] = np.clip(np.asarray(base_rgb) * (1.0 + amplitude * fine[..., None]), 0.0, 1.0)
    img[..., 3] = 1.0
    return img


def _decal_patch(kind, rng, side=64):
    """Parametric RGBA decal patches."""
    yy, xx = np.mgrid[0:side, 0:side]
    cx = cy = (side - 1) / 2.0
    r = np.sqrt((xx - cx) ** 2 + (yy - cy) ** 2) / (side / 2.0)
    img = np.zeros((side, side, 4), dtype=np.float64)
    if kind == "moles":
        img[..., :3] = (0.06, 0.035, 0.02)
        img[..., 3] = np.clip(1.2 - 3.0 * r, 0.0, 1.0)
    elif kind == "scars":
        band = np.abs(yy - cy - 0.25 * (xx - cx)) < side * 0.06
        img[..., :3] = (0.55, 0.30, 0.26)
        img[..., 3] = np.where(band, 0.9, 0.0)
    elif kind == "tattoos":
        rings = (np.sin(r * 14.0) > 0.45) & (r < 0.9)
        img[..., :3] = (0.05, 0.12, 0.30)
        img[..., 3] = np.where(rings, 0.85, 0.0)
    elif kind == "nail_colors":
        hue = rng.uniform(0.0, 1.0)
        img[..., :3] = (0.6 + 0.4 * np.sin(6.28 * hue), 0.2, 0.5)
        img[..., 3] = (r < 0.85).astype(np.float64)
    elif kind == "palm_prints":
        arcs = (np.sin((xx + yy) * 0.35) > 0.6) & (r < 1.0)
        img[..., :3] = (0.18, 0.10, 0.07)
        img[..., 3] = np.where(arcs, 0.5, 0.0)
    elif kind == "bandage":
        band = np.abs(yy - cy) < side * 0.22
        img[..., :3] = (0.86, 0.82, 0.72)
        img[..., 3] = np.where(band, 1.0, 0.0)
    else:
        raise AssetError(f"unknown decal kind {kind!r}")
    return np.clip(img, 0.0, 1.0).astype(np.float32)


def _torus(major, minor, n_major=24, n_minor=10, axis="y"):
    """Torus mesh around the given axis through the origin."""
    us = 2 * np.pi * np.arange(n_major) / n_major
    vs = 2 * np.pi * np.arange(n_minor) / n_minor
    verts = []
    uv = []
    for i, u in enumerate(us):
        for j, v in enumerate(vs):
            ring_r = major + minor * np.cos(v)
            x, z = ring_r * np.cos(u), ring_r * np.sin(u)
            h = minor * np.sin(v)
            if axis == "y":
                verts.append((x, h, z))
            else:
                verts.append((x, z, h))
            uv.append((i / n_major, j / n_minor))
    faces = []
    for i in range(n_major):
        for j in range(n_minor):
            a = i * n_minor + j
            b = ((i + 1) % n_major) * n_minor + j
            a1 = i * n_minor + (j + 1) % n_minor
            b1 = ((i + 1) % n_major) * n_minor + (j + 1) % n_minor
            faces.append((a, b, b1))
            faces.append((a, b1, a1))
    return np.asarray(verts), np.asarray(faces, dtype=np.int64), np.asarray(uv)


def _box(size):
    sx, sy, sz = np.asarray(size) / 2.0
    corners = np.array(
        [
            (-sx, -sy, -sz), (sx, -sy, -sz), (sx, sy, -sz), (-sx, sy, -sz),
            (-sx, -sy, sz), (sx, -sy, sz), (sx, sy, sz), (-sx, sy, sz),
        ]
    )
    quads = [(0, 1, 2, 3), (4, 7, 6, 5), (0, 4, 5, 1), (3, 2, 6, 7), (0, 3, 7, 4), (1, 5, 6, 2)]
    faces = []
    for a, b, c, d in quads:
        faces.append((a, b, c))
        faces.append((a, c, d))
    uv = (corners[:, :2] - corners[:, :2].min(axis=0)) / np.ptp(corners[:, :2], axis=0)
    return corners, np.asarray(faces, dtype=np.int64), uv * 0.96 + 0.02


def _tube(radius_x, radius_z, y0, y1, n_ring=16, n_len=6):
    ys = np.linspace(y0, y1, n_len)
    ang = 2 * np.pi * np.arange(n_ring) / n_ring
    verts = []
    uv = []
    for k, y in enumerate(ys):
        for a in range(n_ring):
            verts.append((radius_x * np.cos(ang[a]), y, radius_z * np.sin(ang[a])))
            uv.append((a / n_ring, k / (n_len - 1)))
    faces = []
    for k in range(n_len - 1):
        for a in range(n_ring):
            a1 = (a + 1) % n_ring
            p = k * n_ring
            q = (k + 1) * n_ring
            faces.append((p + a, p + a1, q + a1))
            faces.append((p + a, q + a1, q + a))
    return np.asarray(verts), np.asarray(faces, dtype=np.int64), np.asarray(uv)


def _accessory_texture(rng, rgb, side=64):
    img = np.empty((side, side, 4), dtype=np.float64)
    checker = ((np.arange(side)[:, None] // 8 + np.arange(side)[None, :] // 8) % 2).astype(np.float64)
    img[..., :3] = np.asarray(rgb) * (0.85 + 0.15 * checker[..., None])
    img[..., 3] = 1.0
    return TextureMap(image=np.clip(img, 0, 1).astype(np.float32), skin_tone="light")


def generate_placeholder_catalog(seed: int, texture_size: int = 256) -> AssetCatalog:
    """Deterministic stand-in catalog: one texture per skin tone, one decal
    per kind, five accessories covering all four categories, three
    backgrounds."""
    rng = derive_rng(seed, "placeholder-catalog")

    textures = tuple(
        TextureMap(
            image=np.clip(_mottle(rng, texture_size, _TONE_RGB[tone]), 0, 1).astype(np.float32),
            skin_tone=tone,
        )
        for tone in SKIN_TONES
    )

    decals = tuple(
        Decal(image=_decal_patch(kind, rng), uv_rect=(0.30 + 0.05 * i, 0.30, 0.42 + 0.05 * i, 0.42), kind=kind)
        for i, kind in enumerate(DECAL_KINDS)
    )

    ring_v, ring_f, ring_uv = _torus(0.0105, 0.0028)
    ring2_v, ring2_f, ring2_uv = _torus(0.0110, 0.0022)
    watch_v, watch_f, watch_uv = _box((0.034, 0.012, 0.010))
    brac_v, brac_f, brac_uv = _torus(0.052, 0.004)
    glove_v, glove_f, glove_uv = _tube(0.050, 0.020, -0.055, 0.095, n_ring=16, n_len=8)

    accessories = (
        AccessorySpec(  # ring on the index middle phalanx
            vertices=ring_v, faces=ring_f, uv_coords=ring_uv,
            texture=_accessory_texture(rng, (0.83, 0.69, 0.22)),
            category="ring", parent_bone=5,
            local_rotation=np.eye(3), local_translation=np.array([0.0, 0.012, 0.0]),
        ),
        AccessorySpec(  # ring on the ring-finger middle phalanx
            vertices=ring2_v, faces=ring2_f, uv_coords=ring2_uv,
            texture=_accessory_texture(rng, (0.75, 0.75, 0.78)),
            category="ring", parent_bone=11,
            local_rotation=np.eye(3), local_translation=np.array([0.0, 0.012, 0.0]),
        ),
        AccessorySpec(  # boxy watch on the wrist top
            vertices=watch_v, faces=watch_f, uv_coords=watch_uv,
            texture=_accessory_texture(rng, (0.12, 0.12, 0.14)),
            category="watch", parent_bone=0,
            local_rotation=np.eye(3), local_translation=np.array([0.0, -0.045, 0.020]),
        ),
        AccessorySpec(  # bracelet around the wrist
            vertices=brac_v, faces=brac_f, uv_coords=brac_uv,
            texture=_accessory_texture(rng, (0.60, 0.35, 0.20)),
            category="bracelet", parent_bone=0,
            local_rotation=np.eye(3), local_translation=np.array([0.0, -0.052, 0.0]),
        ),
        AccessorySpec(  # glove shell over palm and fingers (skinned at render)
            vertices=glove_v, faces=glove_f, uv_coords=glove_uv,
            texture=_accessory_texture(rng, (0.25, 0.28, 0.55)),
            category="glove", parent_bone=0,
            local_rotation=np.eye(3), local_translation=np.array([0.0, 0.0, 0.0]),
        ),
    )

    bgs = []
    for i, size in enumerate(((256, 256), (240, 320), (256, 256))):
        h, w = size
        if i == 0:
            img = np.linspace(0.08, 0.55, h)[:, None, None] * np.ones((1, w, 3))
        elif i == 1:
            checker = ((np.arange(h)[:, None] // 20 + np.arange(w)[None, :] // 20) % 2)
            img = 0.12 + 0.35 * checker[..., None] * np.ones((1, 1, 3))
        else:
            img = rng.uniform(0.05, 0.6, size=(h // 8, w // 8, 3))
            ys = (np.arange(h) + 0.5) * (img.shape[0] / h) - 0.5
            xs = (np.arange(w) + 0.5) * (img.shape[1] / w) - 0.5
            img = _sample_grid(img, ys[:, None] * np.ones((1, w)), np.ones((h, 1)) * xs[None, :], pad=None)
        bgs.append(BackgroundImage(image=np.clip(img, 0, 1).astype(np.float32)))

    return AssetCatalog(textures=textures, decals=decals, accessories=accessories, backgrounds=tuple(bgs))


# ---------------------------------------------------------------------------
# on-disk catalog


def save_catalog(catalog: AssetCatalog, root) -> None:
    root = Path(root)
    (root / "textures").mkdir(parents=True, exist_ok=True)
    for i, tex in enumerate(catalog.textures):
        save_png(root / "textures" / f"{i:03d}_{tex.skin_tone}.png", srgb_encode(tex.image[..., :3]))
    for i, decal in enumerate(catalog.decals):
        d = root / "decals" / decal.kind
        d.mkdir(parents=True, exist_ok=True)
        rgba = np.concatenate([srgb_encode(decal.image[..., :3]), (decal.image[..., 3:] * 255 + 0.5).astype(np.uint8)], axis=2)
        save_png(d / f"{i:03d}.png", rgba)
        (d / f"{i:03d}.json").write_text(json.dumps({"uv_rect": list(decal.uv_rect)}) + "\n")
    for i, acc in enumerate(catalog.accessories):
        d = root / "accessories" / f"{i:03d}"
        d.mkdir(parents=True, exist_ok=True)
        header = {
            "n_vertices": int(acc.vertices.shape[0]),
            "n_faces": int(acc.faces.shape[0]),
            "arrays": {
                "vertices": {"dtype": "<f4", "shape": [int(acc.vertices.shape[0]), 3]},
                "faces": {"dtype": "<u4", "shape": [int(acc.faces.shape[0]), 3]},
                "uv_coords": {"dtype": "<f4", "shape": [int(acc.vertices.shape[0]), 2]},
            },
        }
        blob = (
            np.ascontiguousarray(acc.vertices, dtype="<f4").tobytes()
            + np.ascontiguousarray(acc.faces, dtype="<u4").tobytes()
            + np.ascontiguousarray(acc.uv_coords, dtype="<f4").tobytes()
        )
        (d / "mesh.bin").write_bytes(blob)
        (d / "header.json").write_text(json.dumps(header, sort_keys=True) + "\n")
        save_png(d / "texture.png", srgb_encode(acc.texture.image[..., :3]))
        attach = {
            "category": acc.category,
            "parent_bone": int(acc.parent_bone),
            "rotation": [[float(x) for x in row] for row in acc.local_rotation],
            "translation": [float(x) for x in acc.local_translation],
        }
        (d / "attach.json").write_text(json.dumps(attach, sort_keys=True) + "\n")
    (root / "backgrounds").mkdir(parents=True, exist_ok=True)
    for i, bg in enumerate(catalog.backgrounds):
        save_png(root / "backgrounds" / f"{i:03d}.png", srgb_encode(bg.image))


def load_catalog(root) -> AssetCatalog:
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"no asset directory at {root}")

    textures = []
    for path in sorted((root / "textures").glob("*.png")) if (root / "textures").is_dir() else []:
        stem = path.stem
        tone = stem.split("_")[-1]
        if tone not in SKIN_TONES:
            raise AssetError(f"textures/{path.name}: unknown skin tone {tone!r}")
        rgb = srgb_decode(load_png(path))
        img = np.concatenate([rgb, np.ones(rgb.shape[:2] + (1,))], axis=2)
        textures.append(TextureMap(image=img.astype(np.float32), skin_tone=tone))

    decals = []
    decal_root = root / "decals"
    if decal_root.is_dir():
        for kind_dir in sorted(p for p in decal_root.iterdir() if p.is_dir()):
            for path in sorted(kind_dir.glob("*.png")):
                sidecar = path.with_suffix(".json")
                if not sidecar.is_file():
                    raise AssetError(f"decals/{kind_dir.name}/{path.name}: missing placement sidecar")
                raw = load_png(path)
                if raw.shape[2] == 4:
                    img = np.concatenate([srgb_decode(raw[..., :3]), raw[..., 3:] / 255.0], axis=2)
                else:
                    img = np.concatenate([srgb_decode(raw), np.ones(raw.shape[:2] + (1,))], axis=2)
                meta = json.loads(sidecar.read_text())
                decals.append(Decal(image=img.astype(np.float32), uv_rect=tuple(meta["uv_rect"]), kind=kind_dir.name))

    accessories = []
    acc_root = root / "accessories"
    if acc_root.is_dir():
        for d in sorted(p for p in acc_root.iterdir() if p.is_dir()):
            for required in ("mesh.bin", "header.json", "texture.png", "attach.json"):
                if not (d / required).is_file():
                    raise AssetError(f"accessories/{d.name}: missing {required}")
            header = json.loads((d / "header.json").read_text())
            nv = header["n_vertices"]
            nf = header["n_faces"]
            blob = (d / "mesh.bin").read_bytes()
            off = 0
            verts = np.frombuffer(blob, dtype="<f4", count=nv * 3, offset=off).reshape(nv, 3)
            off += nv * 3 * 4
            faces = np.frombuffer(blob, dtype="<u4", count=nf * 3, offset=off).reshape(nf, 3)
            off += nf * 3 * 4
            uv = np.frombuffer(blob, dtype="<f4", count=nv * 2, offset=off).reshape(nv, 2)
            rgb = srgb_decode(load_png(d / "texture.png"))
            tex = TextureMap(image=np.concatenate([rgb, np.ones(rgb.shape[:2] + (1,))], axis=2).astype(np.float32))
            attach = json.loads((d / "attach.json").read_text())
            accessories.append(
                AccessorySpec(
                    vertices=verts.astype(np.float64),
                    faces=faces.astype(np.int64),
                    uv_coords=uv.astype(np.float64),
                    texture=tex,
                    category=attach["category"],
                    parent_bone=int(attach["parent_bone"]),
                    local_rotation=np.asarray(attach["rotation"], dtype=np.float64),
                    local_translation=np.asarray(attach["translation"], dtype=np.float64),
                )
            )

    backgrounds = []
    bg_root = root / "backgrounds"
    if bg_root.is_dir():
        for path in sorted(list(bg_root.glob("*.png")) + list(bg_root.glob("*.jpg"))):
            backgrounds.append(BackgroundImage(image=srgb_decode(load_png(path)[..., :3]).astype(np.float32), path=str(path)))

    return AssetCatalog(
        textures=tuple(textures), decals=tuple(decals), accessories=tuple(accessories), backgrounds=tuple(backgrounds)
    )


def catalog_hashes(catalog: AssetCatalog) -> dict:
    """Stable content hashes per section, for manifests."""
    import hashlib

    def _h(chunks):
        h = hashlib.sha256()
        for c in chunks:
            h.update(c)
        return h.hexdigest()

    return {
        "textures": _h(t.image.tobytes() for t in catalog.textures),
        "decals": _h(d.image.tobytes() for d in catalog.decals),
        "accessories": _h(
            np.ascontiguousarray(a.vertices, dtype="<f8").tobytes() + a.texture.image.tobytes()
            for a in catalog.accessories
        ),
        "backgrounds": _h(b.image.tobytes() for b in catalog.backgrounds),
    }
