"""Image plumbing: sRGB transfer, PNG I/O, deterministic resampling.

All compositing and shading in the engine happens in linear color; sRGB is
applied only at the 8-bit encode/decode boundary. The resampling here is a
plain NumPy implementation so outputs are bit-identical across platforms
and independent of any image library's resize kernels.
"""

import numpy as np
from PIL import Image


def srgb_decode(u8):
    """uint8 sRGB -> linear float64 in [0, 1]."""
    c = np.asarray(u8, dtype=np.float64) / 255.0
    return np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)


def srgb_encode(linear):
    """linear float in [0, 1] -> uint8 sRGB (input clamped)."""
    c = np.clip(np.asarray(linear, dtype=np.float64), 0.0, 1.0)
    s = np.where(c <= 0.0031308, c * 12.92, 1.055 * c ** (1.0 / 2.4) - 0.055)
    return (s * 255.0 + 0.5).astype(np.uint8)


def load_png(path):
    """Decode a PNG/JPEG to uint8 (H, W, C); grayscale promoted to RGB."""
    with Image.open(path) as im:
        if im.mode not in ("RGB", "RGBA"):
            im = im.convert("RGB")
        return np.asarray(im, dtype=np.uint8)


def save_png(path, u8):
    u8 = np.asarray(u8, dtype=np.uint8)
    Image.fromarray(u8).save(path, format="PNG")


def png_bytes(u8):
    import io

    buf = io.BytesIO()
    Image.fromarray(np.asarray(u8, dtype=np.uint8)).save(buf, format="PNG")
    return buf.getvalue()


def resize_bilinear(img, out_h, out_w):
    """Center-aligned bilinear resize with edge clamping.

    img: float (H, W, C) or (H, W); returns float64 of the requested size.
    """
    img = np.asarray(img, dtype=np.float64)
    h, w = img.shape[:2]
    if (h, w) == (out_h, out_w):
        return img.copy()
    ys = (np.arange(out_h) + 0.5) * (h / out_h) - 0.5
    xs = (np.arange(out_w) + 0.5) * (w / out_w) - 0.5
    return _sample_grid(img, ys[:, None] * np.ones((1, out_w)), np.ones((out_h, 1)) * xs[None, :], pad=None)


def _sample_grid(img, ys, xs, pad):
    """Bilinear sample img at float coordinates.

    pad=None clamps at the edges; a float pads out-of-range samples with
    that constant.
    """
    img = np.asarray(img, dtype=np.float64)
    h, w = img.shape[:2]
    flat = img.reshape(h, w, -1)

    if pad is None:
        ysc = np.clip(ys, 0.0, h - 1.0)
        xsc = np.clip(xs, 0.0, w - 1.0)
    else:
        ysc, xsc = ys, xs

    y0 = np.floor(ysc).astype(np.int64)
    x0 = np.floor(xsc).astype(np.int64)
    fy = ysc - y0
    fx = xsc - x0
    y0c = np.clip(y0, 0, h - 1)
    y1c = np.clip(y0 + 1, 0, h - 1)
    x0c = np.clip(x0, 0, w - 1)
    x1c = np.clip(x0 + 1, 0, w - 1)

    c00 = flat[y0c, x0c]
    c01 = flat[y0c, x1c]
    c10 = flat[y1c, x0c]
    c11 = flat[y1c, x1c]
    fy = fy[..., None]
    fx = fx[..., None]
    out = (c00 * (1 - fx) + c01 * fx) * (1 - fy) + (c10 * (1 - fx) + c11 * fx) * fy

    if pad is not None:
        outside = (ys < -0.5) | (ys > h - 0.5) | (xs < -0.5) | (xs > w - 0.5)
        out[outside] = pad
    if img.ndim == 2:
        return out[..., 0]
    return out.reshape(ys.shape + img.shape[2:])


def warp_affine(img, inverse_map, out_h, out_w, pad=0.0):
    """Resample img through an inverse 2x3 affine (output px -> source px)."""
    inverse_map = np.asarray(inverse_map, dtype=np.float64)
    xs_out = np.arange(out_w) + 0.5
    ys_out = np.arange(out_h) + 0.5
    gx, gy = np.meshgrid(xs_out, ys_out)
    src_x = inverse_map[0, 0] * gx + inverse_map[0, 1] * gy + inverse_map[0, 2] - 0.5
    src_y = inverse_map[1, 0] * gx + inverse_map[1, 1] * gy + inverse_map[1, 2] - 0.5
    return _sample_grid(img, src_y, src_x, pad=pad)
