"""Colour-space conversions between 8-bit rasters."""
import numpy as np

from ..errors import InvalidInputError
from .types import ColorSpace, Raster


def round_half_up(x):
    return np.floor(np.asarray(x, dtype=np.float64) + 0.5)


def _require(img, space):
    if img.space is not space:
        raise InvalidInputError(f"expected a {space.value} raster, got {img.space.value}")


def to_hsv(img):
    """RGB -> HSV with H in [0, 179] (degrees / 2) and S, V in [0, 255]."""
    _require(img, ColorSpace.RGB)
    rgb = img.data.astype(np.float64)
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    v = rgb.max(axis=2)
    diff = v - rgb.min(axis=2)
    nz = diff > 0
    safe = np.where(nz, diff, 1.0)
    s = np.where(v > 0, diff * 255.0 / np.where(v > 0, v, 1.0), 0.0)
    h = np.where(v == r, 60.0 * (g - b) / safe,
                 np.where(v == g, 120.0 + 60.0 * (b - r) / safe,
                          240.0 + 60.0 * (r - g) / safe))
    h = np.where(nz, h, 0.0)
    h = np.where(h < 0, h + 360.0, h)
    h8 = round_half_up(h / 2.0) % 180
    out = np.stack([h8, round_half_up(s), v], axis=2).astype(np.uint8)
    return Raster(out, ColorSpace.HSV)


def to_gray(img):
    """Rec.601 luma, rounded half-up."""
    _require(img, ColorSpace.RGB)
    rgb = img.data.astype(np.float64)
    luma = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    return Raster(np.clip(round_half_up(luma), 0, 255).astype(np.uint8), ColorSpace.GRAY)


def gray_to_rgb(img):
    _require(img, ColorSpace.GRAY)
    return Raster(np.repeat(img.data, 3, axis=2), ColorSpace.RGB)


def hsv_to_rgb(img):
    """Inverse of :func:`to_hsv`, used for display and debug dumps."""
    _require(img, ColorSpace.HSV)
    hsv = img.data.astype(np.float64)
    h = hsv[..., 0] * 2.0
    s = hsv[..., 1] / 255.0
    v = hsv[..., 2]
    c = v * s
    hp = h / 60.0
    x = c * (1 - np.abs(hp % 2 - 1))
    zero = np.zeros_like(c)
    sector = np.floor(hp).astype(int) % 6
    choices_r = [c, x, zero, zero, x, c]
    choices_g = [x, c, c, x, zero, zero]
    choices_b = [zero, zero, x, c, c, x]
    m = v - c
    r = np.choose(sector, choices_r) + m
    g = np.choose(sector, choices_g) + m
    b = np.choose(sector, choices_b) + m
    out = np.clip(round_half_up(np.stack([r, g, b], axis=2)), 0, 255).astype(np.uint8)
    return Raster(out, ColorSpace.RGB)
