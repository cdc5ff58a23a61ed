"""Convolution, thresholding and Canny edge detection."""
import math

import numpy as np

from .. import _kernels
from ..errors import InvalidInputError
from .color import round_half_up
from .types import BitMask, ColorSpace, Raster

CANNY_SIGMA = 1.4


def gaussian_kernel(sigma):
    """Normalized 1-D kernel with half-width ``ceil(3 * sigma)``."""
    if not sigma > 0:
        raise InvalidInputError(f"sigma must be > 0, got {sigma}")
    r = int(math.ceil(3 * sigma))
    i = np.arange(-r, r + 1, dtype=np.float64)
    k = np.exp(-(i * i) / (2.0 * sigma * sigma))
    return k / k.sum()


def _convolve_axis(a, kernel, axis):
    r = len(kernel) // 2
    pad = [(0, 0)] * a.ndim
    pad[axis] = (r, r)
    p = np.pad(a, pad, mode="edge")
    n = a.shape[axis]
    out = np.zeros_like(a, dtype=np.float64)
    for j, wj in enumerate(kernel):
        out += wj * np.take(p, np.arange(j, j + n), axis=axis)
    return out


def blur_float(plane, sigma):
    """Separable Gaussian blur of a float array (rows, cols[, channels])
    with edge-clamp borders; no quantization."""
    k = gaussian_kernel(sigma)
    return _convolve_axis(_convolve_axis(np.asarray(plane, dtype=np.float64), k, 1), k, 0)


def gaussian_blur(img, sigma):
    out = blur_float(img.data.astype(np.float64), sigma)
    return Raster(np.clip(round_half_up(out), 0, 255).astype(np.uint8), img.space)


def band_threshold(img, lo, hi):
    """Bit set iff ``lo[c] <= pixel[c] <= hi[c]`` for every channel."""
    lo = np.atleast_1d(np.asarray(lo, dtype=np.float64))
    hi = np.atleast_1d(np.asarray(hi, dtype=np.float64))
    if lo.shape != (img.channels,) or hi.shape != (img.channels,):
        raise InvalidInputError(
            f"band vectors need {img.channels} entries, got {lo.size} and {hi.size}")
    lo = np.clip(lo, 0, 255)
    hi = np.clip(hi, 0, 255)
    if np.any(lo > hi):
        raise InvalidInputError(f"band lower bound exceeds upper bound: {lo} > {hi}")
    d = img.data
    return BitMask(np.all((d >= lo) & (d <= hi), axis=2))


def sobel(plane):
    """Sobel derivatives ``(gx, gy)`` of a float plane, edge-clamp borders."""
    p = np.pad(np.asarray(plane, dtype=np.float64), 1, mode="edge")

    def s(dy, dx):
        h, w = plane.shape
        return p[1 + dy:1 + dy + h, 1 + dx:1 + dx + w]

    gx = (s(-1, 1) + 2 * s(0, 1) + s(1, 1)) - (s(-1, -1) + 2 * s(0, -1) + s(1, -1))
    gy = (s(1, -1) + 2 * s(1, 0) + s(1, 1)) - (s(-1, -1) + 2 * s(-1, 0) + s(-1, 1))
    return gx, gy


def non_max_suppression(mag, gx, gy):
    """Thin gradient ridges along 4 quantized directions.

    A pixel survives if it is strictly greater than its neighbour on the
    negative side of the gradient and not smaller than the one on the
    positive side, so a symmetric two-pixel ridge keeps exactly one pixel.
    """
    h, w = mag.shape
    angle = np.degrees(np.arctan2(gy, gx)) % 180.0
    # 0: horizontal gradient, 1: 45 deg, 2: vertical, 3: 135 deg
    q = np.zeros(mag.shape, dtype=np.int8)
    q[(angle >= 22.5) & (angle < 67.5)] = 1
    q[(angle >= 67.5) & (angle < 112.5)] = 2
    q[(angle >= 112.5) & (angle < 157.5)] = 3
    p = np.pad(mag, 1, mode="constant")

    def at(dy, dx):
        return p[1 + dy:1 + dy + h, 1 + dx:1 + dx + w]

    # (negative side, positive side) along the gradient, y grows downwards
    pairs = {0: ((0, -1), (0, 1)), 1: ((-1, -1), (1, 1)), 2: ((-1, 0), (1, 0)), 3: ((-1, 1), (1, -1))}
    keep = np.zeros(mag.shape, dtype=bool)
    for d, (neg, pos) in pairs.items():
        sel = q == d
        keep |= sel & (mag > at(*neg)) & (mag >= at(*pos))
    return np.where(keep, mag, 0.0)


def hysteresis(nms, lo, hi):
    """Strong pixels (``>= hi``) plus every weak pixel (``>= lo``) connected to
    one through 8-adjacent weak pixels. Zero magnitude never counts."""
    nms = np.asarray(nms, dtype=np.float64)
    nz = nms > 0
    strong = nz & (nms >= hi)
    weak = nz & (nms >= lo)
    return BitMask(_kernels.hysteresis(weak, strong))


def canny(img, lo, hi):
    """Canny edges of a grayscale raster; thresholds apply to the L2 Sobel
    magnitude of the sigma=1.4 blurred image (0..~1443 for 8-bit input)."""
    if img.space is not ColorSpace.GRAY:
        raise InvalidInputError("canny expects a GRAY raster")
    if not 0 <= lo <= hi:
        raise InvalidInputError(f"need 0 <= lo <= hi, got lo={lo}, hi={hi}")
    smooth = blur_float(img.plane(0).astype(np.float64), CANNY_SIGMA)
    gx, gy = sobel(smooth)
    mag = np.hypot(gx, gy)
    return hysteresis(non_max_suppression(mag, gx, gy), lo, hi)
