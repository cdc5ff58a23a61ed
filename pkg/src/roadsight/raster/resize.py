"""Resampling."""
import numpy as np

from ..errors import InvalidInputError
from .color import round_half_up
from .types import Raster


def downscale2(img):
    """2x2 block mean, floor-rounded. Both dimensions must be even."""
    h, w, c = img.shape
    if h % 2 or w % 2:
        raise InvalidInputError(f"downscale2 needs even dimensions, got {w}x{h}")
    blocks = img.data.astype(np.uint32).reshape(h // 2, 2, w // 2, 2, c).sum(axis=(1, 3))
    return Raster((blocks // 4).astype(np.uint8), img.space)


def bilinear_coords(n_in, n_out):
    """Source sample positions for ``n_out`` outputs, pixel-centre aligned and
    clamped to ``[0, n_in - 1]``. Returns ``(i0, i1, frac)``."""
    pos = (np.arange(n_out, dtype=np.float64) + 0.5) * (n_in / n_out) - 0.5
    pos = np.clip(pos, 0.0, n_in - 1)
    i0 = np.floor(pos).astype(np.intp)
    i1 = np.minimum(i0 + 1, n_in - 1)
    return i0, i1, pos - i0


def resize(img, out_w, out_h):
    """Bilinear resampling to ``out_w x out_h``; results rounded half-up."""
    if out_w < 1 or out_h < 1:
        raise InvalidInputError("resize target must be at least 1x1")
    if (out_w, out_h) == (img.width, img.height):
        return img
    d = img.data.astype(np.float64)
    y0, y1, fy = bilinear_coords(img.height, out_h)
    x0, x1, fx = bilinear_coords(img.width, out_w)
    fx = fx[None, :, None]
    top = d[y0][:, x0] * (1 - fx) + d[y0][:, x1] * fx
    bot = d[y1][:, x0] * (1 - fx) + d[y1][:, x1] * fx
    fy = fy[:, None, None]
    out = top * (1 - fy) + bot * fy
    return Raster(np.clip(round_half_up(out), 0, 255).astype(np.uint8), img.space)
