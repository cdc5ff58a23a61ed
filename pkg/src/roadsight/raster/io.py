"""Raster file I/O: PNG and binary PPM (P6) / PGM (P5) through Pillow."""
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..errors import DataError, InvalidInputError
from .types import BitMask, ColorSpace, Raster

_FORMATS = {".png": "PNG", ".ppm": "PPM", ".pgm": "PPM", ".pnm": "PPM"}


def read_image(path):
    """Load an 8-bit RGB or grayscale image. Palette/alpha images are
    converted to RGB; 16-bit and other modes are rejected."""
    path = Path(path)
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode == "L":
                return Raster(np.asarray(im, dtype=np.uint8), ColorSpace.GRAY)
            if im.mode in ("RGB", "RGBA", "P", "LA"):
                return Raster(np.asarray(im.convert("RGB"), dtype=np.uint8), ColorSpace.RGB)
            raise DataError(f"{path}: unsupported image mode {im.mode}")
    except (OSError, UnidentifiedImageError) as exc:
        raise DataError(f"{path}: cannot decode image ({exc})") from exc


def write_image(path, img):
    """Write a Raster or BitMask. HSV rasters are written as their raw bytes
    (three channels, no conversion); masks as 0/255 grayscale."""
    path = Path(path)
    fmt = _FORMATS.get(path.suffix.lower())
    if fmt is None:
        raise InvalidInputError(f"unsupported image extension {path.suffix!r}")
    if isinstance(img, BitMask):
        arr = img.bits.astype(np.uint8) * 255
    else:
        arr = img.data[:, :, 0] if img.channels == 1 else img.data
    if path.suffix.lower() == ".pgm" and arr.ndim == 3:
        raise InvalidInputError("PGM files hold grayscale data only")
    if path.suffix.lower() == ".ppm" and arr.ndim == 2:
        raise InvalidInputError("PPM files hold RGB data only")
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(np.ascontiguousarray(arr)).save(path, format=fmt)
