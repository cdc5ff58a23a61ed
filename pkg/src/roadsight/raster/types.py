"""Core value types: rasters, bit masks, contours, polygons."""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..errors import InvalidInputError


class ColorSpace(str, Enum):
    RGB = "RGB"
    HSV = "HSV"
    GRAY = "GRAY"


class Shape(str, Enum):
    SQUARE = "SQUARE"
    CROSS = "CROSS"


def _frozen(arr):
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Raster:
    """8-bit image stored as an ``(height, width, channels)`` uint8 array.

    The array is made read-only on construction so rasters can be shared.
    """

    data: np.ndarray
    space: ColorSpace = ColorSpace.RGB

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim == 2:
            data = data[:, :, None]
        if data.ndim != 3 or data.shape[2] not in (1, 3):
            raise InvalidInputError(f"raster data must be HxWx1 or HxWx3, got {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise InvalidInputError("raster must be at least 1x1")
        if data.dtype != np.uint8:
            if np.any(data < 0) or np.any(data > 255):
                raise InvalidInputError("raster samples must lie in [0, 255]")
            data = data.astype(np.uint8)
        space = ColorSpace(self.space)
        if (data.shape[2] == 1) != (space is ColorSpace.GRAY):
            raise InvalidInputError(f"{data.shape[2]} channel(s) incompatible with space {space.value}")
        object.__setattr__(self, "data", _frozen(data))
        object.__setattr__(self, "space", space)

    @property
    def height(self):
        return self.data.shape[0]

    @property
    def width(self):
        return self.data.shape[1]

    @property
    def channels(self):
        return self.data.shape[2]

    @property
    def shape(self):
        return self.data.shape

    def plane(self, c=0):
        return self.data[:, :, c]

    def __eq__(self, other):
        if not isinstance(other, Raster):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.data, other.data)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class BitMask:
    """Binary raster, ``(height, width)`` bool array, read-only."""

    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits)
        if bits.ndim != 2 or bits.shape[0] < 1 or bits.shape[1] < 1:
            raise InvalidInputError(f"mask must be a non-empty 2-D array, got {bits.shape}")
        object.__setattr__(self, "bits", _frozen(bits.astype(bool, copy=False)))

    @classmethod
    def empty(cls, width, height):
        return cls(np.zeros((height, width), dtype=bool))

    @classmethod
    def full(cls, width, height):
        return cls(np.ones((height, width), dtype=bool))

    @property
    def height(self):
        return self.bits.shape[0]

    @property
    def width(self):
        return self.bits.shape[1]

    @property
    def shape(self):
        return self.bits.shape

    def count(self):
        return int(self.bits.sum())

    def issubset(self, other):
        return bool(np.all(~self.bits | other.bits))

    def __invert__(self):
        return BitMask(~self.bits)

    def __and__(self, other):
        return BitMask(self.bits & other.bits)

    def __or__(self, other):
        return BitMask(self.bits | other.bits)

    def __eq__(self, other):
        if not isinstance(other, BitMask):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    __hash__ = None


@dataclass(frozen=True)
class StructElem:
    radius: int = 1
    shape: Shape = Shape.SQUARE

    def __post_init__(self):
        if int(self.radius) != self.radius or self.radius < 1:
            raise InvalidInputError(f"structuring element radius must be an integer >= 1, got {self.radius}")
        object.__setattr__(self, "shape", Shape(self.shape))

    def offsets(self):
        """``(dy, dx)`` pairs covered by the element, origin included."""
        r = int(self.radius)
        out = []
        for dy in range(-r, r + 1):
            for dx in range(-r, r + 1):
                if self.shape is Shape.SQUARE or dx == 0 or dy == 0:
                    out.append((dy, dx))
        return out


@dataclass(frozen=True, eq=False)
class Contour:
    """Closed boundary trace; ``points`` is an ``(n, 2)`` array of ``(x, y)``."""

    points: np.ndarray
    label: int = field(default=0, compare=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.int64).reshape(-1, 2)
        if len(pts) == 0:
            raise InvalidInputError("contour needs at least one point")
        object.__setattr__(self, "points", _frozen(pts))

    def __len__(self):
        return len(self.points)

    def bbox(self):
        """``(x, y, w, h)`` of the traced pixels."""
        x0, y0 = self.points.min(axis=0)
        x1, y1 = self.points.max(axis=0)
        return int(x0), int(y0), int(x1 - x0 + 1), int(y1 - y0 + 1)

    def perimeter(self):
        """Length of the closed path through the traced pixel centres."""
        if len(self.points) < 2:
            return 0.0
        d = np.abs(np.diff(np.vstack([self.points, self.points[:1]]), axis=0))
        diag = (d[:, 0] == 1) & (d[:, 1] == 1)
        return float(np.count_nonzero(~diag) + np.sqrt(2.0) * np.count_nonzero(diag))


@dataclass(frozen=True, eq=False)
class Polygon:
    """Counter-clockwise vertex list; ``vertices`` is ``(n, 2)`` of ``(x, y)``."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices).reshape(-1, 2)
        if len(v) == 0:
            raise InvalidInputError("polygon needs at least one vertex")
        object.__setattr__(self, "vertices", _frozen(v))

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, Polygon):
            return NotImplemented
        return np.array_equal(self.vertices, other.vertices)

    __hash__ = None
