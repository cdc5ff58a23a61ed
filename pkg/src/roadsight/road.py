"""Road isolation: ROI colour statistics, 3-sigma banding, largest contour,
convex hull and hull-masked crop."""
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidInputError, NoRoadError
from .raster import (BitMask, ColorSpace, Contour, Polygon, Raster, band_threshold,
                     contour_area, convex_hull, fill_polygon, find_contours, to_hsv,
                     write_image)
from .raster.color import round_half_up

DEFAULT_K = 3.0


@dataclass(frozen=True)
class RoiSpec:
    """Rectangle as fractions of frame width/height."""

    x0: float = 0.30
    y0: float = 0.55
    x1: float = 0.70
    y1: float = 0.75

    def __post_init__(self):
        for v in (self.x0, self.y0, self.x1, self.y1):
            if not 0.0 <= v <= 1.0:
                raise InvalidInputError(f"ROI fractions must lie in [0, 1], got {self}")
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise InvalidInputError(f"ROI needs x0 < x1 and y0 < y1, got {self}")

    def pixel_box(self, width, height):
        """Half-open ``(c0, r0, c1, r1)`` pixel rectangle."""
        return (math.floor(self.x0 * width), math.floor(self.y0 * height),
                math.floor(self.x1 * width), math.floor(self.y1 * height))

    @classmethod
    def parse(cls, text):
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 4:
            raise InvalidInputError(f"ROI needs four comma-separated fractions, got {text!r}")
        return cls(*parts)


@dataclass(frozen=True, eq=False)
class ChannelStats:
    mean: np.ndarray
    std: np.ndarray


@dataclass(frozen=True, eq=False)
class RoadExtraction:
    """Every intermediate of :func:`extract_road`, kept for debug dumps."""

    hsv: Raster
    roi_box: tuple
    stats: ChannelStats
    mask: BitMask
    contour: Contour
    hull: Polygon
    hull_mask: BitMask
    road: Raster

    def crop(self):
        """Road raster and hull mask cut to the hull's bounding box."""
        ys, xs = np.nonzero(self.hull_mask.bits)
        y0, y1, x0, x1 = ys.min(), ys.max() + 1, xs.min(), xs.max() + 1
        return (Raster(self.road.data[y0:y1, x0:x1], self.road.space),
                BitMask(self.hull_mask.bits[y0:y1, x0:x1]))

    def dump(self, out_dir, original=None):
        """Write the six stage images ``01_input.png`` .. ``06_road.png``."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        c0, r0, c1, r1 = self.roi_box
        if original is not None:
            write_image(out / "01_input.png", original)
        write_image(out / "02_hsv.png", self.hsv)
        write_image(out / "03_roi.png", Raster(self.hsv.data[r0:r1, c0:c1], ColorSpace.HSV))
        write_image(out / "04_mask.png", self.mask)
        write_image(out / "05_hull.png", _hull_overlay(original, self))
        write_image(out / "06_road.png", self.road)
        return out


def _hull_overlay(original, ex):
    base = original.data.copy() if original is not None else np.zeros(ex.road.shape, np.uint8)
    edge = ex.hull_mask.bits & ~_eroded(ex.hull_mask.bits)
    base[edge] = (0, 255, 0)
    return Raster(base, ColorSpace.RGB)


def _eroded(bits):
    p = np.pad(bits, 1)
    h, w = bits.shape
    out = bits.copy()
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            out &= p[1 + dy:1 + dy + h, 1 + dx:1 + dx + w]
    return out


def crop_roi(img, roi):
    c0, r0, c1, r1 = roi.pixel_box(img.width, img.height)
    if c1 <= c0 or r1 <= r0:
        raise InvalidInputError(f"ROI {roi} selects no pixels of a {img.width}x{img.height} frame")
    return Raster(img.data[r0:r1, c0:c1], img.space)


def roi_stats(roi_img):
    """Per-channel population mean and standard deviation."""
    d = roi_img.data.reshape(-1, roi_img.channels).astype(np.float64)
    return ChannelStats(mean=d.mean(axis=0), std=d.std(axis=0))


def band_bounds(stats, k=DEFAULT_K):
    if not k > 0:
        raise InvalidInputError(f"band width k must be > 0, got {k}")
    lo = np.clip(round_half_up(stats.mean - k * stats.std), 0, 255)
    hi = np.clip(round_half_up(stats.mean + k * stats.std), 0, 255)
    return lo, hi


def road_band_mask(img, stats, k=DEFAULT_K):
    lo, hi = band_bounds(stats, k)
    return band_threshold(img, lo, hi)


def largest_contour(contours):
    """Contour with the largest shoelace area; the earliest wins ties."""
    if not contours:
        raise NoRoadError("no contour to choose a road from")
    best, best_area = None, -1.0
    for c in contours:
        a = contour_area(c)
        if a > best_area:
            best, best_area = c, a
    return best


def extract_road(img, roi=RoiSpec(), k=DEFAULT_K):
    if img.space is not ColorSpace.RGB:
        raise InvalidInputError("extract_road expects an RGB frame")
    hsv = to_hsv(img)
    stats = roi_stats(crop_roi(hsv, roi))
    mask = road_band_mask(hsv, stats, k)
    contours = find_contours(mask)
    if not contours:
        raise NoRoadError("road colour band matched no pixels", mask=mask)
    contour = largest_contour(contours)
    hull = convex_hull(contour.points)
    hull_mask = fill_polygon(hull, img.width, img.height)
    road = np.where(hull_mask.bits[:, :, None], img.data, 0).astype(np.uint8)
    return RoadExtraction(hsv=hsv, roi_box=roi.pixel_box(img.width, img.height), stats=stats,
                          mask=mask, contour=contour, hull=hull, hull_mask=hull_mask,
                          road=Raster(road, ColorSpace.RGB))
