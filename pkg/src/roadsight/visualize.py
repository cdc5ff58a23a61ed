"""Pothole candidate visualization: morphological (MORPH), blob (BLOB) and
dilated-edge (EDGE) methods."""
import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidInputError
from .raster import (BitMask, ColorSpace, Raster, StructElem, band_threshold, canny, closing,
                     dilate, erode, find_contours, gaussian_blur, label_components, opening,
                     to_gray)

RED = (255, 0, 0)
BOX_THICKNESS = 2
EDGE_SCORE = 0.5


class Method(str, Enum):
    MORPH = "MORPH"
    BLOB = "BLOB"
    EDGE = "EDGE"


@dataclass(frozen=True)
class Candidate:
    bbox: tuple  # (x, y, w, h)
    area: int
    score: float
    method: Method

    def to_dict(self):
        return {"method": self.method.value, "bbox": list(self.bbox),
                "area": self.area, "score": self.score}


@dataclass(frozen=True)
class MorphConfig:
    sigma: float = 2.0
    dark_band: tuple = (0, 90)
    radius: int = 1
    min_area: int = 30
    max_area: int | None = None  # None: half the frame


@dataclass(frozen=True)
class BlobParams:
    min_area: int = 30
    max_area: int = 20000
    min_circularity: float = 0.5
    intensity_band: tuple = (0, 90)

    def __post_init__(self):
        if self.min_area > self.max_area:
            raise InvalidInputError("BlobParams needs min_area <= max_area")
        if not 0.0 <= self.min_circularity <= 1.0:
            raise InvalidInputError("min_circularity must lie in [0, 1]")


def candidates_to_json(cands):
    return json.dumps([c.to_dict() for c in cands], indent=2)


def _as_gray(img):
    if img.space is ColorSpace.GRAY:
        return img
    if img.space is ColorSpace.RGB:
        return to_gray(img)
    raise InvalidInputError("visualization expects an RGB or GRAY raster")


def _components(mask):
    """``(contour, pixel_count)`` for every component of ``mask``."""
    labels, n = label_components(mask)
    counts = np.bincount(labels.ravel(), minlength=n + 1)
    return [(c, int(counts[c.label])) for c in find_contours(mask, labels=labels)]


def visualize_morph(img, cfg=MorphConfig()):
    gray = gaussian_blur(_as_gray(img), cfg.sigma)
    mask = band_threshold(gray, [cfg.dark_band[0]], [cfg.dark_band[1]])
    se = StructElem(cfg.radius)
    mask = closing(opening(mask, se), se)
    total = img.width * img.height
    max_area = cfg.max_area if cfg.max_area is not None else total // 2
    cands = [Candidate(c.bbox(), area, area / total, Method.MORPH)
             for c, area in _components(mask) if cfg.min_area <= area <= max_area]
    return cands, annotate(_display(img), cands)


def circularity(area, perimeter):
    """``4*pi*A / P**2`` clipped to [0, 1]; a zero-perimeter blob counts as round."""
    if perimeter <= 0:
        return 1.0
    return min(1.0, 4.0 * math.pi * area / (perimeter * perimeter))


def road_region(road):
    """Hull area of an extracted road: pixels not zeroed by the extraction."""
    return BitMask(np.any(road.data != 0, axis=2))


def detect_blobs(road, p=BlobParams(), region=None):
    """Dark, roughly round components inside the road hull.

    ``region`` defaults to the non-zero pixels of ``road``.
    """
    if region is None:
        region = road_region(road)
    gray = _as_gray(road)
    mask = band_threshold(gray, [p.intensity_band[0]], [p.intensity_band[1]]) & region
    out = []
    for c, area in _components(mask):
        if not p.min_area <= area <= p.max_area:
            continue
        circ = circularity(area, c.perimeter())
        if circ >= p.min_circularity:
            out.append(Candidate(c.bbox(), area, circ, Method.BLOB))
    return out


def visualize_blobs(road, p=BlobParams(), region=None):
    cands = detect_blobs(road, p, region)
    return cands, annotate(_display(road), cands)


def visualize_edges(road, lo=50.0, hi=150.0, dil_r=2, region=None):
    """Canny edges, dilated, boxed. With ``region`` given, edges are kept
    only inside its 1-px erosion so the hull outline itself is ignored."""
    if int(dil_r) != dil_r or dil_r < 1:
        raise InvalidInputError(f"dilation radius must be an integer >= 1, got {dil_r}")
    edges = canny(_as_gray(road), lo, hi)
    if region is not None:
        edges = edges & erode(region, StructElem(1))
    grown = dilate(edges, StructElem(int(dil_r)))
    cands = [Candidate(c.bbox(), area, EDGE_SCORE, Method.EDGE) for c, area in _components(grown)]
    return cands, annotate(_display(road), cands)


def _display(img):
    if img.space is ColorSpace.RGB:
        return img
    if img.space is ColorSpace.GRAY:
        return Raster(np.repeat(img.data, 3, axis=2), ColorSpace.RGB)
    raise InvalidInputError("cannot annotate an HSV raster")


def annotate(img, cands):
    """Copy of ``img`` with a 2-px red box drawn inside each candidate's bbox,
    in list order."""
    out = img.data.copy()
    for cand in cands:
        x, y, w, h = cand.bbox
        x1, y1 = min(x + w, img.width), min(y + h, img.height)
        t = BOX_THICKNESS
        region = out[y:y1, x:x1]
        ring = np.ones(region.shape[:2], dtype=bool)
        ring[t:-t or None, t:-t or None] = False
        region[ring] = RED
    return Raster(out, ColorSpace.RGB)
