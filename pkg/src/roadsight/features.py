"""Feature models over road crops: downscaled raw pixels and colour
histograms."""
import csv
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidInputError
from .raster import ColorSpace, downscale2, resize, to_hsv

CANONICAL_SIZE = (128, 96)  # (width, height) before the 2x downscale
HIST_BINS = 32


class FeatureKind(str, Enum):
    PIXELS = "PIXELS"
    HIST = "HIST"

    @classmethod
    def parse(cls, text):
        try:
            return cls(str(text).upper())
        except ValueError:
            raise InvalidInputError(f"unknown feature kind {text!r}") from None


@dataclass(frozen=True, eq=False)
class FeatureVector:
    values: np.ndarray
    kind: FeatureKind

    @property
    def dim(self):
        return len(self.values)


def pixels_dim():
    w, h = CANONICAL_SIZE
    return (w // 2) * (h // 2) * 3


def pixels_feature(road):
    """Resize to 128x96, 2x2 block-mean downscale, flatten, scale to [0, 1]."""
    if road.space is not ColorSpace.RGB:
        raise InvalidInputError("pixels_feature expects an RGB raster")
    small = downscale2(resize(road, *CANONICAL_SIZE))
    return FeatureVector(small.data.reshape(-1).astype(np.float64) / 255.0, FeatureKind.PIXELS)


def hist_feature(road, mask=None, bins=HIST_BINS):
    """Three per-channel ``bins``-bin histograms over the masked pixels,
    concatenated and L1-normalized jointly. No masked pixels gives the
    all-zero vector."""
    if road.channels != 3:
        raise InvalidInputError("hist_feature expects a 3-channel raster")
    if 256 % bins:
        raise InvalidInputError("bin count must divide 256")
    data = road.data
    if mask is not None:
        if mask.shape != (road.height, road.width):
            raise InvalidInputError("mask and raster dimensions differ")
        px = data[mask.bits]
    else:
        px = data.reshape(-1, 3)
    idx = px.astype(np.intp) * bins // 256
    hist = np.concatenate([np.bincount(idx[:, c], minlength=bins) for c in range(3)]).astype(np.float64)
    total = hist.sum()
    if total > 0:
        hist /= total
    return FeatureVector(hist, FeatureKind.HIST)


def road_features(extraction, kind, bins=HIST_BINS):
    """Feature of one extracted road. Pixels use the RGB hull crop, the
    histogram uses its HSV conversion restricted to the hull."""
    kind = FeatureKind.parse(kind) if not isinstance(kind, FeatureKind) else kind
    crop, crop_mask = extraction.crop()
    if kind is FeatureKind.PIXELS:
        return pixels_feature(crop)
    return hist_feature(to_hsv(crop), crop_mask, bins)


def write_feature_csv(path, rows):
    """``rows``: iterable of ``(path, label, FeatureVector)``."""
    rows = list(rows)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        dim = rows[0][2].dim if rows else 0
        w.writerow(["path", "label", "kind"] + [f"v{i}" for i in range(dim)])
        for p, label, fv in rows:
            w.writerow([p, label, fv.kind.value] + [repr(float(v)) for v in fv.values])


def read_feature_csv(path):
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        r = csv.reader(fh)
        next(r)
        for row in r:
            fv = FeatureVector(np.array([float(v) for v in row[3:]]), FeatureKind(row[2]))
            out.append((row[0], int(row[1]), fv))
    return out
