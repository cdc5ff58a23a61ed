"""Synthetic road frames with known road geometry and pothole ellipses."""
import csv
import functools
import json
import math
from pathlib import Path

import numpy as np

from .errors import DataError, InvalidConfigError
from .raster import ColorSpace, Raster, write_image
from .road import RoiSpec

DEFAULT_SIZE = (160, 120)
GROUND_TRUTH_NAME = "ground_truth.json"


@functools.lru_cache(maxsize=8)
def _grid(width, height):
    ys, xs = np.mgrid[0:height, 0:width].astype(np.float64)
    return ys, xs


def trapezoid_mask(vertices, width, height):
    """Pixel centres inside or on a convex polygon whose vertices run clockwise
    on screen (y down); half-plane test, independent of the raster module."""
    ys, xs = np.mgrid[0:height, 0:width].astype(np.float64)
    inside = np.ones((height, width), dtype=bool)
    v = np.asarray(vertices, dtype=np.float64)
    for i in range(len(v)):
        (x0, y0), (x1, y1) = v[i], v[(i + 1) % len(v)]
        cross = (x1 - x0) * (ys - y0) - (y1 - y0) * (xs - x0)
        inside &= cross >= -1e-9
    return inside


def ellipse_mask(e, width, height):
    ys, xs = _grid(width, height)
    dx, dy = xs - e["cx"], ys - e["cy"]
    c, s = math.cos(e["angle"]), math.sin(e["angle"])
    u = (dx * c + dy * s) / e["a"]
    v = (-dx * s + dy * c) / e["b"]
    return u * u + v * v <= 1.0


def _road_polygon(rng, width, height):
    horizon = height * rng.uniform(0.33, 0.40)
    cx = width * rng.uniform(0.47, 0.53)
    top = width * rng.uniform(0.16, 0.24) / 2
    bottom = width * rng.uniform(0.50, 0.56)
    # ordered so that the cross product test in image coordinates is >= 0
    return [(cx - top, horizon), (cx + top, horizon),
            (cx + bottom, height - 1.0), (cx - bottom, height - 1.0)]


def _place_ellipse(rng, road, keep_out, width, height, horizon):
    for _ in range(500):
        a = rng.uniform(0.06, 0.11) * width
        cy = rng.uniform(horizon + 0.3 * (height - horizon), height - 6.0)
        span = np.flatnonzero(road[int(cy)])
        lo, hi = span[0] + a + 4, span[-1] - a - 4
        if lo >= hi:
            continue
        e = {
            "cx": float(rng.uniform(lo, hi)),
            "cy": float(cy),
            "a": float(a),
            "b": float(a * rng.uniform(0.45, 0.85)),
            "angle": float(rng.uniform(0.0, math.pi)),
            "intensity": int(rng.integers(25, 61)),
        }
        m = ellipse_mask(e, width, height)
        # a margin ring keeps potholes off the road outline and frame border,
        # where they would dent the road's convex hull
        ring = ellipse_mask(dict(e, a=e["a"] + 4, b=e["b"] + 4), width, height)
        if (m.any() and np.all(road[ring]) and not np.any(ring[-4:])
                and not np.any(m & keep_out)):
            return e, m
    raise DataError("could not place a pothole inside the road")


def _roi_keep_out(width, height, roi):
    """Pixels of the colour-sampling ROI; potholes are kept out of it so the
    road colour model sees road only."""
    out = np.zeros((height, width), dtype=bool)
    c0, r0, c1, r1 = roi.pixel_box(width, height)
    out[r0:r1, c0:c1] = True
    return out


def render_frame(rng, width, height, positive, roi=None):
    """One RGB frame and its ground-truth record."""
    ys = np.arange(height)[:, None] * np.ones((1, width))
    poly = _road_polygon(rng, width, height)
    horizon = poly[0][1]
    road = trapezoid_mask(poly, width, height)

    img = np.empty((height, width, 3), dtype=np.float64)
    sky = np.array([rng.uniform(110, 150), rng.uniform(160, 190), rng.uniform(210, 240)])
    grass = np.array([rng.uniform(40, 80), rng.uniform(110, 150), rng.uniform(30, 60)])
    img[:] = np.where((ys < horizon)[:, :, None], sky, grass)
    gray = rng.uniform(110, 150)
    img[road] = gray + rng.uniform(-4, 4, size=3)

    # dashed centre line; gaps keep both halves of the road connected
    cx_top = (poly[0][0] + poly[1][0]) / 2
    cx_bot = (poly[2][0] + poly[3][0]) / 2
    for y in range(int(math.ceil(horizon)) + 2, height):
        t = (y - horizon) / (height - 1 - horizon)
        if int(t * 12) % 2 == 0:
            continue
        x = cx_top + t * (cx_bot - cx_top)
        half = 0.5 + 1.5 * t
        x0, x1 = int(round(x - half)), int(round(x + half))
        img[y, max(x0, 0):min(x1 + 1, width)] = 225.0

    ellipses = []
    if positive:
        keep_out = _roi_keep_out(width, height, roi if roi is not None else RoiSpec())
        for _ in range(int(rng.integers(1, 4))):
            e, m = _place_ellipse(rng, road, keep_out, width, height, horizon)
            img[m] = e["intensity"] + rng.uniform(-3, 3, size=3)
            ellipses.append(e)

    img += rng.normal(0.0, 6.0, size=img.shape)
    frame = np.clip(np.floor(img + 0.5), 0, 255).astype(np.uint8)
    record = {"road": [[float(x), float(y)] for x, y in poly], "ellipses": ellipses}
    return Raster(frame, ColorSpace.RGB), record


def synth_dataset(out_root, n, seed, size=DEFAULT_SIZE):
    """Write ``n`` frames, ``manifest.csv`` and ``ground_truth.json`` under
    ``out_root``; half the frames (rounded down) are positives."""
    from .data import load_manifest

    if n < 4:
        raise InvalidConfigError(f"synthetic dataset needs n >= 4, got {n}")
    width, height = size
    out = Path(out_root)
    try:
        (out / "images").mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise DataError(f"cannot create {out}: {exc}") from exc
    rng = np.random.default_rng(seed)
    labels = np.zeros(n, dtype=np.int64)
    labels[: n // 2] = 1
    labels = rng.permutation(labels)
    frames = []
    try:
        for i, label in enumerate(labels.tolist()):
            img, rec = render_frame(np.random.default_rng([seed, i]), width, height, bool(label))
            rel = f"images/frame_{i:04d}.png"
            write_image(out / rel, img)
            frames.append({"path": rel, "label": label, **rec})
        with open(out / "manifest.csv", "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["path", "label"])
            for f in frames:
                w.writerow([f["path"], f["label"]])
        gt = {"width": width, "height": height, "seed": seed, "frames": frames}
        (out / GROUND_TRUTH_NAME).write_text(json.dumps(gt, indent=1, sort_keys=True), encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot write synthetic dataset to {out}: {exc}") from exc
    return load_manifest(out)


def load_ground_truth(root):
    return json.loads((Path(root) / GROUND_TRUTH_NAME).read_text(encoding="utf-8"))
