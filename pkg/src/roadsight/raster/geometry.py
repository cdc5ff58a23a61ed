"""Convex hulls and polygon rasterization."""
import numpy as np

from ..errors import InvalidInputError
from .types import BitMask, Polygon


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points):
    """Andrew's monotone chain.

    Vertices are returned counter-clockwise (positive cross products in the
    ``(x, y)`` frame), starting from the smallest ``(x, y)``; collinear
    boundary points are dropped. A single distinct point yields a 1-vertex
    polygon, collinear input the two segment endpoints.
    """
    pts = np.asarray(points)
    if pts.size == 0:
        raise InvalidInputError("convex_hull needs at least one point")
    pts = pts.reshape(-1, 2)
    dtype = pts.dtype
    uniq = sorted(set(map(tuple, pts.tolist())))
    if len(uniq) == 1:
        return Polygon(np.array(uniq, dtype=dtype))

    lower = []
    for p in uniq:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(uniq):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return Polygon(np.array(lower[:-1] + upper[:-1], dtype=dtype))


def polygon_area(p):
    v = np.asarray(p.vertices, dtype=np.float64)
    if len(v) < 3:
        return 0.0
    return abs(float(np.dot(v[:, 0], np.roll(v[:, 1], -1)) - np.dot(v[:, 1], np.roll(v[:, 0], -1)))) / 2.0


def fill_polygon(p, width, height):
    """Scanline fill of a convex polygon with integer vertices.

    A pixel is set iff its centre (integer coordinate) lies inside or on the
    boundary. Edge crossings are evaluated in exact integer arithmetic.
    """
    if width < 1 or height < 1:
        raise InvalidInputError("fill_polygon needs width, height >= 1")
    v = np.asarray(p.vertices)
    if not np.all(v == np.round(v)):
        raise InvalidInputError("fill_polygon requires integer vertices")
    verts = [(int(x), int(y)) for x, y in v.tolist()]
    out = np.zeros((height, width), dtype=bool)
    n = len(verts)
    edges = [(verts[i], verts[(i + 1) % n]) for i in range(n)] if n > 1 else [(verts[0], verts[0])]
    ys = [y for _, y in verts]
    for y in range(max(min(ys), 0), min(max(ys), height - 1) + 1):
        left = None
        right = None
        for (x0, y0), (x1, y1) in edges:
            if not min(y0, y1) <= y <= max(y0, y1):
                continue
            if y0 == y1:
                lo, hi = min(x0, x1), max(x0, x1)
            else:
                num = x0 * (y1 - y0) + (y - y0) * (x1 - x0)
                den = y1 - y0
                if den < 0:
                    num, den = -num, -den
                lo = -((-num) // den)
                hi = num // den
            left = lo if left is None else min(left, lo)
            right = hi if right is None else max(right, hi)
        if left is None:
            continue
        a, b = max(left, 0), min(right, width - 1)
        if a <= b:
            out[y, a:b + 1] = True
    return BitMask(out)
