"""Pure-Python versions of the hot raster kernels.

Semantics are identical to ``_ckernels.pyx``; the test-suite checks the two
against each other on random masks.
"""
from collections import deque

import numpy as np

# Moore ring, clockwise on screen (y grows downwards), starting west.
_RING_DX = (-1, -1, 0, 1, 1, 1, 0, -1)
_RING_DY = (0, -1, -1, -1, 0, 1, 1, 1)


def label_components(mask):
    """8-connected labelling; labels are numbered in raster order of each
    component's first pixel, starting at 1. Returns ``(labels, count)``."""
    mask = np.ascontiguousarray(mask, dtype=np.uint8)
    h, w = mask.shape
    fg = mask.tolist()
    labels = [[0] * w for _ in range(h)]
    count = 0
    queue = deque()
    for y in range(h):
        row = fg[y]
        for x in range(w):
            if not row[x] or labels[y][x]:
                continue
            count += 1
            labels[y][x] = count
            queue.append((y, x))
            while queue:
                cy, cx = queue.popleft()
                for ny in (cy - 1, cy, cy + 1):
                    if ny < 0 or ny >= h:
                        continue
                    frow = fg[ny]
                    lrow = labels[ny]
                    for nx in (cx - 1, cx, cx + 1):
                        if 0 <= nx < w and frow[nx] and not lrow[nx]:
                            lrow[nx] = count
                            queue.append((ny, nx))
    return np.array(labels, dtype=np.int32).reshape(h, w), count


def trace_boundary(mask, sy, sx):
    """Moore-neighbour trace of the outer boundary of the component whose
    topmost-then-leftmost pixel is ``(sx, sy)``.

    Returns an ``(n, 2)`` int64 array of ``(x, y)`` points. Tracing stops when
    the walk is back at the start pixel about to repeat its first move.
    """
    mask = np.asarray(mask)
    h, w = mask.shape
    fg = mask.tolist()

    def is_fg(x, y):
        return 0 <= x < w and 0 <= y < h and fg[y][x]

    def step(px, py, back):
        for i in range(1, 9):
            k = (back + i) % 8
            qx, qy = px + _RING_DX[k], py + _RING_DY[k]
            if is_fg(qx, qy):
                prev = (back + i - 1) % 8
                bx, by = px + _RING_DX[prev], py + _RING_DY[prev]
                return qx, qy, _ring_index(bx - qx, by - qy)
        return None

    points = [(sx, sy)]
    first = step(sx, sy, 0)
    if first is None:
        return np.array(points, dtype=np.int64)
    px, py, back = first
    # a trace can never be longer than visiting every pixel from all 8 sides
    limit = 8 * h * w + 8
    while len(points) < limit:
        if px == sx and py == sy:
            nxt = step(px, py, back)
            if nxt[:2] == first[:2]:
                break
        points.append((px, py))
        px, py, back = step(px, py, back)
    return np.array(points, dtype=np.int64)


def _ring_index(dx, dy):
    for k in range(8):
        if _RING_DX[k] == dx and _RING_DY[k] == dy:
            return k
    raise ValueError("offset is not a Moore neighbour")


def hysteresis(weak, strong):
    """Keep every pixel of ``weak | strong`` that is 8-connected to a strong
    pixel."""
    weak = np.asarray(weak, dtype=bool)
    strong = np.asarray(strong, dtype=bool)
    cand = weak | strong
    h, w = cand.shape
    c = cand.tolist()
    out = [[False] * w for _ in range(h)]
    queue = deque()
    ys, xs = np.nonzero(strong)
    for y, x in zip(ys.tolist(), xs.tolist()):
        out[y][x] = True
        queue.append((y, x))
    while queue:
        cy, cx = queue.popleft()
        for ny in (cy - 1, cy, cy + 1):
            if ny < 0 or ny >= h:
                continue
            for nx in (cx - 1, cx, cx + 1):
                if 0 <= nx < w and c[ny][nx] and not out[ny][nx]:
                    out[ny][nx] = True
                    queue.append((ny, nx))
    return np.array(out, dtype=bool).reshape(h, w)
