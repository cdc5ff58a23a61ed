"""Connected components and outer-boundary tracing."""
import numpy as np

from .. import _kernels
from .types import BitMask, Contour


def label_components(m):
    """8-connected labels, numbered 1.. in raster order of each component's
    topmost-then-leftmost pixel. Returns ``(labels, count)``."""
    bits = m.bits if isinstance(m, BitMask) else np.asarray(m, dtype=bool)
    return _kernels.label_components(bits.view(np.uint8))


def find_contours(m, labels=None):
    """One Moore-traced outer boundary per 8-connected component.

    Contours come back in the order of their components' first pixel in
    raster order; ``Contour.label`` is the component label. Holes are not
    reported.
    """
    if labels is None:
        labels, n = label_components(m)
    else:
        n = int(labels.max(initial=0))
    if n == 0:
        return []
    flat = labels.ravel()
    # first occurrence of each label in raster order is its start pixel
    _, first = np.unique(flat, return_index=True)
    starts = first[1:] if flat[first[0]] == 0 else first
    bits = m.bits.view(np.uint8)
    w = labels.shape[1]
    out = []
    for lab, idx in enumerate(np.sort(starts), start=1):
        sy, sx = divmod(int(idx), w)
        out.append(Contour(_kernels.trace_boundary(bits, sy, sx), label=lab))
    return out


def contour_area(c):
    """Absolute shoelace area of the closed vertex polygon."""
    pts = c.points if isinstance(c, Contour) else np.asarray(c, dtype=np.int64)
    if len(pts) < 3:
        return 0.0
    x = pts[:, 0]
    y = pts[:, 1]
    twice = int(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))
    return abs(twice) / 2.0
