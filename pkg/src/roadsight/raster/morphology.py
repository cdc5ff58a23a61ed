"""Binary morphology. Pixels outside the mask count as unset."""
import numpy as np

from .types import BitMask, StructElem

DEFAULT_ELEMENT = StructElem(1)


def _shifted(padded, r, dy, dx):
    h, w = padded.shape[0] - 2 * r, padded.shape[1] - 2 * r
    return padded[r + dy:r + dy + h, r + dx:r + dx + w]


def erode(m, se=DEFAULT_ELEMENT):
    r = int(se.radius)
    p = np.pad(m.bits, r, mode="constant", constant_values=False)
    out = np.ones(m.shape, dtype=bool)
    for dy, dx in se.offsets():
        out &= _shifted(p, r, dy, dx)
    return BitMask(out)


def dilate(m, se=DEFAULT_ELEMENT):
    r = int(se.radius)
    p = np.pad(m.bits, r, mode="constant", constant_values=False)
    out = np.zeros(m.shape, dtype=bool)
    for dy, dx in se.offsets():
        out |= _shifted(p, r, dy, dx)
    return BitMask(out)


def opening(m, se=DEFAULT_ELEMENT):
    return dilate(erode(m, se), se)


def closing(m, se=DEFAULT_ELEMENT):
    return erode(dilate(m, se), se)


# short aliases; ``open`` shadows the builtin only inside this namespace
open = opening  # noqa: A001
close = closing
