import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roadsight.errors import InvalidInputError
from roadsight.raster import (BitMask, ColorSpace, Raster, band_threshold, canny, gaussian_blur,
                              gaussian_kernel, hysteresis)


def gray(a):
    return Raster(np.asarray(a, dtype=np.uint8), ColorSpace.GRAY)


@pytest.mark.parametrize("sigma", [0.3, 0.5, 1.0, 1.4, 2.0, 3.7])
def test_kernel_normalized_with_expected_width(sigma):
    k = gaussian_kernel(sigma)
    assert abs(k.sum() - 1.0) <= 1e-9
    assert len(k) == 2 * math.ceil(3 * sigma) + 1
    assert np.allclose(k, k[::-1])


@pytest.mark.parametrize("sigma", [0.0, -1.0])
def test_blur_rejects_nonpositive_sigma(sigma):
    with pytest.raises(InvalidInputError):
        gaussian_blur(gray(np.zeros((3, 3))), sigma)


@settings(max_examples=40, deadline=None)
@given(v=st.integers(0, 255), sigma=st.floats(0.2, 4.0), w=st.integers(1, 12), h=st.integers(1, 12))
def test_blur_of_constant_is_identity(v, sigma, w, h):
    img = Raster(np.full((h, w, 3), v, np.uint8))
    assert gaussian_blur(img, sigma) == img


def test_blur_impulse_center():
    a = np.zeros((9, 9))
    a[4, 4] = 255
    w = gaussian_kernel(1.0)
    # full 2-D convolution with the outer-product kernel as oracle
    k2 = np.outer(w, w)
    ref = np.zeros((9, 9))
    r = len(w) // 2
    for y in range(9):
        for x in range(9):
            s = 0.0
            for j in range(-r, r + 1):
                for i in range(-r, r + 1):
                    yy = min(max(y + j, 0), 8)
                    xx = min(max(x + i, 0), 8)
                    s += k2[j + r, i + r] * a[yy, xx]
            ref[y, x] = s
    out = gaussian_blur(gray(a), 1.0).data[:, :, 0]
    assert out[4, 4] == round(255 * w[r] ** 2)
    assert np.array_equal(out, np.floor(ref + 0.5).astype(np.uint8))


def test_blur_three_pixel_clamped():
    w = gaussian_kernel(0.5)  # half-width 2
    src = [0, 255, 0]
    ref = []
    for x in range(3):
        s = sum(w[j + 2] * src[min(max(x + j, 0), 2)] for j in range(-2, 3))
        ref.append(int(np.floor(s + 0.5)))
    out = gaussian_blur(gray([[0, 255, 0]]), 0.5).data[0, :, 0]
    assert out.tolist() == ref


def test_band_full_range_sets_everything(rng):
    img = Raster(rng.integers(0, 256, (6, 7, 3)).astype(np.uint8))
    assert band_threshold(img, [0, 0, 0], [255, 255, 255]).count() == 42


def test_band_on_constant():
    img = Raster(np.full((4, 4, 3), 77, np.uint8))
    assert band_threshold(img, [77] * 3, [77] * 3).count() == 16
    assert band_threshold(img, [78] * 3, [78] * 3).count() == 0


def test_band_matches_scalar_loop(rng):
    for _ in range(20):
        a = rng.integers(0, 256, (8, 9, 3))
        lo = rng.integers(0, 200, 3)
        hi = lo + rng.integers(0, 56, 3)
        got = band_threshold(Raster(a.astype(np.uint8)), lo, hi).bits
        for (y, x), v in np.ndenumerate(got):
            assert v == all(lo[c] <= a[y, x, c] <= hi[c] for c in range(3))


def test_band_length_mismatch():
    with pytest.raises(InvalidInputError):
        band_threshold(Raster(np.zeros((2, 2, 3), np.uint8)), [0, 0], [1, 1])


def test_canny_constant_is_empty():
    assert canny(gray(np.full((20, 20), 90)), 10, 30).count() == 0
    assert canny(gray(np.full((20, 20), 90)), 0, 0).count() == 0


def test_canny_vertical_step_single_column():
    a = np.zeros((16, 20))
    a[:, 10:] = 255
    e = canny(gray(a), 50, 100).bits
    cols = np.flatnonzero(e.any(axis=0))
    # the ridge straddles the step between columns 9 and 10
    assert len(cols) == 1 and cols[0] in (9, 10)
    assert e[:, cols[0]].all()


def test_canny_threshold_order():
    with pytest.raises(InvalidInputError):
        canny(gray(np.zeros((4, 4))), 10, 5)
    with pytest.raises(InvalidInputError):
        canny(Raster(np.zeros((4, 4, 3), np.uint8)), 1, 2)


def test_hysteresis_rules(backend):
    nms = np.zeros((7, 9))
    nms[1, 1] = 200          # strong
    nms[2, 2] = 60           # weak, touches strong
    nms[3, 3] = 60           # weak, touches the weak chain
    nms[5, 7] = 60           # isolated weak
    out = hysteresis(nms, 50, 100).bits
    assert out[1, 1] and out[2, 2] and out[3, 3]
    assert not out[5, 7]
    assert out.sum() == 3


def test_hysteresis_is_bitmask(backend):
    assert isinstance(hysteresis(np.zeros((2, 2)), 1, 2), BitMask)
