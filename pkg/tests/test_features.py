import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roadsight.errors import InvalidInputError
from roadsight.features import (FeatureKind, FeatureVector, hist_feature, pixels_dim,
                                pixels_feature, read_feature_csv, road_features,
                                write_feature_csv)
from roadsight.raster import BitMask, Raster
from roadsight.road import extract_road
from roadsight.synth import render_frame


def test_pixels_black_and_white():
    for v, expect in ((0, 0.0), (255, 1.0)):
        f = pixels_feature(Raster(np.full((50, 70, 3), v, np.uint8)))
        assert f.dim == 9216 == pixels_dim() and np.all(f.values == expect)


def test_pixels_block_mean_oracle(rng):
    a = rng.integers(0, 256, (96, 128, 3))
    got = pixels_feature(Raster(a.astype(np.uint8))).values
    expect = []
    for y in range(48):
        for x in range(64):
            for c in range(3):
                s = sum(int(a[2 * y + i, 2 * x + j, c]) for i in (0, 1) for j in (0, 1))
                expect.append((s // 4) / 255.0)
    assert np.array_equal(got, np.array(expect))


def test_pixels_range_and_determinism(rng):
    img = Raster(rng.integers(0, 256, (37, 81, 3), dtype=np.uint8))
    a, b = pixels_feature(img).values, pixels_feature(img).values
    assert np.array_equal(a, b) and a.min() >= 0 and a.max() <= 1


def test_hist_constant_pixel():
    f = hist_feature(Raster(np.full((5, 7, 3), 16, np.uint8)))
    expect = np.zeros(96)
    expect[[2, 34, 66]] = 1 / 3
    assert f.kind is FeatureKind.HIST and np.array_equal(f.values, expect)


def test_hist_empty_mask():
    img = Raster(np.full((5, 7, 3), 16, np.uint8))
    f = hist_feature(img, BitMask(np.zeros((5, 7), bool)))
    assert np.array_equal(f.values, np.zeros(96))


def test_hist_counting_oracle(rng):
    for _ in range(10):
        a = rng.integers(0, 256, (13, 11, 3))
        m = rng.random((13, 11)) < 0.5
        got = hist_feature(Raster(a.astype(np.uint8)), BitMask(m)).values
        counts = [0] * 96
        n = 0
        for y in range(13):
            for x in range(11):
                if m[y, x]:
                    for c in range(3):
                        counts[c * 32 + int(a[y, x, c]) * 32 // 256] += 1
                        n += 1
        expect = np.array(counts, float) / n if n else np.zeros(96)
        assert np.max(np.abs(got - expect)) <= 1e-12


def test_hist_mask_dimension_mismatch():
    with pytest.raises(InvalidInputError):
        hist_feature(Raster(np.zeros((5, 7, 3), np.uint8)), BitMask(np.ones((7, 5), bool)))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_hist_permutation_invariant(seed):
    r = np.random.default_rng(seed)
    a = r.integers(0, 256, (8, 9, 3), dtype=np.uint8)
    m = r.random((8, 9)) < 0.6
    idx = np.flatnonzero(m)
    flat = a.reshape(-1, 3).copy()
    flat[idx] = flat[r.permutation(idx)]
    b = flat.reshape(a.shape)
    assert np.array_equal(hist_feature(Raster(a), BitMask(m)).values,
                          hist_feature(Raster(b), BitMask(m)).values)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), dy=st.integers(0, 5), dx=st.integers(0, 5))
def test_hist_translation_invariant(seed, dy, dx):
    r = np.random.default_rng(seed)
    a = r.integers(0, 256, (8, 9, 3), dtype=np.uint8)
    m = r.random((8, 9)) < 0.6
    big = np.zeros((14, 15, 3), np.uint8)
    bigm = np.zeros((14, 15), bool)
    big[dy:dy + 8, dx:dx + 9] = a
    bigm[dy:dy + 8, dx:dx + 9] = m
    assert np.array_equal(hist_feature(Raster(a), BitMask(m)).values,
                          hist_feature(Raster(big), BitMask(bigm)).values)


def test_road_features_dims():
    img, _ = render_frame(np.random.default_rng(4), 160, 120, True)
    ex = extract_road(img)
    assert road_features(ex, FeatureKind.PIXELS).dim == 9216
    h = road_features(ex, "hist")
    assert h.dim == 96 and abs(h.values.sum() - 1) < 1e-12


def test_csv_round_trip(tmp_path, rng):
    rows = [(f"img_{i}.png", i % 2, FeatureVector(rng.random(6), FeatureKind.HIST)) for i in range(4)]
    p = tmp_path / "f.csv"
    write_feature_csv(p, rows)
    back = read_feature_csv(p)
    header = p.read_text().splitlines()[0]
    assert header == "path,label,kind,v0,v1,v2,v3,v4,v5"
    for (p0, l0, f0), (p1, l1, f1) in zip(rows, back):
        assert p0 == p1 and l0 == l1 and f0.kind is f1.kind
        assert np.array_equal(f0.values, f1.values)
