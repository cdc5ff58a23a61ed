import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import flood_fill_components, flood_fill_count
from roadsight.raster import BitMask, Contour, contour_area, find_contours


def square(n, size=8, at=1):
    m = np.zeros((size, size), bool)
    m[at:at + n, at:at + n] = True
    return m


def test_empty_mask(backend):
    assert find_contours(BitMask.empty(5, 4)) == []


def test_filled_square_border(backend):
    (c,) = find_contours(BitMask(square(4)))
    pts = {tuple(p) for p in c.points.tolist()}
    expect = {(x, y) for x in range(1, 5) for y in range(1, 5) if x in (1, 4) or y in (1, 4)}
    assert len(c) == 12 and pts == expect


def test_two_squares_in_raster_order(backend):
    m = np.zeros((10, 12), bool)
    m[5:8, 1:4] = True
    m[1:3, 8:11] = True
    cs = find_contours(BitMask(m))
    assert len(cs) == 2
    assert tuple(cs[0].points[0]) == (8, 1)
    assert tuple(cs[1].points[0]) == (1, 5)


def _closed_8_chain(pts):
    if len(pts) == 1:
        return True
    d = np.abs(np.diff(np.vstack([pts, pts[:1]]), axis=0))
    return bool(np.all(d.max(axis=1) == 1))


def test_random_masks_against_flood_fill(backend, rng):
    for _ in range(50):
        m = rng.random((24, 24)) < rng.uniform(0.1, 0.7)
        cs = find_contours(BitMask(m))
        assert len(cs) == flood_fill_count(m)
        comps = flood_fill_components(m)
        for c, comp in zip(cs, comps):
            pts = {tuple(p) for p in c.points.tolist()}
            assert pts <= comp
            assert _closed_8_chain(c.points)


def test_hole_not_reported(backend):
    m = square(5)
    m[3, 3] = False
    assert len(find_contours(BitMask(m))) == 1


@settings(max_examples=50, deadline=None)
@given(m=arrays(bool, st.tuples(st.integers(1, 14), st.integers(1, 14))))
def test_count_property(m):
    assert len(find_contours(BitMask(m))) == flood_fill_count(m)


def test_area_examples():
    dense = [(x, 0) for x in range(5)] + [(4, y) for y in range(1, 5)] + \
            [(x, 4) for x in range(3, -1, -1)] + [(0, y) for y in range(3, 0, -1)]
    assert contour_area(Contour(dense)) == 16
    assert contour_area(Contour([(3, 3)])) == 0


def test_area_orientation_independent(rng):
    for _ in range(50):
        pts = rng.integers(-20, 20, (rng.integers(3, 12), 2))
        # independent signed shoelace recomputed in both orientations
        def signed(p):
            return sum(p[i][0] * p[(i + 1) % len(p)][1] - p[(i + 1) % len(p)][0] * p[i][1]
                       for i in range(len(p))) / 2
        fwd, rev = signed(pts.tolist()), signed(pts[::-1].tolist())
        assert fwd == -rev
        assert contour_area(Contour(pts)) == abs(fwd) == contour_area(Contour(pts[::-1]))
