import numpy as np
import pytest

from roadsight.errors import InvalidConfigError
from roadsight.raster import read_image
from roadsight.synth import ellipse_mask, load_ground_truth, synth_dataset, trapezoid_mask


def tree_bytes(root):
    return {p.relative_to(root).as_posix(): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def test_byte_identical(tmp_path):
    synth_dataset(tmp_path / "a", 4, 7)
    synth_dataset(tmp_path / "b", 4, 7)
    a, b = tree_bytes(tmp_path / "a"), tree_bytes(tmp_path / "b")
    assert a == b and "manifest.csv" in a and "ground_truth.json" in a


def test_too_small():
    with pytest.raises(InvalidConfigError):
        synth_dataset("/nonexistent", 3, 0)


def test_ground_truth_records(small_dataset):
    gt = load_ground_truth(small_dataset)
    labels = [f["label"] for f in gt["frames"]]
    assert labels.count(1) == 12
    for f in gt["frames"]:
        assert (len(f["ellipses"]) >= 1) == (f["label"] == 1)
        assert len(f["ellipses"]) <= 3


def test_potholes_darker_than_road(small_dataset):
    gt = load_ground_truth(small_dataset)
    w, h = gt["width"], gt["height"]
    for f in gt["frames"]:
        if not f["ellipses"]:
            continue
        img = read_image(small_dataset / f["path"]).data.astype(float).mean(axis=2)
        road = trapezoid_mask(f["road"], w, h)
        holes = np.zeros((h, w), bool)
        for e in f["ellipses"]:
            holes |= ellipse_mask(e, w, h)
        assert img[holes].mean() < img[road & ~holes].mean()
        assert not np.any(holes & ~road)
