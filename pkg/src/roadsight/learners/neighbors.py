"""k-nearest-neighbour classification by exhaustive Euclidean scan."""
import numpy as np

from ..errors import InvalidConfigError
from .base import Model


def fit_knn(d, cfg):
    if not 1 <= cfg.k <= d.n:
        raise InvalidConfigError(f"k={cfg.k} must lie in [1, {d.n}]")
    return Model("knn", cfg, d.d, d.n_classes, {"x": d.x.copy(), "y": d.y.copy()})


def predict_knn(m, x):
    """Majority label of the k nearest training rows. Equal distances keep
    the lower training index; tied votes go to the smallest label."""
    x2, single = m.check_input(x)
    tx, ty, k = m.params["x"], m.params["y"], m.config.k
    out = np.empty(len(x2), dtype=np.int64)
    for i, q in enumerate(x2):
        diff = tx - q
        dist = np.einsum("ij,ij->i", diff, diff)
        nearest = np.argsort(dist, kind="stable")[:k]
        out[i] = np.argmax(np.bincount(ty[nearest], minlength=m.n_classes))
    return int(out[0]) if single else out
