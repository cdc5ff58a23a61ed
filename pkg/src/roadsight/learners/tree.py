"""CART classification trees with (optionally weighted) Gini impurity."""
import numpy as np

from .base import Model

# impurities closer than this are treated as equal when breaking ties
TIE_EPS = 1e-12


def gini(counts):
    """``1 - sum(p**2)`` of a class-count (or class-weight) vector."""
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    if total <= 0:
        return 0.0
    p = counts / total
    return float(1.0 - np.dot(p, p))


def best_split(x, y, w, n_classes, features, order=None):
    """Lowest weighted-Gini split of the rows ``x`` over column ids ``features``.

    Candidate thresholds are midpoints between consecutive distinct values.
    Ties go to the lowest feature id, then the lowest threshold. ``order`` is
    an optional precomputed stable argsort of ``x[:, features]`` along rows.
    Returns ``(feature, threshold, impurity)`` or ``None`` if no column varies.
    """
    n = len(y)
    if n < 2:
        return None
    feats = np.asarray(features, dtype=np.intp)
    xs = x[:, feats]
    if order is None:
        order = np.argsort(xs, axis=0, kind="stable")
    xs = np.take_along_axis(xs, order, axis=0)
    valid = xs[1:] > xs[:-1]
    if not valid.any():
        return None
    y_sorted = y[order]
    w_sorted = w[order]
    wl = np.zeros((n - 1, len(feats)))
    sq_l = np.zeros_like(wl)
    sq_r = np.zeros_like(wl)
    class_totals = np.bincount(y, weights=w, minlength=n_classes)
    for c in range(n_classes):
        if class_totals[c] == 0:
            continue
        left = np.cumsum(np.where(y_sorted == c, w_sorted, 0.0), axis=0)[:-1]
        right = class_totals[c] - left
        wl += left
        sq_l += left * left
        sq_r += right * right
    total = class_totals.sum()
    wr = total - wl
    with np.errstate(divide="ignore", invalid="ignore"):
        sl = np.where(wl > 0, sq_l / wl, 0.0)
        sr = np.where(wr > 0, sq_r / wr, 0.0)
    impurity = np.where(valid, (total - sl - sr) / total, np.inf)
    best = impurity.min()
    # feature-major scan order implements the tie rule
    hit = (impurity <= best + TIE_EPS).T.ravel()
    flat = int(np.argmax(hit))
    fi, i = divmod(flat, n - 1)
    thr = (xs[i, fi] + xs[i + 1, fi]) / 2.0
    return int(feats[fi]), float(thr), float(impurity[i, fi])


class _Builder:
    def __init__(self, x, y, w, n_classes, max_depth, min_split, feature_sampler, root_order):
        self.x, self.y, self.w = x, y, w
        self.root_order = root_order
        self.c = n_classes
        self.max_depth = max_depth
        self.min_split = min_split
        self.sampler = feature_sampler
        self.feature, self.threshold, self.left, self.right, self.label = [], [], [], [], []

    def _new(self):
        for lst, v in ((self.feature, -1), (self.threshold, 0.0), (self.left, -1),
                       (self.right, -1), (self.label, 0)):
            lst.append(v)
        return len(self.feature) - 1

    def build(self, rows):
        # explicit stack keeps deep unconstrained trees off the recursion limit
        root = self._new()
        stack = [(root, rows, 0)]
        while stack:
            node, idx, depth = stack.pop()
            y, w = self.y[idx], self.w[idx]
            weights = np.bincount(y, weights=w, minlength=self.c)
            self.label[node] = int(np.argmax(weights))
            if (len(np.unique(y)) <= 1 or len(idx) < self.min_split
                    or (self.max_depth is not None and depth >= self.max_depth)):
                continue
            feats = self.sampler(self.x.shape[1])
            order = None
            if node == 0 and self.root_order is not None and len(feats) == self.x.shape[1]:
                order = self.root_order
            split = best_split(self.x[idx], y, w, self.c, feats, order)
            # weighted Gini never rises under a split; one that leaves it unchanged
            # is still taken, since XOR-like labels only separate one level down
            if split is None:
                continue
            f, thr, _ = split
            go_left = self.x[idx, f] <= thr
            li, ri = self._new(), self._new()
            self.feature[node], self.threshold[node] = f, thr
            self.left[node], self.right[node] = li, ri
            stack.append((ri, idx[~go_left], depth + 1))
            stack.append((li, idx[go_left], depth + 1))
        return {
            "feature": np.array(self.feature, dtype=np.int64),
            "threshold": np.array(self.threshold, dtype=np.float64),
            "left": np.array(self.left, dtype=np.int64),
            "right": np.array(self.right, dtype=np.int64),
            "label": np.array(self.label, dtype=np.int64),
        }


def all_features(d):
    return np.arange(d)


def grow_tree(x, y, n_classes, max_depth=None, min_split=2, weights=None,
              feature_sampler=all_features, rows=None, root_order=None):
    """Node arrays of a CART tree. ``feature_sampler(d)`` picks the column
    ids (ascending) considered at each node; ``root_order`` optionally
    supplies the column-wise stable argsort of ``x[rows]`` for the root."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    w = np.ones(len(y)) if weights is None else np.asarray(weights, dtype=np.float64)
    rows = np.arange(len(y)) if rows is None else np.asarray(rows)
    return _Builder(x, y, w, n_classes, max_depth, min_split, feature_sampler, root_order).build(rows)


def tree_apply(t, x):
    """Predicted label per row of ``x`` for node arrays ``t``."""
    node = np.zeros(len(x), dtype=np.int64)
    feature, thr, left, right = t["feature"], t["threshold"], t["left"], t["right"]
    rows = np.arange(len(x))
    active = feature[node] >= 0
    while active.any():
        r = rows[active]
        nd = node[r]
        go_left = x[r, feature[nd]] <= thr[nd]
        node[r] = np.where(go_left, left[nd], right[nd])
        active = feature[node] >= 0
    return t["label"][node]


def tree_depth(t):
    depth = np.zeros(len(t["feature"]), dtype=np.int64)
    for i in range(len(t["feature"])):
        if t["feature"][i] >= 0:
            depth[t["left"][i]] = depth[t["right"][i]] = depth[i] + 1
    return int(depth.max())


def fit_tree(d, cfg):
    t = grow_tree(d.x, d.y, d.n_classes, cfg.max_depth, cfg.min_split)
    return Model("tree", cfg, d.d, d.n_classes, {"tree": t})


def predict_tree(m, x):
    x2, single = m.check_input(x)
    out = tree_apply(m.params["tree"], x2)
    return int(out[0]) if single else out
