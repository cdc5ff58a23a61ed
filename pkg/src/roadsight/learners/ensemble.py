"""Random forests and SAMME AdaBoost over CART trees."""
import math

import numpy as np

from .base import Model, ceil_sqrt
from .tree import grow_tree, tree_apply

# stands in for a zero weighted error when computing a round weight
ERR_FLOOR = 1e-10


def _vote(preds, weights, n_classes):
    """Weighted class vote per column of ``preds`` (rounds x samples);
    ties go to the smallest label."""
    scores = np.zeros((preds.shape[1], n_classes))
    cols = np.arange(preds.shape[1])
    for p, a in zip(preds, weights):
        scores[cols, p] += a
    return np.argmax(scores, axis=1)


def forest_features_per_node(d, cfg):
    if cfg.feature_frac is None:
        return min(d, ceil_sqrt(d))
    return max(1, min(d, int(math.ceil(cfg.feature_frac * d))))


def fit_forest(d, cfg):
    """Bagged CARTs; tree ``i`` draws from its own stream seeded by
    ``(seed, i)`` so the ensemble does not depend on training order."""
    m_feat = forest_features_per_node(d.d, cfg)
    trees = []
    for i in range(cfg.n_trees):
        rng = np.random.default_rng([cfg.seed, i])
        rows = rng.integers(0, d.n, d.n) if cfg.bootstrap else np.arange(d.n)

        def sampler(n_feat, rng=rng):
            if m_feat >= n_feat:
                return np.arange(n_feat)
            return np.sort(rng.choice(n_feat, m_feat, replace=False))

        trees.append(grow_tree(d.x, d.y, d.n_classes, cfg.max_depth, cfg.min_split,
                               feature_sampler=sampler, rows=rows))
    return Model("forest", cfg, d.d, d.n_classes, {"trees": trees})


def predict_forest(m, x):
    x2, single = m.check_input(x)
    trees = m.params["trees"]
    preds = np.array([tree_apply(t, x2) for t in trees])
    out = _vote(preds, np.ones(len(trees)), m.n_classes)
    return int(out[0]) if single else out


def fit_adaboost(d, cfg, trace=None):
    """SAMME with weighted-Gini trees of depth ``base_depth``.

    ``trace``, if a list, receives one dict per round with the normalized
    sample weights the round was trained on, its weighted error and alpha.
    """
    c = d.n_classes
    w = np.full(d.n, 1.0 / d.n)
    trees, alphas = [], []
    # every round's root sees all rows, so the column sort is shared
    order = np.argsort(d.x, axis=0, kind="stable")
    for _ in range(cfg.n_rounds):
        t = grow_tree(d.x, d.y, c, cfg.base_depth, cfg.min_split, weights=w, root_order=order)
        miss = tree_apply(t, d.x) != d.y
        err = float(w[miss].sum() / w.sum())
        if err >= 1.0 - 1.0 / c:
            if trace is not None:
                trace.append({"weights": w.copy(), "error": err, "alpha": None})
            if not trees:
                # keep a single no-better-than-chance learner so predict is defined
                trees.append(t)
                alphas.append(1.0)
            break
        e = max(err, ERR_FLOOR)
        alpha = math.log((1.0 - e) / e) + math.log(c - 1)
        if trace is not None:
            trace.append({"weights": w.copy(), "error": err, "alpha": alpha})
        trees.append(t)
        alphas.append(alpha)
        if err == 0.0:
            break
        w = w * np.exp(alpha * miss)
        w = w / w.sum()
    return Model("adaboost", cfg, d.d, c, {"trees": trees, "alphas": np.array(alphas)})


def predict_adaboost(m, x):
    x2, single = m.check_input(x)
    preds = np.array([tree_apply(t, x2) for t in m.params["trees"]])
    out = _vote(preds, m.params["alphas"], m.n_classes)
    return int(out[0]) if single else out
