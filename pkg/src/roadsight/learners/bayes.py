"""Gaussian naive Bayes."""
import numpy as np

from ..errors import InvalidInputError
from .base import Model

VAR_SMOOTHING = 1e-9


def fit_gnb(d, cfg):
    """Per-class priors, feature means and population variances. Every
    variance gets ``1e-9 * max feature variance`` added (``1e-9`` when all
    features are constant)."""
    counts = np.bincount(d.y, minlength=d.n_classes)
    if np.any(counts == 0):
        missing = np.flatnonzero(counts == 0).tolist()
        raise InvalidInputError(f"classes {missing} have no training samples")
    eps = VAR_SMOOTHING * float(d.x.var(axis=0).max())
    if eps == 0.0:
        eps = VAR_SMOOTHING
    means = np.stack([d.x[d.y == c].mean(axis=0) for c in range(d.n_classes)])
    var = np.stack([d.x[d.y == c].var(axis=0) for c in range(d.n_classes)]) + eps
    return Model("gnb", cfg, d.d, d.n_classes,
                 {"log_prior": np.log(counts / d.n), "mean": means, "var": var})


def gnb_log_posteriors(m, x):
    """Unnormalized log posteriors, shape ``(rows, classes)``."""
    x2, _ = m.check_input(x)
    mean, var = m.params["mean"], m.params["var"]
    const = -0.5 * np.log(2.0 * np.pi * var).sum(axis=1)
    out = np.empty((len(x2), m.n_classes))
    for c in range(m.n_classes):
        z = (x2 - mean[c]) ** 2 / var[c]
        out[:, c] = m.params["log_prior"][c] + const[c] - 0.5 * z.sum(axis=1)
    return out


def predict_gnb(m, x):
    x = np.asarray(x, dtype=np.float64)
    out = np.argmax(gnb_log_posteriors(m, x), axis=1)
    return int(out[0]) if x.ndim == 1 else out
