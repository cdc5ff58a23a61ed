"""Linear learners: binary and multinomial logistic regression trained by
full-batch gradient descent, and a Pegasos linear SVM."""
import numpy as np

from ..errors import InvalidConfigError
from .base import Model


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def logistic_loss_grad(w, b, x, y, l2):
    """Mean binary cross-entropy plus ``l2/2 * |w|^2`` (bias unpenalized),
    with its gradient ``(dw, db)``."""
    z = x @ w + b
    # log(1 + e^z) - y z, evaluated stably
    loss = np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * np.dot(w, w)
    r = _sigmoid(z) - y
    return loss, x.T @ r / len(y) + l2 * w, float(r.mean())


def softmax_loss_grad(w, b, x, y, l2):
    """Mean multinomial cross-entropy plus ``l2/2 * |W|_F^2``; ``w`` is
    ``(classes, features)``."""
    z = x @ w.T + b
    z = z - z.max(axis=1, keepdims=True)
    logp = z - np.log(np.exp(z).sum(axis=1, keepdims=True))
    n = len(y)
    loss = -logp[np.arange(n), y].mean() + 0.5 * l2 * np.sum(w * w)
    r = np.exp(logp)
    r[np.arange(n), y] -= 1.0
    return loss, r.T @ x / n + l2 * w, r.mean(axis=0)


def fit_logreg(d, cfg):
    if d.n_classes != 2:
        raise InvalidConfigError(f"binary logistic regression needs 2 classes, got {d.n_classes}")
    w = np.zeros(d.d)
    b = 0.0
    y = d.y.astype(np.float64)
    for _ in range(cfg.epochs):
        _, gw, gb = logistic_loss_grad(w, b, d.x, y, cfg.l2)
        w -= cfg.learning_rate * gw
        b -= cfg.learning_rate * gb
    return Model("logreg", cfg, d.d, 2, {"w": w, "b": np.array(b)})


def logreg_proba(m, x):
    x2, _ = m.check_input(x)
    return _sigmoid(x2 @ m.params["w"] + float(m.params["b"]))


def predict_logreg(m, x):
    x = np.asarray(x, dtype=np.float64)
    out = (logreg_proba(m, x) > 0.5).astype(np.int64)
    return int(out[0]) if x.ndim == 1 else out


def fit_softmax(d, cfg):
    w = np.zeros((d.n_classes, d.d))
    b = np.zeros(d.n_classes)
    for _ in range(cfg.epochs):
        _, gw, gb = softmax_loss_grad(w, b, d.x, d.y, cfg.l2)
        w -= cfg.learning_rate * gw
        b -= cfg.learning_rate * gb
    return Model("softmax", cfg, d.d, d.n_classes, {"w": w, "b": b})


def predict_softmax(m, x):
    x2, single = m.check_input(x)
    out = np.argmax(x2 @ m.params["w"].T + m.params["b"], axis=1)
    return int(out[0]) if single else out


def hinge_objective(w, b, x, y, lam):
    """``lam/2 * (|w|^2 + b^2) + mean(max(0, 1 - y (w.x + b)))`` with
    ``y`` in {-1, +1}. The bias is an augmented weight, so it is penalized."""
    margin = y * (x @ w + b)
    return 0.5 * lam * (np.dot(w, w) + b * b) + np.mean(np.maximum(0.0, 1.0 - margin))


def fit_svm(d, cfg):
    """Pegasos: step ``1/(lam t)``, projection onto the ``1/sqrt(lam)`` ball,
    the bias as a constant feature. The returned weights average the iterates
    of the second half of training."""
    if d.n_classes != 2:
        raise InvalidConfigError(f"linear SVM needs 2 classes, got {d.n_classes}")
    lam = cfg.svm_lambda
    xa = np.hstack([d.x, np.ones((d.n, 1))])
    ys = np.where(d.y == 1, 1.0, -1.0)
    rng = np.random.default_rng(cfg.seed)
    total = cfg.svm_epochs * d.n
    start = total // 2
    w = np.zeros(d.d + 1)
    acc = np.zeros(d.d + 1)
    radius = 1.0 / np.sqrt(lam)
    t = 0
    for _ in range(cfg.svm_epochs):
        for i in rng.permutation(d.n):
            t += 1
            eta = 1.0 / (lam * t)
            violated = ys[i] * np.dot(w, xa[i]) < 1.0
            w *= 1.0 - eta * lam
            if violated:
                w += (eta * ys[i]) * xa[i]
            norm = np.sqrt(np.dot(w, w))
            if norm > radius:
                w *= radius / norm
            if t > start:
                acc += w
    avg = acc / (total - start)
    return Model("svm", cfg, d.d, 2, {"w": avg[:-1].copy(), "b": np.array(avg[-1])})


def predict_svm(m, x):
    """Label 1 when ``w.x + b >= 0``."""
    x2, single = m.check_input(x)
    out = (x2 @ m.params["w"] + float(m.params["b"]) >= 0).astype(np.int64)
    return int(out[0]) if single else out
