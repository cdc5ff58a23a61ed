import json

import numpy as np
import pytest

from roadsight.errors import DimensionMismatchError, InvalidConfigError, InvalidInputError, ModelFormatError
from roadsight.learners import (LEARNERS, Dataset, TrainConfig, dumps, fit, fit_gnb, fit_knn,
                                fit_logreg, fit_softmax, fit_svm, gnb_log_posteriors,
                                hinge_objective, loads, logistic_loss_grad, predict,
                                predict_gnb, predict_knn, predict_logreg, predict_svm,
                                softmax_loss_grad)
from roadsight.learners.linear import logreg_proba
from roadsight.learners.base import MODEL_VERSION, Model

CFG = TrainConfig()
SEPARABLE = Dataset(np.array([[-2.0], [-1.0], [1.0], [2.0]]), np.array([0, 0, 1, 1]))


def test_dataset_validation():
    with pytest.raises(InvalidInputError):
        Dataset(np.zeros((0, 2)), np.zeros(0))
    with pytest.raises(InvalidInputError):
        Dataset(np.zeros((3, 2)), np.zeros(2))
    with pytest.raises(InvalidInputError):
        Dataset(np.zeros((2, 2)), np.array([0, 3]), n_classes=2)
    assert Dataset(np.zeros((2, 2)), np.array([0, 1])).n_classes == 2


def test_config_validation():
    with pytest.raises(InvalidConfigError):
        TrainConfig(k=0)
    with pytest.raises(InvalidConfigError):
        TrainConfig(feature_frac=1.5)
    with pytest.raises(InvalidConfigError):
        TrainConfig.from_dict({"nope": 1})
    cfg = TrainConfig(seed=3, max_depth=4)
    assert TrainConfig.from_dict(cfg.to_dict()) == cfg


# KNN

def test_knn_examples():
    d = Dataset(np.array([[0.0], [1.0], [2.0]]), np.array([0, 0, 1]))
    m = fit_knn(d, CFG.replace(k=1))
    assert [predict_knn(m, [v]) for v in (0.0, 1.0, 2.0)] == [0, 0, 1]
    m3 = fit_knn(d, CFG.replace(k=3))
    assert all(predict_knn(m3, [q]) == 0 for q in (-10.0, 2.0, 50.0))
    with pytest.raises(InvalidConfigError):
        fit_knn(d, CFG.replace(k=4))


def test_knn_vs_exhaustive_scan(rng):
    x = rng.normal(size=(60, 3)).round(1)  # rounding forces distance ties
    y = rng.integers(0, 3, 60)
    k = 5
    m = fit_knn(Dataset(x, y, 3), CFG.replace(k=k))
    queries = rng.normal(size=(100, 3)).round(1)
    got = predict_knn(m, queries)
    for q, g in zip(queries, got):
        dist = [(float(np.sum((x[i] - q) ** 2)), i) for i in range(len(x))]
        dist.sort()
        votes = [0, 0, 0]
        for _, i in dist[:k]:
            votes[y[i]] += 1
        assert g == votes.index(max(votes))


def test_knn_k1_training_accuracy(rng):
    x = rng.normal(size=(40, 4))
    y = rng.integers(0, 2, 40)
    m = fit_knn(Dataset(x, y), CFG.replace(k=1))
    assert np.array_equal(predict_knn(m, x), y)


# Gaussian naive Bayes

def test_gnb_examples():
    d = Dataset(np.array([[-6.0], [-4.0], [4.0], [6.0]]), np.array([0, 0, 1, 1]))
    m = fit_gnb(d, CFG)
    assert predict_gnb(m, [-4.0]) == 0 and predict_gnb(m, [4.5]) == 1
    assert predict_gnb(m, [0.0]) == 0
    lp = gnb_log_posteriors(m, [0.0])[0]
    assert lp[0] == lp[1]


def test_gnb_density_oracle(rng):
    x = rng.normal(size=(30, 4)) * [1, 2, 0.5, 3]
    y = rng.integers(0, 3, 30)
    y[:3] = [0, 1, 2]
    m = fit_gnb(Dataset(x, y, 3), CFG)
    eps = 1e-9 * max(float(np.var(x[:, j])) for j in range(4))
    q = rng.normal(size=(10, 4))
    got = gnb_log_posteriors(m, q)
    for r, row in enumerate(q):
        for c in range(3):
            xc = x[y == c]
            val = np.log(len(xc) / 30)
            for j in range(4):
                mu = xc[:, j].mean()
                var = ((xc[:, j] - mu) ** 2).mean() + eps
                val += np.log(np.exp(-(row[j] - mu) ** 2 / (2 * var)) / np.sqrt(2 * np.pi * var))
            assert abs(got[r, c] - val) <= 1e-9
    shifted = got + 17.0
    assert np.array_equal(np.argmax(shifted, axis=1), predict_gnb(m, q))


def test_gnb_missing_class():
    with pytest.raises(InvalidInputError):
        fit_gnb(Dataset(np.zeros((2, 1)), np.array([0, 2])), CFG)


# logistic / softmax

def rel_err(a, b):
    a, b = np.ravel(a), np.ravel(b)
    return np.linalg.norm(a - b) / max(np.linalg.norm(a) + np.linalg.norm(b), 1e-12)


def test_logistic_gradient_finite_difference(rng):
    for _ in range(10):
        x, y = rng.normal(size=(5, 4)), rng.integers(0, 2, 5).astype(float)
        w, b, l2 = rng.normal(size=4), float(rng.normal()), 0.1
        _, gw, gb = logistic_loss_grad(w, b, x, y, l2)
        h = 1e-6
        num = [(logistic_loss_grad(w + h * e, b, x, y, l2)[0] -
                logistic_loss_grad(w - h * e, b, x, y, l2)[0]) / (2 * h) for e in np.eye(4)]
        nb = (logistic_loss_grad(w, b + h, x, y, l2)[0] - logistic_loss_grad(w, b - h, x, y, l2)[0]) / (2 * h)
        assert rel_err(np.append(gw, gb), np.append(num, nb)) <= 1e-5


def test_softmax_gradient_finite_difference(rng):
    for _ in range(10):
        x, y = rng.normal(size=(5, 4)), rng.integers(0, 3, 5)
        w, b, l2 = rng.normal(size=(3, 4)), rng.normal(size=3), 0.1
        _, gw, gb = softmax_loss_grad(w, b, x, y, l2)
        h = 1e-6
        num_w = np.zeros_like(w)
        for idx in np.ndindex(*w.shape):
            e = np.zeros_like(w)
            e[idx] = h
            num_w[idx] = (softmax_loss_grad(w + e, b, x, y, l2)[0] - softmax_loss_grad(w - e, b, x, y, l2)[0]) / (2 * h)
        num_b = np.array([(softmax_loss_grad(w, b + h * e, x, y, l2)[0] -
                           softmax_loss_grad(w, b - h * e, x, y, l2)[0]) / (2 * h) for e in np.eye(3)])
        assert rel_err(np.append(gw, gb), np.append(num_w, num_b)) <= 1e-5


def test_logreg_zero_model_probability(rng):
    m = Model("logreg", CFG, 3, 2, {"w": np.zeros(3), "b": np.array(0.0)})
    assert np.all(logreg_proba(m, rng.normal(size=(8, 3))) == 0.5)
    m0 = fit_logreg(SEPARABLE, CFG.replace(epochs=1, learning_rate=1e-300))
    assert np.allclose(logreg_proba(m0, SEPARABLE.x), 0.5)


def test_linear_separable_training():
    for fitter, pred in ((fit_logreg, predict_logreg),):
        assert np.array_equal(pred(fitter(SEPARABLE, CFG), SEPARABLE.x), SEPARABLE.y)
    m = fit_softmax(SEPARABLE, CFG)
    assert np.array_equal(predict(m, SEPARABLE.x), SEPARABLE.y)


def test_binary_learners_reject_multiclass():
    d = Dataset(np.zeros((3, 1)), np.array([0, 1, 2]))
    for f in (fit_logreg, fit_svm):
        with pytest.raises(InvalidConfigError):
            f(d, CFG)


# SVM

def test_svm_separable():
    m = fit_svm(SEPARABLE, CFG)
    assert np.array_equal(predict_svm(m, SEPARABLE.x), SEPARABLE.y)
    score = SEPARABLE.x @ m.params["w"] + float(m.params["b"])
    assert score[0] < 0 < score[-1]


def test_svm_single_point():
    for label in (0, 1):
        d = Dataset(np.array([[0.7, -0.2]]), np.array([label]), n_classes=2)
        m = fit_svm(d, CFG.replace(svm_epochs=50))
        assert predict_svm(m, d.x[0]) == label


def test_svm_exact_zero_is_positive():
    m = Model("svm", CFG, 2, 2, {"w": np.zeros(2), "b": np.array(0.0)})
    assert predict_svm(m, [1.0, 2.0]) == 1


def test_svm_objective_decreases(rng):
    x = rng.normal(size=(80, 5))
    y = (x[:, 0] + 0.3 * rng.normal(size=80) > 0).astype(int)
    ys = np.where(y == 1, 1.0, -1.0)
    cfg = CFG.replace(svm_epochs=100)
    m = fit_svm(Dataset(x, y), cfg)
    initial = hinge_objective(np.zeros(5), 0.0, x, ys, cfg.svm_lambda)
    final = hinge_objective(m.params["w"], float(m.params["b"]), x, ys, cfg.svm_lambda)
    assert final <= initial


# dispatch and serialization

def small_problem(rng, c=2):
    x = rng.normal(size=(40, 3))
    y = (x[:, 0] > 0).astype(int) if c == 2 else rng.integers(0, c, 40)
    return Dataset(x, y, c)


def test_dispatch_matches_direct(rng):
    d = small_problem(rng)
    q = rng.normal(size=(20, 3))
    assert np.array_equal(predict(fit("knn", d, CFG), q), predict_knn(fit_knn(d, CFG), q))
    with pytest.raises(InvalidConfigError):
        fit("no_such", d, CFG)


@pytest.mark.parametrize("learner_id", sorted(LEARNERS))
def test_serialization_round_trip(learner_id, rng):
    d = small_problem(rng)
    cfg = CFG.replace(epochs=50, svm_epochs=20, n_trees=5, n_rounds=5)
    m = fit(learner_id, d, cfg)
    q = rng.normal(size=(30, 3))
    text = dumps(m)
    back = loads(text)
    assert back.learner_id == learner_id and back.config == cfg
    assert np.array_equal(predict(m, q), predict(back, q))
    # determinism: same data, config and seed give an identical model
    assert dumps(fit(learner_id, d, cfg)) == text


def test_model_version_mismatch(rng):
    blob = json.loads(dumps(fit("gnb", small_problem(rng), CFG)))
    blob["version"] = MODEL_VERSION + 1
    with pytest.raises(ModelFormatError):
        loads(json.dumps(blob))
    with pytest.raises(ModelFormatError):
        loads("not json")


def test_predict_dimension_mismatch(rng):
    m = fit("tree", small_problem(rng), CFG)
    with pytest.raises(DimensionMismatchError):
        predict(m, np.zeros(4))
