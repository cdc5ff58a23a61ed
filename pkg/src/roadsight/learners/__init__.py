"""From-scratch classifiers behind one ``fit``/``predict`` contract."""
from ..errors import InvalidConfigError
from .base import (Dataset, Model, TrainConfig, dumps, load_model, loads, model_from_dict,
                   model_to_dict, save_model)
from .bayes import fit_gnb, gnb_log_posteriors, predict_gnb
from .ensemble import fit_adaboost, fit_forest, predict_adaboost, predict_forest
from .linear import (fit_logreg, fit_softmax, fit_svm, hinge_objective, logistic_loss_grad,
                     predict_logreg, predict_softmax, predict_svm, softmax_loss_grad)
from .neighbors import fit_knn, predict_knn
from .tree import fit_tree, gini, predict_tree

LEARNERS = {
    "logreg": (fit_logreg, predict_logreg),
    "softmax": (fit_softmax, predict_softmax),
    "tree": (fit_tree, predict_tree),
    "adaboost": (fit_adaboost, predict_adaboost),
    "gnb": (fit_gnb, predict_gnb),
    "knn": (fit_knn, predict_knn),
    "svm": (fit_svm, predict_svm),
    "forest": (fit_forest, predict_forest),
}

DISPLAY_NAMES = {
    "logreg": "Logistic Regression",
    "softmax": "Multinomial Logistic Regression",
    "tree": "Decision Tree",
    "adaboost": "AdaBoost using Decision Tree",
    "gnb": "GaussianNB",
    "knn": "KNN",
    "svm": "SVM",
    "forest": "Random Forest",
}


def _lookup(learner_id):
    try:
        return LEARNERS[learner_id]
    except KeyError:
        raise InvalidConfigError(
            f"unknown learner {learner_id!r}; choose from {sorted(LEARNERS)}") from None


def fit(learner_id, d, cfg=None):
    return _lookup(learner_id)[0](d, cfg if cfg is not None else TrainConfig())


def predict(m, x):
    return _lookup(m.learner_id)[1](m, x)


__all__ = [
    "Dataset", "Model", "TrainConfig", "LEARNERS", "DISPLAY_NAMES", "fit", "predict",
    "dumps", "loads", "save_model", "load_model", "model_to_dict", "model_from_dict",
    "fit_knn", "predict_knn", "fit_gnb", "predict_gnb", "gnb_log_posteriors",
    "fit_logreg", "predict_logreg", "fit_softmax", "predict_softmax", "fit_svm", "predict_svm",
    "logistic_loss_grad", "softmax_loss_grad", "hinge_objective",
    "fit_tree", "predict_tree", "gini", "fit_forest", "predict_forest",
    "fit_adaboost", "predict_adaboost",
]
