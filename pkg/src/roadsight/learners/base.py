"""Shared learner types: datasets, training configuration, fitted models
and their versioned JSON serialization."""
import dataclasses
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import DimensionMismatchError, InvalidConfigError, InvalidInputError, ModelFormatError

MODEL_FORMAT = "roadsight-model"
MODEL_VERSION = 1


@dataclass(frozen=True, eq=False)
class Dataset:
    x: np.ndarray
    y: np.ndarray
    n_classes: int = 0

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.float64)
        y = np.asarray(self.y)
        if x.ndim != 2 or len(x) < 1:
            raise InvalidInputError(f"dataset features must be a non-empty N x D matrix, got {x.shape}")
        if y.shape != (len(x),):
            raise InvalidInputError("need exactly one label per row")
        if y.size and (not np.all(y == np.round(y)) or y.min() < 0):
            raise InvalidInputError("labels must be non-negative integers")
        y = y.astype(np.int64)
        c = self.n_classes or int(y.max()) + 1
        if y.max() >= c:
            raise InvalidInputError(f"label {int(y.max())} out of range for {c} classes")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "n_classes", c)

    @property
    def n(self):
        return self.x.shape[0]

    @property
    def d(self):
        return self.x.shape[1]


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for every learner; each learner reads its own."""

    seed: int = 0
    k: int = 5
    learning_rate: float = 0.1
    epochs: int = 500
    l2: float = 1e-4
    svm_lambda: float = 1e-3
    svm_epochs: int = 1000
    max_depth: int | None = None
    min_split: int = 2
    n_trees: int = 25
    feature_frac: float | None = None
    bootstrap: bool = True
    n_rounds: int = 50
    base_depth: int = 1

    def __post_init__(self):
        positive = ("k", "learning_rate", "epochs", "svm_lambda", "svm_epochs",
                    "min_split", "n_trees", "n_rounds", "base_depth")
        for name in positive:
            if not getattr(self, name) > 0:
                raise InvalidConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if self.l2 < 0:
            raise InvalidConfigError("l2 must be >= 0")
        if self.max_depth is not None and self.max_depth < 0:
            raise InvalidConfigError("max_depth must be >= 0 or None")
        if self.feature_frac is not None and not 0 < self.feature_frac <= 1:
            raise InvalidConfigError("feature_frac must lie in (0, 1]")

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def to_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise InvalidConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)


@dataclass(frozen=True, eq=False)
class Model:
    """Fitted classifier. ``params`` maps names to arrays or nested lists of
    parameter dicts (ensembles)."""

    learner_id: str
    config: TrainConfig
    n_features: int
    n_classes: int
    params: dict
    meta: dict = field(default_factory=dict)

    def check_input(self, x):
        x = np.asarray(x, dtype=np.float64)
        single = x.ndim == 1
        x2 = np.atleast_2d(x)
        if x2.ndim != 2 or x2.shape[1] != self.n_features:
            raise DimensionMismatchError(
                f"{self.learner_id} model expects {self.n_features} features, got {x2.shape[-1]}")
        return x2, single


def ceil_sqrt(d):
    return int(math.ceil(math.sqrt(d)))


def _encode(obj):
    if isinstance(obj, np.ndarray):
        return {"__ndarray__": obj.tolist(), "dtype": obj.dtype.str, "shape": list(obj.shape)}
    if isinstance(obj, dict):
        return {k: _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _decode(obj):
    if isinstance(obj, dict):
        if "__ndarray__" in obj:
            return np.array(obj["__ndarray__"], dtype=np.dtype(obj["dtype"])).reshape(obj["shape"])
        return {k: _decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decode(v) for v in obj]
    return obj


def model_to_dict(m):
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "learner_id": m.learner_id,
        "config": m.config.to_dict(),
        "n_features": m.n_features,
        "n_classes": m.n_classes,
        "meta": _encode(m.meta),
        "params": _encode(m.params),
    }


def model_from_dict(d):
    if not isinstance(d, dict) or d.get("format") != MODEL_FORMAT:
        raise ModelFormatError("not a roadsight model file")
    if d.get("version") != MODEL_VERSION:
        raise ModelFormatError(
            f"model format version {d.get('version')!r} not supported (expected {MODEL_VERSION})")
    try:
        return Model(learner_id=d["learner_id"], config=TrainConfig.from_dict(d["config"]),
                     n_features=int(d["n_features"]), n_classes=int(d["n_classes"]),
                     params=_decode(d["params"]), meta=_decode(d.get("meta", {})))
    except (KeyError, TypeError, InvalidConfigError) as exc:
        raise ModelFormatError(f"malformed model file: {exc}") from exc


def dumps(m):
    return json.dumps(model_to_dict(m), sort_keys=True)


def loads(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file is not valid JSON: {exc}") from exc
    return model_from_dict(d)


def save_model(m, path):
    Path(path).write_text(dumps(m), encoding="utf-8")


def load_model(path):
    return loads(Path(path).read_text(encoding="utf-8"))
