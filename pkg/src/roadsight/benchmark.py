"""End-to-end benchmark: road extraction, features, every learner, and the
accuracy report in JSON or Markdown."""
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import learners
from .data import split
from .errors import BenchmarkError, NoRoadError
from .features import HIST_BINS, FeatureKind, road_features
from .raster import read_image
from .road import DEFAULT_K, RoiSpec, extract_road

log = logging.getLogger(__name__)

THREADS_ENV = "ROADSIGHT_THREADS"

# fixed learner order of the two report tables
TABLE_ORDER = {
    FeatureKind.PIXELS: ["logreg", "softmax", "tree", "adaboost", "gnb", "knn", "svm", "forest"],
    FeatureKind.HIST: ["logreg", "tree", "adaboost", "gnb", "knn", "svm", "forest"],
}

TITLES = {
    FeatureKind.PIXELS: "Downscaled pixel features",
    FeatureKind.HIST: "Colour histogram features",
}


@dataclass(frozen=True)
class BenchConfig:
    seed: int = 0
    test_frac: float = 0.3
    roi: RoiSpec = RoiSpec()
    k: float = DEFAULT_K
    hist_bins: int = HIST_BINS
    train: learners.TrainConfig = learners.TrainConfig()
    learner_ids: tuple | None = None

    def snapshot(self, kind):
        from .features import CANONICAL_SIZE

        d = {"seed": self.seed, "test_frac": self.test_frac, "roi": asdict(self.roi), "k": self.k,
             "train": self.train.replace(seed=self.seed).to_dict()}
        if kind is FeatureKind.HIST:
            d["hist_bins"] = self.hist_bins
        else:
            d["canonical_size"] = list(CANONICAL_SIZE)
        return d


@dataclass(frozen=True)
class ReportRow:
    learner: str
    accuracy: float
    train_accuracy: float
    learner_id: str = ""


@dataclass(frozen=True)
class EvalReport:
    feature_kind: FeatureKind
    rows: tuple
    train_n: int
    test_n: int
    seed: int
    excluded: int
    config: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "feature_kind": self.feature_kind.value,
            "split": {"train_n": self.train_n, "test_n": self.test_n, "seed": self.seed},
            "excluded": self.excluded,
            "rows": [{"learner": r.learner, "accuracy": r.accuracy,
                      "train_accuracy": r.train_accuracy} for r in self.rows],
            "config": self.config,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_markdown(self):
        lines = [f"## {TITLES[self.feature_kind]}", "",
                 "| Methods | Accuracy(%) |", "|---|---|"]
        lines += [f"| {r.learner} | {r.accuracy:.2f} |" for r in self.rows]
        lines += ["", f"Split: {self.train_n} train / {self.test_n} test, seed {self.seed}; "
                      f"{self.excluded} sample(s) excluded after failed road extraction.", ""]
        return "\n".join(lines)

    def summary_lines(self):
        return [row_line(r.learner, r.accuracy) for r in self.rows]


def row_line(name, acc):
    return f"{name}, {acc:.2f}"


def accuracy(m, test):
    """Percentage of correct predictions, rounded to 2 decimals."""
    if test.n == 0:
        raise BenchmarkError("accuracy needs a non-empty test set")
    pred = learners.predict(m, test.x)
    return round(100.0 * float(np.mean(pred == test.y)), 2)


def thread_count():
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map(fn, items, threads):
    if threads <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True, eq=False)
class FeatureTable:
    """Features of every usable manifest entry; ``usable`` indexes the manifest."""

    kind: FeatureKind
    x: np.ndarray
    y: np.ndarray
    usable: tuple
    excluded: int


def featurize(manifest, kinds, cfg=BenchConfig(), threads=None):
    """Extract roads once and compute each requested feature kind.

    Frames where road extraction fails are skipped and counted.
    """
    kinds = [FeatureKind.parse(k) if not isinstance(k, FeatureKind) else k for k in kinds]
    threads = thread_count() if threads is None else threads

    def one(entry):
        img = read_image(manifest.abspath(entry))
        try:
            ex = extract_road(img, cfg.roi, cfg.k)
        except NoRoadError:
            log.info("road extraction failed for %s", entry.path)
            return None
        return [road_features(ex, k, cfg.hist_bins).values for k in kinds]

    results = _map(one, manifest.entries, threads)
    usable = tuple(i for i, r in enumerate(results) if r is not None)
    y = np.array([manifest.entries[i].label for i in usable], dtype=np.int64)
    tables = {}
    for j, k in enumerate(kinds):
        x = np.array([results[i][j] for i in usable], dtype=np.float64)
        tables[k] = FeatureTable(k, x.reshape(len(usable), -1), y, usable, len(manifest) - len(usable))
    return tables


def run_benchmark(manifest, feature_kind, cfg=BenchConfig(), table=None, threads=None, models=None):
    """Fit every learner of the kind's table on a stratified split and report
    test (and train) accuracy. ``models``, if a dict, receives the fitted
    models keyed by learner id."""
    kind = FeatureKind.parse(feature_kind) if not isinstance(feature_kind, FeatureKind) else feature_kind
    threads = thread_count() if threads is None else threads
    if table is None:
        table = featurize(manifest, [kind], cfg, threads)[kind]
    counts = np.bincount(table.y, minlength=2)
    if len(table.y) == 0 or counts.min() < 2:
        raise BenchmarkError(
            f"need >= 2 usable samples per label after road extraction, got {counts.tolist()}")

    usable = manifest.subset(table.usable)
    train_m, test_m = split(usable, cfg.test_frac, cfg.seed)
    pos = {e.path: i for i, e in enumerate(usable.entries)}
    tr = [pos[e.path] for e in train_m.entries]
    te = [pos[e.path] for e in test_m.entries]
    train = learners.Dataset(table.x[tr], table.y[tr], 2)
    test = learners.Dataset(table.x[te], table.y[te], 2)

    ids = list(cfg.learner_ids) if cfg.learner_ids else TABLE_ORDER[kind]
    tcfg = cfg.train.replace(seed=cfg.seed)

    def task(learner_id):
        m = learners.fit(learner_id, train, tcfg)
        m = replace(m, meta={"feature_kind": kind.value, "hist_bins": cfg.hist_bins,
                             "roi": asdict(cfg.roi), "k": cfg.k})
        return m, ReportRow(learners.DISPLAY_NAMES[learner_id], accuracy(m, test),
                            accuracy(m, train), learner_id)

    done = _map(task, ids, threads)
    if models is not None:
        models.update({r.learner_id: m for m, r in done})
    return EvalReport(kind, tuple(r for _, r in done), train.n, test.n, cfg.seed,
                      table.excluded, cfg.snapshot(kind))
