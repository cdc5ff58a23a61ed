import json

import numpy as np
import pytest

from roadsight.benchmark import (TABLE_ORDER, BenchConfig, EvalReport, FeatureTable, ReportRow,
                                 accuracy, featurize, row_line, run_benchmark)
from roadsight.data import load_manifest
from roadsight.errors import BenchmarkError
from roadsight.features import FeatureKind
from roadsight.learners import DISPLAY_NAMES, Dataset, Model, TrainConfig


@pytest.fixture(scope="module")
def tables(small_dataset):
    m = load_manifest(small_dataset)
    return m, featurize(m, [FeatureKind.PIXELS, FeatureKind.HIST], threads=1)


def test_accuracy_rounding():
    m = Model("svm", TrainConfig(), 1, 2, {"w": np.array([1.0]), "b": np.array(0.0)})
    assert accuracy(m, Dataset(np.array([[1.0], [-1.0]]), np.array([1, 0]))) == 100.0
    assert accuracy(m, Dataset(np.array([[1.0], [-1.0]]), np.array([1, 1]))) == 50.0
    three = Dataset(np.array([[1.0], [1.0], [-1.0]]), np.array([1, 1, 1]))
    assert accuracy(m, three) == 66.67
    assert row_line("Random Forest", 95.45) == "Random Forest, 95.45"


@pytest.mark.parametrize("kind,rows", [(FeatureKind.PIXELS, 8), (FeatureKind.HIST, 7)])
def test_rows_and_order(tables, kind, rows):
    m, t = tables
    cfg = BenchConfig(seed=3, train=TrainConfig(epochs=100, svm_epochs=50))
    rep = run_benchmark(m, kind, cfg, table=t[kind], threads=1)
    assert len(rep.rows) == rows
    assert [r.learner for r in rep.rows] == [DISPLAY_NAMES[i] for i in TABLE_ORDER[kind]]
    assert all(0 <= r.accuracy <= 100 for r in rep.rows)
    assert rep.excluded + len(t[kind].usable) == len(m)
    assert rep.train_n + rep.test_n == len(t[kind].usable)


def test_report_deterministic_and_thread_independent(tables):
    m, t = tables
    cfg = BenchConfig(seed=11, train=TrainConfig(epochs=100, svm_epochs=50))
    a = run_benchmark(m, "hist", cfg, table=t[FeatureKind.HIST], threads=1)
    b = run_benchmark(m, "hist", cfg, threads=4)
    assert a.to_json() == b.to_json() and a.to_markdown() == b.to_markdown()


def test_json_schema(tables):
    m, t = tables
    rep = run_benchmark(m, "hist", BenchConfig(learner_ids=("gnb", "tree")), table=t[FeatureKind.HIST])
    d = json.loads(rep.to_json())
    assert {"feature_kind", "split", "excluded", "rows"} <= set(d)
    assert set(d["split"]) == {"train_n", "test_n", "seed"}
    assert [r["learner"] for r in d["rows"]] == ["GaussianNB", "Decision Tree"]


def test_markdown_layout():
    rep = EvalReport(FeatureKind.HIST, (ReportRow("Random Forest", 95.45, 100.0),), 7, 3, 0, 1)
    assert rep.to_markdown() == (
        "## Colour histogram features\n\n| Methods | Accuracy(%) |\n|---|---|\n"
        "| Random Forest | 95.45 |\n\n"
        "Split: 7 train / 3 test, seed 0; 1 sample(s) excluded after failed road extraction.\n")


def test_too_few_samples(tables):
    m, t = tables
    table = t[FeatureKind.HIST]
    keep = [i for i, lab in enumerate(table.y) if lab == 0] + [int(np.flatnonzero(table.y == 1)[0])]
    small = FeatureTable(table.kind, table.x[keep], table.y[keep],
                         tuple(table.usable[i] for i in keep), 0)
    with pytest.raises(BenchmarkError):
        run_benchmark(m, "hist", BenchConfig(), table=small)
