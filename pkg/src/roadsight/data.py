"""Dataset manifests and seeded stratified splits."""
import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DataError, InvalidConfigError, ManifestError

MANIFEST_NAME = "manifest.csv"
LABEL_DIRS = {"positive": 1, "negative": 0}
IMAGE_SUFFIXES = {".png", ".ppm", ".pgm", ".pnm", ".jpg", ".jpeg", ".bmp"}


@dataclass(frozen=True)
class Entry:
    path: str  # relative to the manifest root, POSIX separators
    label: int


@dataclass(frozen=True)
class Manifest:
    root: Path
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def labels(self):
        return [e.label for e in self.entries]

    def abspath(self, entry):
        return self.root / entry.path

    def subset(self, indices):
        return Manifest(self.root, tuple(self.entries[i] for i in indices))


def _readable(path):
    try:
        with Image.open(path) as im:
            im.verify()
        return True
    except (OSError, UnidentifiedImageError):
        return False


def _from_csv(root, csv_path):
    problems, rows = [], []
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["path", "label"]:
            raise ManifestError([f"{csv_path}: header must be 'path,label', got {header}"])
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                problems.append(f"{csv_path}:{lineno}: expected 2 fields, got {len(row)}")
                continue
            path, label = row[0].strip(), row[1].strip()
            if label not in ("0", "1"):
                problems.append(f"{csv_path}:{lineno}: unknown label {label!r} for {path}")
                continue
            rows.append((Path(path).as_posix(), int(label)))
    return rows, problems


def _from_dirs(root):
    rows = []
    for name, label in LABEL_DIRS.items():
        d = root / name
        if not d.is_dir():
            continue
        for p in d.iterdir():
            if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES:
                rows.append((p.relative_to(root).as_posix(), label))
    return rows


def load_manifest(root):
    """Read ``manifest.csv`` under ``root`` if present, else the
    ``positive/`` + ``negative/`` directory convention. Entries are sorted by
    path; every problem found is reported together in one ManifestError."""
    root = Path(root)
    if not root.is_dir():
        raise DataError(f"dataset root {root} is not a directory")
    csv_path = root / MANIFEST_NAME
    problems = []
    if csv_path.is_file():
        rows, problems = _from_csv(root, csv_path)
    elif any((root / n).is_dir() for n in LABEL_DIRS):
        rows = _from_dirs(root)
    else:
        raise DataError(f"{root}: no {MANIFEST_NAME} and no positive/ or negative/ directory")

    seen = set()
    for path, _ in rows:
        if path in seen:
            problems.append(f"duplicate path {path}")
            continue
        seen.add(path)
        full = root / path
        if not full.is_file():
            problems.append(f"missing file {path}")
        elif not _readable(full):
            problems.append(f"unreadable image {path}")
    if problems:
        raise ManifestError(problems)
    entries = tuple(sorted((Entry(p, lab) for p, lab in rows), key=lambda e: e.path))
    return Manifest(root, entries)


def split(m, test_frac=0.3, seed=0):
    """Stratified split: each label's entries are shuffled with their own
    seeded stream and the first ``ceil(test_frac * n)`` go to test. Both
    sides keep manifest order."""
    if not 0.0 < test_frac < 1.0:
        raise InvalidConfigError(f"test_frac must lie in (0, 1), got {test_frac}")
    labels = np.array(m.labels())
    test_idx = []
    for label in sorted(set(labels.tolist())):
        idx = np.flatnonzero(labels == label)
        rng = np.random.default_rng([seed, label])
        n_test = math.ceil(test_frac * len(idx))
        if n_test >= len(idx):
            raise InvalidConfigError(
                f"label {label}: {len(idx)} sample(s) leave no training data at test_frac={test_frac}")
        test_idx.extend(rng.permutation(idx)[:n_test].tolist())
    test_set = set(test_idx)
    train = [i for i in range(len(m)) if i not in test_set]
    if not train or not test_set:
        raise InvalidConfigError("split left one side empty")
    return m.subset(train), m.subset(sorted(test_set))
