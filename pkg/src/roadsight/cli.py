"""Command-line interface.

Exit codes: 0 success, 1 usage or configuration error, 2 data error.
"""
import argparse
import logging
import sys
from pathlib import Path

from . import learners
from .benchmark import BenchConfig, featurize, run_benchmark
from .data import load_manifest
from .errors import DimensionMismatchError, InvalidConfigError, RoadsightError
from .features import FeatureKind, FeatureVector, road_features, write_feature_csv
from .raster import ColorSpace, read_image, write_image
from .road import DEFAULT_K, RoiSpec, extract_road
from .synth import synth_dataset
from .visualize import (BlobParams, MorphConfig, candidates_to_json, visualize_blobs,
                        visualize_edges, visualize_morph)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _add_road_args(p):
    p.add_argument("--roi", type=RoiSpec.parse, default=RoiSpec(),
                   help="x0,y0,x1,y1 as frame fractions (default 0.30,0.55,0.70,0.75)")
    p.add_argument("--k", type=float, default=DEFAULT_K, help="band half-width in std devs (default 3)")


def build_parser():
    parser = _Parser(prog="roadsight", description="Road isolation and pothole detection")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("extract-road", help="isolate the road and dump stage images")
    p.add_argument("image")
    p.add_argument("--out-dir", required=True)
    _add_road_args(p)

    p = sub.add_parser("visualize", help="draw pothole candidates")
    p.add_argument("image")
    p.add_argument("--method", choices=["morph", "blob", "edge"], required=True)
    p.add_argument("--out", required=True, help="annotated PNG path")
    p.add_argument("--json", help="candidate list path (default: --out with .json suffix)")
    p.add_argument("--canny-lo", type=float, default=50.0)
    p.add_argument("--canny-hi", type=float, default=150.0)
    p.add_argument("--dilate", type=int, default=2, help="edge dilation radius")
    _add_road_args(p)

    p = sub.add_parser("featurize", help="write a feature CSV for a dataset")
    p.add_argument("root")
    p.add_argument("--kind", choices=["pixels", "hist"], required=True)
    p.add_argument("--out", required=True)
    _add_road_args(p)

    p = sub.add_parser("benchmark", help="train and evaluate every learner")
    p.add_argument("root")
    p.add_argument("--kind", choices=["pixels", "hist"], required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--test-frac", type=float, default=0.3)
    p.add_argument("--report", choices=["json", "md"], default="md")
    p.add_argument("--out", help="report path (default: <root>/report_<kind>.<json|md>)")
    p.add_argument("--learners", help="comma-separated learner ids (default: the full table)")
    p.add_argument("--save-models", help="directory to write each fitted model as <id>.json")
    _add_road_args(p)

    p = sub.add_parser("predict", help="classify one frame with a saved model")
    p.add_argument("image")
    p.add_argument("--model", required=True)
    p.add_argument("--kind", choices=["pixels", "hist"],
                   help="feature kind to compute (default: the model's own)")

    p = sub.add_parser("synth", help="generate a synthetic dataset")
    p.add_argument("out_root")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _rgb(path):
    img = read_image(path)
    if img.space is ColorSpace.GRAY:
        from .raster import gray_to_rgb
        img = gray_to_rgb(img)
    return img


def cmd_extract_road(a):
    img = _rgb(a.image)
    ex = extract_road(img, a.roi, a.k)
    out = ex.dump(a.out_dir, img)
    print(f"road covers {ex.hull_mask.count()} px; stages written to {out}")


def cmd_visualize(a):
    img = _rgb(a.image)
    if a.method == "morph":
        cands, annotated = visualize_morph(img, MorphConfig())
    else:
        ex = extract_road(img, a.roi, a.k)
        if a.method == "blob":
            cands, annotated = visualize_blobs(ex.road, BlobParams(), region=ex.hull_mask)
        else:
            cands, annotated = visualize_edges(ex.road, a.canny_lo, a.canny_hi, a.dilate,
                                               region=ex.hull_mask)
    write_image(a.out, annotated)
    json_path = Path(a.json) if a.json else Path(a.out).with_suffix(".json")
    json_path.write_text(candidates_to_json(cands) + "\n", encoding="utf-8")
    print(f"{len(cands)} candidate(s); image {a.out}, list {json_path}")


def cmd_featurize(a):
    m = load_manifest(a.root)
    kind = FeatureKind.parse(a.kind)
    table = featurize(m, [kind], BenchConfig(roi=a.roi, k=a.k))[kind]
    rows = []
    for row, i in enumerate(table.usable):
        e = m.entries[i]
        rows.append((e.path, e.label, FeatureVector(table.x[row], kind)))
    write_feature_csv(a.out, rows)
    print(f"{len(rows)} row(s) written to {a.out}; {table.excluded} excluded")


def cmd_benchmark(a):
    m = load_manifest(a.root)
    ids = tuple(s.strip() for s in a.learners.split(",")) if a.learners else None
    if ids:
        for lid in ids:
            if lid not in learners.LEARNERS:
                raise InvalidConfigError(f"unknown learner {lid!r}")
    cfg = BenchConfig(seed=a.seed, test_frac=a.test_frac, roi=a.roi, k=a.k, learner_ids=ids)
    models = {} if a.save_models else None
    report = run_benchmark(m, a.kind, cfg, models=models)
    out = Path(a.out) if a.out else Path(a.root) / f"report_{a.kind}.{a.report}"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report.to_json() if a.report == "json" else report.to_markdown(), encoding="utf-8")
    if models is not None:
        d = Path(a.save_models)
        d.mkdir(parents=True, exist_ok=True)
        for lid, model in models.items():
            learners.save_model(model, d / f"{lid}.json")
    print("\n".join(report.summary_lines()))
    print(f"report written to {out}")


def cmd_predict(a):
    model = learners.load_model(a.model)
    meta = model.meta or {}
    kind = FeatureKind.parse(a.kind or meta.get("feature_kind", "hist"))
    roi = RoiSpec(**meta["roi"]) if "roi" in meta else RoiSpec()
    ex = extract_road(_rgb(a.image), roi, meta.get("k", DEFAULT_K))
    fv = road_features(ex, kind, meta.get("hist_bins", 32))
    if fv.dim != model.n_features:
        raise DimensionMismatchError(
            f"model expects {model.n_features} features but {kind.value} gives {fv.dim}")
    label = learners.predict(model, fv.values)
    print(f"{label} ({'pothole' if label == 1 else 'no pothole'})")


def cmd_synth(a):
    m = synth_dataset(a.out_root, a.n, a.seed)
    print(f"{len(m)} frame(s) written to {a.out_root}")


COMMANDS = {
    "extract-road": cmd_extract_road,
    "visualize": cmd_visualize,
    "featurize": cmd_featurize,
    "benchmark": cmd_benchmark,
    "predict": cmd_predict,
    "synth": cmd_synth,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return 1
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except InvalidConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RoadsightError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
