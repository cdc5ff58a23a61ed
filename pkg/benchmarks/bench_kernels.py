"""Time the compiled and pure-Python raster kernels on the same inputs.

    python benchmarks/bench_kernels.py --size 256 --repeat 5 [--json out.json]
"""
import argparse
import json
import time

import numpy as np

from roadsight import _kernels


def make_inputs(size, seed):
    rng = np.random.default_rng(seed)
    mask = rng.random((size, size)) < 0.45
    # one large blob for the boundary tracer
    ys, xs = np.mgrid[0:size, 0:size]
    blob = (xs - size / 2) ** 2 / (0.4 * size) ** 2 + (ys - size / 2) ** 2 / (0.3 * size) ** 2 <= 1
    blob &= rng.random((size, size)) < 0.97
    sy, sx = (int(v[0]) for v in np.nonzero(blob))
    weak = rng.random((size, size)) < 0.3
    strong = weak & (rng.random((size, size)) < 0.05)
    return {"mask": mask, "blob": blob, "start": (sy, sx), "weak": weak, "strong": strong}


def cases(inp):
    mask_u8 = inp["mask"].view(np.uint8)
    sy, sx = inp["start"]
    return {
        "label_components": lambda k: k.label_components(mask_u8),
        "trace_boundary": lambda k: k.trace_boundary(inp["blob"].view(np.uint8), sy, sx),
        "hysteresis": lambda k: k.hysteresis(inp["weak"], inp["strong"]),
    }


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=256)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write the results here")
    args = ap.parse_args(argv)

    backends = {"python": _kernels.python_backend}
    if _kernels.compiled_backend is not None:
        backends["cython"] = _kernels.compiled_backend
    else:
        print("compiled backend not built; timing the Python fallback only")

    results = []
    for name, fn in cases(make_inputs(args.size, args.seed)).items():
        row = {"kernel": name, "size": args.size}
        outs = {}
        for bname, mod in backends.items():
            t, outs[bname] = best_of(lambda: fn(mod), args.repeat)
            row[f"{bname}_s"] = t
        if len(outs) == 2:
            row["speedup"] = row["python_s"] / row["cython_s"]
            row["match"] = same(outs["python"], outs["cython"])
        results.append(row)

    print(f"{'kernel':<18}{'python (ms)':>12}{'cython (ms)':>13}{'speedup':>9}  match")
    for r in results:
        cy = f"{1e3 * r['cython_s']:13.2f}" if "cython_s" in r else f"{'-':>13}"
        sp = f"{r['speedup']:8.1f}x" if "speedup" in r else f"{'-':>9}"
        print(f"{r['kernel']:<18}{1e3 * r['python_s']:12.2f}{cy}{sp}  {r.get('match', '-')}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(results, fh, indent=2)
    return 0 if all(r.get("match", True) for r in results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
