"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--quick]

Each row times one kernel on both backends with identical inputs and checks
that the results agree.
"""
import argparse
import time

import numpy as np

from trycolor import _kernels
from trycolor.field import SequenceFamily
from trycolor.oneround import build_config_graph


def timed(fn, *args, repeat=3):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return list(a) == list(b) if isinstance(a, (list, np.ndarray)) else a == b


def cases(quick: bool):
    fam = SequenceFamily(65536, 16, 0, 1)
    coeffs = np.array([fam.coefficients(i) for i in range(2000 if quick else 20000)], dtype=np.int64)
    yield "eval_sequences", (coeffs, fam.q), 1

    rng = np.random.default_rng(0)
    table = rng.integers(0, 131, size=(400, 131)).astype(np.int64)
    picks = [(table, int(rng.integers(400)), [int(x) for x in rng.choice(400, 16, replace=False)],
              0, 131, [3, 7], [5, 9], 1) for _ in range(200)]
    yield "pick_tuple x200", picks, 2

    yield "mask_search (3,5,q=3)", (3, 5, 3, 10**9), 1
    if not quick:
        yield "mask_search (3,7,q=5)", (3, 7, 5, 10**9), 1

    cg = build_config_graph(2, 5)
    yield "dsatur_search (2,5,q=3)", (cg.n, cg.offsets, cg.targets, 3, 10**9, cg.clique()), 1


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args()
    py = _kernels.backend("python")
    try:
        cc = _kernels.backend("compiled")
    except ImportError:
        print("compiled extension not built; run: python3 setup.py build_ext --inplace")
        return
    print(f"{'kernel':28s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}  agree")
    for name, arg, mode in cases(args.quick):
        name_fn = name.split()[0]
        if mode == 2:
            tp, rp = timed(lambda: [getattr(py, name_fn)(*a) for a in arg], repeat=1)
            tc, rc = timed(lambda: [getattr(cc, name_fn)(*a) for a in arg])
        else:
            tp, rp = timed(getattr(py, name_fn), *arg, repeat=1)
            tc, rc = timed(getattr(cc, name_fn), *arg)
        print(f"{name:28s} {tp:10.4f} {tc:11.4f} {tp / max(tc, 1e-9):7.1f}x  {same(rp, rc)}")


if __name__ == "__main__":
    main()
