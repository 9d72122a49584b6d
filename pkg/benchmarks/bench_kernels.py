"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each workload runs through the public API with the kernel functions swapped
on ``groupcodes.kernels``; the results are checked to agree before timing.
"""

import argparse
import contextlib
import timeit

import numpy as np

from groupcodes import _purekernels as pure
from groupcodes import kernels
from groupcodes.gf import field_of_order
from groupcodes.lincode import LinearCode, field_rref, paut

NAMES = ("rref", "min_weight", "value_perm_search")


@contextlib.contextmanager
def backend(which):
    saved = {k: getattr(kernels, k) for k in NAMES}
    src = pure if which == "python" else kernels.compiled
    try:
        for k in NAMES:
            setattr(kernels, k, getattr(src, k))
        yield
    finally:
        for k, v in saved.items():
            setattr(kernels, k, v)


def workloads():
    rng = np.random.default_rng(0)
    F7, F11, F8 = field_of_order(7), field_of_order(11), field_of_order(8)
    mats = [rng.integers(0, 11, size=(12, 24)) for _ in range(50)]
    C_md = LinearCode.from_rows(F7, rng.integers(0, 7, size=(6, 13)))
    C_md2 = LinearCode.from_rows(F8, rng.integers(0, 8, size=(5, 13)))
    codes = [LinearCode.from_rows(F11, rng.integers(0, 11, size=(3, 9))) for _ in range(10)]
    # a code with a large automorphism group: (a,a,b,b,...) over F_3
    rep = LinearCode.from_rows(field_of_order(3), np.kron(np.eye(4, dtype=np.int64), np.ones((1, 3), dtype=np.int64)))
    return [
        ("rref 50 x (12x24) over F11", lambda: [field_rref(F11, M) for M in mats]),
        ("min distance [13,6] over F7", lambda: C_md.min_distance()),
        ("min distance [13,5] over F8", lambda: C_md2.min_distance()),
        ("PAut of 10 random [9,3] over F11", lambda: [paut(C).order for C in codes]),
        ("PAut of [12,4] repetition blocks over F3", lambda: paut(rep).order),
    ]


def _normalize(x):
    if isinstance(x, list):
        return [_normalize(v) for v in x]
    if isinstance(x, tuple):
        return tuple(_normalize(v) for v in x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    return x


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        print("compiled extension not built; only the pure-Python timings are meaningful")
    print(f"{'workload':44s} {'python (s)':>11s} {'compiled (s)':>13s} {'speedup':>8s}")
    for name, fn in workloads():
        times = {}
        results = {}
        for which in ("python", "compiled"):
            if which == "compiled" and kernels.compiled is None:
                continue
            with backend(which):
                results[which] = _normalize(fn())
                times[which] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        if len(results) == 2 and results["python"] != results["compiled"]:
            raise SystemExit(f"backends disagree on {name!r}")
        c = times.get("compiled")
        speed = f"{times['python'] / c:7.1f}x" if c else "     n/a"
        cs = f"{c:13.4f}" if c else f"{'-':>13s}"
        print(f"{name:44s} {times['python']:11.4f} {cs} {speed}")


if __name__ == "__main__":
    main()
