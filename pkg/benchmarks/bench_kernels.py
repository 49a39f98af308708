"""Compare the compiled kernels with the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--suite NAME]

Times ``rref`` on random matrices and the three ``scan`` modes on
endomorphism spaces of Kronecker representations, for both backends on
identical inputs, and checks that the two agree.  ``--suite`` also times a
whole verification suite (Kronecker over F4) in a fresh process per backend.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from hallcluster._kernels import _pykernels
from hallcluster.finfield import make_field
from hallcluster.quiver import kronecker
from hallcluster.reps import hom_data, random_rep

try:
    from hallcluster._kernels import _ckernels
except ImportError:
    _ckernels = None

MODES = ((0, "first-invertible"), (1, "count-invertible"), (2, "first-splitting"))


def rref_cases(F, rng, count=40, shape=(12, 16)):
    return [[[rng.randrange(F.order) for _ in range(shape[1])] for _ in range(shape[0])] for _ in range(count)]


def scan_cases(F, rng, dims=(1, 2), count=4, limit=60000):
    """Endomorphism spaces of ``A + A`` for random ``A``, big enough for the
    enumeration to dominate."""
    q = kronecker()
    out = []
    for _ in range(200):
        A = random_rep(q, F, dims, rng)
        AA = A.direct_sum(A)
        h = hom_data(AA, AA)
        if 100 <= F.order ** len(h.basis) <= limit:
            out.append((h.basis, h.blocks()))
        if len(out) == count:
            break
    return out


def _norm(x):
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], list):
        return [list(r) for r in x[0]], list(x[1])
    return list(x) if isinstance(x, (list, tuple)) else x


def best_time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def suite_time(name: str, pure: bool) -> float:
    code = (
        "import time; from hallcluster import verify; t = time.perf_counter(); "
        f"r = verify.run_suite({name!r}, {{'field': [2, 2]}}); "
        "assert r.status == 'pass'; print(time.perf_counter() - t)"
    )
    env = dict(os.environ, HALLCLUSTER_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--suite", action="append", default=[], help="also time this suite end to end")
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not built; nothing to compare")
        return
    rng = random.Random(0)
    print(f"{'kernel':34s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for pk in ((2, 1), (2, 2), (3, 2)):
        F = make_field(*pk)
        T = F.tables
        jobs = []
        mats = rref_cases(F, rng)
        for m in mats:
            assert _norm(_pykernels.rref(m, 16, *T)) == _norm(_ckernels.rref(m, 16, *T))
        jobs.append((f"rref 12x16 F{F.order}", lambda mod: [mod.rref(m, 16, *T) for m in mats]))
        cases = scan_cases(F, rng)
        for mode, name in MODES:
            for b, bl in cases:
                assert _norm(_pykernels.scan(b, bl, *T, mode)) == _norm(_ckernels.scan(b, bl, *T, mode))
            jobs.append(
                (f"scan {name} F{F.order}", lambda mod, mode=mode: [mod.scan(b, bl, *T, mode) for b, bl in cases])
            )
        for label, job in jobs:
            tp = best_time(lambda: job(_pykernels), args.repeat)
            tc = best_time(lambda: job(_ckernels), args.repeat)
            print(f"{label:34s} {tp:10.4f} {tc:11.4f} {tp / tc:7.1f}x")
    for name in args.suite:
        tp, tc = suite_time(name, True), suite_time(name, False)
        print(f"{'suite ' + name + ' F4':34s} {tp:10.4f} {tc:11.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
