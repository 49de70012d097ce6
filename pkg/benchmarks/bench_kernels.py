"""Time the numba kernels against their numpy twins on realistic inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each row reports the best wall time of both paths and checks that they
return the same answer.  The first numba call is made before timing, so
compilation is excluded.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from clutterlab import _kernels
from clutterlab._dd import extreme_rays
from clutterlab.clutters import q6
from clutterlab.graphs import cycle_space, petersen, t30
from clutterlab.gf2 import null_space, reduce, rref


def _u64(values):
    return np.array(values, dtype=np.uint64)


def cases():
    pete = cycle_space(petersen()).point_values()
    full = (1 << 15) - 1
    yield "covering pairs (Petersen, none)", "first_covering_tuple", (_u64(pete), np.uint64(full), 2)
    yield "covering triples (Petersen)", "first_covering_tuple", (_u64(pete), np.uint64(full), 3)

    t = list(t30().masks)
    yield "3-subsets of T30 (none)", "first_subset_and_or", (_u64(t), 3, np.uint64(0))
    yield "4-subsets of T30", "first_subset_and_or", (_u64(t), 4, np.uint64(0))

    from clutterlab.clutters import blocker
    b = list(blocker(q6()).masks) + list(q6().masks)
    yield "binary triples (Q6 + blocker)", "first_nonbinary_triple", (_u64(b),)

    # adjacency tests from one step of the double description on Q(Q6)
    c = q6()
    rows = [tuple(1 if j == i else 0 for j in range(7)) for i in range(7)]
    rows += [tuple(1 if e in m else 0 for e in c.ground) + (-1,) for m in c.members]
    rays, _ = extreme_rays(rows, 7)
    zeros = []
    for r in rays:
        z = 0
        for i, row in enumerate(rows):
            if sum(a * b for a, b in zip(row, r)) == 0:
                z |= 1 << i
        zeros.append(z)
    half = len(rays) // 2
    zarr = _u64(zeros).reshape(-1, 1)
    plus = np.arange(half, dtype=np.int64)
    minus = np.arange(half, len(rays), dtype=np.int64)
    yield "DD adjacency (Q(Q6) rays)", "adjacent_pairs", (zarr, plus, minus, 5)

    n = 18
    basis = list(rref(null_space([(1 << n) - 1, 0b101010101010101010], n)))
    piv = [b.bit_length() - 1 for b in basis]
    forb = sorted({reduce(1 << i, basis) for i in range(n)})
    yield "free candidates (width 18)", "first_free_candidate", (
        1 << 17, 1 << n, _u64(basis), np.array(piv, dtype=np.int64), _u64(forb))


def best_of(fn, args, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"active backend: {_kernels.backend()}")
    print(f"{'case':38s} {'numpy (ms)':>12s} {'numba (ms)':>12s} {'speedup':>8s}  same")
    for label, name, kargs in cases():
        np_fn = _kernels.NUMPY_KERNELS[name]
        nb_fn = _kernels.ACTIVE_KERNELS[name]
        t_np, r_np = best_of(np_fn, kargs, args.repeat)
        if _kernels.HAS_NUMBA:
            nb_fn(*kargs)   # compile
            t_nb, r_nb = best_of(nb_fn, kargs, args.repeat)
            same = np.array_equal(np.asarray(r_np), np.asarray(r_nb)) if not isinstance(r_np, int) \
                else r_np == r_nb
            print(f"{label:38s} {t_np * 1e3:12.3f} {t_nb * 1e3:12.3f} {t_np / t_nb:8.1f}  {same}")
        else:
            print(f"{label:38s} {t_np * 1e3:12.3f} {'-':>12s} {'-':>8s}  -")


if __name__ == "__main__":
    main()
