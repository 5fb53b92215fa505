"""Time the numba kernels against their pure-numpy counterparts.

    python benchmarks/bench_kernels.py [--repeat 5] [--degree 6]

Also checks that both paths agree on every input, and times one end-to-end
enumeration with each path (the numpy one runs in a subprocess with
PERMBOUND_DISABLE_NUMBA=1).
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from permbound import _kernels as K
from permbound.elements import ElementTable
from permbound.group import symmetric_group


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(degree: int, rng: np.random.Generator):
    T = ElementTable.symmetric(degree)
    N = T.size
    gens = rng.integers(0, N, size=2)
    right = np.ascontiguousarray(T.right_stack(gens.tolist()), dtype=np.int32)
    seeds = np.array([T.identity], dtype=np.int32)
    yield "closure", (right, seeds, N + 1), K._closure_nb, K._closure_np
    maps = np.stack([T.conjugation(int(g)) for g in gens]).astype(np.int64)
    yield "orbit_labels", (maps,), K._orbit_labels_nb, K._orbit_labels_np
    perms = np.ascontiguousarray(T.perms, dtype=np.int64)
    yield "cycle_lengths", (perms,), K._cycle_lengths_nb, K._cycle_lengths_np
    big = symmetric_group(64)
    bg = np.array([g.images for g in big.generators], dtype=np.int64)
    yield "min_block", (bg, 0, 1), K._min_block_nb, K._min_block_np


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def end_to_end(degree: int, disable: bool) -> float:
    env = dict(os.environ, PERMBOUND_DISABLE_NUMBA="1" if disable else "0")
    env.pop("PERMBOUND_CACHE_DIR", None)
    code = (
        "import time; from permbound.transitive import enumerate_transitive as e;"
        f"e({degree}, use_cache=False); t=time.perf_counter(); e({degree}, use_cache=False);"
        "print(time.perf_counter()-t)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--degree", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<14}{'numba (ms)':>12}{'numpy (ms)':>12}{'speedup':>9}  agree")
    for name, inputs, nb, npy in cases(args.degree, rng):
        nb(*inputs)  # compile
        t_nb = best_of(lambda: nb(*inputs), args.repeat)
        t_np = best_of(lambda: npy(*inputs), args.repeat)
        ok = same(nb(*inputs), npy(*inputs))
        print(f"{name:<14}{t_nb * 1e3:>12.3f}{t_np * 1e3:>12.3f}{t_np / t_nb:>9.1f}  {ok}")
    if not args.skip_end_to_end:
        t_nb = end_to_end(args.degree, disable=False)
        t_np = end_to_end(args.degree, disable=True)
        print(f"enumerate degree {args.degree}: numba {t_nb:.2f} s, numpy {t_np:.2f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
