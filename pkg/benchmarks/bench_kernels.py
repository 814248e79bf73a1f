"""Compare the numba and numpy forms of every hot kernel.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--groups S4 A5 H3]

Each kernel is warmed up once (so numba compile time is excluded) and then
timed ``--repeat`` times; the best time is reported.  Outputs of the two
forms are compared before timing.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from reidemeister import _kernels as K
from reidemeister.chars import _class_data
from reidemeister.corpus import corpus_group
from reidemeister.group import enumerate_automorphisms


def best_of(fn, repeat: int) -> float:
    fn()
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(names):
    for name in names:
        G = corpus_group(name)
        phi = enumerate_automorphisms(G)[-1]
        _, class_of, reps = _class_data(G)
        args = (G.table, G.inverse, phi.images)
        yield name, "associativity", (G.table,), K.associativity_witness_nb, K.associativity_witness_np
        yield name, "twisted_orbits", args, K.twisted_orbit_labels_nb, K.twisted_orbit_labels_np
        yield name, "twisted_fixed", args, K.twisted_fixed_counts_nb, K.twisted_fixed_counts_np
        coeff = (G.table, G.inverse, class_of, reps)
        yield name, "class_coefficients", coeff, K.class_coefficients_nb, K.class_coefficients_np
    rng = np.random.default_rng(0)
    for size in (32, 96):
        m = rng.integers(0, 7919, size=(size, size)).astype(np.int64)
        yield f"{size}x{size}", "rref_mod", (m, 7919), K.rref_mod_nb, K.rref_mod_np


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--groups", nargs="+", default=["S4", "H3", "A5"])
    args = ap.parse_args(argv)
    print(f"{'input':<10} {'kernel':<20} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for name, kernel, a, nb, np_ in cases(args.groups):
        same = [np.array_equal(np.asarray(x), np.asarray(y)) for x, y in zip(_tuple(nb(*_copy(a))), _tuple(np_(*_copy(a))))]
        if not all(same):
            raise SystemExit(f"{kernel} on {name}: backends disagree")
        t_nb = best_of(lambda: nb(*_copy(a)), args.repeat)
        t_np = best_of(lambda: np_(*_copy(a)), args.repeat)
        print(f"{name:<10} {kernel:<20} {1e3 * t_nb:>10.3f} {1e3 * t_np:>10.3f} {t_np / t_nb:>7.1f}x")


def _copy(args):
    return tuple(x.copy() if isinstance(x, np.ndarray) else x for x in args)


def _tuple(x):
    return x if isinstance(x, tuple) else (x,)


if __name__ == "__main__":
    main()
