"""Wall-clock comparison of the numba kernels and their numpy / Python twins.

    python benchmarks/bench_kernels.py [--repeat 3]

The first numba call of each kernel includes JIT compilation and is
reported separately as "compile+run".
"""
import argparse
import time

import numpy as np

from burstlattice import _kernels
from burstlattice.constructions import condition_mask, construct_noncyclic_2_10
from burstlattice.errorball import BallSpec
from burstlattice.gf import field_new, field_of_order
from burstlattice.groups import cyclic, first_collision
from burstlattice.search import SearchOptions, _problem


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _dfs_case(spec, G, kernel):
    def go():
        prob = _problem(spec, G, SearchOptions())
        vals = np.full(spec.n, -1, dtype=np.int64)
        return prob.run(vals, 0, 10**12, kernel=kernel)
    return go


def cases():
    s = construct_noncyclic_2_10(400)
    spec = BallSpec(400, 2, 1, 0, False)
    yield ("first_collision E(400,2,1,0)",
           lambda: first_collision(spec, s, kernel=_kernels.nb_first_collision),
           lambda: first_collision(spec, s, kernel=_kernels.np_first_collision))
    F = field_new(2, 16)
    w = [2 ** (15 - k) for k in range(16)]
    gen = np.array([(F.generator // x) % 2 for x in w], dtype=np.int64)
    mod = np.array(F.modulus, dtype=np.int64)
    yield ("exp_table GF(2^16)",
           lambda: _kernels.nb_exp_table(gen, mod, 2, F.q),
           lambda: _kernels.py_exp_table(gen, mod, 2, F.q))
    F = field_of_order(997)
    yield ("condition (3,1,0) GF(997)",
           lambda: condition_mask(F, (3, 1, 0), kernel=_kernels.nb_condition),
           lambda: condition_mask(F, (3, 1, 0), kernel=_kernels.np_condition))
    spec, G = BallSpec(5, 2, 2, 0, True), cyclic(31)
    yield ("dfs E°(5,2,2,0) over Z31", _dfs_case(spec, G, _kernels.nb_dfs), _dfs_case(spec, G, _kernels.py_dfs))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"numba available: {_kernels.HAVE_NUMBA}; active backend: {_kernels.BACKEND}")
    print(f"{'kernel':<30} {'compile+run':>12} {'numba':>10} {'fallback':>10} {'speedup':>8}")
    for name, fast, slow in cases():
        t0 = time.perf_counter()
        fast()
        first = time.perf_counter() - t0
        tf = _best(fast, args.repeat)
        ts = _best(slow, args.repeat)
        print(f"{name:<30} {first:>11.3f}s {tf:>9.4f}s {ts:>9.4f}s {ts / tf:>7.1f}x")


if __name__ == "__main__":
    main()
