"""The JIT kernels and their numpy / pure-Python twins must agree exactly."""
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from burstlattice import _kernels
from burstlattice.constructions import condition_mask
from burstlattice.errorball import BallSpec
from burstlattice.errors import UnsupportedParameterError
from burstlattice.gf import field_new, field_of_order
from burstlattice.groups import SplittingSequence, cyclic, direct_sum, first_collision
from burstlattice.search import SearchOptions, _problem


@given(st.sampled_from([cyclic(13), cyclic(31), direct_sum(3, 3), direct_sum(2, 2, 5)]),
       st.integers(2, 6), st.sampled_from([(1, 0), (1, 1), (2, 0)]), st.booleans(), st.data())
def test_first_collision_backends_agree(G, n, k, cyc, data):
    vals = data.draw(st.lists(st.integers(0, G.order - 1), min_size=n, max_size=n))
    spec = BallSpec(n, 2, k[0], k[1], cyc)
    s = SplittingSequence(G, tuple(vals))
    a = first_collision(spec, s, kernel=_kernels.nb_first_collision)
    b = first_collision(spec, s, kernel=_kernels.np_first_collision)
    assert a == b


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (101, 1), (2, 8), (3, 5), (5, 3), (7, 2), (31, 2)])
def test_exp_table_backends_agree(p, r):
    F = field_new(p, r)
    w = [p ** (r - 1 - k) for k in range(r)]
    gen = np.array([(F.generator // x) % p for x in w], dtype=np.int64)
    mod = np.array(F.modulus, dtype=np.int64)
    a = _kernels.nb_exp_table(gen, mod, p, F.q)
    b = _kernels.py_exp_table(gen, mod, p, F.q)
    assert np.array_equal(a, b) and np.array_equal(a, F.exp)


@pytest.mark.parametrize("q", [19, 25, 43, 49, 61, 79, 97, 121, 127, 157, 343, 361, 729, 991])
def test_condition_backends_agree(q):
    F = field_of_order(q)
    for fam in [(2, 1, 0), (2, 1, 1), (3, 1, 0), (3, 1, 1), "C_220", "R_alpha"]:
        try:
            a = condition_mask(F, fam, kernel=_kernels.nb_condition)
        except UnsupportedParameterError:
            continue
        b = condition_mask(F, fam, kernel=_kernels.np_condition)
        assert np.array_equal(a, b), fam


@pytest.mark.parametrize("spec,G", [
    (BallSpec(4, 2, 1, 1, True), cyclic(25)),
    (BallSpec(5, 2, 2, 0, True), cyclic(31)),
    (BallSpec(4, 2, 1, 0, False), direct_sum(2, 4)),
    (BallSpec(3, 2, 2, 0, False), direct_sum(3, 5)),
    (BallSpec(6, 2, 1, 0, True), cyclic(13)),
])
@pytest.mark.parametrize("prune", [True, False])
def test_dfs_backends_agree(spec, G, prune):
    opts = SearchOptions(prune_orbit=prune, prune_rotation=prune)
    out = []
    for kernel in (_kernels.nb_dfs, _kernels.py_dfs):
        prob = _problem(spec, G, opts)
        vals = np.full(spec.n, -1, dtype=np.int64)
        steps, total, depth = [], 0, 0
        while True:
            status, depth, nodes = prob.run(vals, depth, 37, kernel=kernel)
            total += nodes
            steps.append((status, depth, nodes, vals.tolist()))
            if status != 2:
                break
        out.append((steps, total))
    assert out[0] == out[1]


def test_backend_flag_selects_fallback():
    code = ("from burstlattice import _kernels as k; from burstlattice.search import search_splitting;"
            "from burstlattice.errorball import BallSpec; from burstlattice.groups import cyclic;"
            "r = search_splitting(BallSpec(4, 2, 1, 1, True), cyclic(25));"
            "print(k.BACKEND, r.sequence.values())")
    env = dict(os.environ, BURSTLATTICE_DISABLE_JIT="1")
    slow = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    env.pop("BURSTLATTICE_DISABLE_JIT")
    fast = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert slow.stdout.split(" ", 1)[0] == "numpy"
    assert slow.stdout.split(" ", 1)[1] == fast.stdout.split(" ", 1)[1]
    if _kernels.HAVE_NUMBA:
        assert fast.stdout.startswith("numba")
