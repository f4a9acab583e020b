"""Exhaustive backtracking search for splitting sequences and table reproduction.

Coordinates are assigned left to right with values in canonical element
order, so the first hit is the lexicographically smallest splitting. Each
ball vector is checked as soon as its last support coordinate is assigned.
Two symmetry rules (both preserving the lexicographic minimum) shrink the
tree for groups whose automorphism orbits are the sets of equal-order
elements (every p-part homocyclic, which includes all cyclic groups):

* orbit: s_0 is the smallest element of its automorphism orbit;
* rotation (cyclic balls only): no coordinate lies in an orbit whose
  representative is smaller than s_0's.
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels
from .constructions import find_primitive, resolve_family
from .errorball import BallSpec, ball_arrays, ball_size
from .errors import InternalError, ParameterError, ResourceError
from .gf import field_of_order, prime_powers
from .groups import (AbelianGroup, SplittingSequence, cyclic,
                     enumerate_abelian_groups, is_perfect_splitting, parse_group)

DEFAULT_NODE_BUDGET = 10**9
DEFAULT_CHUNK = 10**7


@dataclass
class SearchOptions:
    prune_orbit: bool = True
    prune_rotation: bool = True
    node_budget: int = DEFAULT_NODE_BUDGET
    chunk: int = DEFAULT_CHUNK
    checkpoint: str | os.PathLike | None = None
    jobs: int = 1


@dataclass
class SearchReport:
    spec: BallSpec
    group: AbelianGroup
    outcome: str  # "found" or "exhausted_none"
    sequence: SplittingSequence | None
    nodes_visited: int
    wall_time: float = field(compare=False)

    @property
    def found(self) -> bool:
        return self.outcome == "found"


# -- problem setup ------------------------------------------------------------------

@dataclass
class _Problem:
    n: int
    order: int
    lvl_ptr: np.ndarray
    lpos: np.ndarray
    lval: np.ndarray
    kminus: int
    mult: np.ndarray
    dig: np.ndarray
    moduli: np.ndarray
    weights: np.ndarray
    first_allowed: np.ndarray
    orbit_rank: np.ndarray
    use_rank: bool
    skip_seen: bool

    def run(self, vals, depth, limit, kernel=None):
        kernel = kernel or _kernels.dfs
        return kernel(self.n, self.order, self.lvl_ptr, self.lpos, self.lval, self.kminus,
                      self.mult, self.dig, self.moduli, self.weights, self.first_allowed,
                      self.orbit_rank, self.use_rank, self.skip_seen, vals, depth, limit)


def _problem(spec: BallSpec, G: AbelianGroup, opts: SearchOptions) -> _Problem:
    arr = ball_arrays(spec)
    smax = arr.support_max()
    nz = np.flatnonzero(smax >= 0)
    order_rows = nz[np.argsort(smax[nz], kind="stable")]
    lvl = smax[order_rows]
    lvl_ptr = np.searchsorted(lvl, np.arange(spec.n + 1)).astype(np.int64)
    codes = np.arange(G.order, dtype=np.int64)
    dig = G.digits(codes)
    mags = np.arange(-spec.k_minus, spec.k_plus + 1, dtype=np.int64)
    mult = G.from_digits(mags[:, None, None] * dig[None, :, :])
    symmetric = G.orbits_by_order
    if symmetric:
        rank = G.orbit_rank()
    else:
        rank = codes.copy()
    first_allowed = codes != 0
    if opts.prune_orbit and symmetric:
        first_allowed &= rank == codes
    return _Problem(
        n=spec.n, order=G.order, lvl_ptr=lvl_ptr,
        lpos=np.ascontiguousarray(arr.pos[order_rows]), lval=np.ascontiguousarray(arr.val[order_rows]),
        kminus=spec.k_minus, mult=np.ascontiguousarray(mult), dig=np.ascontiguousarray(dig),
        moduli=G.moduli_arr, weights=G.weights, first_allowed=first_allowed, orbit_rank=rank,
        use_rank=bool(opts.prune_rotation and symmetric and spec.cyclic),
        # a value already produced as a syndrome collides with its own unit vector
        skip_seen=spec.k_plus >= 1,
    )


# -- checkpoints ----------------------------------------------------------------------

def _state_key(spec: BallSpec, G: AbelianGroup, opts: SearchOptions) -> dict:
    return {"ball": [spec.n, spec.b, spec.k_plus, spec.k_minus, spec.cyclic], "group": str(G),
            "prune_orbit": opts.prune_orbit, "prune_rotation": opts.prune_rotation}


def _load_checkpoint(path: Path, key: dict):
    if not path.exists():
        return None
    state = json.loads(path.read_text())
    if state.get("key") != key:
        raise ParameterError(f"checkpoint {path} belongs to a different search: {state.get('key')}")
    return state


def _save_checkpoint(path: Path, key: dict, vals, depth, nodes, status):
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps({"key": key, "vals": [int(v) for v in vals], "depth": int(depth),
                               "nodes": int(nodes), "status": status}))
    os.replace(tmp, path)


# -- search ------------------------------------------------------------------------------

def _drive(prob: _Problem, opts: SearchOptions, vals, depth, nodes, key=None, path=None):
    """Run the kernel in chunks; returns (status, vals, nodes)."""
    while True:
        limit = min(opts.chunk, opts.node_budget - nodes)
        if limit <= 0:
            raise ResourceError(f"node budget {opts.node_budget} exhausted after {nodes} nodes")
        status, depth, got = prob.run(vals, depth, limit)
        nodes += got
        if status == -1:
            raise ParameterError("resumed search prefix is inconsistent")
        if path is not None:
            _save_checkpoint(path, key, vals, depth, nodes,
                             {0: "exhausted_none", 1: "found", 2: "paused"}[status])
        if status != 2:
            return status, vals, nodes


def _shard(args):
    spec, G, opts, root = args
    prob = _problem(spec, G, opts)
    only = np.zeros_like(prob.first_allowed)
    only[root] = True
    prob.first_allowed = only
    vals = np.full(spec.n, -1, dtype=np.int64)
    status, vals, nodes = _drive(prob, opts, vals, 0, 0)
    return status, vals.tolist(), nodes


def search_splitting(spec: BallSpec, group: AbelianGroup, opts: SearchOptions | None = None) -> SearchReport:
    """Lexicographically smallest perfect splitting of ``group`` by the ball, or exhausted_none."""
    opts = opts or SearchOptions()
    size = ball_size(spec)
    if size != group.order:
        raise ParameterError(f"|{spec}| = {size} but |{group}| = {group.order}; search needs equality")
    t0 = time.perf_counter()
    prob = _problem(spec, group, opts)
    if opts.jobs > 1:
        if opts.checkpoint is not None:
            raise ParameterError("checkpointing is only supported with jobs=1")
        roots = np.flatnonzero(prob.first_allowed).tolist()
        with ProcessPoolExecutor(max_workers=opts.jobs) as ex:
            results = list(ex.map(_shard, [(spec, group, opts, r) for r in roots]))
        nodes = sum(r[2] for r in results)
        hits = [r[1] for r in results if r[0] == 1]
        status = 1 if hits else 0
        vals = min(hits) if hits else None
    else:
        vals = np.full(spec.n, -1, dtype=np.int64)
        depth, nodes = 0, 0
        path = key = None
        if opts.checkpoint is not None:
            path, key = Path(opts.checkpoint), _state_key(spec, group, opts)
            state = _load_checkpoint(path, key)
            if state is not None:
                vals = np.array(state["vals"], dtype=np.int64)
                depth, nodes = state["depth"], state["nodes"]
                if state["status"] == "exhausted_none":
                    return SearchReport(spec, group, "exhausted_none", None, nodes, time.perf_counter() - t0)
        if vals.shape != (spec.n,):
            raise ParameterError("checkpoint vector has the wrong length")
        if vals.size and depth == spec.n:
            status = 1
        else:
            status, vals, nodes = _drive(prob, opts, vals, depth, nodes, key, path)
        vals = vals.tolist()
    elapsed = time.perf_counter() - t0
    if status == 1:
        seq = SplittingSequence(group, tuple(vals))
        if not is_perfect_splitting(spec, seq):
            raise InternalError(f"search returned a non-splitting {vals} for {spec} over {group}")
        return SearchReport(spec, group, "found", seq, nodes, elapsed)
    return SearchReport(spec, group, "exhausted_none", None, nodes, elapsed)


def prove_nonexistence(spec: BallSpec, order: int, opts: SearchOptions | None = None) -> bool:
    """True iff no Abelian group of this order is split by the ball."""
    size = ball_size(spec)
    if size != order:
        raise ParameterError(f"|{spec}| = {size}, not {order}")
    return all(not search_splitting(spec, G, opts).found for G in enumerate_abelian_groups(order))


# -- table reproduction --------------------------------------------------------------

# family, residue class (q mod m), lower end e(2b-1)+1
TABLE2_ROWS = {
    "T44": ((2, 1, 1), 7, 12, 19),
    "T48": ("R_alpha", 13, 24, 19),
    "T45": ((3, 1, 0), 1, 4, 21),
    "T46": ((3, 1, 1), 19, 36, 91),
}

TABLE2_REFERENCE = {
    "T44": (41, [19, 43, 127]),
    "T48": (6, [37, 61, 109, 157, 181, 229, 277, 349, 373, 397, 421, 613, 661, 733, 829]),
    "T45": (76, [25, 37, 49, 61, 97, 101, 121, 157, 169, 289, 361, 449, 601, 729]),
    "T46": (2, [199, 271, 307, 343, 379, 487, 523, 631, 739, 811, 883, 919, 991]),
}

GOOD_Q_220_REFERENCE = [19, 79, 103, 163, 181, 199, 229, 349, 373, 397, 421, 487, 499, 541, 613, 619, 631,
                        643, 691, 709, 733, 739, 751, 769, 787, 823, 853, 859, 907, 967, 997]

# (n, group, cyclic ball, sequence)
TABLE3 = [
    (3, "Z19", True, (1, 7, 11)),
    (4, "Z25", True, (1, 5, 4, 20)),
    (3, "Z15", False, (1, 5, 4)),
    (4, "Z21", False, (1, 5, 20, 18)),
]
TABLE4 = {
    4: (1, 5, 2, 10),
    5: (1, 4, 15, 2, 8),
    6: (1, 8, 10, 6, 11, 14),
    8: (1, 4, 21, 9, 2, 18, 8, 14),
    9: (1, 3, 12, 25, 6, 20, 27, 17, 22),
    10: (1, 3, 11, 24, 9, 25, 30, 12, 29, 22),
    11: (1, 3, 9, 27, 14, 25, 8, 24, 5, 15, 22),
    12: (1, 3, 8, 27, 33, 12, 30, 20, 29, 7, 32, 15),
    13: (1, 3, 8, 14, 37, 17, 10, 26, 38, 9, 39, 21, 34),
    14: (1, 3, 8, 14, 31, 7, 41, 9, 21, 39, 10, 23, 42, 27),
}
TABLE5 = {
    3: (1, 5, 2),
    4: (1, 4, 10, 2),
    5: (1, 4, 10, 2, 9),
    6: (1, 14, 10, 2, 5, 11),
    7: (1, 3, 12, 19, 6, 16, 5),
    8: (1, 3, 12, 20, 14, 21, 5, 22),
    9: (1, 3, 9, 16, 5, 24, 10, 23, 8),
    10: (1, 3, 8, 25, 13, 28, 6, 20, 27, 9),
    11: (1, 3, 8, 29, 7, 25, 15, 28, 16, 30, 24),
    12: (1, 3, 8, 17, 32, 13, 29, 7, 28, 18, 12, 26),
    13: (1, 3, 8, 14, 32, 19, 31, 16, 26, 9, 30, 7, 27),
    14: (1, 3, 8, 14, 30, 13, 40, 21, 12, 35, 10, 39, 24, 31),
}


def table_rows(which: int):
    """``(spec, group, sequence)`` for every row of Table 3, 4 or 5."""
    if which == 3:
        return [(BallSpec(n, 2, 2, 0, cyc), parse_group(g), s) for n, g, cyc, s in TABLE3]
    if which == 4:
        return [(BallSpec(n, 2, 1, 1, True), cyclic(6 * n + 1), s) for n, s in TABLE4.items()]
    if which == 5:
        return [(BallSpec(n, 2, 1, 1, False), cyclic(6 * n - 3), s) for n, s in TABLE5.items()]
    raise ParameterError(f"no table {which}; expected 3, 4 or 5")


def reproduce_table2(theorem: str, q_max: int, family_override=None):
    """``(good, bad)`` prime powers q in the theorem's residue class up to q_max."""
    if theorem not in TABLE2_ROWS:
        raise ParameterError(f"unknown theorem {theorem!r}; expected one of {sorted(TABLE2_ROWS)}")
    if q_max > 1 << 20:
        raise ResourceError(f"q_max={q_max} exceeds the field-size cap")
    fam, cls, mod, lo = TABLE2_ROWS[theorem]
    fam = resolve_family(family_override or fam)
    good, bad = [], []
    for q in prime_powers(lo, q_max):
        if q % mod != cls:
            continue
        (good if find_primitive(field_of_order(q), fam) is not None else bad).append(q)
    return good, bad


def scan_good_q_220(q_max: int) -> list[int]:
    if q_max > 1 << 20:
        raise ResourceError(f"q_max={q_max} exceeds the field-size cap")
    fam = resolve_family("C_220")
    return [q for q in prime_powers(19, q_max)
            if q % 6 == 1 and find_primitive(field_of_order(q), fam) is not None]


@dataclass
class TableRowResult:
    table: int
    spec: BallSpec
    group: AbelianGroup
    sequence: tuple
    verified: bool
    search: SearchReport | None = None


def reproduce_tables345(search_max_n: int | None = 0, opts: SearchOptions | None = None) -> list[TableRowResult]:
    """Verify every listed row; with ``search_max_n`` (None = all rows),
    also confirm existence by search for rows with n up to that bound."""
    out = []
    for which in (3, 4, 5):
        for spec, G, seq in table_rows(which):
            s = SplittingSequence.from_values(G, seq)
            ok = is_perfect_splitting(spec, s)
            if not ok:
                raise InternalError(f"Table {which} row n={spec.n} over {G}: {seq} does not split {spec}")
            rep = None
            if search_max_n is None or spec.n <= search_max_n:
                rep = search_splitting(spec, G, opts)
                if not rep.found:
                    raise InternalError(f"Table {which} row n={spec.n} over {G}: search found no splitting")
            out.append(TableRowResult(which, spec, G, seq, ok, rep))
    return out
