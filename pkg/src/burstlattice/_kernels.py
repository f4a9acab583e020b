"""Hot inner loops.

Every kernel exists twice: a numba ``@njit`` version and a pure numpy (or
plain Python, where the loop cannot be vectorised) version. The active
backend is picked once at import time; set ``BURSTLATTICE_DISABLE_JIT=1``
to force the fallback. Both versions stay importable under explicit names
(``nb_*`` / ``np_*``) so the test-suite and the benchmark can compare them.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_DISABLED = os.environ.get("BURSTLATTICE_DISABLE_JIT", "").strip().lower() in ("1", "true", "yes", "on")
HAVE_NUMBA = numba is not None
BACKEND = "numba" if (HAVE_NUMBA and not _DISABLED) else "numpy"


def _njit(fn):
    if not HAVE_NUMBA:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# ---------------------------------------------------------------------------
# splitting check: first collision among syndromes of ball vectors
# ---------------------------------------------------------------------------

def _first_collision_loop(pos, val, kminus, cdig, moduli, weights, order):
    n_rows, b = pos.shape
    r = moduli.shape[0]
    seen = np.full(order, -1, dtype=np.int64)
    acc = np.zeros(r, dtype=np.int64)
    for j in range(n_rows):
        for t in range(r):
            acc[t] = 0
        for k in range(b):
            v = val[j, k]
            if v != 0:
                for t in range(r):
                    acc[t] += cdig[v + kminus, pos[j, k], t]
        code = 0
        for t in range(r):
            code += (acc[t] % moduli[t]) * weights[t]
        if seen[code] >= 0:
            return j, seen[code]
        seen[code] = j
    return -1, -1


def np_first_collision(pos, val, kminus, cdig, moduli, weights, order):
    """Vectorised twin of the collision loop; same (later, earlier) row pair."""
    acc = cdig[val + kminus, pos].sum(axis=1)
    codes = ((acc % moduli) * weights).sum(axis=-1)
    _, first, inverse = np.unique(codes, return_index=True, return_inverse=True)
    first_of_row = first[inverse.reshape(-1)]
    dup = np.flatnonzero(first_of_row != np.arange(codes.shape[0]))
    if dup.size == 0:
        return -1, -1
    j = int(dup[0])
    return j, int(first_of_row[j])


nb_first_collision = _njit(_first_collision_loop)


# ---------------------------------------------------------------------------
# backtracking search for splitting sequences
# ---------------------------------------------------------------------------

def _mark_level(j, vals, lvl_ptr, lpos, lval, kminus, mult, dig, moduli, weights,
                seen, marks, nmarks):
    """Insert the syndromes of every ball vector completed at depth ``j``.

    Returns False (leaving nothing marked for this level) on a collision.
    """
    b = lpos.shape[1]
    r = moduli.shape[0]
    cnt = 0
    ok = True
    for v in range(lvl_ptr[j], lvl_ptr[j + 1]):
        code = 0
        for t in range(r):
            a = 0
            for k in range(b):
                c = lval[v, k]
                if c != 0:
                    a += dig[mult[c + kminus, vals[lpos[v, k]]], t]
            code += (a % moduli[t]) * weights[t]
        if seen[code]:
            ok = False
            break
        seen[code] = True
        marks[j, cnt] = code
        cnt += 1
    if not ok:
        for i in range(cnt):
            seen[marks[j, i]] = False
        cnt = 0
    nmarks[j] = cnt
    return ok


def _unmark_level(j, seen, marks, nmarks):
    for i in range(nmarks[j]):
        seen[marks[j, i]] = False
    nmarks[j] = 0


def _make_dfs(mark_level, unmark_level):
    def dfs(n, order, lvl_ptr, lpos, lval, kminus, mult, dig, moduli, weights,
            first_allowed, orbit_rank, use_rank, skip_seen, vals, depth, node_limit):
        """Depth-first search over coordinate assignments.

        ``vals``/``depth`` carry resumable state: levels ``0..depth-1`` are
        assigned and ``vals[depth]`` is the last candidate tried at ``depth``
        (``-1`` if none). Returns ``(status, depth, nodes)`` with status
        0 = exhausted, 1 = found (``vals`` holds the sequence), 2 = paused,
        -1 = the resumed prefix is inconsistent.
        """
        maxlvl = 1
        for j in range(n):
            w = lvl_ptr[j + 1] - lvl_ptr[j]
            if w > maxlvl:
                maxlvl = w
        seen = np.zeros(order, dtype=np.bool_)
        seen[0] = True
        marks = np.zeros((n, maxlvl), dtype=np.int64)
        nmarks = np.zeros(n, dtype=np.int64)
        for j in range(depth):
            if not mark_level(j, vals, lvl_ptr, lpos, lval, kminus, mult, dig, moduli,
                              weights, seen, marks, nmarks):
                return -1, depth, 0
        nodes = 0
        while True:
            if depth == n:
                return 1, depth, nodes
            if nodes >= node_limit:
                return 2, depth, nodes
            v = vals[depth] + 1
            if depth == 0:
                while v < order and not first_allowed[v]:
                    v += 1
            else:
                floor = orbit_rank[vals[0]] if use_rank else 0
                # with +1 in range, a value already hit as a syndrome collides with its unit vector
                while v < order and ((skip_seen and seen[v]) or (use_rank and orbit_rank[v] < floor)):
                    v += 1
            if v >= order:
                vals[depth] = -1
                depth -= 1
                if depth < 0:
                    return 0, 0, nodes
                unmark_level(depth, seen, marks, nmarks)
                continue
            vals[depth] = v
            nodes += 1
            if mark_level(depth, vals, lvl_ptr, lpos, lval, kminus, mult, dig, moduli,
                          weights, seen, marks, nmarks):
                depth += 1
                if depth < n:
                    vals[depth] = -1

    return dfs


py_dfs = _make_dfs(_mark_level, _unmark_level)
if HAVE_NUMBA:
    nb_dfs = numba.njit(nogil=True)(_make_dfs(_njit(_mark_level), _njit(_unmark_level)))
else:  # pragma: no cover
    nb_dfs = py_dfs


# ---------------------------------------------------------------------------
# finite fields: exp table and primitive-element condition scan
# ---------------------------------------------------------------------------

def _exp_table_loop(gen, modulus, p, q):
    """Successive powers of ``gen`` as element indices.

    Polynomials are coefficient arrays, constant term first; ``modulus`` is
    monic of degree r = len(gen). Index of (c_0..c_{r-1}) is sum c_k p^(r-1-k).
    """
    r = gen.shape[0]
    out = np.empty(q - 1, dtype=np.int64)
    cur = np.zeros(r, dtype=np.int64)
    cur[0] = 1
    prod = np.zeros(2 * r - 1, dtype=np.int64)
    for step in range(q - 1):
        idx = 0
        for k in range(r):
            idx = idx * p + cur[k]
        out[step] = idx
        for k in range(2 * r - 1):
            prod[k] = 0
        for a in range(r):
            if cur[a] != 0:
                for c in range(r):
                    prod[a + c] += cur[a] * gen[c]
        for d in range(2 * r - 2, r - 1, -1):
            lead = prod[d] % p
            if lead != 0:
                for k in range(r + 1):
                    prod[d - r + k] -= lead * modulus[k]
        for k in range(r):
            cur[k] = prod[k] % p
    return out


py_exp_table = _exp_table_loop
nb_exp_table = _njit(_exp_table_loop)


def _condition_loop(alphas, prim, logs, exps, p, r, pcoef, pexp, plen, h,
                    mode, target_mask, target_res):
    """Per candidate alpha: True iff primitive, no polynomial vanishes, and the
    discrete-log residues mod ``h`` meet the target (mode 0: residue set equals
    ``target_mask``; mode 1: residue i equals ``target_res[i]`` where >= 0)."""
    qm1 = exps.shape[0]
    n_alpha = alphas.shape[0]
    n_poly = pcoef.shape[0]
    out = np.zeros(n_alpha, dtype=np.bool_)
    acc = np.zeros(r, dtype=np.int64)
    for ai in range(n_alpha):
        if not prim[ai]:
            continue
        la = logs[alphas[ai]]
        mask = 0
        ok = True
        for f in range(n_poly):
            for k in range(r):
                acc[k] = 0
            for t in range(plen[f]):
                y = exps[(pexp[f, t] * la) % qm1]
                c = pcoef[f, t]
                for k in range(r - 1, -1, -1):
                    acc[k] += c * (y % p)
                    y //= p
            idx = 0
            for k in range(r):
                idx = idx * p + acc[k] % p
            if idx == 0:
                ok = False
                break
            res = logs[idx] % h
            if mode == 1:
                if target_res[f] >= 0 and res != target_res[f]:
                    ok = False
                    break
            else:
                mask |= 1 << res
        if ok and (mode == 1 or mask == target_mask):
            out[ai] = True
    return out


def np_condition(alphas, prim, logs, exps, p, r, pcoef, pexp, plen, h,
                 mode, target_mask, target_res):
    qm1 = exps.shape[0]
    la = logs[alphas]
    weights = p ** np.arange(r - 1, -1, -1, dtype=np.int64)
    ok = prim.copy()
    mask = np.zeros(alphas.shape[0], dtype=np.int64)
    for f in range(pcoef.shape[0]):
        acc = np.zeros((alphas.shape[0], r), dtype=np.int64)
        for t in range(plen[f]):
            y = exps[(pexp[f, t] * la) % qm1]
            acc += pcoef[f, t] * ((y[:, None] // weights) % p)
        idx = ((acc % p) * weights).sum(axis=1)
        nonzero = idx != 0
        ok &= nonzero
        res = np.where(nonzero, logs[idx], 0) % h
        if mode == 1:
            if target_res[f] >= 0:
                ok &= res == target_res[f]
        else:
            mask |= np.left_shift(np.int64(1), res)
    if mode == 0:
        ok &= mask == target_mask
    return ok


nb_condition = _njit(_condition_loop)


if BACKEND == "numba":
    first_collision = nb_first_collision
    dfs = nb_dfs
    exp_table = nb_exp_table
    condition_scan = nb_condition
else:
    first_collision = np_first_collision
    dfs = py_dfs
    exp_table = py_exp_table
    condition_scan = np_condition
