"""Burst error balls E(n,b,k+,k-) (non-cyclic) and E°(n,b,k+,k-) (cyclic).

A vector lies in the ball when its entries are in [-k-, k+] and every
nonzero entry falls inside one window of b consecutive coordinates. In the
cyclic ball windows wrap around modulo n; in the non-cyclic ball a window
starting at i is clipped at the last coordinate.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InternalError, ParameterError, ResourceError

ENUMERATION_BUDGET = 10**7


@dataclass(frozen=True)
class BallSpec:
    n: int
    b: int
    k_plus: int
    k_minus: int
    cyclic: bool

    def __post_init__(self):
        for name in ("n", "b", "k_plus", "k_minus"):
            if not isinstance(getattr(self, name), (int, np.integer)):
                raise ParameterError(f"{name} must be an integer")
        if self.n < 1 or self.b < 1:
            raise ParameterError("n and b must be positive")
        if self.b > self.n:
            raise ParameterError(f"burst length b={self.b} exceeds n={self.n}")
        if self.k_plus < 0 or self.k_minus < 0 or self.k_plus + self.k_minus < 1:
            raise ParameterError("need k_plus, k_minus >= 0 with k_plus + k_minus >= 1")
        object.__setattr__(self, "cyclic", bool(self.cyclic))

    @property
    def e(self) -> int:
        return e_param(self.b, self.k_plus, self.k_minus)

    @property
    def magnitudes(self) -> range:
        return range(-self.k_minus, self.k_plus + 1)

    def __str__(self):
        name = "E°" if self.cyclic else "E"
        return f"{name}({self.n},{self.b},{self.k_plus},{self.k_minus})"


def e_param(b: int, k_plus: int, k_minus: int) -> int:
    """Number of burst patterns anchored at a fixed start with a nonzero first entry."""
    if b < 1 or k_plus < 0 or k_minus < 0 or k_plus + k_minus < 1:
        raise ParameterError(f"invalid burst parameters b={b}, k+={k_plus}, k-={k_minus}")
    k = k_plus + k_minus
    return k * (k + 1) ** (b - 1)


@dataclass(frozen=True)
class BallArrays:
    """Sparse form of a ball: row j is sum_k val[j,k] * unit(pos[j,k]).

    Rows follow the canonical enumeration order. Slots holding a zero value
    carry a valid (but irrelevant) position.
    """
    pos: np.ndarray
    val: np.ndarray

    def __len__(self):
        return self.pos.shape[0]

    def support_max(self) -> np.ndarray:
        """Largest coordinate touched by a nonzero entry (-1 for the zero row)."""
        return np.where(self.val != 0, self.pos, -1).max(axis=1)


def _patterns(spec: BallSpec) -> np.ndarray:
    return np.array(list(itertools.product(spec.magnitudes, repeat=spec.b)), dtype=np.int64)


def _raw_windows(spec: BallSpec):
    """All (window start, pattern) rows in lexicographic order, before dedup."""
    n, b = spec.n, spec.b
    pats = _patterns(spec)
    starts = np.repeat(np.arange(n, dtype=np.int64), len(pats))
    val = np.tile(pats, (n, 1))
    pos = starts[:, None] + np.arange(b, dtype=np.int64)
    if spec.cyclic:
        pos %= n
    else:
        # clipped windows: entries that would fall past the end must be zero
        overflow = pos >= n
        keep = ~(overflow & (val != 0)).any(axis=1)
        pos, val = np.minimum(pos[keep], n - 1), val[keep]
    return pos, val


def _dedup_keys(spec: BallSpec, pos, val) -> np.ndarray:
    n, b = spec.n, spec.b
    if spec.cyclic and n < 2 * b - 1:
        dense = np.zeros((len(pos), n), dtype=np.int64)
        rows = np.repeat(np.arange(len(pos)), b)
        # no wrap onto itself since b <= n, so assignment is exact
        dense[rows, pos.reshape(-1)] = val.reshape(-1)
        _, keys = np.unique(dense, axis=0, return_inverse=True)
        return keys.reshape(-1)
    # otherwise a nonzero vector is fixed by its first nonzero slot and the
    # b-long pattern read from there
    base = spec.k_plus + spec.k_minus + 1
    nz = val != 0
    lead = np.where(nz.any(axis=1), nz.argmax(axis=1), b)
    shift = np.arange(b)[None, :] + lead[:, None]
    inside = shift < b
    trimmed = np.where(inside, np.take_along_axis(val, np.minimum(shift, b - 1), axis=1), 0)
    digits = trimmed + spec.k_minus
    pat_code = (digits * base ** np.arange(b - 1, -1, -1, dtype=np.int64)).sum(axis=1)
    first = np.where(lead < b, pos[np.arange(len(pos)), np.minimum(lead, b - 1)], -1)
    return np.where(lead < b, first * base**b + pat_code, -1)


@lru_cache(maxsize=256)
def ball_arrays(spec: BallSpec, budget: int = ENUMERATION_BUDGET) -> BallArrays:
    """Deduplicated sparse ball in canonical order (cached per spec)."""
    raw = spec.n * (spec.k_plus + spec.k_minus + 1) ** spec.b
    if raw * spec.b > budget:
        raise ResourceError(f"{spec}: {raw} raw burst rows exceed the enumeration budget {budget}")
    pos, val = _raw_windows(spec)
    keys = _dedup_keys(spec, pos, val)
    _, first = np.unique(keys, return_index=True)
    first.sort()
    pos, val = pos[first], val[first]
    pos.setflags(write=False)
    val.setflags(write=False)
    return BallArrays(pos, val)


def enumerate_ball(spec: BallSpec, budget: int = ENUMERATION_BUDGET) -> np.ndarray:
    """Every vector of the ball as rows of an ``(size, n)`` integer array.

    Rows are ordered by (window start, pattern) with duplicates dropped at
    their first occurrence. The zero vector is included.
    """
    raw = spec.n * (spec.k_plus + spec.k_minus + 1) ** spec.b
    if raw * spec.n > budget:
        raise ResourceError(f"{spec}: dense enumeration of ~{raw} x {spec.n} entries exceeds budget {budget}")
    arr = ball_arrays(spec, budget)
    out = np.zeros((len(arr), spec.n), dtype=np.int64)
    rows = np.repeat(np.arange(len(arr)), spec.b)
    np.add.at(out, (rows, arr.pos.reshape(-1)), arr.val.reshape(-1))
    return out


def ball_size(spec: BallSpec, budget: int = ENUMERATION_BUDGET) -> int:
    size = len(ball_arrays(spec, budget))
    if spec.cyclic and spec.n >= 2 * spec.b - 1:
        expected = spec.e * spec.n + 1
        if size != expected:
            raise InternalError(f"{spec}: enumerated {size} vectors, closed form gives {expected}")
    return size


def contains(spec: BallSpec, v) -> bool:
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] != spec.n:
        raise ParameterError(f"vector length {v.shape} does not match n={spec.n}")
    if (v > spec.k_plus).any() or (v < -spec.k_minus).any():
        return False
    support = np.flatnonzero(v)
    if support.size <= 1:
        return True
    if not spec.cyclic:
        return int(support[-1] - support[0]) + 1 <= spec.b
    gaps = np.diff(np.append(support, support[0] + spec.n))
    return spec.n - int(gaps.max()) + 1 <= spec.b
