"""Lattice codes from perfect splittings: membership, encoding, syndrome decoding.

The code is the kernel of x -> x . s in Z^n. Because the ball maps
bijectively onto the group, every syndrome names exactly one correctable
burst, so decoding is a table lookup.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errorball import BallArrays, BallSpec, ball_arrays, contains
from .errors import BurstLatticeError, InternalError, ParameterError, PreconditionError, ResourceError
from .groups import AbelianGroup, SplittingSequence, element_orders, first_collision, is_perfect_splitting

SOLVER_CAP = 1 << 22


class ConstructionError(BurstLatticeError):
    exit_code = 1


def _subgroup_after(G: AbelianGroup, H: np.ndarray, g: int, order_g: int) -> np.ndarray:
    """Codes of H + <g>."""
    steps = np.arange(order_g)[:, None] * G.digits(g)[None, :]
    sums = G.from_digits(G.digits(H)[:, None, :] + steps[None, :, :])
    return np.unique(sums)


def choose_info_positions(s: SplittingSequence) -> tuple[int, ...]:
    """Smallest coordinate set (size = rank of G) whose elements generate G.

    Scans coordinates from the last one backwards, greedily keeping those
    that enlarge the generated subgroup; falls back to an exhaustive scan
    over rank-sized subsets when the greedy set is too large.
    """
    G = s.group
    orders = element_orders(G)
    H = np.zeros(1, dtype=np.int64)
    chosen = []
    for j in reversed(range(len(s))):
        g = s.elems[j]
        if g == 0 or np.isin(g, H):
            continue
        H = _subgroup_after(G, H, g, int(orders[g]))
        chosen.append(j)
        if H.size == G.order:
            break
    if H.size == G.order and len(chosen) == G.rank:
        return tuple(sorted(chosen))
    for combo in itertools.islice(itertools.combinations(reversed(range(len(s))), G.rank), 100_000):
        H = np.zeros(1, dtype=np.int64)
        for j in combo:
            H = _subgroup_after(G, H, s.elems[j], int(orders[s.elems[j]]))
        if H.size == G.order:
            return tuple(sorted(combo))
    raise ConstructionError(f"no {G.rank} coordinates of the splitting sequence generate {G}")


@dataclass(frozen=True, eq=False)
class LatticeCode:
    spec: BallSpec
    splitting: SplittingSequence
    ball: BallArrays = field(repr=False)
    table: np.ndarray = field(repr=False)  # syndrome code -> ball row
    info_positions: tuple[int, ...]
    solver: np.ndarray = field(repr=False)  # syndrome code -> values on info_positions

    @property
    def group(self) -> AbelianGroup:
        return self.splitting.group

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def free_positions(self) -> tuple[int, ...]:
        info = set(self.info_positions)
        return tuple(j for j in range(self.n) if j not in info)

    def error_vector(self, row: int) -> np.ndarray:
        e = np.zeros(self.n, dtype=np.int64)
        np.add.at(e, self.ball.pos[row], self.ball.val[row])
        return e

    @property
    def syndrome_table(self) -> dict[int, np.ndarray]:
        """Syndrome -> correctable error vector (materialised on request)."""
        return {sigma: self.error_vector(int(row)) for sigma, row in enumerate(self.table)}

    def syndromes(self, Y) -> np.ndarray:
        """Syndromes of each row of ``Y`` (shape (..., n))."""
        Y = np.asarray(Y, dtype=np.int64)
        if Y.shape[-1] != self.n:
            raise ParameterError(f"vectors of length {Y.shape[-1]} for a code of length {self.n}")
        G = self.group
        sd = G.digits(self.splitting.array)
        return G.from_digits(Y @ sd)


def code_from_splitting(spec: BallSpec, s: SplittingSequence) -> LatticeCode:
    if not is_perfect_splitting(spec, s):
        hit = first_collision(spec, s) if len(s) == spec.n else None
        raise PreconditionError(f"{s.group} with {s.values()} is not a perfect splitting by {spec}"
                                + (f" (collision between ball rows {hit})" if hit else ""))
    G = s.group
    ball = ball_arrays(spec)
    dense = np.zeros((len(ball), spec.n), dtype=np.int64)
    np.add.at(dense, (np.repeat(np.arange(len(ball)), spec.b), ball.pos.reshape(-1)), ball.val.reshape(-1))
    syn = G.from_digits(dense @ G.digits(s.array))
    table = np.full(G.order, -1, dtype=np.int64)
    table[syn] = np.arange(len(ball))
    if (table < 0).any():
        raise InternalError("syndrome table is not a bijection")
    info = choose_info_positions(s)
    solver = _build_solver(G, [s.elems[j] for j in info])
    table.setflags(write=False)
    solver.setflags(write=False)
    return LatticeCode(spec, s, ball, table, info, solver)


def _build_solver(G: AbelianGroup, gens) -> np.ndarray:
    """For every group element, the lexicographically first coefficient vector
    in prod [0, ord(g_j)) expressing it over ``gens``."""
    orders = element_orders(G)[gens]
    total = int(np.prod(orders))
    if total > SOLVER_CAP:
        raise ResourceError(f"encoder table of {total} entries exceeds {SOLVER_CAP}")
    grid = np.stack(np.meshgrid(*[np.arange(o) for o in orders], indexing="ij"), axis=-1).reshape(-1, len(gens))
    codes = G.from_digits(grid @ G.digits(np.array(gens, dtype=np.int64)))
    _, first = np.unique(codes, return_index=True)
    if first.size != G.order:
        raise InternalError("information coordinates do not generate the group")
    return grid[first]


def is_codeword(code: LatticeCode, x) -> bool:
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (code.n,):
        raise ParameterError(f"vector of shape {x.shape} for a code of length {code.n}")
    return int(code.syndromes(x)) == 0


def encode(code: LatticeCode, message) -> np.ndarray:
    """Place ``message`` on the free coordinates and solve the info coordinates
    for syndrome zero. Message integers are kept as given."""
    message = np.asarray(message, dtype=np.int64)
    free = code.free_positions
    if message.shape != (len(free),):
        raise ParameterError(f"message needs {len(free)} integers, got shape {message.shape}")
    x = np.zeros(code.n, dtype=np.int64)
    x[list(free)] = message
    G = code.group
    need = int(G.from_digits(-G.digits(int(code.syndromes(x)))))
    x[list(code.info_positions)] = code.solver[need]
    if int(code.syndromes(x)) != 0:
        raise InternalError("encoder produced a non-codeword")
    return x


def decode(code: LatticeCode, y):
    """``(codeword, error)`` with error the unique ball vector of y's syndrome."""
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (code.n,):
        raise ParameterError(f"vector of shape {y.shape} for a code of length {code.n}")
    e = code.error_vector(int(code.table[int(code.syndromes(y))]))
    return y - e, e


def decode_batch(code: LatticeCode, Y):
    """Row-wise decode of a 2-D array; returns (codewords, errors)."""
    Y = np.asarray(Y, dtype=np.int64)
    rows = code.table[code.syndromes(Y)]
    E = np.zeros_like(Y)
    b = code.spec.b
    np.add.at(E, (np.repeat(np.arange(len(rows)), b), code.ball.pos[rows].reshape(-1)),
              code.ball.val[rows].reshape(-1))
    return Y - E, E


def inject_burst(spec: BallSpec, x, start=None, pattern=None, rng=None, include_zero=False) -> np.ndarray:
    """``x + e`` for a burst e in the ball.

    Either give ``start`` and ``pattern`` explicitly, or a numpy Generator
    ``rng`` to draw e uniformly from the nonzero ball (the whole ball when
    ``include_zero``).
    """
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (spec.n,):
        raise ParameterError(f"vector of shape {x.shape} for n={spec.n}")
    if pattern is not None:
        pattern = [int(c) for c in pattern]
        if start is None or not 0 <= start < spec.n:
            raise ParameterError(f"burst start {start!r} outside [0, {spec.n})")
        if not 1 <= len(pattern) <= spec.b:
            raise ParameterError(f"pattern length {len(pattern)} not in [1, {spec.b}]")
        e = np.zeros(spec.n, dtype=np.int64)
        for k, c in enumerate(pattern):
            if c == 0:
                continue
            pos = start + k
            if pos >= spec.n:
                if not spec.cyclic:
                    raise ParameterError("non-cyclic burst runs past the last coordinate")
                pos %= spec.n
            e[pos] = c
        if not contains(spec, e):
            raise ParameterError(f"pattern {pattern} is outside {spec}")
        if not e.any() and not include_zero:
            raise ParameterError("zero burst requested without include_zero")
        return x + e
    if rng is None:
        raise ParameterError("give either an explicit (start, pattern) or an rng")
    ball = ball_arrays(spec)
    nz = np.flatnonzero((ball.val != 0).any(axis=1))
    rows = np.arange(len(ball)) if include_zero else nz
    row = int(rows[rng.integers(len(rows))])
    e = np.zeros(spec.n, dtype=np.int64)
    np.add.at(e, ball.pos[row], ball.val[row])
    return x + e
