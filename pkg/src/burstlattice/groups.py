"""Finite Abelian groups, splitting sequences and the splitting predicate.

Elements are stored as integer *codes*: the mixed-radix encoding of the
coordinate tuple, first coordinate most significant. For a cyclic group
Z_m the code is just the residue, and code order is lexicographic order
on coordinate tuples everywhere, which is the canonical element order used
by the search.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Sequence

import numpy as np

from . import _kernels
from .errorball import BallSpec, ball_arrays, ball_size
from .errors import ParameterError, ResourceError

if TYPE_CHECKING:
    from .gf import FieldCtx

GroupElement = int

MAX_GROUP_ORDER = 1 << 20


@dataclass(frozen=True, eq=False)
class AbelianGroup:
    moduli: tuple[int, ...]
    kind: str = "direct_sum"
    field: "FieldCtx | None" = field(default=None, repr=False)

    def __post_init__(self):
        if not self.moduli or any(m < 2 for m in self.moduli):
            raise ParameterError(f"cyclic factor orders must be >= 2, got {self.moduli}")
        if self.kind not in ("cyclic", "direct_sum", "field_additive"):
            raise ParameterError(f"unknown group kind {self.kind!r}")

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and (self.kind, self.moduli, self._field_key) == (
            other.kind, other.moduli, other._field_key)

    def __hash__(self):
        return hash((self.kind, self.moduli, self._field_key))

    @property
    def _field_key(self):
        return None if self.field is None else (self.field.p, self.field.r, self.field.modulus)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def rank(self) -> int:
        """Minimal number of generators."""
        if self.kind == "field_additive":
            return len(self.moduli)
        counts: dict[int, int] = {}
        for m in self.moduli:
            for p in _prime_factors(m):
                counts[p] = counts.get(p, 0) + 1
        return max(counts.values())

    @property
    def is_cyclic(self) -> bool:
        return all(math.gcd(a, b) == 1 for i, a in enumerate(self.moduli) for b in self.moduli[i + 1:])

    @property
    def orbits_by_order(self) -> bool:
        """True when automorphisms act transitively on elements of each order.

        This holds exactly when every p-primary part is homocyclic, i.e. a
        power of a single cyclic p-group; cyclic groups are the rank-1 case.
        """
        exps: dict[int, set] = {}
        for m in self.moduli:
            for p in _prime_factors(m):
                k, r = 0, m
                while r % p == 0:
                    r //= p
                    k += 1
                exps.setdefault(p, set()).add(k)
        return all(len(v) == 1 for v in exps.values())

    @cached_property
    def weights(self) -> np.ndarray:
        w = np.ones(len(self.moduli), dtype=np.int64)
        for i in range(len(self.moduli) - 2, -1, -1):
            w[i] = w[i + 1] * self.moduli[i + 1]
        return w

    @cached_property
    def moduli_arr(self) -> np.ndarray:
        return np.array(self.moduli, dtype=np.int64)

    def digits(self, codes) -> np.ndarray:
        """Coordinate tuples of element codes, shape ``codes.shape + (r,)``."""
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self.weights) % self.moduli_arr

    def from_digits(self, digits) -> np.ndarray:
        digits = np.asarray(digits, dtype=np.int64)
        return ((digits % self.moduli_arr) * self.weights).sum(axis=-1)

    def element(self, value) -> GroupElement:
        """Code of an int (single-factor groups) or a coordinate tuple."""
        if isinstance(value, (int, np.integer)):
            if len(self.moduli) != 1:
                raise ParameterError(f"{self} needs coordinate tuples, got {value!r}")
            return int(value) % self.moduli[0]
        coords = tuple(int(c) for c in value)
        if len(coords) != len(self.moduli):
            raise ParameterError(f"{self} needs {len(self.moduli)} coordinates, got {coords}")
        return int(self.from_digits(coords))

    def coords(self, code: GroupElement) -> tuple[int, ...]:
        self._check(code)
        return tuple(int(c) for c in self.digits(code))

    def _check(self, code):
        if not isinstance(code, (int, np.integer)) or not 0 <= code < self.order:
            raise ParameterError(f"{code!r} is not an element code of {self}")

    def orbit_rank(self) -> np.ndarray:
        """Per element, a key that is equal exactly on automorphism orbits.

        Only meaningful when ``orbits_by_order`` holds, so that orbits are the
        sets of elements of equal order; the key is the smallest code in the
        orbit.
        """
        orders = element_orders(self)
        rank = np.full(self.order, -1, dtype=np.int64)
        first: dict[int, int] = {}
        for code, o in enumerate(orders.tolist()):
            rank[code] = first.setdefault(o, code)
        return rank

    def __str__(self):
        if self.kind == "field_additive":
            return f"GF({self.order})"
        return "x".join(f"Z{m}" for m in self.moduli)


def cyclic(m: int) -> AbelianGroup:
    return AbelianGroup((int(m),), "cyclic")


def direct_sum(*orders: int) -> AbelianGroup:
    if len(orders) == 1:
        return cyclic(orders[0])
    return AbelianGroup(tuple(int(m) for m in orders), "direct_sum")


def field_additive(F: "FieldCtx") -> AbelianGroup:
    return AbelianGroup((F.p,) * F.r, "field_additive", F)


def parse_group(text: str) -> AbelianGroup:
    from .errors import ParseError
    from .gf import field_of_order

    t = text.strip().replace(" ", "")
    try:
        if t.upper().startswith("GF(") and t.endswith(")"):
            return field_additive(field_of_order(int(t[3:-1])))
        parts = t.replace("⊕", "x").split("x")
        if not all(p[:1] in ("Z", "z") for p in parts):
            raise ValueError(t)
        return direct_sum(*(int(p[1:]) for p in parts))
    except ParameterError:
        raise
    except ValueError as exc:
        raise ParseError(f"cannot parse group {text!r}; expected e.g. Z15, Z3xZ5, GF(81)") from exc


def element_orders(G: AbelianGroup) -> np.ndarray:
    digs = G.digits(np.arange(G.order))
    orders = np.ones(G.order, dtype=np.int64)
    for t, m in enumerate(G.moduli):
        o = m // np.gcd(digs[:, t], m)
        orders = np.lcm(orders, o)
    return orders


# -- arithmetic ---------------------------------------------------------------

def g_add(G: AbelianGroup, a: GroupElement, b: GroupElement) -> GroupElement:
    G._check(a), G._check(b)
    return int(G.from_digits(G.digits(a) + G.digits(b)))


def g_neg(G: AbelianGroup, a: GroupElement) -> GroupElement:
    G._check(a)
    return int(G.from_digits(-G.digits(a)))


def g_scalar(G: AbelianGroup, m: int, a: GroupElement) -> GroupElement:
    """m * a, with negative m meaning (-m) copies of -a."""
    G._check(a)
    return int(G.from_digits(int(m) * G.digits(a)))


def scalar_table(G: AbelianGroup, coeffs: Sequence[int], elems) -> np.ndarray:
    """``out[i, j] = coeffs[i] * elems[j]`` as codes."""
    d = G.digits(np.asarray(elems, dtype=np.int64))
    c = np.asarray(coeffs, dtype=np.int64)
    return G.from_digits(c[:, None, None] * d[None, :, :])


# -- splitting sequences --------------------------------------------------------

@dataclass(frozen=True)
class SplittingSequence:
    group: AbelianGroup
    elems: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(int(x) for x in self.elems)
        for x in elems:
            self.group._check(x)
        object.__setattr__(self, "elems", elems)

    @classmethod
    def from_values(cls, group: AbelianGroup, values) -> "SplittingSequence":
        """Build from ints (single-factor groups; reduced mod the order) or coordinate tuples."""
        return cls(group, tuple(group.element(v) for v in values))

    def __len__(self):
        return len(self.elems)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.elems, dtype=np.int64)

    def values(self) -> list:
        if len(self.group.moduli) == 1:
            return list(self.elems)
        return [self.group.coords(x) for x in self.elems]

    def rotate(self, k: int) -> "SplittingSequence":
        k %= len(self.elems)
        return SplittingSequence(self.group, self.elems[k:] + self.elems[:k])


def dot(G: AbelianGroup, coeffs, s: SplittingSequence) -> GroupElement:
    coeffs = np.asarray(coeffs, dtype=np.int64)
    if coeffs.shape != (len(s),):
        raise ParameterError(f"coefficient vector of length {coeffs.shape} vs sequence of length {len(s)}")
    if s.group != G:
        raise ParameterError(f"sequence lives in {s.group}, not {G}")
    return int(G.from_digits((coeffs[:, None] * G.digits(s.array)).sum(axis=0)))


def _splitting_inputs(spec: BallSpec, s: SplittingSequence):
    if len(s) != spec.n:
        raise ParameterError(f"sequence length {len(s)} does not match n={spec.n}")
    G = s.group
    if G.order > MAX_GROUP_ORDER:
        raise ResourceError(f"group order {G.order} exceeds {MAX_GROUP_ORDER}")
    arr = ball_arrays(spec)
    mags = list(spec.magnitudes)
    cdig = G.digits(scalar_table(G, mags, s.array))
    return arr, cdig, G


def first_collision(spec: BallSpec, s: SplittingSequence, kernel=None):
    """Indices ``(i, j)`` into the canonical ball order of the first pair of
    distinct ball vectors with equal syndrome, or None when the ball splits."""
    arr, cdig, G = _splitting_inputs(spec, s)
    kernel = kernel or _kernels.first_collision
    j, i = kernel(arr.pos, arr.val, spec.k_minus, cdig, G.moduli_arr, G.weights, G.order)
    if j < 0:
        return None
    return int(i), int(j)


def is_splitting(spec: BallSpec, s: SplittingSequence) -> bool:
    return first_collision(spec, s) is None


def is_perfect_splitting(spec: BallSpec, s: SplittingSequence) -> bool:
    if len(s) != spec.n:
        raise ParameterError(f"sequence length {len(s)} does not match n={spec.n}")
    return ball_size(spec) == s.group.order and is_splitting(spec, s)


# -- isomorphism classes ------------------------------------------------------------

def _prime_factors(m: int) -> list[int]:
    return sorted(factorize(m))


def factorize(m: int, bound: int = 1 << 40) -> dict[int, int]:
    """Prime factorisation by trial division."""
    if m < 1:
        raise ParameterError(f"cannot factor {m}")
    if m > bound:
        raise ResourceError(f"{m} exceeds the trial-division bound {bound}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def partitions(a: int, largest: int | None = None):
    """Integer partitions of ``a`` in reverse lexicographic order, parts non-increasing."""
    largest = a if largest is None else largest
    if a == 0:
        yield ()
        return
    for first in range(min(a, largest), 0, -1):
        for rest in partitions(a - first, first):
            yield (first,) + rest


def enumerate_abelian_groups(order: int, bound: int = MAX_GROUP_ORDER) -> list[AbelianGroup]:
    """One group per isomorphism class, in primary decomposition.

    Factors are prime-power cyclic groups sorted by prime, then exponent.
    """
    if order < 2:
        raise ParameterError("group order must be >= 2")
    if order > bound:
        raise ResourceError(f"order {order} exceeds bound {bound}")
    per_prime = []
    for p, a in sorted(factorize(order).items()):
        per_prime.append([tuple(p**k for k in sorted(part)) for part in partitions(a)])
    out = []

    def rec(i, acc):
        if i == len(per_prime):
            out.append(direct_sum(*acc))
            return
        for factors in per_prime[i]:
            rec(i + 1, acc + factors)

    rec(0, ())
    return out
