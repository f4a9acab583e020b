"""GF(p^r) arithmetic over element indices, with full discrete-log tables.

An element is an ``int`` index: its coefficient vector (c_0, ..., c_{r-1})
over GF(p), constant term first, read as base-p digits with c_0 most
significant. Index order is the deterministic element order used for
generator selection and primitive-element scans.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from . import _kernels
from .errors import InternalError, ParameterError, ResourceError
from .groups import factorize

MAX_FIELD_SIZE = 1 << 20

FieldElem = int


# -- polynomials over GF(p): lists of ints, constant term first ---------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = [c % p for c in a]
    inv = pow(f[-1], -1, p)
    df = len(f) - 1
    for d in range(len(a) - 1, df - 1, -1):
        c = a[d] * inv % p
        if c:
            for k in range(df + 1):
                a[d - df + k] = (a[d - df + k] - c * f[k]) % p
    return _trim(a[:df] if len(a) > df else a)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _ppowmod(a, e, f, p):
    result, base = [1], _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f, p: int) -> bool:
    """Ben-Or test: f has no factor of degree <= deg f / 2."""
    f = _trim([c % p for c in f])
    r = len(f) - 1
    if r < 1:
        return False
    if r == 1:
        return True
    xpow = [0, 1]
    for _ in range(r // 2):
        xpow = _ppowmod(xpow, p, f, p)
        diff = list(xpow) + [0] * max(0, 2 - len(xpow))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, _trim(diff), p)) > 1:
            return False
    return True


def irreducible_polys(p: int, r: int):
    """Monic irreducible polynomials of degree r (constant first, leading 1 included),
    lexicographic in (c_0, ..., c_{r-1})."""
    for low in itertools.product(range(p), repeat=r):
        if r > 1 and low[0] == 0:
            continue  # divisible by x
        f = list(low) + [1]
        if is_irreducible(f, p):
            yield tuple(f)


def is_prime(m: int) -> bool:
    return m >= 2 and factorize(m) == {m: 1}


def prime_power(q: int):
    """``(p, r)`` when q = p^r, else None."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f) != 1:
        return None
    ((p, r),) = f.items()
    return p, r


# -- field context ------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldCtx:
    p: int
    r: int
    modulus: tuple[int, ...]
    generator: FieldElem
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.r

    def __str__(self):
        return f"GF({self.q})"

    @cached_property
    def weights(self) -> np.ndarray:
        return self.p ** np.arange(self.r - 1, -1, -1, dtype=np.int64)

    @cached_property
    def order_primes(self) -> list[int]:
        return sorted(factorize(self.q - 1)) if self.q > 2 else []

    @property
    def one(self) -> FieldElem:
        return int(self.weights[0])

    def coeffs(self, x: FieldElem) -> tuple[int, ...]:
        self._check(x)
        return tuple(int(c) for c in (x // self.weights) % self.p)

    def elem(self, coeffs) -> FieldElem:
        """Element from a coefficient vector (constant first) or an integer of the prime field."""
        if isinstance(coeffs, (int, np.integer)):
            return (int(coeffs) % self.p) * self.one
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.r:
            raise ParameterError(f"{len(coeffs)} coefficients for a degree-{self.r} extension")
        coeffs += [0] * (self.r - len(coeffs))
        return int(np.dot(coeffs, self.weights))

    def format(self, x: FieldElem) -> str:
        """Integer for prime fields, bracketed coefficient tuple otherwise."""
        if self.r == 1:
            self._check(x)
            return str(int(x))
        return "[" + ",".join(str(c) for c in self.coeffs(x)) + "]"

    def _check(self, x):
        if not isinstance(x, (int, np.integer)) or not 0 <= x < self.q:
            raise ParameterError(f"{x!r} is not an element of {self}")

    # arithmetic on element indices; scalars are accepted as numpy arrays too
    def add(self, a, b):
        if self.r == 1:
            return (a + b) % self.p
        w, p = self.weights, self.p
        da = (np.asarray(a)[..., None] // w) % p
        db = (np.asarray(b)[..., None] // w) % p
        out = (((da + db) % p) * w).sum(axis=-1)
        return int(out) if np.ndim(out) == 0 else out

    def neg(self, a):
        return self.scale(-1, a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, c: int, a):
        """Multiply by the prime-field integer ``c``."""
        if self.r == 1:
            return (c * a) % self.p
        w, p = self.weights, self.p
        d = (np.asarray(a)[..., None] // w) % p
        out = (((c * d) % p) * w).sum(axis=-1)
        return int(out) if np.ndim(out) == 0 else out

    def mul(self, a: FieldElem, b: FieldElem) -> FieldElem:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv(self, a: FieldElem) -> FieldElem:
        if a == 0:
            raise ParameterError("0 has no inverse")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def pow(self, a: FieldElem, k: int) -> FieldElem:
        if a == 0:
            if k < 0:
                raise ParameterError("0 has no inverse")
            return self.one if k == 0 else 0
        return int(self.exp[(int(self.log[a]) * k) % (self.q - 1)])


def _build_field(p: int, r: int, modulus=None) -> FieldCtx:
    if r < 1:
        raise ParameterError("extension degree must be >= 1")
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    q = p**r
    if q > MAX_FIELD_SIZE:
        raise ResourceError(f"q={q} exceeds the field-size cap {MAX_FIELD_SIZE}")
    if modulus is None:
        modulus = (0, 1) if r == 1 else next(irreducible_polys(p, r))
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise ParameterError(f"modulus must be monic of degree {r}")
        if not is_irreducible(list(modulus), p):
            raise ParameterError(f"modulus {modulus} is reducible over GF({p})")
    primes = sorted(factorize(q - 1)) if q > 2 else []
    weights = [p ** (r - 1 - k) for k in range(r)]
    generator = None
    for idx in range(1, q):
        poly = _trim([(idx // w) % p for w in weights])
        if all(_ppowmod(poly, (q - 1) // ell, list(modulus), p) != [1] for ell in primes):
            generator = idx
            gen_coeffs = [(idx // w) % p for w in weights]
            break
    if generator is None:
        raise InternalError(f"no primitive element found in GF({q})")
    exp = _kernels.exp_table(np.array(gen_coeffs, dtype=np.int64), np.array(modulus, dtype=np.int64), p, q)
    log = np.full(q, -1, dtype=np.int64)
    log[exp] = np.arange(q - 1, dtype=np.int64)
    if (log[1:] < 0).any():
        raise InternalError(f"generator {generator} of GF({q}) does not reach every element")
    exp.setflags(write=False)
    log.setflags(write=False)
    return FieldCtx(p, r, tuple(modulus), generator, exp, log)


@lru_cache(maxsize=64)
def _cached_field(p, r, modulus):
    return _build_field(p, r, modulus)


def field_new(p: int, r: int = 1, modulus=None) -> FieldCtx:
    """GF(p^r) with the lexicographically smallest monic irreducible modulus
    unless one is given; the fixed generator is the first primitive element
    in index order."""
    return _cached_field(int(p), int(r), None if modulus is None else tuple(modulus))


def field_of_order(q: int, modulus=None) -> FieldCtx:
    pr = prime_power(q)
    if pr is None:
        raise ParameterError(f"{q} is not a prime power")
    return field_new(pr[0], pr[1], modulus)


# -- queries ----------------------------------------------------------------------------

def is_primitive(F: FieldCtx, x: FieldElem) -> bool:
    F._check(x)
    if x == 0:
        raise ParameterError("0 is not in the multiplicative group")
    return all(F.pow(x, (F.q - 1) // ell) != F.one for ell in F.order_primes)


def primitive_mask(F: FieldCtx, elems) -> np.ndarray:
    """Vectorised primitivity over nonzero element indices."""
    return np.gcd(F.log[np.asarray(elems)], F.q - 1) == 1


def dlog(F: FieldCtx, base: FieldElem, x: FieldElem) -> int:
    F._check(x)
    if x == 0:
        raise ParameterError("log of 0 is undefined")
    if base == 0 or not is_primitive(F, base):
        raise ParameterError(f"base {base} is not primitive in {F}")
    qm1 = F.q - 1
    if qm1 == 1:
        return 0
    return int(F.log[x]) * pow(int(F.log[base]), -1, qm1) % qm1


def is_qr(F: FieldCtx, x: FieldElem) -> bool:
    if F.p == 2:
        raise ParameterError("quadratic residuosity needs odd q")
    F._check(x)
    if x == 0:
        raise ParameterError("0 is neither a residue nor a non-residue")
    return int(F.log[x]) % 2 == 0


def eval_poly(F: FieldCtx, coeffs, x: FieldElem) -> FieldElem:
    """Horner evaluation of an integer polynomial (constant term first)."""
    F._check(x)
    acc = 0
    for c in reversed(list(coeffs)):
        acc = F.add(F.mul(acc, x), F.elem(int(c)))
    return int(acc)


def prime_powers(lo: int, hi: int):
    return [q for q in range(max(lo, 2), hi + 1) if prime_power(q) is not None]
