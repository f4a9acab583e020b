"""Explicit splitting constructions.

Two kinds live here: direct sequences over cyclic groups Z_{2n} and
Z_{2n+1} for the (2,1,0) burst balls, and field constructions over the
additive group of GF(q), where a primitive element alpha is chosen so that
the discrete logs of a family of polynomials evaluated at alpha hit every
required residue class.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .errorball import BallSpec, e_param
from .errors import InternalError, ParameterError, PreconditionError, UnsupportedParameterError
from .gf import FieldCtx, FieldElem, eval_poly, is_primitive, primitive_mask
from .groups import SplittingSequence, cyclic, field_additive, is_perfect_splitting

Poly = tuple  # integer coefficients, constant term first


def boxplus(a, b, modulus: Optional[int] = None) -> tuple[int, ...]:
    """Develop ``a`` by ``b``: a + b_1, then a + b_2, ... concatenated."""
    a, b = list(a), list(b)
    if not a or not b:
        raise ParameterError("boxplus needs two non-empty sequences")
    out = [x + y for y in b for x in a]
    if modulus is not None:
        out = [v % modulus for v in out]
    return tuple(out)


def construct_noncyclic_2_10(n: int) -> SplittingSequence:
    """Perfect splitting of Z_{2n} by E(n,2,1,0), for every n >= 2."""
    if n < 2:
        raise ParameterError(f"n={n}: need n >= 2")
    g = 2 * n
    m, odd = divmod(n, 2)
    if odd:
        base = (m + 1, 3 * m + 3) if m % 2 == 0 else (3 * m + 2, m + 2)
        seq = boxplus(base, range(0, 2 * m + 1, 2), g)[:n]
    elif m % 2 == 0:
        seq = boxplus((m + 1, 3 * m + 1), range(0, 2 * m - 1, 2), g)
    elif m == 1:
        seq = (1, 2)
    else:
        s1 = range(1, 2 * m - 2, 2)
        s2 = range(2 * m + 1, 4 * m, 4)
        s3 = range(4 * m - 3, 2 * m - 2, -4)
        seq = tuple(s1) + tuple(s2) + tuple(s3)
    if len(seq) != n:
        raise InternalError(f"noncyclic (2,1,0) construction produced length {len(seq)} for n={n}")
    return SplittingSequence.from_values(cyclic(g), seq)


def construct_cyclic_2_10(n: int) -> SplittingSequence:
    """Perfect splitting of Z_{2n+1} by E°(n,2,1,0), for n >= 4 with n = 1, 4 (mod 6)."""
    if n < 4 or n % 6 not in (1, 4):
        raise UnsupportedParameterError(f"n={n}: construction covers only n >= 4 with n = 1 or 4 (mod 6)")
    g = 2 * n + 1
    m = n // 6
    if n % 6 == 1:
        base = (3 * m + 1, 3 * m + 2, 6 * m + 2, 6 * m + 4, 2, 9 * m + 5)
        seq = boxplus(base, range(0, 3 * m + 1, 3), g)[:n]
    elif m == 0:
        seq = (1, 3, 2, 6)
    else:
        base = (1, 9 * m + 10, 3 * m + 2, 3 * m + 7, 6 * m + 7, 6 * m + 8)
        seq = boxplus(base, range(0, 3 * m, 3), g) + (6 * m + 5, 12 * m + 6, 6 * m + 6, 9 * m + 7)
    if len(seq) != n:
        raise InternalError(f"cyclic (2,1,0) construction produced length {len(seq)} for n={n}")
    return SplittingSequence.from_values(cyclic(g), tuple(v % g for v in seq))


# -- polynomial families -------------------------------------------------------------

def _balanced(k_plus, k_minus):
    """0, 1, -1, 2, -2, ... restricted to [-k_minus, k_plus]."""
    out = [0]
    for t in range(1, max(k_plus, k_minus) + 1):
        if t <= k_plus:
            out.append(t)
        if t <= k_minus:
            out.append(-t)
    return out


def _poly(terms) -> Poly:
    deg = max(d for _, d in terms)
    coeffs = [0] * (deg + 1)
    for c, d in terms:
        coeffs[d] += c
    return tuple(coeffs)


def poly_str(f: Poly) -> str:
    parts = []
    for d, c in enumerate(f):
        if c == 0:
            continue
        mono = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
        mag = abs(c)
        body = str(mag) if d == 0 else (mono if mag == 1 else f"{mag}{mono}")
        parts.append(("-" if c < 0 else "+") + body)
    s = "".join(parts) or "0"
    return s[1:] if s.startswith("+") else s


@dataclass(frozen=True)
class Family:
    """A polynomial family with the residue requirement on its discrete logs.

    ``mode`` is "cover" (residues mod ``h`` must form exactly ``target``) or
    "fixed" (polynomial i must have residue ``target[i]``; None = free).
    """
    name: str
    polys: tuple[Poly, ...]
    h: int
    target: tuple
    mode: str = "cover"
    burst: tuple[int, int, int] = (2, 1, 1)
    params: tuple = field(default=(), compare=True)

    @property
    def e(self) -> int:
        return e_param(*self.burst)

    def __str__(self):
        return self.name

    def check_admissible(self, q: int):
        """Raise UnsupportedParameterError when q is outside the family's class."""
        e = self.e
        b = self.burst[0]
        if (q - 1) % e:
            raise UnsupportedParameterError(f"{self}: e={e} does not divide q-1={q - 1}")
        n = (q - 1) // e
        if self.name == "R_alpha":
            if q % 24 != 13:
                raise UnsupportedParameterError(f"{self}: need q = 13 (mod 24), got q={q}")
            if n < 3:
                raise UnsupportedParameterError(f"{self}: n=(q-1)/6={n} < 3")
            return
        if self.mode == "fixed" and q % 36 != 19:
            raise UnsupportedParameterError(f"{self}: fixed residues need q = 19 (mod 36)")
        if n < 2 * b - 1:
            raise UnsupportedParameterError(f"{self}: n=(q-1)/e={n} < 2b-1={2 * b - 1}")


def family_F(b: int, k_plus: int, k_minus: int) -> Family:
    """Burst polynomials (1, x^e, ..., x^{(b-1)e}) . c with c_0 != 0.

    Ordered with c_0 outermost, then c_{b-1} down to c_1, each running
    through 0, 1, -1, 2, -2, ...
    """
    e = e_param(b, k_plus, k_minus)
    vals = _balanced(k_plus, k_minus)
    polys = []
    for c0 in vals[1:]:
        for tail in itertools.product(vals, repeat=b - 1):
            c = (c0,) + tuple(reversed(tail))
            polys.append(_poly([(ci, i * e) for i, ci in enumerate(c)]))
    return Family(f"F_{b}^{{{k_plus},{k_minus}}}", tuple(polys), e, tuple(range(e)),
                  burst=(b, k_plus, k_minus), params=(b, k_plus, k_minus))


def family_F311_fixed() -> Family:
    """F_3^{1,1} positive half with pinned residues mod 9 (the rest follow from log(-1) = 9 mod 18)."""
    e = 18
    rows = [((1, 0, 0), None), ((1, 1, 0), 1), ((1, -1, 0), 2), ((1, 0, 1), 6), ((1, 0, -1), None),
            ((1, 1, 1), 5), ((1, -1, 1), 7), ((1, 1, -1), 4), ((1, -1, -1), 8)]
    polys = tuple(_poly([(c, i * e) for i, c in enumerate(cv)]) for cv, _ in rows)
    return Family("F_3^{1,1}/fixed", polys, 9, tuple(t for _, t in rows), mode="fixed",
                  burst=(3, 1, 1), params=(3, 1, 1))


def _signed(*polys):
    out = []
    for f in polys:
        out.append(f)
        out.append(tuple(-c for c in f))
    return tuple(out)


R_ALPHA = Family(
    "R_alpha",
    _signed((1,), _poly([(1, 3)]), _poly([(1, 0), (1, 3)]), _poly([(1, 0), (-1, 3)]),
            _poly([(1, 3), (1, 12)]), _poly([(1, 3), (-1, 12)])),
    12, tuple(range(12)), burst=(2, 1, 1))

C_220 = Family(
    "C_220",
    (_poly([(1, 0), (1, 6)]), _poly([(1, 0), (2, 6)]), (2,), _poly([(2, 0), (1, 6)]), _poly([(2, 0), (2, 6)])),
    6, (1, 2, 3, 4, 5), burst=(2, 2, 0))


def family_polys(family) -> list[Poly]:
    return list(resolve_family(family).polys)


def resolve_family(family) -> Family:
    """Accept a Family, a (b, k+, k-) triple, or one of the names R_alpha / C_220 / F311_fixed."""
    if isinstance(family, Family):
        return family
    if isinstance(family, tuple) and len(family) == 3:
        return family_F(*family)
    if isinstance(family, str):
        key = family.lower()
        if key in ("r_alpha", "ralpha"):
            return R_ALPHA
        if key in ("c_220", "c220"):
            return C_220
        if key in ("f311_fixed",):
            return family_F311_fixed()
    raise ParameterError(f"unknown polynomial family {family!r}")


# -- condition checking --------------------------------------------------------------

@dataclass(frozen=True)
class ConditionReport:
    q: int
    alpha: FieldElem
    family: str
    logs: tuple  # per polynomial: discrete log base alpha, or None if it vanishes
    satisfied: bool

    def residues(self, h: int) -> tuple:
        return tuple(None if L is None else L % h for L in self.logs)


def _sparse(family: Family, p: int):
    terms = [[(c % p, d) for d, c in enumerate(f) if c % p] for f in family.polys]
    width = max(1, max(len(t) for t in terms))
    pcoef = np.zeros((len(terms), width), dtype=np.int64)
    pexp = np.zeros((len(terms), width), dtype=np.int64)
    plen = np.zeros(len(terms), dtype=np.int64)
    for i, t in enumerate(terms):
        plen[i] = len(t)
        for k, (c, d) in enumerate(t):
            pcoef[i, k], pexp[i, k] = c, d
    return pcoef, pexp, plen


def _targets(family: Family):
    if family.mode == "fixed":
        res = np.array([-1 if t is None else t for t in family.target], dtype=np.int64)
        return 1, 0, res
    mask = 0
    for t in family.target:
        mask |= 1 << t
    return 0, mask, np.zeros(len(family.polys), dtype=np.int64)


def condition_mask(F: FieldCtx, family, alphas=None, kernel=None) -> np.ndarray:
    """Boolean per candidate (default: every nonzero element in index order)."""
    family = resolve_family(family)
    if alphas is None:
        alphas = np.arange(1, F.q, dtype=np.int64)
    alphas = np.asarray(alphas, dtype=np.int64)
    pcoef, pexp, plen = _sparse(family, F.p)
    mode, mask, res = _targets(family)
    kernel = kernel or _kernels.condition_scan
    return kernel(alphas, primitive_mask(F, alphas), F.log, F.exp, F.p, F.r, pcoef, pexp, plen,
                  family.h, mode, mask, res)


def check_condition(F: FieldCtx, alpha: FieldElem, family) -> ConditionReport:
    family = resolve_family(family)
    family.check_admissible(F.q)
    if alpha == 0 or not is_primitive(F, alpha):
        raise ParameterError(f"alpha={alpha} is not primitive in {F}")
    qm1 = F.q - 1
    la_inv = pow(int(F.log[alpha]), -1, qm1)
    logs = []
    for f in family.polys:
        v = eval_poly(F, f, alpha)
        logs.append(None if v == 0 else int(F.log[v]) * la_inv % qm1)
    if any(L is None for L in logs):
        ok = False
    elif family.mode == "fixed":
        ok = all(t is None or L % family.h == t for L, t in zip(logs, family.target))
    else:
        ok = {L % family.h for L in logs} == set(family.target)
    return ConditionReport(F.q, alpha, family.name, tuple(logs), ok)


def find_primitive(F: FieldCtx, family):
    """First alpha in index order that is primitive and meets the family condition,
    as ``(alpha, report)``; None when no element qualifies."""
    family = resolve_family(family)
    family.check_admissible(F.q)
    hits = np.flatnonzero(condition_mask(F, family))
    if hits.size == 0:
        return None
    alpha = int(hits[0]) + 1
    report = check_condition(F, alpha, family)
    if not report.satisfied:
        raise InternalError(f"condition scan and direct check disagree at alpha={alpha} in {F}")
    return alpha, report


def _alpha_powers(F: FieldCtx, alpha: FieldElem, exponents) -> SplittingSequence:
    G = field_additive(F)
    return SplittingSequence(G, tuple(F.pow(alpha, k) for k in exponents))


def construct_salpha(F: FieldCtx, b: int, k_plus: int, k_minus: int, alpha: FieldElem,
                     verify: bool = True) -> SplittingSequence:
    """s_alpha = (1, alpha^e, ..., alpha^{(n-1)e}) over the additive group of GF(q)."""
    e = e_param(b, k_plus, k_minus)
    if (F.q - 1) % e:
        raise UnsupportedParameterError(f"e={e} does not divide q-1={F.q - 1}")
    n = (F.q - 1) // e
    report = check_condition(F, alpha, (b, k_plus, k_minus))
    if not report.satisfied:
        raise PreconditionError(f"alpha={alpha} fails the condition for {resolve_family((b, k_plus, k_minus))} in {F}",
                                report)
    s = _alpha_powers(F, alpha, [i * e for i in range(n)])
    if verify and not is_perfect_splitting(BallSpec(n, b, k_plus, k_minus, True), s):
        raise InternalError(f"s_alpha for {F}, alpha={alpha} failed verification")
    return s


def construct_ralpha(F: FieldCtx, alpha: FieldElem, verify: bool = True) -> SplittingSequence:
    """r_alpha = (1, alpha^3, alpha^12, alpha^15, ...) for q = 13 (mod 24)."""
    R_ALPHA.check_admissible(F.q)
    m = (F.q - 1) // 12
    report = check_condition(F, alpha, R_ALPHA)
    if not report.satisfied:
        raise PreconditionError(f"alpha={alpha} fails the r_alpha condition in {F}", report)
    s = _alpha_powers(F, alpha, [12 * l + d for l in range(m) for d in (0, 3)])
    if verify and not is_perfect_splitting(BallSpec(2 * m, 2, 1, 1, True), s):
        raise InternalError(f"r_alpha for {F}, alpha={alpha} failed verification")
    return s
