import numpy as np
import pytest

from burstlattice.constructions import (C_220, R_ALPHA, boxplus, check_condition, condition_mask,
                                        construct_cyclic_2_10, construct_noncyclic_2_10, construct_ralpha,
                                        construct_salpha, family_polys, find_primitive, poly_str)
from burstlattice.errorball import BallSpec
from burstlattice.errors import ParameterError, PreconditionError, UnsupportedParameterError
from burstlattice.gf import field_new, field_of_order, irreducible_polys, is_qr, prime_power, prime_powers
from burstlattice.groups import is_perfect_splitting

from oracles import brute_ball, brute_is_splitting, cyclic_syndrome


def test_boxplus():
    assert boxplus((1, 2), (0, 3), 10) == (1, 2, 4, 5)
    assert boxplus((7,), (0,)) == (7,)
    # 9 + 4 wraps to 3 mod 10
    assert boxplus((3, 9), (0, 2, 4), 10) == (3, 9, 5, 1, 7, 3)
    with pytest.raises(ParameterError):
        boxplus((), (0,))


@pytest.mark.parametrize("n,expected", [(2, (1, 2)), (5, (3, 9, 5, 1, 7)), (6, (1, 3, 7, 11, 9, 5))])
def test_noncyclic_examples(n, expected):
    s = construct_noncyclic_2_10(n)
    assert tuple(s.values()) == expected and s.group.order == 2 * n


@pytest.mark.parametrize("n,expected", [(4, (1, 3, 2, 6)), (7, (4, 5, 8, 10, 2, 14, 7)),
                                        (10, (1, 19, 5, 10, 13, 14, 11, 18, 12, 16))])
def test_cyclic_examples(n, expected):
    s = construct_cyclic_2_10(n)
    assert tuple(s.values()) == expected and s.group.order == 2 * n + 1


@pytest.mark.parametrize("n", [0, 1, 2, 3, 5, 6, 8, 9, 11, 12])
def test_cyclic_refuses_other_residues(n):
    with pytest.raises(UnsupportedParameterError):
        construct_cyclic_2_10(n)


def test_noncyclic_refuses_small():
    with pytest.raises(ParameterError):
        construct_noncyclic_2_10(1)


@pytest.mark.parametrize("n", range(2, 9))
def test_direct_constructions_brute_force(n):
    s = construct_noncyclic_2_10(n)
    assert brute_is_splitting(brute_ball(n, 2, 1, 0, False), cyclic_syndrome(s.values(), 2 * n))
    if n >= 4 and n % 6 in (1, 4):
        s = construct_cyclic_2_10(n)
        assert brute_is_splitting(brute_ball(n, 2, 1, 0, True), cyclic_syndrome(s.values(), 2 * n + 1))


def test_family_polys_examples():
    assert [poly_str(f) for f in family_polys((2, 1, 0))] == ["1", "1+x^2"]
    assert [poly_str(f) for f in family_polys((2, 1, 1))] == ["1", "1+x^6", "1-x^6", "-1", "-1+x^6", "-1-x^6"]
    assert [poly_str(f) for f in family_polys((3, 1, 0))] == ["1", "1+x^4", "1+x^8", "1+x^4+x^8"]
    assert [poly_str(f) for f in C_220.polys] == ["1+x^6", "1+2x^6", "2", "2+x^6", "2+2x^6"]
    assert len(R_ALPHA.polys) == 12
    assert len(family_polys((3, 1, 1))) == 18
    with pytest.raises(ParameterError):
        family_polys("nope")


def test_condition_examples():
    F = field_new(7)
    rep = check_condition(F, 3, (2, 1, 0))
    assert rep.satisfied and rep.logs == (0, 1)
    assert find_primitive(F, (2, 1, 0))[0] == 3
    assert find_primitive(field_new(19), (2, 1, 1)) is None
    assert find_primitive(field_new(19), C_220) is not None
    with pytest.raises(ParameterError):
        check_condition(F, 2, (2, 1, 0))


def test_vanishing_polynomial_fails_condition():
    # 1 - x^6 vanishes at every alpha of GF(7)
    F = field_new(7)
    from burstlattice.constructions import Family
    fam = Family("vanish", ((1,), (1, 0, 0, 0, 0, 0, -1)), 2, (0, 1), burst=(2, 1, 0))
    rep = check_condition(F, 3, fam)
    assert rep.logs[1] is None and not rep.satisfied


def test_salpha_examples():
    F = field_new(7)
    s = construct_salpha(F, 2, 1, 0, 3)
    assert s.values() == [1, 2, 4]
    F13 = field_new(13)
    a, _ = find_primitive(F13, (2, 1, 0))
    s = construct_salpha(F13, 2, 1, 0, a)
    assert len(s) == 6 and is_perfect_splitting(BallSpec(6, 2, 1, 0, True), s)
    with pytest.raises(UnsupportedParameterError):
        construct_salpha(field_new(11), 2, 1, 1, 2)


def test_salpha_precondition_carries_report():
    F = field_new(11)
    bad = [a for a in range(1, 11) if check_condition_safe(F, a) is False]
    assert bad
    with pytest.raises(PreconditionError) as exc:
        construct_salpha(F, 2, 1, 0, bad[0])
    assert exc.value.report is not None and not exc.value.report.satisfied


def check_condition_safe(F, a):
    try:
        return check_condition(F, a, (2, 1, 0)).satisfied
    except ParameterError:
        return None


def test_ralpha():
    with pytest.raises(UnsupportedParameterError):
        construct_ralpha(field_new(13), 2)
    with pytest.raises(UnsupportedParameterError):
        construct_ralpha(field_new(41), 6)
    assert find_primitive(field_new(37), R_ALPHA) is None
    assert find_primitive(field_new(157), R_ALPHA) is None
    a, _ = find_primitive(field_new(541), R_ALPHA)
    s = construct_ralpha(field_new(541), a)
    assert len(s) == 90


@pytest.mark.parametrize("q", [q for q in prime_powers(7, 400) if q % 2])
def test_thm43_condition_is_quadratic_non_residue(q):
    F = field_of_order(q)
    for a in range(1, q):
        if not np.gcd(F.log[a], q - 1) == 1:
            continue
        rep = check_condition(F, a, (2, 1, 0))
        assert rep.satisfied == (not is_qr(F, F.add(F.one, F.mul(a, a))))


@pytest.mark.parametrize("q", [25, 49, 121, 169, 289, 343, 361, 529, 625, 729, 841, 961])
def test_verdict_independent_of_modulus(q):
    p, r = prime_power(q)
    polys = list(irreducible_polys(p, r))
    for fam, cls, mod in [((2, 1, 1), 7, 12), ("R_alpha", 13, 24), ((3, 1, 0), 1, 4), ((3, 1, 1), 19, 36),
                          ("C_220", 1, 6), ((2, 1, 0), 1, 2)]:
        if q % mod != cls:
            continue
        verdicts = {find_primitive(field_new(p, r, m), fam) is not None for m in (polys[0], polys[-1])}
        assert len(verdicts) == 1, (q, fam)


@pytest.mark.parametrize("q", [25, 27, 49, 81, 121, 125])
def test_condition_mask_matches_direct_check(q):
    F = field_of_order(q)
    for fam in [(2, 1, 0), (2, 1, 1), (3, 1, 0), "C_220"]:
        try:
            mask = condition_mask(F, fam)
        except UnsupportedParameterError:
            continue
        from burstlattice.constructions import resolve_family
        try:
            resolve_family(fam).check_admissible(q)
        except UnsupportedParameterError:
            continue
        for a in range(1, q):
            if np.gcd(F.log[a], q - 1) == 1:
                assert mask[a - 1] == check_condition(F, a, fam).satisfied
            else:
                assert not mask[a - 1]
