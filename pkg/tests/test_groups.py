import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from burstlattice.errorball import BallSpec, enumerate_ball
from burstlattice.errors import ParameterError, ParseError
from burstlattice.groups import (SplittingSequence, cyclic, direct_sum, dot, element_orders,
                                 enumerate_abelian_groups, first_collision, g_add, g_neg, g_scalar,
                                 is_perfect_splitting, is_splitting, parse_group, partitions)

from oracles import brute_ball, brute_is_splitting, cyclic_syndrome, product_syndrome


def seq(G, vals):
    return SplittingSequence.from_values(G, vals)


def test_arithmetic_examples():
    assert g_add(cyclic(7), 3, 5) == 1
    assert g_scalar(cyclic(6), -1, 2) == 4
    G = direct_sum(3, 3)
    assert G.coords(g_add(G, G.element((1, 2)), G.element((2, 2)))) == (0, 1)
    assert g_neg(cyclic(5), 0) == 0
    with pytest.raises(ParameterError):
        g_add(cyclic(7), 3, 9)


def test_dot_examples():
    assert dot(cyclic(7), (1, 1, 0), seq(cyclic(7), (1, 2, 4))) == 3
    assert dot(cyclic(9), (0, 1, 0, 1), seq(cyclic(9), (1, 3, 2, 6))) == 0
    assert dot(cyclic(9), (0, 0, 0, 0), seq(cyclic(9), (1, 3, 2, 6))) == 0
    with pytest.raises(ParameterError):
        dot(cyclic(7), (1, 1), seq(cyclic(7), (1, 2, 4)))


def test_splitting_examples():
    sp = BallSpec(3, 2, 1, 0, True)
    assert is_splitting(sp, seq(cyclic(7), (1, 2, 4)))
    assert is_splitting(BallSpec(4, 2, 1, 0, True), seq(cyclic(9), (1, 3, 2, 6)))
    assert not is_splitting(sp, seq(cyclic(7), (1, 1, 1)))
    assert is_perfect_splitting(sp, seq(cyclic(7), (1, 2, 4)))
    assert is_perfect_splitting(BallSpec(2, 2, 1, 0, False), seq(cyclic(4), (1, 2)))
    assert not is_perfect_splitting(sp, seq(cyclic(8), (1, 2, 4)))
    with pytest.raises(ParameterError):
        is_splitting(sp, seq(cyclic(7), (1, 2)))


def test_first_collision_names_ball_rows():
    sp = BallSpec(3, 2, 1, 0, True)
    i, j = first_collision(sp, seq(cyclic(7), (1, 1, 1)))
    rows = enumerate_ball(sp)
    assert i < j
    assert sum(rows[i]) % 7 == sum(rows[j]) % 7


def test_enumerate_abelian_groups_examples():
    assert [str(G) for G in enumerate_abelian_groups(31)] == ["Z31"]
    assert [str(G) for G in enumerate_abelian_groups(49)] == ["Z49", "Z7xZ7"]
    assert [str(G) for G in enumerate_abelian_groups(12)] == ["Z4xZ3", "Z2xZ2xZ3"]
    assert [str(G) for G in enumerate_abelian_groups(27)] == ["Z27", "Z3xZ9", "Z3xZ3xZ3"]


@given(st.integers(2, 3000))
def test_group_count_is_product_of_partition_counts(m):
    from burstlattice.groups import factorize
    expected = math.prod(sum(1 for _ in partitions(a)) for a in factorize(m).values())
    groups = enumerate_abelian_groups(m)
    assert len(groups) == expected
    assert all(G.order == m for G in groups)
    assert len(set(groups)) == len(groups)


def test_parse_group():
    assert parse_group("Z15") == cyclic(15)
    assert parse_group("Z3xZ5").moduli == (3, 5)
    G = parse_group("GF(81)")
    assert G.order == 81 and G.moduli == (3, 3, 3, 3)
    for bad in ["Q7", "Z", "GF(x)", "Z3yZ5"]:
        with pytest.raises(ParseError):
            parse_group(bad)
    with pytest.raises(ParameterError):
        parse_group("GF(12)")


def test_element_orders():
    assert element_orders(cyclic(12)).tolist() == [12 // math.gcd(k, 12) for k in range(12)]
    G = direct_sum(2, 4)
    assert element_orders(G).tolist() == [1, 4, 2, 4, 2, 4, 2, 4]


@given(st.integers(3, 13), st.integers(1, 3), st.data())
def test_is_splitting_matches_brute_force(m, n, data):
    b = data.draw(st.integers(1, n))
    kp, km = data.draw(st.sampled_from([(1, 0), (1, 1), (2, 0), (0, 1)]))
    cyc = data.draw(st.booleans())
    vals = data.draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    sp = BallSpec(n, b, kp, km, cyc)
    ball = brute_ball(n, b, kp, km, cyc)
    assert is_splitting(sp, seq(cyclic(m), vals)) == brute_is_splitting(ball, cyclic_syndrome(vals, m))


@given(st.sampled_from([(2, 2), (3, 3), (2, 4), (3, 5)]), st.integers(2, 3), st.data())
def test_is_splitting_products_match_brute_force(moduli, n, data):
    G = direct_sum(*moduli)
    vals = [tuple(data.draw(st.integers(0, m - 1)) for m in moduli) for _ in range(n)]
    sp = BallSpec(n, 2, 1, 0, data.draw(st.booleans()))
    ball = brute_ball(n, 2, 1, 0, sp.cyclic)
    assert is_splitting(sp, seq(G, vals)) == brute_is_splitting(ball, product_syndrome(vals, moduli))


def _units(m):
    return [u for u in range(1, m) if math.gcd(u, m) == 1]


@given(st.integers(5, 60), st.integers(2, 5), st.data())
def test_splitting_invariant_under_automorphisms(m, n, data):
    vals = data.draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    u = data.draw(st.sampled_from(_units(m)))
    sp = BallSpec(n, 2, 1, data.draw(st.integers(0, 1)), data.draw(st.booleans()))
    a = is_splitting(sp, seq(cyclic(m), vals))
    assert a == is_splitting(sp, seq(cyclic(m), [u * v % m for v in vals]))


@given(st.integers(5, 60), st.integers(2, 6), st.integers(0, 10), st.data())
def test_cyclic_splitting_invariant_under_rotation(m, n, k, data):
    vals = data.draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    sp = BallSpec(n, 2, 1, data.draw(st.integers(0, 1)), True)
    s = seq(cyclic(m), vals)
    assert is_splitting(sp, s) == is_splitting(sp, s.rotate(k))


def test_perfect_splitting_is_bijection():
    sp = BallSpec(4, 2, 1, 1, True)
    s = seq(cyclic(25), (1, 5, 2, 10))
    syn = enumerate_ball(sp) @ np.array(s.elems) % 25
    assert sorted(syn.tolist()) == list(range(25))
