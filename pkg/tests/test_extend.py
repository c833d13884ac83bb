from collections import Counter

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from enclosure.decomp import DecompositionProfile, profile, validate
from enclosure.errors import InfeasibleError
from enclosure.extend import (addibility_network, check_addible, check_star, check_strong_2, extend, extend_1,
                              extend_2_strong, extend_2_weak, solve_addible, spare_graph, star_lhs,
                              strong_2_sets)
from enclosure.graphcore import complete_multigraph
from enclosure.oracle import random_instance

from _support import brute_addible, decomposition, k3_singles


def singles_profile(n, counts):
    return DecompositionProfile(n, s=Counter({1: sum(counts.values())}), s1_pair=dict(counts))


def assert_valid_phi(s1_edges, phi, lam, mu):
    assert len(phi) == len(s1_edges)
    used = Counter(phi)
    assert all(c <= mu - lam for c in used.values())
    for (u, v), t in zip(s1_edges, phi):
        assert t != (min(u, v), max(u, v))


# condition (*)

def test_star_examples():
    p = profile(k3_singles())
    assert star_lhs(p, 2) == 3 and check_star(p, 2, 1, 2, 3)
    assert check_star(p, 0, 1, 2, 3)
    empties = DecompositionProfile(3, s=Counter({0: 2}))
    assert star_lhs(empties, 2) == 4 and not check_star(empties, 2, 1, 2, 3)


# extend_1

def test_extend_1_fills_empty_class():
    d = decomposition(3, [(0, 1)], [(1, 2)], [(0, 2)], [])
    out = extend_1(d, 2)
    assert out.sizes() == [1, 1, 1, 1]
    assert out.base.is_subgraph_of(complete_multigraph(3, 2))


def test_extend_1_identity_without_empties():
    d = k3_singles()
    assert extend_1(d, 2) == d


def test_extend_1_too_many_empties():
    d = decomposition(3, [(0, 1)], [(1, 2)], [(0, 2)], [], [], [], [])
    with pytest.raises(InfeasibleError):
        extend_1(d, 2)


# weak 2-extension

def test_extend_2_weak_allows_two_cycles():
    out = extend_2_weak(k3_singles(), 3)
    assert out.sizes() == [2, 2, 2]
    assert validate(out)
    assert out.base.is_subgraph_of(complete_multigraph(3, 3))


def test_extend_2_weak_identity():
    d = decomposition(3, [(0, 1), (1, 2)], [(0, 2)])
    d2 = extend_2_weak(d, 2)
    assert d2.sizes() == [2, 2]
    full = decomposition(3, [(0, 1), (1, 2)], [(0, 2), (0, 1)], [(1, 2), (0, 2)])
    assert extend_2_weak(full, 3) == full


def test_extend_2_weak_infeasible():
    d = decomposition(3, [(0, 1)], [(1, 2)], [(0, 2)], [])
    with pytest.raises(InfeasibleError):
        extend_2_weak(d, 2)


# addibility

def test_check_addible_examples():
    assert check_addible(profile(k3_singles()), 1, 2, 3)
    assert not check_addible(singles_profile(3, {(0, 1): 3}), 3, 4, 3)
    assert check_addible(DecompositionProfile(3), 1, 2, 3)


def test_solve_addible_k3():
    edges = [(0, 1), (1, 2), (0, 2)]
    phi = solve_addible(edges, 1, 2, 3)
    assert_valid_phi(edges, phi, 1, 2)
    assert sorted(phi) == sorted(edges)


def test_solve_addible_empty():
    assert solve_addible([], 1, 2, 3) == []


@pytest.mark.parametrize("lam, mu", [(1, 3), (2, 3)])
def test_solve_addible_parallel_singles(lam, mu):
    phi = solve_addible([(0, 1), (0, 1)], lam, mu, 3)
    assert_valid_phi([(0, 1), (0, 1)], phi, lam, mu)
    assert (0, 1) not in phi


def test_solve_addible_reports_a2():
    with pytest.raises(InfeasibleError, match="A2"):
        solve_addible([(0, 1)] * 3, 3, 4, 3)


def test_network_shape():
    net = addibility_network({(0, 1): 2}, 1, 3, 3)
    assert net.cap.shape == (8, 8)
    assert net.cap[net.source, net.x(0)] == 2
    assert net.cap[net.x(0), net.y(0)] == 0
    assert net.cap[net.x(0), net.y(1)] == 2
    assert (net.cap[[net.y(p) for p in range(3)], net.sink] == 2).all()


pair_distributions = st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(1, 2),
    st.lists(st.sampled_from([(u, v) for u in range(n) for v in range(u + 1, n)]), max_size=7)))


@settings(max_examples=200, deadline=None)
@given(pair_distributions)
def test_addible_three_ways_agree(data):
    n, gap, edges = data
    lam, mu = 1, 1 + gap
    counts = dict(Counter(edges))
    claim = check_addible(singles_profile(n, counts), lam, mu, n)
    assert claim == brute_addible(counts, n, gap)
    if claim:
        assert_valid_phi(edges, solve_addible(edges, lam, mu, n), lam, mu)
    else:
        with pytest.raises(InfeasibleError):
            solve_addible(edges, lam, mu, n)


@settings(max_examples=200, deadline=None)
@given(pair_distributions, st.integers(0, 4))
def test_strong_conditions_imply_addible(data, empties):
    n, gap, edges = data
    p = singles_profile(n, dict(Counter(edges)))
    p.s[0] = empties
    b1, b2 = check_strong_2(p, 1, 1 + gap, n)
    if b1 and b2:
        assert check_addible(p, 1, 1 + gap, n)


# strong 2-extension

def test_extend_2_strong_k3():
    out = extend_2_strong(k3_singles(), 2)
    assert out.sizes() == [2, 2, 2]
    assert validate(out, strong=True)
    assert out.base == complete_multigraph(3, 2)


def test_extend_2_strong_identity():
    d = decomposition(4, [(0, 1), (1, 2)], [(2, 3), (0, 3)], [(0, 2), (1, 3)])
    assert extend_2_strong(d, 2) == d


def test_b2_profile_example():
    p = DecompositionProfile(3, s=Counter({0: 1, 1: 2}), s1_pair={(0, 1): 2})
    assert check_strong_2(p, 1, 2, 3) == (False, False)
    assert not check_strong_2(p, 1, 2, 3)[1]


def test_extend_2_strong_b2_fails():
    # 3K_3 with three singles on one pair: B1 holds, B2 does not
    d = decomposition(3, [(0, 1)], [(0, 1)], [(0, 1)], *[[(0, 2), (1, 2)]] * 3)
    assert d.lam == 3
    assert check_strong_2(profile(d), 3, 4, 3) == (True, False)
    with pytest.raises(InfeasibleError, match="B2"):
        extend_2_strong(d, 4)


def test_strong_sets_use_distinct_spares():
    d = decomposition(4, [(0, 1), (1, 2), (2, 3)], [(0, 2), (0, 3)], [(1, 3)], [], [])
    sets = strong_2_sets(d, 2)
    spare = Counter(sum((list(p) for p in sets.e0), []) + sets.e1)
    assert all(c <= 1 for c in spare.values())
    assert len(sets.e0) == 2 and len(sets.e1) == 1
    assert all(p != q for p, q in sets.e0)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 5), st.integers(1, 2), st.integers(1, 2), st.data())
def test_extend_2_strong_property(seed, n, lam, gap, data):
    edges = lam * n * (n - 1) // 2
    k = data.draw(st.integers(-(-edges // (n - 1)), edges + 3))
    d = random_instance(seed, n, lam, k, strong=True)
    mu = lam + gap
    p = profile(d)
    b1, b2 = check_strong_2(p, lam, mu, n)
    assume(b1 and b2)
    out = extend_2_strong(d, mu)
    assert validate(out, strong=True)
    assert all(s >= 2 for s in out.sizes())
    assert all(c.is_subgraph_of(o) for c, o in zip(d.classes, out.classes))
    assert out.base.is_subgraph_of(complete_multigraph(n, mu))


def test_extend_dispatch():
    d = k3_singles()
    assert extend(d, 2, 0, True) == d
    assert extend(d, 2, -3, False) == d
    assert extend(d, 2, 2, True).sizes() == [2, 2, 2]
    with pytest.raises(ValueError):
        extend(d, 2, 3, True)


def test_spare_graph():
    g = spare_graph(k3_singles(), 3)
    assert g == complete_multigraph(3, 2)
    assert np.array_equal(g.degrees(), [4, 4, 4])
