import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kcompact.laurent import Laurent
from kcompact.weyl import (
    RootSystem,
    c_sets,
    is_invariant,
    minimal_coset_reps,
    orbit_sum,
    parabolic_elements,
    subsets,
    weyl_act,
    weyl_group,
)

TYPES = ["A1", "A2", "A1xA1", "B2", "A3", "G2"]
ORDERS = {"A1": 2, "A2": 6, "A1xA1": 4, "B2": 8, "A3": 24, "G2": 12}


def unit(rank, j):
    return tuple(int(k == j) for k in range(rank))


def descents(rs, w):
    # brute force: simple roots sent to negative roots
    return frozenset(j for j in rs.simple_indices if any(x < 0 for x in w.act_root(unit(rs.r, j))))


@pytest.mark.parametrize("name", TYPES)
def test_group_order(name):
    assert len(weyl_group(RootSystem.from_type(name))) == ORDERS[name]


@pytest.mark.parametrize("name", TYPES)
def test_length_is_inversion_count(name):
    rs = RootSystem.from_type(name)
    W = weyl_group(rs)
    for w in W:
        assert w.length == W.inversion_count(w)
        assert W.by_word(w.word) == w


@pytest.mark.parametrize("name", ["A1", "A2", "A1xA1", "B2", "A3"])
def test_c_sets_match_descent_oracle(name):
    rs = RootSystem.from_type(name)
    cs = c_sets(rs)
    for I in subsets(rs):
        assert set(cs[I]) == {w for w in weyl_group(rs) if descents(rs, w) == I}


def test_a2_c_set_sizes():
    rs = RootSystem.from_type("A2")
    cs = c_sets(rs)
    sizes = [len(cs[frozenset(I)]) for I in [(), (0,), (1,), (0, 1)]]
    assert sizes == [1, 2, 2, 1]


def test_a2_minimal_reps():
    rs = RootSystem.from_type("A2")
    words = sorted(w.word_str() for w in minimal_coset_reps(rs, {1}))
    assert words == sorted(["e", "s1", "s2s1"])


@pytest.mark.parametrize("name", ["A2", "B2", "A1xA1"])
def test_coset_factorization(name):
    rs = RootSystem.from_type(name)
    W = weyl_group(rs)
    for I in subsets(rs):
        prods = {u * p for u in minimal_coset_reps(rs, I) for p in parabolic_elements(rs, I)}
        assert len(prods) == len(W)


def test_central_rank_is_inert():
    rs = RootSystem.from_type("A1", central_rank=1)
    assert rs.rank == 2 and len(weyl_group(rs)) == 2
    s = weyl_group(rs)[1]
    assert s.act_weight((1, 5)) == (-1, 5)


def test_rejects_non_finite_cartan():
    with pytest.raises(ValueError):
        RootSystem.from_json({"cartan": [[2, -3], [-3, 2]]})


def test_enumeration_bound():
    with pytest.raises(ValueError):
        weyl_group(RootSystem.from_type("A3"), bound=10)


@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_orbit_sums_are_invariant(lam):
    rs = RootSystem.from_type("B2")
    W = weyl_group(rs)
    f = orbit_sum(rs, lam)
    assert is_invariant(f, W.simple_reflections)
    for w in W:
        assert weyl_act(w, f) == f


@given(st.lists(st.integers(0, 1), max_size=8), st.lists(st.integers(0, 1), max_size=8))
def test_action_is_a_group_action(a, b):
    rs = RootSystem.from_type("A2")
    W = weyl_group(rs)
    u, v = W.by_word(a), W.by_word(b)
    f = Laurent(2, {(1, 0): 1, (-1, 2): 3})
    assert weyl_act(u * v, f) == weyl_act(u, weyl_act(v, f))
    for lam in itertools.product(range(-1, 2), repeat=2):
        assert (u * v).act_weight(lam) == u.act_weight(v.act_weight(lam))
