from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kcompact.fan import (
    Fan,
    FanError,
    NonGenericError,
    PLFunction,
    chamber_fan,
    check_ample,
    facet_orthogonal_to_root,
    git_invariants,
    moment_order,
    positive_chamber_fan,
    star_property_violations,
    validate_positive_subdivision,
    wall_character,
)
from kcompact.weyl import RootSystem

QUADRANT = Fan([[1, 0], [1, 1], [0, 1]], [[0, 1], [1, 2]])
SQUARE = Fan([[1, 0], [0, 1], [-1, 0], [0, -1]], [[0, 1], [1, 2], [2, 3], [0, 3]])
P1 = Fan([[1], [-1]], [[0], [1]])


def blown_up_square(positions):
    """Smooth complete 2d fan: the square fan with repeated star subdivisions."""
    rays = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    for p in positions:
        i = p % len(rays)
        a, b = rays[i], rays[(i + 1) % len(rays)]
        rays.insert(i + 1, (a[0] + b[0], a[1] + b[1]))
    n = len(rays)
    return Fan(rays, [[i, (i + 1) % n] for i in range(n)])


def ample_oracle(F, values):
    # 2d: strict concavity at every ray, using rho_prev + rho_next = a * rho
    n = len(F.rays)
    for i in range(n):
        p, r, q = F.rays[i - 1], F.rays[i], F.rays[(i + 1) % n]
        s = (p[0] + q[0], p[1] + q[1])
        a = s[0] // r[0] if r[0] else s[1] // r[1]
        assert (a * r[0], a * r[1]) == s
        if not a * values[i] - values[i - 1] - values[(i + 1) % n] > 0:
            return False
    return True


def test_quadrant_walls():
    assert wall_character(QUADRANT, 0, 1) == (1, -1)
    assert wall_character(QUADRANT, 1, 0) == (-1, 1)
    with pytest.raises(FanError):
        wall_character(SQUARE, 0, 2)


def test_improper_intersection_detected():
    F = Fan([[1, 0], [1, 1], [0, 1]], [[0, 2], [1, 2]], validate=False)
    rep = F.validate()
    assert not rep.ok and rep.failures[0]["check"] == "improper_intersection"


def test_structural_errors():
    with pytest.raises(FanError):
        Fan([[2, 0], [0, 1]], [[0, 1]])
    with pytest.raises(FanError):
        Fan([[1, 0], [0, 1]], [[0, 5]])
    with pytest.raises(FanError):
        Fan([[1, 0], [0, 1]], [[0]])


@pytest.mark.parametrize("name,count", [("A1", 2), ("A2", 6), ("A1xA1", 4), ("B2", 8)])
def test_chamber_fans(name, count):
    F, _ = chamber_fan(RootSystem.from_type(name))
    assert len(F.maximal_cones) == count and F.validate().ok


def test_positive_subdivision():
    rs = RootSystem.from_type("A1xA1")
    assert validate_positive_subdivision(rs, QUADRANT).ok
    assert validate_positive_subdivision(rs, positive_chamber_fan(rs)).ok
    bad = Fan([[1, 0], [1, 2], [0, 1]], [[0, 1], [1, 2]])
    rep = validate_positive_subdivision(rs, bad)
    assert {"check": "not_unimodular", "cone": [0, 1], "determinant": 2} in rep.failures
    half = Fan([[1, 0], [1, 1]], [[0, 1]])
    assert any(f["check"] == "support_boundary" for f in validate_positive_subdivision(rs, half).failures)


def test_facets_in_walls():
    assert facet_orthogonal_to_root(QUADRANT, 0, 1)
    assert not facet_orthogonal_to_root(QUADRANT, 0, 0)


def test_ampleness_examples():
    assert check_ample(QUADRANT, PLFunction(QUADRANT, [0, 1, 0])).ok
    assert not check_ample(QUADRANT, PLFunction(QUADRANT, [0, 0, 0])).ok
    assert not check_ample(QUADRANT, PLFunction(QUADRANT, [0, -1, 0])).ok
    assert PLFunction(QUADRANT, [0, 1, 0]).forms == ((0, 1), (1, 0))


@given(st.lists(st.integers(0, 20), max_size=4), st.data())
def test_ampleness_matches_concavity_oracle(positions, data):
    F = blown_up_square(positions)
    assert F.validate().ok and F.is_smooth()
    values = data.draw(st.lists(st.integers(-3, 3), min_size=len(F.rays), max_size=len(F.rays)))
    assert check_ample(F, PLFunction(F, values)).ok == ample_oracle(F, values)


@given(st.lists(st.integers(0, 20), max_size=4))
def test_walls_separate_adjacent_cones(positions):
    F = blown_up_square(positions)
    for a, b in F.adjacent_pairs():
        chi = wall_character(F, a, b)
        shared = set(F.maximal_cones[a]) & set(F.maximal_cones[b])
        assert all(sum(x * y for x, y in zip(chi, F.rays[j])) == 0 for j in shared)
        (pa,) = set(F.maximal_cones[a]) - shared
        (pb,) = set(F.maximal_cones[b]) - shared
        assert sum(x * y for x, y in zip(chi, F.rays[pa])) > 0 > sum(x * y for x, y in zip(chi, F.rays[pb]))


def test_quadrant_moment_order():
    cells = moment_order(QUADRANT, PLFunction(QUADRANT, [0, 1, 0]), (1, 2))
    assert [(c.cone, c.mu, c.tau, c.dim) for c in cells] == [((1, 2), Fraction(1), (), 2), ((0, 1), Fraction(2), (0,), 1)]
    assert star_property_violations(cells) == []


def test_moment_order_errors():
    psi = PLFunction(QUADRANT, [0, 1, 0])
    with pytest.raises(NonGenericError):
        moment_order(QUADRANT, psi, (1, 1))
    with pytest.raises(FanError):
        moment_order(QUADRANT, psi, (-1, 2))
    with pytest.raises(FanError):
        moment_order(QUADRANT, PLFunction(QUADRANT, [0, 0, 0]), (1, 2))


@given(st.lists(st.integers(0, 20), max_size=3), st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_star_property_for_complete_fans(positions, v):
    F = blown_up_square(positions)
    # -sum of Pic-type concave values: psi = -1 on every ray is ample for these fans
    psi = PLFunction(F, [-1] * len(F.rays))
    if not check_ample(F, psi).ok:
        return
    try:
        cells = moment_order(F, psi, v)
    except FanError:
        return
    assert star_property_violations(cells) == []
    assert [c.dim for c in cells].count(2) == 1


def test_git_invariants():
    q = git_invariants(QUADRANT)
    assert q["pic_rank"] == 1
    g = [row[0] for row in q["gale_duals"]]
    assert g in ([1, -1, 1], [-1, 1, -1])
    assert git_invariants(P1)["pic_rank"] == 1
    assert git_invariants(SQUARE)["pic_rank"] == 2
    with pytest.raises(FanError):
        git_invariants(Fan([[1, 0], [1, 2]], [[0, 1]]))
