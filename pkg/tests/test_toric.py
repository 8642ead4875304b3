import pytest
from hypothesis import given
from hypothesis import strategies as st

from kcompact.fan import Fan, FanError, PLFunction, moment_order
from kcompact.laurent import Laurent
from kcompact.toric import (
    GKMClass,
    basis_matrix,
    check_basis_matrix,
    combine_orbit_basis,
    expand_in_orbit_basis,
    line_bundle_class,
    monomial_relation_check,
    orbit_class,
    ray_generator,
    specialize,
    sr_vanishing_check,
    verify_srpres_point,
)
from test_fan import P1, QUADRANT, SQUARE, blown_up_square

PSI = PLFunction(QUADRANT, [0, 1, 0])
CELLS = moment_order(QUADRANT, PSI, (1, 2))


def mono(*e):
    return Laurent.monomial(e)


def test_quadrant_generator():
    x = ray_generator(QUADRANT, 0)
    assert x.values == (mono(1, -1), Laurent.one(2))
    assert x.is_valid()


def test_single_cone_generator():
    F = Fan([[1, 0], [0, 1]], [[0, 1]])
    assert ray_generator(F, 1).values == (mono(0, 1),)


def test_orbit_classes():
    assert orbit_class(QUADRANT, ()) == GKMClass.unit(QUADRANT)
    assert orbit_class(QUADRANT, (0,)).values == (Laurent.binomial((1, -1)), Laurent.zero(2))
    with pytest.raises(FanError):
        orbit_class(QUADRANT, (0, 2))


def test_basis_matrix_quadrant():
    M = basis_matrix(QUADRANT, CELLS)
    assert M == [[Laurent.one(2), Laurent.zero(2)], [Laurent.one(2), Laurent.binomial((1, -1))]]
    assert check_basis_matrix(M).ok


def test_broken_class_fails_walls():
    bad = GKMClass(QUADRANT, [mono(1, 0), Laurent.one(2)])
    rep = bad.wall_report()
    assert not rep.ok and rep.failures[0]["chi"] == [1, -1]


@pytest.mark.parametrize("F", [QUADRANT, SQUARE, P1], ids=["quadrant", "square", "p1"])
def test_stanley_reisner_and_monomial_relations(F):
    assert sr_vanishing_check(F).ok
    assert monomial_relation_check(F).ok


def test_square_non_faces():
    assert sorted(map(tuple, sr_vanishing_check(SQUARE).data["non_faces"])) == [(0, 2), (1, 3)]


@given(st.lists(st.integers(-2, 2), min_size=2, max_size=2), st.lists(st.integers(-2, 2), min_size=2, max_size=2))
def test_orbit_basis_round_trip(r0, r1):
    # random R(T)-combination of the basis, then recovered by forward substitution
    coeffs = [Laurent.monomial(r0) + 1, Laurent.monomial(r1) * 2]
    g = combine_orbit_basis(QUADRANT, CELLS, coeffs)
    assert g.is_valid()
    assert expand_in_orbit_basis(QUADRANT, CELLS, g) == coeffs


@given(st.lists(st.integers(0, 20), max_size=3), st.data())
def test_line_bundles_are_gkm_classes(positions, data):
    F = blown_up_square(positions)
    psi = PLFunction(F, data.draw(st.lists(st.integers(-3, 3), min_size=len(F.rays), max_size=len(F.rays))))
    assert line_bundle_class(F, psi).is_valid()


@given(st.lists(st.integers(0, 20), max_size=3), st.sampled_from([(1, 3), (3, 1), (-2, 5), (7, -3), (-5, -4)]))
def test_srpres_point_rank(positions, v):
    F = blown_up_square(positions)
    psi = PLFunction(F, [-1] * len(F.rays))
    try:
        moment_order(F, psi, v)
    except FanError:
        return
    rep = verify_srpres_point(F, psi, v)
    assert rep.ok and rep.data["rank"] == len(F.maximal_cones)


@pytest.mark.parametrize(
    "F,psi,v",
    [(QUADRANT, [0, 1, 0], (1, 2)), (SQUARE, [-1] * 4, (1, 2)), (P1, [-1, -1], (1,))],
    ids=["quadrant", "square", "p1"],
)
def test_srpres_point(F, psi, v):
    rep = verify_srpres_point(F, PLFunction(F, psi), v)
    assert rep.ok and rep.data["rank"] == len(F.maximal_cones)


def test_specialization_of_unit():
    assert specialize(QUADRANT, CELLS, GKMClass.unit(QUADRANT)) == (1, 0)
