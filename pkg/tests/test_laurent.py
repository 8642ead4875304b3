import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import laurents
from kcompact.laurent import (
    Laurent,
    Tensor,
    divide_exact,
    divides_binomial,
    tensor_act_right,
    tensor_divisible_by_u_binomial,
)

X = sympy.symbols("x0:2")


def to_sympy(f: Laurent):
    return sympy.Add(*[c * sympy.Mul(*[X[i] ** e[i] for i in range(f.nvars)]) for e, c in f.items()])


def test_zero_coefficients_are_dropped():
    f = Laurent(2, {(1, 0): 2, (0, 1): 0}) + Laurent(2, {(1, 0): -2})
    assert f.is_zero() and len(f) == 0


def test_exponent_length_is_checked():
    with pytest.raises(ValueError):
        Laurent(2, {(1,): 1})


def test_binomial_and_augmentation():
    b = Laurent.binomial((1, -1))
    assert b == Laurent.one(2) - Laurent.monomial((1, -1))
    assert b.augment() == 0


@given(laurents(), laurents())
def test_product_matches_sympy(f, g):
    assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0


@given(laurents(), laurents(), laurents())
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == Laurent.zero(2)


@given(laurents(), laurents())
def test_divide_exact_recovers_factor(f, g):
    if g.is_zero():
        return
    assert divide_exact(f * g, g) == f


def test_non_divisible():
    f = Laurent(1, {(0,): 1, (2,): 1})
    assert divide_exact(f, Laurent.binomial((1,))) is None
    with pytest.raises(ZeroDivisionError):
        divide_exact(f, Laurent.zero(1))


@given(laurents(), st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_binomial_divisibility_criterion(f, mu):
    if not any(mu):
        return
    b = Laurent.binomial(mu)
    assert divides_binomial(f * b, mu)
    assert divides_binomial(f, mu) == (divide_exact(f, b) is not None)


@given(laurents(1), laurents(1))
def test_tensor_split_round_trip(u, v):
    t = Tensor.pure(u, v)
    assert Tensor.from_split(t.split(), 1) == t
    assert t.augment_v() == u.scale(v.augment())


def test_tensor_right_action_and_u_divisibility():
    t = Tensor.pure(Laurent.binomial((1,)), Laurent.monomial((1,)))
    s = ((-1,),)
    assert tensor_act_right(s, t) == Tensor.pure(Laurent.binomial((1,)), Laurent.monomial((-1,)))
    # (1 - e^{-mu}) with mu = -1 is 1 - e^{1}
    assert tensor_divisible_by_u_binomial(t, (-1,))
    assert not tensor_divisible_by_u_binomial(Tensor.right(Laurent.monomial((1,))), (-1,))


def test_json_round_trip():
    f = Laurent(2, {(1, -1): 3, (0, 0): -2})
    assert Laurent.from_json(f.to_json()) == f
