from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ndpm_operators.algebra import GroupAlgebraElement, Permutation, all_permutations, tau

perms3 = st.permutations(list(range(3))).map(lambda xs: Permutation(tuple(xs)))
coeffs = st.fractions(min_value=Fraction(1, 100), max_value=100)
elements = st.lists(st.tuples(perms3, coeffs), max_size=4).map(GroupAlgebraElement)


def test_cycle_notation():
    assert str(Permutation((1, 2, 0))) == "(0 1 2)"
    assert str(tau(3, 2)) == "(0 2)"
    assert str(Permutation.identity(3)) == "()"


def test_compose_applies_right_first():
    a = Permutation((1, 0, 2))
    b = Permutation((0, 2, 1))
    assert (a * b)(1) == a(b(1)) == 2


def test_invalid_permutation():
    with pytest.raises(ValueError):
        Permutation((0, 0))


def test_all_permutations_count():
    assert len(set(all_permutations(4))) == 24


@pytest.mark.parametrize("j", [1, 2, 3])
def test_tau_is_an_involution(j):
    t = tau(4, j)
    assert (t * t).is_identity() and t.inverse() == t


@given(perms3, perms3, perms3)
def test_composition_is_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(perms3)
def test_inverse(a):
    assert (a * a.inverse()).is_identity()


def test_group_algebra_rejects_negative_and_drops_zero():
    with pytest.raises(ValueError):
        GroupAlgebraElement({tau(2, 1): -1})
    assert not GroupAlgebraElement({tau(2, 1): 0})


def test_sum_of_distinct_units_is_unitary():
    e = GroupAlgebraElement.unit(tau(3, 1)) + GroupAlgebraElement.unit(tau(3, 2))
    assert e.is_unitary_sum() and len(e) == 2
    doubled = e + GroupAlgebraElement.unit(tau(3, 1))
    assert not doubled.is_unitary_sum()


@given(elements, elements, elements)
def test_product_is_associative_and_distributive(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(elements, coeffs)
def test_scaling_keeps_support(x, a):
    assert {g for g, _ in x.scale(a).items()} == {g for g, _ in x.items()}
    assert all(c > 0 for _, c in (x * x).items())
