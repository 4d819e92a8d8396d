from __future__ import annotations

from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ndpm_operators.algebra import GroupAlgebraElement, Permutation, tau
from ndpm_operators.encoding import encode_machine, encode_transition
from ndpm_operators.integer_rep import NodeFlavor
from ndpm_operators.machine_file import parse_machine
from ndpm_operators.ndpm import Machine, PseudoConfiguration
from ndpm_operators.observation import (
    BasisVector,
    StateBasisElement,
    apply_group_element,
    apply_integer,
    apply_observation,
    in_matrix,
    naive_reject_observation,
    out_matrix,
    zero_observation,
)
from ndpm_operators.suite import random_observation
from ndpm_operators.words import Symbol, parse_word

F = NodeFlavor
ID2 = Permutation.identity(2)


def vec(pi, positions, sigma, slots, control):
    return BasisVector(pi, tuple(positions), sigma, StateBasisElement(tuple(slots), control))


def test_out_and_in_matrices():
    out, inn = out_matrix(), in_matrix()
    assert out[int(F.O0)].tolist() == [1] * 6
    assert inn[int(F.O0)].tolist() == [0] * 6
    assert np.array_equal(out + inn, np.ones((6, 6), dtype=np.int64))


def test_group_element_action():
    v = vec(F.S, (0, 0, 0), Permutation.identity(3), (F.S, F.S), "q")
    assert apply_group_element(GroupAlgebraElement.unit(Permutation.identity(3)), v) == [(1, v)]
    once = apply_group_element(GroupAlgebraElement.unit(tau(3, 1)), v)[0][1]
    twice = apply_group_element(GroupAlgebraElement.unit(tau(3, 1)), once)[0][1]
    assert twice == v
    both = GroupAlgebraElement.unit(tau(3, 1)) + GroupAlgebraElement.unit(tau(3, 2))
    assert len(apply_group_element(both, v)) == 2


def test_zero_and_reject_only_observations():
    v = vec(F.S, (0, 0), ID2, (F.S,), "q0")
    assert apply_observation(zero_observation(1), v) == []
    empty = Machine(1, ("q0",), ())
    obs = encode_machine(empty, PseudoConfiguration((Symbol.STAR,), "q0"))
    assert apply_observation(obs, v) == []


def test_m_summand_branch():
    m = parse_machine("pointers: 1\nstates: q0 q1\n$ q0 -> +1 q1\n")
    obs = encode_machine(m, PseudoConfiguration((Symbol.STAR,), "q0"))
    v = vec(F.E, (0, 0), ID2, (F.S,), "q0")
    out = apply_observation(obs, v)
    assert {w.state.control for _, w in out} == {"move[0]"}
    assert all(w.sigma == tau(2, 1) and a == 1 for a, w in out)


def test_apply_integer_examples():
    w = parse_word("0")
    v = vec(F.S, (0, 0), ID2, (F.S,), "q")
    moved = apply_integer(w, v)
    assert moved.pi is F.I0 and moved.positions == (1, 0)
    assert apply_integer(w, vec(F.O1, (0, 0), ID2, (F.S,), "q")) is None
    # with σ = τ(0,1) the integer acts on slot 1
    swapped = apply_integer(w, vec(F.S, (1, 0), tau(2, 1), (F.S,), "q"))
    assert swapped.positions == (1, 1)


@given(st.sampled_from(list(F)), st.integers(0, 3), st.integers(0, 3), st.booleans())
def test_apply_integer_is_a_partial_involution(pi, a0, a1, swap):
    w = parse_word("101")
    v = vec(pi, (a0, a1), tau(2, 1) if swap else ID2, (F.S,), "q")
    once = apply_integer(w, v)
    if once is not None:
        assert apply_integer(w, once) == v


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.fractions(min_value=Fraction(1, 50), max_value=50))
def test_observation_is_linear_in_coefficients(seed, alpha):
    import random

    obs = random_observation(random.Random(seed), p=1)
    scaled = obs.scaled(alpha)
    for control in obs.controls:
        for pi in F:
            v = vec(pi, (0, 1), ID2, (F.S,), control)
            base = dict((w, a) for a, w in apply_observation(obs, v))
            more = dict((w, a) for a, w in apply_observation(scaled, v))
            assert more == {w: a * alpha for w, a in base.items()}
            assert all(a > 0 for a in base.values())


def test_naive_reject_keeps_everything():
    obs = naive_reject_observation(1)
    v = vec(F.O1, (0, 1), ID2, (F.O0,), "reject")
    assert apply_observation(obs, v) == [(1, v)]


def test_tau_restored_after_m_then_l():
    m = parse_machine("pointers: 2\nstates: q r\n$ $ q -> .1 +2 r\n")
    (t,) = m.transitions
    summands = encode_transition(t, 0, 2)
    g_m = next(iter(summands[0].group.terms))
    for s in summands[1:]:
        assert (next(iter(s.group.terms)) * g_m).is_identity()
