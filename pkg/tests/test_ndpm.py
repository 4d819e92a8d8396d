from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ndpm_operators.machine_file import parse_machine
from ndpm_operators.ndpm import (
    ACCEPT,
    REJECT,
    Configuration,
    Instruction,
    Machine,
    Move,
    PseudoConfiguration,
    Transition,
    Verdict,
    expand_shorthands,
    forward,
    run,
    stay,
    step,
)
from ndpm_operators.stconn import DirectedGraph, decide_stconn
from ndpm_operators.words import SYMBOLS, Symbol, all_words, parse_word

STAR, ZERO, ONE = Symbol.STAR, Symbol.ZERO, Symbol.ONE


def test_expand_shorthands_counts():
    mv = Move((stay(1), stay(2)), "q")
    assert len(expand_shorthands(["*", "0"], "q", mv)) == 3
    assert len(expand_shorthands(["*", "*"], "q", mv)) == 9
    assert len(expand_shorthands(["0/1", "$"], "q", mv)) == 2
    reads = {t.reads for t in expand_shorthands(["*", "0"], "q", mv)}
    assert reads == {(ZERO, ZERO), (ONE, ZERO), (STAR, ZERO)}


def test_instruction_validation():
    with pytest.raises(ValueError):
        Instruction(0, 1)
    with pytest.raises(ValueError):
        Instruction(1, 2)
    with pytest.raises(ValueError):
        Transition((STAR,), "q", Move((stay(2),), "q"))


def test_machine_rejects_undeclared_states():
    with pytest.raises(ValueError):
        Machine(1, ("q",), (Transition((STAR,), "q", Move((forward(1),), "r")),))


def test_empty_relation_accepts():
    m = Machine(1, ("q0",), ())
    assert step(m, parse_word("10"), Configuration((0,), (STAR,), "q0")) == [ACCEPT]
    assert run(m, PseudoConfiguration((STAR,), "q0"), parse_word("10")).verdict is Verdict.ACCEPT


def test_forward_step_updates_slot():
    m = Machine(1, ("q0", "q1"), (Transition((STAR,), "q0", Move((forward(1),), "q1")),))
    (nxt,) = step(m, parse_word("10"), Configuration((0,), (STAR,), "q0"))
    assert nxt == Configuration((1,), (ONE,), "q1")


def test_stay_keeps_stale_slot():
    m = Machine(2, ("q",), (Transition((ZERO, STAR), "q", Move((stay(1), forward(2)), "q")),))
    # pointer 1 stands on a 1 but its slot still holds 0
    (nxt,) = step(m, parse_word("10"), Configuration((1, 0), (ZERO, STAR), "q"))
    assert nxt.slots == (ZERO, ONE) and nxt.positions == (1, 1)


def test_backward_wraps_around():
    m = Machine(1, ("q",), (Transition((STAR,), "q", Move((Instruction(1, -1),), "q")),))
    (nxt,) = step(m, parse_word("10"), Configuration((0,), (STAR,), "q"))
    assert nxt.positions == (2,) and nxt.slots == (ZERO,)


def test_stay_loop_diverges():
    m = Machine(2, ("q0",), (Transition((STAR, STAR), "q0", Move((stay(1), stay(2)), "q0")),))
    res = run(m, PseudoConfiguration((STAR, STAR), "q0"), parse_word("1"))
    assert res.verdict is Verdict.DIVERGE and res.max_depth is None


def test_reject_dominates_a_loop():
    m = parse_machine("""
        pointers: 1
        states: q
        $ q -> .1 q
        $ q -> reject
    """)
    assert run(m, PseudoConfiguration((STAR,), "q"), parse_word("")).verdict is Verdict.REJECT


def test_branch_statistics(halting):
    res = run(halting["both-ends-one"], PseudoConfiguration((STAR,), "s"), parse_word("101"))
    assert res.verdict is Verdict.ACCEPT
    # two configurations on each branch: the start and the one after the single move
    assert res.branches == 2 and res.max_depth == 2


def test_stconn_examples():
    assert decide_stconn(DirectedGraph.from_edges(2, [(1, 2)])).verdict is Verdict.REJECT
    assert decide_stconn(DirectedGraph.from_edges(2, [])).verdict is Verdict.ACCEPT
    assert decide_stconn(DirectedGraph.from_edges(3, [(1, 2)])).verdict is Verdict.ACCEPT


def test_run_checks_pseudo_configuration(halting):
    with pytest.raises(ValueError):
        run(halting["accept-all"], PseudoConfiguration((STAR,), "nope"), parse_word(""))
    with pytest.raises(ValueError):
        run(halting["accept-all"], PseudoConfiguration((STAR, STAR), "q0"), parse_word(""))


def test_catalog_verdicts(halting):
    cases = {
        "first-bit-one": {"1": "ACCEPT", "0": "REJECT", "01": "REJECT", "": "ACCEPT"},
        "all-ones": {"111": "ACCEPT", "101": "REJECT"},
        "even-ones": {"1010": "ACCEPT", "100": "REJECT"},
        "no-one-guess": {"000": "ACCEPT", "010": "REJECT"},
        "palindrome": {"0110": "ACCEPT", "011": "REJECT", "101": "ACCEPT"},
        "confirm-zero": {"111": "ACCEPT", "101": "REJECT"},
        "ends-equal": {"101": "ACCEPT", "100": "REJECT"},
    }
    for name, expected in cases.items():
        m = halting[name]
        for bits, verdict in expected.items():
            assert run(m, m.initial, parse_word(bits)).verdict.value == verdict, (name, bits)


premise = st.tuples(st.sampled_from(SYMBOLS), st.sampled_from(("a", "b")))
outcome = st.one_of(
    st.just(ACCEPT), st.just(REJECT),
    st.builds(lambda d, q: Move((Instruction(1, d),), q), st.sampled_from((-1, 0, 1)), st.sampled_from(("a", "b"))),
)
machines = st.lists(st.tuples(premise, outcome), max_size=6).map(
    lambda rows: Machine(1, ("a", "b"), tuple(Transition((s,), q, o) for (s, q), o in rows)))


@settings(max_examples=60)
@given(machines, st.sampled_from(all_words(3)))
def test_adding_an_accept_never_flips_accept(m, w):
    c = PseudoConfiguration((STAR,), "a")
    before = run(m, c, w).verdict
    extra = Machine(1, m.states, m.transitions + (Transition((STAR,), "a", ACCEPT),))
    after = run(extra, c, w).verdict
    if before is Verdict.ACCEPT:
        assert after is Verdict.ACCEPT


@settings(max_examples=60)
@given(machines, st.sampled_from(all_words(3)))
def test_run_is_deterministic(m, w):
    c = PseudoConfiguration((STAR,), "a")
    assert run(m, c, w) == run(m, c, w)
