from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ndpm_operators.errors import EmptyGraphError
from ndpm_operators.ndpm import ACCEPT, Machine, Move, Transition, Verdict, run
from ndpm_operators.stconn import (
    INITIAL,
    DirectedGraph,
    all_graphs,
    decide_stconn,
    random_graph,
    reach_oracle,
    stconn_machine,
)
from ndpm_operators.words import Symbol

SMALL = [g for n in (1, 2, 3) for g in all_graphs(n)]


def disagreements(machine: Machine, graphs=SMALL) -> int:
    bad = 0
    for g in graphs:
        v = run(machine, INITIAL, g.word()).verdict
        if v is Verdict.DIVERGE or (v is Verdict.ACCEPT) == reach_oracle(g):
            bad += 1
    return bad


def test_machine_shape():
    m = stconn_machine()
    assert m.p == 4 and "Init" in m.states and len(m.states) == 10
    star = Symbol.STAR
    fan = m.outcomes((star, Symbol.ONE, star, star), "out.edge?")
    assert len(fan) == 2
    assert m.outcomes((star, Symbol.ONE, star, star), "no.edge") == (ACCEPT,)


def test_oracle_examples():
    assert reach_oracle(DirectedGraph.from_edges(2, [(1, 2)]))
    assert not reach_oracle(DirectedGraph.from_edges(2, []))
    assert reach_oracle(DirectedGraph.from_edges(3, [(1, 2), (2, 3)]))
    assert not reach_oracle(DirectedGraph.from_edges(3, [(1, 2)]))


def test_single_node_needs_a_self_loop():
    assert not reach_oracle(DirectedGraph.from_edges(1, []))
    assert reach_oracle(DirectedGraph.from_edges(1, [(1, 1)]))
    assert decide_stconn(DirectedGraph.from_edges(1, [(1, 1)])).verdict is Verdict.REJECT


def test_empty_graph_is_an_error():
    with pytest.raises(EmptyGraphError):
        DirectedGraph(0, ())


def test_all_small_graphs_agree():
    assert len(SMALL) == 2 + 16 + 512
    assert disagreements(stconn_machine()) == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=4, max_value=6), st.integers(min_value=0, max_value=10**6))
def test_random_graphs_agree(n, seed):
    g = random_graph(n, random.Random(seed))
    v = decide_stconn(g).verdict
    assert v is not Verdict.DIVERGE
    assert (v is Verdict.REJECT) == reach_oracle(g)


def test_each_repair_is_needed():
    # rule 13 unrepaired: pointer 1 unconstrained
    unrepaired_13 = (("*", "*", "*", "0"), "edge.found", ((".1 -2 .3 -4", "rewind.p2.p4"),))
    assert disagreements(stconn_machine(replace={13: unrepaired_13})) == 124
    # rule 15 unrepaired: pointer 4 stays on ⋆
    unrepaired_15 = (("*", "*", "*", "$"), "rewind.p2.p4", ((".1 -2 .3 .4", "rewind.p2"),))
    assert disagreements(stconn_machine(replace={15: unrepaired_15})) == 64
    # rule 8 leaves pointer 2's instruction blank; moving it either way breaks the machine
    for guess in (".1 +2 +3 .4", ".1 -2 +3 .4"):
        rule = (("*", "*", "0", "*"), "reading.sep.bit", ((guess, "p3.next.node"),))
        assert disagreements(stconn_machine(replace={8: rule})) > 0
    # rules 17/18 with the trailing dot: the dotted state has no outgoing rules
    m = stconn_machine()
    dotted = "exchange.p2.p3."
    transitions = tuple(
        Transition(t.reads, t.from_state, Move(t.outcome.instrs, dotted))
        if isinstance(t.outcome, Move) and t.outcome.to_state == "exchange.p2.p3" else t
        for t in m.transitions
    )
    assert disagreements(Machine(4, m.states + (dotted,), transitions, m.initial)) > 0


def test_dropping_a_rule_is_caught():
    assert disagreements(stconn_machine(omit_rules=[11])) > 0
