from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ndpm_operators.errors import EmptyWordError
from ndpm_operators.integer_rep import (
    BLOCK_NAMES,
    FLAVORS,
    GraphNode,
    IntegerMatrix,
    NodeFlavor,
    build_graph,
    build_matrix,
    check_representation,
    coordinate_triples,
    graph_to_dot,
    integer_action,
    is_matching,
)
from ndpm_operators.suite import FIGURE_EDGES, matrix_matches_graph
from ndpm_operators.words import parse_word

words = st.text(alphabet="01", min_size=1, max_size=10).map(parse_word)


def N(label: str, s: int) -> GraphNode:
    return GraphNode(NodeFlavor.from_label(label), s)


@pytest.mark.parametrize("bits", sorted(FIGURE_EDGES))
def test_reference_graphs(bits):
    assert set(build_graph(parse_word(bits)).edges) == FIGURE_EDGES[bits]


def test_six_edges_for_the_long_example():
    assert len(build_graph(parse_word("11010")).edges) == 6


def test_flavor_labels():
    assert [f.label for f in FLAVORS] == ["0o", "0i", "1o", "1i", "S", "E"]
    assert NodeFlavor.from_label("s") is NodeFlavor.S


def test_build_matrix_single_zero():
    m = build_matrix(parse_word("0"))
    assert m.blocks["e0"] == {(0, 1)}
    assert m.blocks["s0"] == {(0, 1)}
    assert all(not m.blocks[f"l{u}{v}"] for u in "01" for v in "01")


def test_build_matrix_110():
    m = build_matrix(parse_word("110"))
    # output 1o at slice 2 feeds input 0i at slice 1; output 1o at slice 3 feeds 1i at slice 2
    assert m.blocks["l10"] == {(2, 1)}
    assert m.blocks["l11"] == {(3, 2)}
    assert m.blocks["e0"] == {(0, 1)}
    assert m.blocks["s1"] == {(0, 3)}
    assert not (m.blocks["l00"] or m.blocks["l01"] or m.blocks["s0"] or m.blocks["e1"])


def test_empty_word_has_no_matrix():
    with pytest.raises(EmptyWordError):
        build_matrix(parse_word(""))


def test_check_representation_examples():
    assert check_representation(build_matrix(parse_word("110")))
    zero = IntegerMatrix(parse_word("1"), {name: frozenset() for name in BLOCK_NAMES})
    assert not check_representation(zero)
    m = build_matrix(parse_word("10"))
    assert m.blocks["e0"]
    assert not check_representation(m.with_block("e0", ()))


def test_check_representation_rejects_a_misplaced_link():
    m = build_matrix(parse_word("1101"))
    name = next(n for n in ("l00", "l01", "l10", "l11") if m.blocks[n])
    (a, b), *rest = sorted(m.blocks[name])
    moved = m.with_block(name, [(a, (b + 1) % (m.k + 1))] + rest)
    assert not check_representation(moved)


def test_integer_action_examples():
    g = build_graph(parse_word("0"))
    assert integer_action(g, N("S", 0)) == N("0i", 1)
    assert integer_action(g, N("1o", 1)) is None


def test_assembled_layout():
    m = build_matrix(parse_word("0"))
    dense = m.assembled()
    assert dense.shape == (12, 12)
    assert dense[m.index(NodeFlavor.S, 0), m.index(NodeFlavor.I0, 1)] == 1
    assert len(coordinate_triples(m)) == 2 * 2


def test_dot_output_lists_edges():
    dot = graph_to_dot(build_graph(parse_word("10")))
    assert dot.startswith("graph integer {") and dot.count(" -- ") == 3


@given(words)
def test_representation_properties(w):
    m = build_matrix(w)
    dense = m.assembled()
    assert check_representation(m)
    assert np.array_equal(dense, dense.T)
    assert is_matching(m)
    assert matrix_matches_graph(w)


@given(words)
def test_integer_action_is_a_partial_involution(w):
    g = build_graph(w)
    domain = [x for x in g.nodes() if integer_action(g, x) is not None]
    assert len(domain) == 2 * (len(w) + 1)
    assert len(g.edges) == len(w) + 1
    for x in domain:
        assert integer_action(g, integer_action(g, x)) == x
