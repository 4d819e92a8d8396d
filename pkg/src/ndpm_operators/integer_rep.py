"""Slice graphs and 6x6 block matrices representing binary integers.

Slices follow the drawn graphs: the letter ``a_t`` of ``⋆a₁…a_k`` lives in
slice ``k + 1 - t`` and ⋆ lives in slice 0.  The output node of each letter is
linked to the input node of its successor, ``(S, 0)`` to the first letter and
the last letter to ``(E, 0)``.  ``S`` plays the role of ``⋆o`` and ``E`` of
``⋆i``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from .errors import EmptyWordError
from .words import BinaryWord, Symbol, symbol_at


class NodeFlavor(enum.IntEnum):
    O0 = 0
    I0 = 1
    O1 = 2
    I1 = 3
    S = 4
    E = 5

    @property
    def label(self) -> str:
        return _FLAVOR_LABELS[self]

    @classmethod
    def from_label(cls, text: str) -> NodeFlavor:
        for flavor, label in _FLAVOR_LABELS.items():
            if label == text or label.lower() == text:
                return flavor
        raise ValueError(f"unknown flavor {text!r}")

    def __str__(self) -> str:
        return self.label


_FLAVOR_LABELS = {
    NodeFlavor.O0: "0o",
    NodeFlavor.I0: "0i",
    NodeFlavor.O1: "1o",
    NodeFlavor.I1: "1i",
    NodeFlavor.S: "S",
    NodeFlavor.E: "E",
}

FLAVORS: tuple[NodeFlavor, ...] = tuple(NodeFlavor)


def output_flavor(sym: Symbol) -> NodeFlavor:
    return {Symbol.ZERO: NodeFlavor.O0, Symbol.ONE: NodeFlavor.O1, Symbol.STAR: NodeFlavor.S}[sym]


def input_flavor(sym: Symbol) -> NodeFlavor:
    return {Symbol.ZERO: NodeFlavor.I0, Symbol.ONE: NodeFlavor.I1, Symbol.STAR: NodeFlavor.E}[sym]


def flavor_symbol(flavor: NodeFlavor) -> Symbol:
    """The tape symbol a flavor stands for, forgetting the side it was read from."""
    return (Symbol.ZERO, Symbol.ZERO, Symbol.ONE, Symbol.ONE, Symbol.STAR, Symbol.STAR)[flavor]


class GraphNode(NamedTuple):
    flavor: NodeFlavor
    slice: int

    def __str__(self) -> str:
        return f"({self.flavor.label},{self.slice})"


def slice_of_position(k: int, position: int) -> int:
    """Slice holding tape position ``position`` of a word of length ``k``."""
    position %= k + 1
    return 0 if position == 0 else k + 1 - position


def position_of_slice(k: int, slice_: int) -> int:
    return 0 if slice_ == 0 else k + 1 - slice_


@dataclass(frozen=True)
class IntegerGraph:
    k: int
    edges: frozenset[frozenset[GraphNode]]
    _partner: dict[GraphNode, GraphNode] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        partner: dict[GraphNode, GraphNode] = {}
        for edge in self.edges:
            a, b = tuple(edge)
            if a in partner or b in partner:
                raise ValueError(f"edge set is not a matching at {edge}")
            partner[a] = b
            partner[b] = a
        object.__setattr__(self, "_partner", partner)

    def partner(self, node: GraphNode) -> GraphNode | None:
        return self._partner.get(node)

    def nodes(self) -> Iterator[GraphNode]:
        for s in range(self.k + 1):
            for f in FLAVORS:
                yield GraphNode(f, s)

    def edge_pairs(self) -> list[tuple[GraphNode, GraphNode]]:
        """Edges as sorted node pairs, in a stable order."""
        pairs = [tuple(sorted(e, key=lambda n: (n.slice, n.flavor))) for e in self.edges]
        return sorted(pairs, key=lambda p: (p[0].slice, p[0].flavor, p[1].slice, p[1].flavor))


def build_graph(word: BinaryWord) -> IntegerGraph:
    k = len(word)
    if k == 0:
        return IntegerGraph(0, frozenset({frozenset({GraphNode(NodeFlavor.S, 0), GraphNode(NodeFlavor.E, 0)})}))
    edges = set()
    first = symbol_at(word, 1)
    edges.add(frozenset({GraphNode(NodeFlavor.S, 0), GraphNode(input_flavor(first), k)}))
    for t in range(1, k):
        here, nxt = symbol_at(word, t), symbol_at(word, t + 1)
        edges.add(frozenset({
            GraphNode(output_flavor(here), slice_of_position(k, t)),
            GraphNode(input_flavor(nxt), slice_of_position(k, t + 1)),
        }))
    last = symbol_at(word, k)
    edges.add(frozenset({GraphNode(output_flavor(last), 1), GraphNode(NodeFlavor.E, 0)}))
    return IntegerGraph(k, frozenset(edges))


def integer_action(graph: IntegerGraph, node: GraphNode) -> GraphNode | None:
    """Follow the axiom link at ``node``; ``None`` when the node is unmatched."""
    return graph.partner(node)


BLOCK_NAMES = ("l00", "l01", "l10", "l11", "s0", "s1", "e0", "e1")


@dataclass(frozen=True)
class IntegerMatrix:
    """Sparse blocks of the 6x6 block matrix; each block is a set of (row, col)."""

    word: BinaryWord
    blocks: dict[str, frozenset[tuple[int, int]]]

    @property
    def k(self) -> int:
        return len(self.word)

    @property
    def size(self) -> int:
        return 6 * (self.k + 1)

    def with_block(self, name: str, coords) -> IntegerMatrix:
        blocks = dict(self.blocks)
        blocks[name] = frozenset(coords)
        return IntegerMatrix(self.word, blocks)

    def block_array(self, name: str) -> np.ndarray:
        out = np.zeros((self.k + 1, self.k + 1), dtype=np.int64)
        for r, c in self.blocks[name]:
            out[r, c] = 1
        return out

    def index(self, flavor: NodeFlavor, slice_: int) -> int:
        return int(flavor) * (self.k + 1) + slice_

    def nonzero_pairs(self) -> set[tuple[GraphNode, GraphNode]]:
        """Every (row node, column node) with a 1, both orientations included."""
        out = set()
        for u in (0, 1):
            for v in (0, 1):
                for a, b in self.blocks[f"l{u}{v}"]:
                    n1 = GraphNode(_OUT[u], a)
                    n2 = GraphNode(_IN[v], b)
                    out.add((n1, n2))
                    out.add((n2, n1))
            for _, t in self.blocks[f"e{u}"]:
                n1 = GraphNode(NodeFlavor.E, 0)
                n2 = GraphNode(_OUT[u], t)
                out.add((n1, n2))
                out.add((n2, n1))
            for _, t in self.blocks[f"s{u}"]:
                n1 = GraphNode(NodeFlavor.S, 0)
                n2 = GraphNode(_IN[u], t)
                out.add((n1, n2))
                out.add((n2, n1))
        return out

    def assembled(self) -> np.ndarray:
        """Dense 6(k+1) square matrix; rows and columns ordered flavor-major."""
        dense = np.zeros((self.size, self.size), dtype=np.int64)
        for n1, n2 in self.nonzero_pairs():
            dense[self.index(n1.flavor, n1.slice), self.index(n2.flavor, n2.slice)] = 1
        return dense


_OUT = (NodeFlavor.O0, NodeFlavor.O1)
_IN = (NodeFlavor.I0, NodeFlavor.I1)


def build_matrix(word: BinaryWord) -> IntegerMatrix:
    k = len(word)
    if k == 0:
        raise EmptyWordError("the matricial representation needs k >= 1")
    graph = build_graph(word)
    blocks: dict[str, set[tuple[int, int]]] = {name: set() for name in BLOCK_NAMES}
    for edge in graph.edges:
        a, b = sorted(edge, key=lambda n: n.flavor)
        if b.flavor == NodeFlavor.E:
            blocks[f"e{_bit(a.flavor)}"].add((0, a.slice))
        elif a.flavor == NodeFlavor.S or b.flavor == NodeFlavor.S:
            other = b if a.flavor == NodeFlavor.S else a
            blocks[f"s{_bit(other.flavor)}"].add((0, other.slice))
        else:
            out_node, in_node = (a, b) if a.flavor in _OUT else (b, a)
            blocks[f"l{_bit(out_node.flavor)}{_bit(in_node.flavor)}"].add((out_node.slice, in_node.slice))
    return IntegerMatrix(word, {name: frozenset(c) for name, c in blocks.items()})


def _bit(flavor: NodeFlavor) -> int:
    return 0 if flavor in (NodeFlavor.O0, NodeFlavor.I0) else 1


def _reading_slice(k: int, slice_: int) -> int:
    # drawn slices run last-letter-first; the equations number a_i as slice i
    return (k + 1 - slice_) % (k + 1)


def representation_operators(m: IntegerMatrix) -> dict[str, np.ndarray]:
    """Partial isometries l_⋆ in reading order (letter a_i on slice i).

    Keys are ``00 01 10 11 S0 S1 0E 1E``; each maps slice i to slice i+1
    modulo k+1, which is the orientation the representation equations use.
    """
    k = m.k
    size = k + 1
    ops = {}
    for u in (0, 1):
        for v in (0, 1):
            op = np.zeros((size, size), dtype=np.int64)
            for a, b in m.blocks[f"l{u}{v}"]:
                op[_reading_slice(k, b), _reading_slice(k, a)] = 1
            ops[f"{u}{v}"] = op
        op = np.zeros((size, size), dtype=np.int64)
        for _, t in m.blocks[f"s{u}"]:
            op[_reading_slice(k, t), 0] = 1
        ops[f"S{u}"] = op
        op = np.zeros((size, size), dtype=np.int64)
        for _, t in m.blocks[f"e{u}"]:
            op[0, _reading_slice(k, t)] = 1
        ops[f"{u}E"] = op
    return ops


def index_sets(word: BinaryWord) -> dict[str, set[int]]:
    """Source slices i of each step π_{i+1} l π_i, recomputed from the letters."""
    k = len(word)
    bits = [int(b) for b in word.bits]
    sets: dict[str, set[int]] = {}
    for j in (0, 1):
        for l in (0, 1):
            sets[f"{j}{l}"] = {i for i in range(1, k) if bits[i - 1] == j and bits[i] == l}
        # the first letter is entered from slice 0
        sets[f"S{j}"] = {0} if k and bits[0] == j else set()
        sets[f"{j}E"] = {k} if k and bits[k - 1] == j else set()
    return sets


def check_representation(m: IntegerMatrix) -> bool:
    """Check the partial-isometry equations of a binary representation exactly."""
    k = m.k
    if k == 0:
        return False
    size = k + 1
    ops = representation_operators(m)
    proj = [np.zeros((size, size), dtype=np.int64) for _ in range(size)]
    for i in range(size):
        proj[i][i, i] = 1
    for name, op in ops.items():
        rhs = np.zeros_like(op)
        for i in index_sets(m.word)[name]:
            rhs += proj[(i + 1) % size] @ op @ proj[i]
        if not np.array_equal(op, rhs):
            return False
    letters = ops["00"] + ops["01"] + ops["10"] + ops["11"]
    ends = ops["0E"] + ops["1E"]
    starts = ops["S0"] + ops["S1"]
    product = ends @ np.linalg.matrix_power(letters, k - 1) @ starts
    return bool(np.array_equal(product, proj[0]))


def is_matching(m: IntegerMatrix) -> bool:
    dense = m.assembled()
    return bool((dense.sum(axis=0) <= 1).all() and (dense.sum(axis=1) <= 1).all())


def coordinate_triples(m: IntegerMatrix) -> list[tuple[int, int, int]]:
    dense = m.assembled()
    rows, cols = np.nonzero(dense)
    return [(int(r), int(c), 1) for r, c in zip(rows, cols)]


def graph_to_dot(graph: IntegerGraph) -> str:
    lines = ["graph integer {", "  node [shape=plaintext];"]
    for node in graph.nodes():
        lines.append(f'  "{node}";')
    for a, b in graph.edge_pairs():
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines)
