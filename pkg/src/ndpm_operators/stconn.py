"""A four-pointer machine deciding that node n is unreachable from node 1.

The input is the adjacency encoding from :func:`words.encode_graph`.  Pointer
1 counts the length of the path being followed on the unary prefix, pointer 2
scans adjacency rows, pointer 3 marks the row of the candidate target node
and pointer 4 tracks the column on the unary prefix.  Following an edge is a
nondeterministic choice, so the universal machine rejects exactly when some
choice of edges reaches node n.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import EmptyGraphError
from .ndpm import (
    ACCEPT,
    REJECT,
    Instruction,
    Machine,
    Move,
    PseudoConfiguration,
    RunResult,
    Transition,
    expand_shorthands,
    run,
)
from .words import BinaryWord, Symbol, encode_graph

STATES = (
    "Init",
    "out.edge?",
    "no.edge",
    "p3.next.node",
    "reading.sep.bit",
    "edge.found",
    "rewind.p2.p4",
    "rewind.p2",
    "exchange.p2.p3",
    "get.p3.to.start",
)

# (rule number, reads, state, outcomes); an outcome is "accept", "reject" or
# (instructions, target).  Rules 8, 13 and 15 carry repairs, see REPAIRS.md.
RULES: tuple[tuple[int, tuple[str, ...], str, tuple], ...] = (
    (1, ("$", "$", "$", "$"), "Init", (("+1 +2 +3 +4", "Init"),)),
    (2, ("*", "0", "*", "*"), "Init", ((".1 +2 +3 .4", "Init"),)),
    (3, ("*", "1", "*", "*"), "Init", ((".1 +2 .3 .4", "out.edge?"),)),
    (4, ("*", "0", "*", "*"), "out.edge?", ((".1 +2 .3 +4", "no.edge"),)),
    (5, ("*", "0", "*", "*"), "no.edge", ((".1 .2 +3 .4", "p3.next.node"),)),
    (6, ("*", "1", "*", "*"), "no.edge", ("accept",)),
    (7, ("*", "*", "*", "*"), "p3.next.node", ((".1 .2 +3 .4", "reading.sep.bit"),)),
    (8, ("*", "*", "0", "*"), "reading.sep.bit", ((".1 .2 +3 .4", "p3.next.node"),)),
    (9, ("*", "*", "1", "*"), "reading.sep.bit", ((".1 +2 .3 .4", "out.edge?"),)),
    (10, ("*", "1", "*", "*"), "out.edge?", ((".1 +2 .3 +4", "no.edge"), ("+1 .2 .3 +4", "edge.found"))),
    (11, ("*", "*", "*", "1"), "edge.found", ("reject",)),
    (12, ("1", "*", "*", "0"), "edge.found", ("accept",)),
    (13, ("0", "*", "*", "0"), "edge.found", ((".1 -2 .3 -4", "rewind.p2.p4"),)),
    (14, ("*", "*", "*", "0/1"), "rewind.p2.p4", ((".1 -2 .3 -4", "rewind.p2.p4"),)),
    (15, ("*", "*", "*", "$"), "rewind.p2.p4", ((".1 -2 .3 +4", "rewind.p2"),)),
    (16, ("*", "0/1", "*", "*"), "rewind.p2", ((".1 -2 .3 .4", "rewind.p2"),)),
    (17, ("*", "$", "*", "*"), "rewind.p2", ((".1 +2 -3 .4", "exchange.p2.p3"),)),
    (18, ("*", "*", "0/1", "*"), "exchange.p2.p3", ((".1 +2 -3 .4", "exchange.p2.p3"),)),
    (19, ("*", "*", "$", "*"), "exchange.p2.p3", ((".1 .2 +3 .4", "get.p3.to.start"),)),
    (20, ("*", "*", "0", "*"), "get.p3.to.start", ((".1 .2 +3 .4", "get.p3.to.start"),)),
    (21, ("*", "*", "1", "*"), "get.p3.to.start", ((".1 +2 .3 .4", "out.edge?"),)),
)

INITIAL = PseudoConfiguration((Symbol.STAR,) * 4, "Init")


def _instrs(text: str) -> tuple[Instruction, ...]:
    out = []
    for tok in text.split():
        out.append(Instruction(int(tok[1:]), {"+": 1, "-": -1, ".": 0}[tok[0]]))
    return tuple(out)


def stconn_machine(omit_rules: Iterable[int] = (), replace: Mapping[int, tuple] | None = None) -> Machine:
    """The machine of all 21 rules, shorthands expanded.

    ``omit_rules`` drops rules by number and ``replace`` swaps a rule's
    ``(reads, state, outcomes)``; both exist so that tests can check that a
    broken machine is caught by the oracle comparison.
    """
    skip = set(omit_rules)
    replace = dict(replace or {})
    transitions: list[Transition] = []
    for number, reads, state, outcomes in RULES:
        if number in skip:
            continue
        if number in replace:
            reads, state, outcomes = replace[number]
        for o in outcomes:
            if o == "accept":
                outcome = ACCEPT
            elif o == "reject":
                outcome = REJECT
            else:
                outcome = Move(_instrs(o[0]), o[1])
            transitions.extend(expand_shorthands(reads, state, outcome))
    return Machine(4, STATES, tuple(transitions), INITIAL)


@dataclass(frozen=True)
class DirectedGraph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise EmptyGraphError("a graph needs at least one node")
        if len(self.adjacency) != self.n or any(len(r) != self.n for r in self.adjacency):
            raise ValueError(f"adjacency table is not {self.n}x{self.n}")

    @classmethod
    def from_table(cls, table) -> DirectedGraph:
        rows = tuple(tuple(int(bool(a)) for a in row) for row in table)
        return cls(len(rows), rows)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> DirectedGraph:
        """Edges use node numbers 1..n."""
        table = [[0] * n for _ in range(n)]
        for a, b in edges:
            table[a - 1][b - 1] = 1
        return cls.from_table(table)

    def word(self) -> BinaryWord:
        return encode_graph(self.adjacency, self.n)


def reach_oracle(g: DirectedGraph) -> bool:
    """Is there a path of at least one edge from node 1 to node n?

    Starting from the successors of node 1 makes a one-node graph reachable
    only through a self-loop, which is what the machine checks.
    """
    seen = {j for j in range(g.n) if g.adjacency[0][j]}
    queue = deque(seen)
    while queue:
        i = queue.popleft()
        for j in range(g.n):
            if g.adjacency[i][j] and j not in seen:
                seen.add(j)
                queue.append(j)
    return g.n - 1 in seen


def decide_stconn(g: DirectedGraph, machine: Machine | None = None) -> RunResult:
    machine = machine or stconn_machine()
    return run(machine, INITIAL, g.word())


def all_graphs(n: int) -> Iterable[DirectedGraph]:
    for code in range(2 ** (n * n)):
        bits = [(code >> b) & 1 for b in range(n * n)]
        yield DirectedGraph.from_table([bits[i * n:(i + 1) * n] for i in range(n)])


def random_graph(n: int, rng: random.Random, density: float | None = None) -> DirectedGraph:
    density = rng.random() if density is None else density
    return DirectedGraph.from_table([[int(rng.random() < density) for _ in range(n)] for _ in range(n)])
