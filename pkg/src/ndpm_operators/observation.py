"""Observations and their action on the finite basis.

A basis vector is ``(π, a₀…a_p; σ; e)``: a flavor π, one graph slice per
slot (slot 0 is the active slot, slots 1…p belong to pointers), a permutation
σ of {0,…,p} and a state-algebra basis element ``e`` made of one flavor per
pointer memory and a control label.

The integer acts on the node ``(π, a_{σ⁻¹(0)})``; a group element ``λ(ν)``
turns σ into ``ν∘σ``.  Observations are stored as a list of summands
``u ⊗ g ⊗ w`` rather than as expanded matrices, which keeps them small and
makes the per-construction summand counts visible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .algebra import GroupAlgebraElement, Permutation
from .integer_rep import FLAVORS, GraphNode, IntegerGraph, NodeFlavor, build_graph
from .words import BinaryWord

OUTPUT_FLAVORS = frozenset({NodeFlavor.O0, NodeFlavor.O1, NodeFlavor.S})
INPUT_FLAVORS = frozenset({NodeFlavor.I0, NodeFlavor.I1, NodeFlavor.E})
ALL_FLAVORS = frozenset(FLAVORS)


def out_matrix() -> np.ndarray:
    """Rows 0o, 1o, s all ones: whatever comes in leaves as an output flavor."""
    m = np.zeros((6, 6), dtype=np.int64)
    for f in OUTPUT_FLAVORS:
        m[int(f), :] = 1
    return m


def in_matrix() -> np.ndarray:
    m = np.zeros((6, 6), dtype=np.int64)
    for f in INPUT_FLAVORS:
        m[int(f), :] = 1
    return m


def pattern(rows: Iterable[NodeFlavor], cols: Iterable[NodeFlavor]) -> frozenset[tuple[NodeFlavor, NodeFlavor]]:
    """Nonzero pattern of a 0/1 matrix with the given rows and columns filled."""
    return frozenset((r, c) for r in rows for c in cols)


def pattern_matrix(pairs: Iterable[tuple[NodeFlavor, NodeFlavor]]) -> np.ndarray:
    m = np.zeros((6, 6), dtype=np.int64)
    for r, c in pairs:
        m[int(r), int(c)] = 1
    return m


OUT = pattern(OUTPUT_FLAVORS, FLAVORS)
IN = pattern(INPUT_FLAVORS, FLAVORS)
IDENTITY = frozenset((f, f) for f in FLAVORS)


@dataclass(frozen=True)
class StateBasisElement:
    slots: tuple[NodeFlavor, ...]
    control: str

    def __str__(self) -> str:
        return "(" + ",".join(f.label for f in self.slots) + f";{self.control})"


@dataclass(frozen=True)
class SlotMap:
    """Action on one memory slot: accept ``sources``, write ``target`` (``None`` keeps)."""

    sources: frozenset[NodeFlavor] = ALL_FLAVORS
    target: NodeFlavor | None = None

    def __str__(self) -> str:
        if self.target is None and self.sources == ALL_FLAVORS:
            return "Id"
        src = "+".join(sorted(f.label for f in self.sources))
        return f"{src}->{self.target.label if self.target is not None else '='}"


KEEP = SlotMap()


@dataclass(frozen=True)
class Summand:
    flavor: frozenset[tuple[NodeFlavor, NodeFlavor]]
    group: GroupAlgebraElement
    slots: tuple[SlotMap, ...]
    source: str
    target: str
    label: str = ""

    def rows_for(self, column: NodeFlavor) -> list[NodeFlavor]:
        return sorted(r for r, c in self.flavor if c == column)


@dataclass(frozen=True)
class BasisVector:
    pi: NodeFlavor
    positions: tuple[int, ...]
    sigma: Permutation
    state: StateBasisElement

    @property
    def active_slot(self) -> int:
        return self.sigma.inverse()(0)

    def __str__(self) -> str:
        pos = ",".join(str(a) for a in self.positions)
        return f"({self.pi.label}; {pos}; {self.sigma}; {self.state})"


class Observation:
    """A finite sum of summands over a declared set of control labels."""

    def __init__(self, p: int, controls: Sequence[str], summands: Sequence[Summand]):
        self.p = p
        self.controls = tuple(dict.fromkeys(controls))
        self.summands = tuple(summands)
        known = set(self.controls)
        for s in self.summands:
            if len(s.slots) != p:
                raise ValueError(f"summand {s.label!r} has {len(s.slots)} slot maps, expected {p}")
            if s.source not in known or s.target not in known:
                raise ValueError(f"summand {s.label!r} uses an undeclared control label")
            for g, _ in s.group.items():
                if g.size != p + 1:
                    raise ValueError("group elements must permute {0,…,p}")
        self._by_source: dict[str, list[Summand]] = {}
        for s in self.summands:
            self._by_source.setdefault(s.source, []).append(s)

    def summands_from(self, control: str) -> list[Summand]:
        return self._by_source.get(control, [])

    def __len__(self) -> int:
        return len(self.summands)

    def scaled(self, factor: Fraction | int) -> Observation:
        return Observation(self.p, self.controls, [
            Summand(s.flavor, s.group.scale(factor), s.slots, s.source, s.target, s.label) for s in self.summands
        ])

    def entries(self) -> dict[tuple[tuple[NodeFlavor, StateBasisElement], tuple[NodeFlavor, StateBasisElement]],
                              GroupAlgebraElement]:
        """Expand into matrix entries ((π', e'), (π, e)) → group algebra element.

        Entries hit by several summands have their group elements added, so
        the coefficients read off here are the true matrix coefficients.
        """
        import itertools

        out: dict = {}
        for s in self.summands:
            per_slot = []
            for sm in s.slots:
                per_slot.append([(f, f if sm.target is None else sm.target) for f in sorted(sm.sources)])
            for row, col in s.flavor:
                for combo in itertools.product(*per_slot):
                    src = StateBasisElement(tuple(a for a, _ in combo), s.source)
                    dst = StateBasisElement(tuple(b for _, b in combo), s.target)
                    key = ((row, dst), (col, src))
                    out[key] = out[key] + s.group if key in out else s.group
        return out

    def coefficients(self) -> list[Fraction]:
        return [a for elem in self.entries().values() for _, a in elem.items()]

    def in_p_plus(self) -> bool:
        """Every matrix coefficient equals exactly 1."""
        return all(a == 1 for a in self.coefficients())


def zero_observation(p: int, controls: Sequence[str] = ("q0",)) -> Observation:
    return Observation(p, controls, [])


def naive_reject_observation(p: int, control: str = "reject") -> Observation:
    """Identity on flavors and slots, projected on a single control label."""
    summand = Summand(IDENTITY, GroupAlgebraElement.unit(Permutation.identity(p + 1)),
                      tuple(KEEP for _ in range(p)), control, control, "reject.naive")
    return Observation(p, [control], [summand])


def apply_group_element(g: GroupAlgebraElement, v: BasisVector) -> list[tuple[Fraction, BasisVector]]:
    return [(a, BasisVector(v.pi, v.positions, nu.compose(v.sigma), v.state)) for nu, a in g.items()]


def apply_observation(obs: Observation, v: BasisVector) -> list[tuple[Fraction, BasisVector]]:
    if len(v.state.slots) != obs.p:
        raise ValueError("basis vector and observation disagree on the pointer count")
    acc: dict[BasisVector, Fraction] = {}
    for s in obs.summands_from(v.state.control):
        rows = s.rows_for(v.pi)
        if not rows:
            continue
        new_slots = []
        for f, sm in zip(v.state.slots, s.slots):
            if f not in sm.sources:
                break
            new_slots.append(f if sm.target is None else sm.target)
        else:
            state = StateBasisElement(tuple(new_slots), s.target)
            for row in rows:
                for nu, a in s.group.items():
                    w = BasisVector(row, v.positions, nu.compose(v.sigma), state)
                    acc[w] = acc.get(w, Fraction(0)) + a
    return [(a, w) for w, a in acc.items()]


@lru_cache(maxsize=256)
def _graph_for(word: BinaryWord) -> IntegerGraph:
    return build_graph(word)


def apply_integer(word: BinaryWord | IntegerGraph, v: BasisVector) -> BasisVector | None:
    """Follow the integer's link at the active slot; ``None`` when unmatched."""
    graph = word if isinstance(word, IntegerGraph) else _graph_for(word)
    slot = v.active_slot
    partner = graph.partner(GraphNode(v.pi, v.positions[slot]))
    if partner is None:
        return None
    positions = list(v.positions)
    positions[slot] = partner.slice
    return BasisVector(partner.flavor, tuple(positions), v.sigma, v.state)
