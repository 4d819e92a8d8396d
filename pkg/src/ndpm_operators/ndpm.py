"""Non-deterministic pointer machines with universal acceptance.

A machine has ``p`` read-only pointers on the circular tape ``⋆a₁…a_k``.  Each
pointer owns a memory slot that is refreshed only when the pointer moves.  A
run accepts when every branch halts in accept, rejects as soon as one branch
can reach reject, and is reported as ``DIVERGE`` when some branch loops while
no branch rejects.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .words import SYMBOLS, BinaryWord, Symbol, symbol_at


@dataclass(frozen=True, order=True)
class Instruction:
    """Move pointer ``pointer`` (1-based) by ``delta`` in {-1, 0, +1}."""

    pointer: int
    delta: int = 0

    def __post_init__(self) -> None:
        if self.pointer < 1:
            raise ValueError(f"pointer indices start at 1, got {self.pointer}")
        if self.delta not in (-1, 0, 1):
            raise ValueError(f"delta must be -1, 0 or 1, got {self.delta}")

    @property
    def moves(self) -> bool:
        return self.delta != 0

    def __str__(self) -> str:
        return {1: "+", -1: "-", 0: "."}[self.delta] + str(self.pointer)


def forward(j: int) -> Instruction:
    return Instruction(j, 1)


def backward(j: int) -> Instruction:
    return Instruction(j, -1)


def stay(j: int) -> Instruction:
    return Instruction(j, 0)


class Halt(enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"

    def __str__(self) -> str:
        return self.value


ACCEPT = Halt.ACCEPT
REJECT = Halt.REJECT


@dataclass(frozen=True)
class Move:
    instrs: tuple[Instruction, ...]
    to_state: str

    def moving_pointers(self) -> list[int]:
        return [ins.pointer for ins in self.instrs if ins.moves]

    def __str__(self) -> str:
        return " ".join(str(i) for i in self.instrs) + f" {self.to_state}"


Outcome = Union[Move, Halt]


@dataclass(frozen=True)
class Transition:
    reads: tuple[Symbol, ...]
    from_state: str
    outcome: Outcome

    def __post_init__(self) -> None:
        if isinstance(self.outcome, Move):
            if len(self.outcome.instrs) != len(self.reads):
                raise ValueError("one instruction per pointer is required")
            for i, ins in enumerate(self.outcome.instrs, start=1):
                if ins.pointer != i:
                    raise ValueError(f"instruction {ins} sits at position {i}")

    @property
    def premise(self) -> tuple[tuple[Symbol, ...], str]:
        return (self.reads, self.from_state)

    @property
    def is_move(self) -> bool:
        return isinstance(self.outcome, Move)

    def __str__(self) -> str:
        reads = " ".join(s.value for s in self.reads)
        return f"{reads} {self.from_state} -> {self.outcome}"


@dataclass(frozen=True)
class PseudoConfiguration:
    slots: tuple[Symbol, ...]
    state: str

    def __str__(self) -> str:
        return ",".join(s.value for s in self.slots) + ";" + self.state


@dataclass(frozen=True)
class Configuration:
    positions: tuple[int, ...]
    slots: tuple[Symbol, ...]
    state: str

    @property
    def pseudo(self) -> PseudoConfiguration:
        return PseudoConfiguration(self.slots, self.state)


@dataclass(frozen=True)
class Machine:
    p: int
    states: tuple[str, ...]
    transitions: tuple[Transition, ...]
    initial: PseudoConfiguration | None = None
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError("a machine needs at least one pointer")
        known = set(self.states)
        index: dict[tuple[tuple[Symbol, ...], str], list[Outcome]] = {}
        for t in self.transitions:
            if len(t.reads) != self.p:
                raise ValueError(f"transition {t} does not read {self.p} symbols")
            targets = [t.from_state] + ([t.outcome.to_state] if isinstance(t.outcome, Move) else [])
            for q in targets:
                if q not in known:
                    raise ValueError(f"state {q!r} is not declared")
            bucket = index.setdefault(t.premise, [])
            if t.outcome not in bucket:
                bucket.append(t.outcome)
        if self.initial is not None and self.initial.state not in known:
            raise ValueError(f"initial state {self.initial.state!r} is not declared")
        object.__setattr__(self, "_index", {k: tuple(v) for k, v in index.items()})

    def outcomes(self, slots: tuple[Symbol, ...], state: str) -> tuple[Outcome, ...]:
        """Outcomes of every matching transition; empty when none matches."""
        return self._index.get((slots, state), ())

    def premises(self) -> list[tuple[tuple[Symbol, ...], str]]:
        return list(self._index)

    def pseudo_configurations(self) -> Iterable[PseudoConfiguration]:
        for q in self.states:
            for slots in itertools.product(SYMBOLS, repeat=self.p):
                yield PseudoConfiguration(slots, q)


def expand_shorthands(reads: Sequence[str | Symbol], from_state: str, outcome: Outcome) -> list[Transition]:
    """Expand ``*`` (any symbol) and ``0/1`` (0 or 1) into concrete transitions."""
    choices = []
    for r in reads:
        if isinstance(r, Symbol):
            choices.append((r,))
        elif r == "*":
            choices.append(SYMBOLS)
        elif r == "0/1":
            choices.append((Symbol.ZERO, Symbol.ONE))
        else:
            choices.append((Symbol.parse(r),))
    return [Transition(tuple(combo), from_state, outcome) for combo in itertools.product(*choices)]


def initial_configuration(c: PseudoConfiguration) -> Configuration:
    return Configuration(tuple(0 for _ in c.slots), c.slots, c.state)


def step(machine: Machine, word: BinaryWord, config: Configuration) -> list[Configuration | Halt]:
    """All successors of ``config``; a premise with no transition accepts."""
    found = machine.outcomes(config.slots, config.state)
    if not found:
        return [ACCEPT]
    size = len(word) + 1
    out: list[Configuration | Halt] = []
    for outcome in found:
        if isinstance(outcome, Halt):
            out.append(outcome)
            continue
        positions = list(config.positions)
        slots = list(config.slots)
        for i, ins in enumerate(outcome.instrs):
            if ins.moves:
                positions[i] = (positions[i] + ins.delta) % size
                slots[i] = symbol_at(word, positions[i])
        nxt = Configuration(tuple(positions), tuple(slots), outcome.to_state)
        if nxt not in out:
            out.append(nxt)
    return out


class Verdict(enum.Enum):
    ACCEPT = "ACCEPT"
    REJECT = "REJECT"
    DIVERGE = "DIVERGE"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RunResult:
    verdict: Verdict
    configurations: int
    branches: int
    max_depth: int | None

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "configurations": self.configurations,
            "branches": self.branches,
            "max_depth": self.max_depth,
        }


def run_from(machine: Machine, word: BinaryWord, start: Configuration) -> RunResult:
    """Explore every branch from ``start``.

    Successor sets depend only on the configuration, so the branch tree folds
    into a finite graph: a reachable reject leaf rejects, a reachable cycle
    without any reject diverges, and otherwise every branch accepts.
    """
    succ: dict[Configuration, list[Configuration | Halt]] = {}
    stack = [start]
    rejected = False
    while stack:
        cfg = stack.pop()
        if cfg in succ:
            continue
        nxt = step(machine, word, cfg)
        succ[cfg] = nxt
        for o in nxt:
            if o is REJECT:
                rejected = True
            elif isinstance(o, Configuration) and o not in succ:
                stack.append(o)

    # longest path and leaf counts by iterative post-order; grey nodes mark a cycle
    depth: dict[Configuration, int] = {}
    leaves: dict[Configuration, int] = {}
    on_path: set[Configuration] = set()
    cyclic = False
    work: list[tuple[Configuration, int]] = [(start, 0)]
    while work:
        cfg, idx = work.pop()
        if idx == 0:
            if cfg in depth:
                continue
            on_path.add(cfg)
        children = succ[cfg]
        if idx < len(children):
            work.append((cfg, idx + 1))
            child = children[idx]
            if isinstance(child, Configuration):
                if child in on_path:
                    cyclic = True
                elif child not in depth:
                    work.append((child, 0))
            continue
        on_path.discard(cfg)
        d, n = 0, 0
        for child in children:
            if isinstance(child, Configuration):
                d = max(d, depth.get(child, 0))
                n += leaves.get(child, 0)
            else:
                n += 1
        depth[cfg] = d + 1
        leaves[cfg] = n

    if rejected:
        verdict = Verdict.REJECT
    elif cyclic:
        verdict = Verdict.DIVERGE
    else:
        verdict = Verdict.ACCEPT
    return RunResult(
        verdict=verdict,
        configurations=len(succ),
        branches=leaves[start],
        max_depth=None if cyclic else depth[start],
    )


def run(machine: Machine, c: PseudoConfiguration, word: BinaryWord) -> RunResult:
    if c.state not in machine.states:
        raise ValueError(f"state {c.state!r} is not declared")
    if len(c.slots) != machine.p:
        raise ValueError(f"pseudo-configuration has {len(c.slots)} slots, machine has {machine.p} pointers")
    return run_from(machine, word, initial_configuration(c))


def all_configurations(machine: Machine, word: BinaryWord) -> Iterable[Configuration]:
    size = len(word) + 1
    for positions in itertools.product(range(size), repeat=machine.p):
        for c in machine.pseudo_configurations():
            yield Configuration(positions, c.slots, c.state)


def halts_everywhere(machine: Machine, word: BinaryWord) -> bool:
    """True when no configuration at all, reachable or not, can loop forever."""
    succ: dict[Configuration, list[Configuration]] = {}
    for cfg in all_configurations(machine, word):
        succ[cfg] = [o for o in step(machine, word, cfg) if isinstance(o, Configuration)]
    colour: dict[Configuration, int] = {}
    for root in succ:
        if root in colour:
            continue
        colour[root] = 1
        work = [(root, iter(succ[root]))]
        while work:
            node, it = work[-1]
            for child in it:
                c = colour.get(child, 0)
                if c == 1:
                    return False
                if c == 0:
                    colour[child] = 1
                    work.append((child, iter(succ[child])))
                    break
            else:
                colour[node] = 2
                work.pop()
    return True
