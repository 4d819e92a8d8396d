"""Machine-to-machine constructions: one move per step, clocks, pointer sensing."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .ndpm import (
    ACCEPT,
    REJECT,
    Halt,
    Instruction,
    Machine,
    Move,
    Outcome,
    PseudoConfiguration,
    Transition,
    expand_shorthands,
)
from .words import SYMBOLS, Symbol

_STAR = Symbol.STAR
_BITS = (Symbol.ZERO, Symbol.ONE)


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    n = 1
    while name in taken:
        n += 1
        name = f"{base}#{n}"
    taken.add(name)
    return name


def _stays(p: int) -> list[Instruction]:
    return [Instruction(i, 0) for i in range(1, p + 1)]


def _single(p: int, j: int, delta: int) -> tuple[Instruction, ...]:
    instrs = _stays(p)
    instrs[j - 1] = Instruction(j, delta)
    return tuple(instrs)


def _is_stay_only(o: Outcome) -> bool:
    return isinstance(o, Move) and not o.moving_pointers()


def one_move_normalize(machine: Machine) -> tuple[Machine, dict[PseudoConfiguration, PseudoConfiguration]]:
    """Rewrite ``machine`` so that every transition moves exactly one pointer.

    Multi-move transitions become chains through fresh states, moving pointers
    in ascending index order.  Stay-only transitions are fused away: the
    premise inherits the outcomes of the premise it would reach, since the
    slots do not change.  A premise whose stay-only closure loops is sent to a
    fresh two-state shuttle that diverges without rejecting, so the verdict is
    preserved in that case too.
    """
    p = machine.p
    taken = set(machine.states)
    new_states = list(machine.states)
    out: list[Transition] = []
    shuttle: tuple[str, str] | None = None

    def closure(reads: tuple[Symbol, ...], state: str) -> tuple[list[Outcome], bool]:
        seen = {state}
        stack = [state]
        found: list[Outcome] = []
        looped = False
        while stack:
            q = stack.pop()
            outcomes = machine.outcomes(reads, q)
            if not outcomes:
                found.append(ACCEPT)
            for o in outcomes:
                if _is_stay_only(o):
                    if o.to_state in seen:
                        looped = True
                    else:
                        seen.add(o.to_state)
                        stack.append(o.to_state)
                elif o not in found:
                    found.append(o)
        return found, looped

    chain_id = 0
    for reads, q in machine.premises():
        direct = machine.outcomes(reads, q)
        if any(_is_stay_only(o) for o in direct):
            outcomes, looped = closure(reads, q)
            if looped:
                if shuttle is None:
                    shuttle = (_fresh("loop.fwd", taken), _fresh("loop.back", taken))
                    new_states.extend(shuttle)
                    out.extend(expand_shorthands(["*"] * p, shuttle[0], Move(_single(p, 1, 1), shuttle[1])))
                    out.extend(expand_shorthands(["*"] * p, shuttle[1], Move(_single(p, 1, -1), shuttle[0])))
                outcomes.append(Move(_single(p, 1, 1), shuttle[1]))
        else:
            outcomes = list(direct)
        for o in outcomes:
            if isinstance(o, Halt):
                out.append(Transition(reads, q, o))
                continue
            movers = o.moving_pointers()
            if len(movers) <= 1:
                out.append(Transition(reads, q, o))
                continue
            chain_id += 1
            hops = [_fresh(f"{q}.mv{chain_id}.{i}", taken) for i in range(1, len(movers))]
            new_states.extend(hops)
            targets = hops + [o.to_state]
            deltas = {ins.pointer: ins.delta for ins in o.instrs}
            first = movers[0]
            out.append(Transition(reads, q, Move(_single(p, first, deltas[first]), targets[0])))
            for src, j, dst in zip(hops, movers[1:], targets[1:]):
                out.extend(expand_shorthands(["*"] * p, src, Move(_single(p, j, deltas[j]), dst)))
    result = Machine(p, tuple(new_states), tuple(out), machine.initial)
    mapping = {c: c for c in machine.pseudo_configurations()}
    return result, mapping


def clock_size(p: int, n_states: int) -> int:
    """Number d of clock hands beyond the first: p + ceil(log2(3^p |Q|))."""
    return p + math.ceil(math.log2(3**p * n_states))


def clock_transitions(d: int) -> list[tuple[tuple[Symbol, ...], tuple[int, ...] | None]]:
    """Clock patterns on d+1 hands with the hands they advance (``None`` rejects).

    Patterns not listed are the ones the clock never produces from a fresh
    start; the transform sends them to reject.
    """
    n = d + 1
    rows: list[tuple[tuple[Symbol, ...], tuple[int, ...] | None]] = []
    rows.append(((_STAR,) * n, tuple(range(n))))
    for bits in itertools.product(_BITS, repeat=n):
        rows.append((bits, (0,)))
    for a in range(n):
        for bits in itertools.product(_BITS, repeat=n - 1):
            pattern = bits[:a] + (_STAR,) + bits[a:]
            rows.append((pattern, (a, a + 1) if a < n - 1 else None))
    return rows


def make_acyclic(machine: Machine) -> tuple[Machine, dict[PseudoConfiguration, PseudoConfiguration]]:
    """Add d+1 clock pointers so that every run halts.

    The first hand advances on every step; a hand reading ⋆ advances itself
    and carries into the next one; the last hand reading ⋆ rejects.  Halting
    outcomes of the original machine are copied under every clock reading.
    Premises the original machine leaves undefined stay undefined, so they
    keep accepting.  A one-cell tape cannot host a clock, so on the empty word
    the transformed machine behaves like the original.
    """
    p = machine.p
    d = clock_size(p, len(machine.states))
    n = d + 1
    rows = clock_transitions(d)
    listed = {pattern for pattern, _ in rows}
    unlisted = [pat for pat in itertools.product(SYMBOLS, repeat=n) if pat not in listed]
    out: list[Transition] = []
    for reads, q in machine.premises():
        outcomes = machine.outcomes(reads, q)
        moves = [o for o in outcomes if isinstance(o, Move)]
        halts = [o for o in outcomes if isinstance(o, Halt)]
        for h in halts:
            for pattern in itertools.product(SYMBOLS, repeat=n):
                out.append(Transition(reads + pattern, q, h))
        if not moves:
            continue
        for pattern, hands in rows:
            if hands is None:
                out.append(Transition(reads + pattern, q, REJECT))
                continue
            for m in moves:
                instrs = list(m.instrs)
                for h in range(n):
                    instrs.append(Instruction(p + 1 + h, 1 if h in hands else 0))
                out.append(Transition(reads + pattern, q, Move(tuple(instrs), m.to_state)))
        for pattern in unlisted:
            out.append(Transition(reads + pattern, q, REJECT))
    initial = None
    if machine.initial is not None:
        initial = clocked(machine.initial, d)
    result = Machine(p + n, machine.states, tuple(out), initial)
    mapping = {c: clocked(c, d) for c in machine.pseudo_configurations()}
    return result, mapping


def clocked(c: PseudoConfiguration, d: int) -> PseudoConfiguration:
    return PseudoConfiguration(c.slots + (_STAR,) * (d + 1), c.state)


@dataclass(frozen=True)
class Fragment:
    entry: str
    states: tuple[str, ...]
    transitions: tuple[Transition, ...]


def sensing_equal_routine(
    p: int,
    j1: int,
    j2: int,
    j3: int,
    on_equal: str,
    on_unequal: str,
    name: str = "sense",
) -> Fragment:
    """Decide whether pointers j1 and j2 sit at the same address.

    Requires pointer j3 on ⋆ and accurate slots for j1 and j2 on entry.  The
    fragment walks j1, j2 back towards ⋆ while j3 counts forward, records in
    the state whether they reached ⋆ together, then walks everybody back and
    stays into ``on_equal`` or ``on_unequal`` once j3 reads ⋆ again.
    """
    if len({j1, j2, j3}) != 3 or not all(1 <= j <= p for j in (j1, j2, j3)):
        raise ValueError("sensing needs three distinct pointers within 1..p")
    entry, down, up_eq, up_neq = (f"{name}.{s}" for s in ("entry", "down", "up.eq", "up.neq"))

    def reads(**fixed: str) -> list[str]:
        r = ["*"] * p
        for key, sym in fixed.items():
            r[{"a": j1, "b": j2, "c": j3}[key] - 1] = sym
        return r

    def instrs(da: int, db: int, dc: int) -> tuple[Instruction, ...]:
        out = _stays(p)
        for j, delta in ((j1, da), (j2, db), (j3, dc)):
            out[j - 1] = Instruction(j, delta)
        return tuple(out)

    descend = instrs(-1, -1, 1)
    climb = instrs(1, 1, -1)
    ts: list[Transition] = []
    add = ts.extend
    add(expand_shorthands(reads(a="$", b="$"), entry, Move(tuple(_stays(p)), on_equal)))
    add(expand_shorthands(reads(a="$", b="0/1"), entry, Move(tuple(_stays(p)), on_unequal)))
    add(expand_shorthands(reads(a="0/1", b="$"), entry, Move(tuple(_stays(p)), on_unequal)))
    add(expand_shorthands(reads(a="0/1", b="0/1"), entry, Move(descend, down)))
    add(expand_shorthands(reads(a="$", b="$"), down, Move(climb, up_eq)))
    add(expand_shorthands(reads(a="$", b="0/1"), down, Move(climb, up_neq)))
    add(expand_shorthands(reads(a="0/1", b="$"), down, Move(climb, up_neq)))
    add(expand_shorthands(reads(a="0/1", b="0/1"), down, Move(descend, down)))
    for up, target in ((up_eq, on_equal), (up_neq, on_unequal)):
        add(expand_shorthands(reads(c="$"), up, Move(tuple(_stays(p)), target)))
        add(expand_shorthands(reads(c="0/1"), up, Move(climb, up)))
    return Fragment(entry, (entry, down, up_eq, up_neq), tuple(ts))


def with_fragment(machine: Machine, fragment: Fragment, extra: Sequence[Transition] = ()) -> Machine:
    """Machine extended by a fragment's states and transitions."""
    states = tuple(dict.fromkeys(machine.states + fragment.states))
    return Machine(machine.p, states, machine.transitions + fragment.transitions + tuple(extra), machine.initial)
