"""Encode a one-move machine and a pseudo-configuration as an observation.

Every machine step becomes two applications of the product "integer, then
observation".  The first integer application acts on the idle slot 0 and is
a pass-through; the ``m`` summand then swaps the moving pointer into slot 0
and enters the transition-specific control ``move[t]``.  The second integer
application follows the link of the moving pointer's node, and the ``l``
summands filter on the symbol found there, record it in the pointer's memory,
swap the pointer back out and enter the target state.

Flavors carry the direction.  A forward move fans out to the three output
flavors, the link from a letter's output leads to the next letter's input, so
the ``l`` summands read input flavors.  A backward move does the opposite.
Exactly one of the three fanned-out flavors is linked at any slice, so each
machine step yields exactly one surviving product branch.  Summands that hand
control back to a step starting on the idle slot also fan out to output
flavors, so that the pass-through never loses a branch.
"""

from __future__ import annotations

from .algebra import GroupAlgebraElement, Permutation, tau
from .errors import EncodingError
from .integer_rep import NodeFlavor, input_flavor, output_flavor
from .ndpm import Halt, Machine, Move, PseudoConfiguration, Transition
from .observation import (
    ALL_FLAVORS,
    IN,
    KEEP,
    OUT,
    OUTPUT_FLAVORS,
    Observation,
    SlotMap,
    Summand,
    pattern,
)
from .words import Symbol

SUMMED = {
    Symbol.ZERO: frozenset({NodeFlavor.O0, NodeFlavor.I0}),
    Symbol.ONE: frozenset({NodeFlavor.O1, NodeFlavor.I1}),
    Symbol.STAR: frozenset({NodeFlavor.S, NodeFlavor.E}),
}


def move_label(tid: int) -> str:
    return f"move[{tid}]"


def back_label(j: int) -> str:
    return f"back[{j}]"


def move_back_label(j: int) -> str:
    return f"move-back[{j}]"


def premise_slots(reads: tuple[Symbol, ...]) -> tuple[SlotMap, ...]:
    """Flavor-summed projections: a symbol matches whichever side it was read from."""
    return tuple(SlotMap(SUMMED[s]) for s in reads)


def _unit(g: Permutation) -> GroupAlgebraElement:
    return GroupAlgebraElement.unit(g)


def moving_pointer(t: Transition) -> tuple[int, int]:
    if not isinstance(t.outcome, Move):
        raise EncodingError(f"{t} has no instructions")
    movers = [ins for ins in t.outcome.instrs if ins.moves]
    if len(movers) != 1:
        raise EncodingError(f"{t} moves {len(movers)} pointers; normalize the machine first")
    return movers[0].pointer, movers[0].delta


def encode_transition(t: Transition, tid: int, p: int) -> list[Summand]:
    """Summands for one transition; accepting transitions contribute nothing.

    A rejecting transition yields the single summand entering the rewind loop
    from its premise.  A moving transition yields ``m`` and ``l_0, l_1, l_⋆``.
    """
    identity = Permutation.identity(p + 1)
    if t.outcome is Halt.ACCEPT:
        return []
    if t.outcome is Halt.REJECT:
        return [Summand(OUT, _unit(identity), premise_slots(t.reads), t.from_state, back_label(1),
                        f"reject {t}")]
    j, delta = moving_pointer(t)
    swap = _unit(tau(p + 1, j))
    control = move_label(tid)
    out = [Summand(OUT if delta > 0 else IN, swap, premise_slots(t.reads), t.from_state, control, f"m {t}")]
    for b in (Symbol.ZERO, Symbol.ONE, Symbol.STAR):
        read = input_flavor(b) if delta > 0 else output_flavor(b)
        slots = [KEEP] * p
        slots[j - 1] = SlotMap(ALL_FLAVORS, read)
        out.append(Summand(pattern(OUTPUT_FLAVORS, [read]), swap, tuple(slots), control, t.outcome.to_state,
                           f"l{b.value} {t}"))
    return out


def reject_loop(p: int, c: PseudoConfiguration) -> list[Summand]:
    """Rewind every pointer to ⋆, restore the slots of ``c`` and resume in ``c.state``."""
    out = []
    for j in range(1, p + 1):
        swap = _unit(tau(p + 1, j))
        keep = tuple(KEEP for _ in range(p))
        out.append(Summand(IN, swap, keep, back_label(j), move_back_label(j), f"rm{j}"))
        out.append(Summand(pattern(OUTPUT_FLAVORS, [NodeFlavor.O0, NodeFlavor.O1]), swap, keep,
                           move_back_label(j), back_label(j), f"rr{j}"))
        slots = list(keep)
        slots[j - 1] = SlotMap(ALL_FLAVORS, output_flavor(c.slots[j - 1]))
        nxt = back_label(j + 1) if j < p else c.state
        out.append(Summand(pattern(OUTPUT_FLAVORS, [NodeFlavor.S]), swap, tuple(slots), move_back_label(j), nxt,
                           f"rc{j}"))
    return out


def encode_machine(machine: Machine, c: PseudoConfiguration) -> Observation:
    p = machine.p
    if len(c.slots) != p or c.state not in machine.states:
        raise EncodingError(f"{c} is not a pseudo-configuration of this machine")
    summands: list[Summand] = []
    moves: list[str] = []
    for reads, q in machine.premises():
        for outcome in machine.outcomes(reads, q):
            t = Transition(reads, q, outcome)
            if isinstance(outcome, Move):
                moves.append(move_label(len(moves)))
                summands.extend(encode_transition(t, len(moves) - 1, p))
            else:
                summands.extend(encode_transition(t, -1, p))
    extra = moves + [lbl for j in range(1, p + 1) for lbl in (back_label(j), move_back_label(j))]
    clash = set(extra) & set(machine.states)
    if clash:
        raise EncodingError(f"state names {sorted(clash)} collide with encoder control labels")
    summands.extend(reject_loop(p, c))
    return Observation(p, list(machine.states) + extra, summands)


def expected_summand_count(machine: Machine) -> int:
    moving = sum(1 for prem in machine.premises() for o in machine.outcomes(*prem) if isinstance(o, Move))
    rejecting = sum(1 for prem in machine.premises() if Halt.REJECT in machine.outcomes(*prem))
    return 4 * moving + 3 * machine.p + rejecting


def _vector(pi: NodeFlavor, e) -> str:
    return f"({pi.label}, {','.join(f.label for f in e.slots)}, {e.control})"


def format_observation(obs: Observation, expand: bool = True) -> str:
    """One line per matrix entry (or per summand when ``expand`` is false)."""
    lines = []
    if not expand:
        for s in obs.summands:
            flavors = " ".join(f"{r.label}<-{c.label}" for r, c in sorted(s.flavor))
            slots = " ".join(str(sm) for sm in s.slots)
            group = " + ".join(f"{a}*{g}" for g, a in s.group.items())
            lines.append(f"{s.label}: [{flavors}] {group} [{slots}] {s.source} -> {s.target}")
        return "\n".join(lines)
    for ((row, dst), (col, src)), elem in sorted(obs.entries().items(), key=lambda kv: str(kv[0])):
        for g, a in elem.items():
            lines.append(f"{_vector(col, src)} -> {_vector(row, dst)} {g} {a}")
    return "\n".join(lines)
