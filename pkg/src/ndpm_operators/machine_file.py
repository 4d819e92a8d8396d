"""Text format for machines.

Example::

    pointers: 2
    states: q0 q1
    initial: $,$;q0
    # reads... state -> instructions... state'
    * 0 q0 -> .1 +2 q1
    0/1 $ q1 -> accept

``*`` matches any symbol, ``0/1`` matches a bit and ``$`` spells ⋆.  An
instruction is ``+j``, ``-j`` or ``.j``; pointers left out of a transition
stay where they are.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import AlphabetError, ParseError
from .ndpm import ACCEPT, REJECT, Instruction, Machine, Move, PseudoConfiguration, Transition, expand_shorthands
from .words import Symbol

_INSTR = re.compile(r"^([+\-.])(\d+)$")
_READ_TOKENS = {"*", "0/1", "0", "1", "$", "⋆"}


def parse_pseudo(text: str, *, source: str = "<pseudo>", line: int | None = None) -> PseudoConfiguration:
    """Parse ``sym,sym,…;state``; wildcards are not allowed here."""
    if ";" not in text:
        raise ParseError("pseudo-configuration must look like 'sym,…;state'", source=source, line=line,
                         token=text)
    syms, state = text.rsplit(";", 1)
    slots = []
    for tok in syms.split(","):
        tok = tok.strip()
        try:
            slots.append(Symbol.parse(tok))
        except AlphabetError:
            raise ParseError("pseudo-configurations take concrete symbols 0, 1 or $", source=source,
                             line=line, token=tok) from None
    state = state.strip()
    if not state:
        raise ParseError("missing state", source=source, line=line, token=text)
    return PseudoConfiguration(tuple(slots), state)


def parse_machine(text: str, source: str = "<string>") -> Machine:
    p: int | None = None
    states: list[str] | None = None
    initial: PseudoConfiguration | None = None
    transitions: list[Transition] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("pointers:"):
            value = line.split(":", 1)[1].strip()
            if not value.isdigit() or int(value) < 1:
                raise ParseError("pointer count must be a positive integer", source=source, line=lineno,
                                 token=value)
            p = int(value)
            continue
        if line.startswith("states:"):
            states = line.split(":", 1)[1].split()
            if not states:
                raise ParseError("at least one state is required", source=source, line=lineno)
            continue
        if line.startswith("initial:"):
            initial = parse_pseudo(line.split(":", 1)[1].strip(), source=source, line=lineno)
            continue
        if p is None or states is None:
            raise ParseError("'pointers:' and 'states:' must precede transitions", source=source, line=lineno)
        transitions.extend(_parse_transition(line, p, states, source, lineno))
    if p is None or states is None:
        raise ParseError("missing 'pointers:' or 'states:' header", source=source)
    if initial is not None:
        if len(initial.slots) != p:
            raise ParseError(f"initial pseudo-configuration needs {p} symbols", source=source,
                             token=str(initial))
        if initial.state not in states:
            raise ParseError("initial state is not declared", source=source, token=initial.state)
    return Machine(p, tuple(states), tuple(transitions), initial)


def _parse_transition(line: str, p: int, states: list[str], source: str, lineno: int) -> list[Transition]:
    if "->" not in line:
        raise ParseError("transition lines need '->'", source=source, line=lineno, token=line)
    lhs, rhs = (part.split() for part in line.split("->", 1))
    if len(lhs) != p + 1:
        raise ParseError(f"premise needs {p} symbols and a state", source=source, line=lineno,
                         token=" ".join(lhs))
    *reads, state = lhs
    for tok in reads:
        if tok not in _READ_TOKENS:
            raise ParseError("unknown read symbol", source=source, line=lineno, token=tok)
    if state not in states:
        raise ParseError("undeclared state", source=source, line=lineno, token=state)
    if len(rhs) == 1 and rhs[0] in ("accept", "reject"):
        outcome = ACCEPT if rhs[0] == "accept" else REJECT
        return expand_shorthands(reads, state, outcome)
    if not rhs:
        raise ParseError("missing outcome", source=source, line=lineno)
    *instr_toks, target = rhs
    if target not in states:
        raise ParseError("undeclared state", source=source, line=lineno, token=target)
    deltas = [0] * p
    seen: set[int] = set()
    for tok in instr_toks:
        m = _INSTR.match(tok)
        if not m:
            raise ParseError("instructions look like +j, -j or .j", source=source, line=lineno, token=tok)
        j = int(m.group(2))
        if not 1 <= j <= p or j in seen:
            raise ParseError("pointer index out of range or repeated", source=source, line=lineno, token=tok)
        seen.add(j)
        deltas[j - 1] = {"+": 1, "-": -1, ".": 0}[m.group(1)]
    instrs = tuple(Instruction(i + 1, d) for i, d in enumerate(deltas))
    return expand_shorthands(reads, state, Move(instrs, target))


def load_machine(path: str | Path) -> Machine:
    path = Path(path)
    return parse_machine(path.read_text(encoding="utf-8"), source=str(path))


def format_machine(machine: Machine) -> str:
    """Serialize with concrete symbols only; parsing the result gives the same machine."""
    lines = [f"pointers: {machine.p}", "states: " + " ".join(machine.states)]
    if machine.initial is not None:
        lines.append("initial: " + ",".join(_ascii(s) for s in machine.initial.slots) + ";"
                     + machine.initial.state)
    for t in machine.transitions:
        reads = " ".join(_ascii(s) for s in t.reads)
        if isinstance(t.outcome, Move):
            rhs = " ".join(str(i) for i in t.outcome.instrs) + " " + t.outcome.to_state
        else:
            rhs = t.outcome.value
        lines.append(f"{reads} {t.from_state} -> {rhs}")
    return "\n".join(lines) + "\n"


def _ascii(sym: Symbol) -> str:
    return "$" if sym is Symbol.STAR else sym.value
