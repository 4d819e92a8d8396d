"""Small hand-written machines used by the acceptance batteries and the CLI demos.

``HALTING`` machines move one pointer per step and halt from every
configuration (any positions, any slots, any state) on every word, which is
what the operator encoding needs.  ``LOOPING`` machines diverge on some
inputs and feed the clock transform.
"""

from __future__ import annotations

from .machine_file import parse_machine
from .ndpm import Machine

HALTING: dict[str, str] = {
    "accept-all": """
        pointers: 1
        states: q0
        initial: $;q0
    """,
    "reject-all": """
        pointers: 1
        states: q0
        initial: $;q0
        * q0 -> reject
    """,
    "first-bit-one": """
        pointers: 1
        states: q0 q1
        initial: $;q0
        $ q0 -> +1 q1
        1 q1 -> accept
        0 q1 -> reject
        $ q1 -> accept
    """,
    "all-ones": """
        pointers: 1
        states: q0 scan
        initial: $;q0
        $ q0 -> +1 scan
        1 scan -> +1 scan
        0 scan -> reject
        $ scan -> accept
    """,
    "last-bit-zero": """
        pointers: 1
        states: q0 q1
        initial: $;q0
        $ q0 -> -1 q1
        0 q1 -> accept
        1 q1 -> reject
        $ q1 -> accept
    """,
    "even-ones": """
        pointers: 1
        states: s even odd
        initial: $;s
        $ s -> +1 even
        0 even -> +1 even
        1 even -> +1 odd
        $ even -> accept
        0 odd -> +1 odd
        1 odd -> +1 even
        $ odd -> reject
    """,
    "no-one-guess": """
        # universal guess: some branch stops on any 1 and rejects
        pointers: 1
        states: s g
        initial: $;s
        $ s -> +1 g
        0/1 g -> +1 g
        1 g -> reject
        $ g -> accept
    """,
    "both-ends-one": """
        # two move outcomes on one premise: look at a1 and at ak
        pointers: 1
        states: s fwd bwd
        initial: $;s
        $ s -> +1 fwd
        $ s -> -1 bwd
        0 fwd -> reject
        0 bwd -> reject
    """,
    "ends-equal": """
        pointers: 2
        states: s t u
        initial: $,$;s
        $ $ s -> +1 .2 t
        * $ t -> .1 -2 u
        0 1 u -> reject
        1 0 u -> reject
    """,
    "second-equals-first": """
        pointers: 2
        states: s a b c
        initial: $,$;s
        $ $ s -> +1 .2 a
        * $ a -> .1 +2 b
        * 0/1 b -> .1 +2 c
        0 1 c -> reject
        1 0 c -> reject
    """,
    "palindrome": """
        # pointer 1 walks forward, pointer 2 backward, one letter per round
        pointers: 2
        states: s a b
        initial: $,$;s
        $ $ s -> +1 .2 a
        0/1 * a -> .1 -2 b
        0 1 b -> reject
        1 0 b -> reject
        0 0 b -> +1 .2 a
        1 1 b -> +1 .2 a
    """,
    "confirm-zero": """
        # pointer 1 guesses a 0, pointer 2 confirms by scanning from the start
        pointers: 2
        states: s g h
        initial: $,$;s
        $ $ s -> +1 .2 g
        0/1 * g -> +1 .2 g
        0 * g -> .1 +2 h
        0 0/1 h -> .1 +2 h
        1 0/1 h -> .1 +2 h
        0 0 h -> reject
    """,
}

LOOPING: dict[str, str] = {
    "stay-forever": """
        pointers: 1
        states: q
        initial: $;q
        $ q -> .1 q
    """,
    "walk-forever": """
        pointers: 1
        states: q
        initial: $;q
        * q -> +1 q
    """,
    "bounce-on-one": """
        pointers: 1
        states: a b
        initial: $;a
        $ a -> +1 b
        1 b -> -1 a
        0 b -> accept
    """,
    "reject-zero-or-spin": """
        pointers: 1
        states: a b
        initial: $;a
        $ a -> +1 b
        0 b -> reject
        1 b -> +1 b
        $ b -> +1 b
    """,
    "two-pointer-ones": """
        pointers: 2
        states: q
        initial: $,$;q
        $ * q -> +1 +2 q
        1 * q -> +1 .2 q
        0 * q -> accept
    """,
    "two-pointer-choice": """
        # nondeterministic: pointer 1 may spin while pointer 2 rejects on a 0
        pointers: 2
        states: q
        initial: $,$;q
        * $ q -> .1 +2 q
        * 0 q -> reject
        * 1 q -> +1 .2 q
        * 1 q -> accept
    """,
}


def halting_machines() -> dict[str, Machine]:
    return {name: parse_machine(text, source=name) for name, text in HALTING.items()}


def looping_machines() -> dict[str, Machine]:
    return {name: parse_machine(text, source=name) for name, text in LOOPING.items()}
