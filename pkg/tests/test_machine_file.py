from __future__ import annotations

import pytest

from ndpm_operators.errors import ParseError
from ndpm_operators.machine_file import format_machine, load_machine, parse_machine, parse_pseudo
from ndpm_operators.ndpm import PseudoConfiguration
from ndpm_operators.words import Symbol

TEXT = """
# two pointers
pointers: 2
states: s t
initial: $,$;s
$ * s -> +1 .2 t   # shorthand on pointer 2
0/1 $ t -> reject
"""


def test_parse_expands_shorthands():
    m = parse_machine(TEXT)
    assert m.p == 2 and m.states == ("s", "t")
    assert m.initial == PseudoConfiguration((Symbol.STAR, Symbol.STAR), "s")
    assert len(m.transitions) == 3 + 2


def test_format_round_trip(halting):
    for m in halting.values():
        again = parse_machine(format_machine(m))
        assert set(again.transitions) == set(m.transitions)
        assert again.initial == m.initial


def test_omitted_instructions_default_to_stay():
    m = parse_machine("pointers: 2\nstates: q r\n$ $ q -> +2 r\n")
    (t,) = m.transitions
    assert [i.delta for i in t.outcome.instrs] == [0, 1]


@pytest.mark.parametrize("text, line, token", [
    ("pointers: 1\nstates: q\n$ q -> +1 nowhere\n", 3, "nowhere"),
    ("pointers: 1\nstates: q\n2 q -> accept\n", 3, "2"),
    ("pointers: x\n", 1, "x"),
    ("pointers: 1\nstates: q\n$ q -> +3 q\n", 3, "+3"),
])
def test_parse_errors_name_line_and_token(text, line, token):
    with pytest.raises(ParseError) as err:
        parse_machine(text, source="m.ndpm")
    assert err.value.line == line
    assert err.value.token == token
    assert str(err.value).startswith(f"m.ndpm:{line}:")


def test_pseudo_configuration_syntax():
    assert parse_pseudo("⋆,1;q") == PseudoConfiguration((Symbol.STAR, Symbol.ONE), "q")
    with pytest.raises(ParseError):
        parse_pseudo("*;q")
    with pytest.raises(ParseError):
        parse_pseudo("0,1")


def test_load_machine(tmp_path):
    f = tmp_path / "m.ndpm"
    f.write_text(TEXT)
    assert load_machine(f).p == 2
