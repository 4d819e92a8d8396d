from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ndpm_operators.errors import AlphabetError, EmptyGraphError, ParseError
from ndpm_operators.words import (
    BinaryWord,
    Symbol,
    all_words,
    decode_graph,
    encode_graph,
    load_graph,
    parse_word,
    symbol_at,
)

bits = st.text(alphabet="01", max_size=12)


def reference_encoding(table: list[list[int]]) -> str:
    """Independent string builder for the graph input format."""
    n = len(table)
    out = "0" * n + "1"
    for row in table:
        out += "0".join(str(a) for a in row) + "1"
    return out


def test_parse_word():
    w = parse_word("110")
    assert w.bits == "110" and len(w) == 3
    assert str(w) == "⋆110"
    assert len(parse_word("")) == 0
    with pytest.raises(AlphabetError):
        parse_word("2x")


def test_symbol_at_examples():
    w = parse_word("10")
    assert symbol_at(w, 0) is Symbol.STAR
    assert symbol_at(w, 3) is Symbol.STAR
    assert symbol_at(w, 2) is Symbol.ZERO
    assert symbol_at(w, 1) is Symbol.ONE


def test_symbol_aliases():
    assert Symbol.parse("$") is Symbol.STAR
    assert Symbol.parse("⋆") is Symbol.STAR
    with pytest.raises(AlphabetError):
        Symbol.parse("2")


def test_all_words_count():
    assert len(all_words(8, min_len=1)) == 510
    assert len(all_words(3)) == 15


def test_encode_graph_examples():
    assert str(encode_graph([[0]], 1)) == "⋆0101"
    assert str(encode_graph([[0, 1], [0, 0]], 2)) == "⋆00100110001"
    with pytest.raises(EmptyGraphError):
        encode_graph([], 0)


@given(bits, st.integers(min_value=0, max_value=50), st.integers(min_value=0, max_value=5))
def test_symbol_at_is_periodic(text, i, m):
    w = parse_word(text)
    assert symbol_at(w, i) == symbol_at(w, i + m * (len(w) + 1))


@given(st.integers(min_value=1, max_value=8).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_encoding_length_and_round_trip(table):
    n = len(table)
    w = encode_graph(table, n)
    assert len(w) == n + 1 + n * (2 * n - 1) + n
    assert w.bits == reference_encoding(table)
    assert decode_graph(w) == table


def test_round_trip_exhaustive_small():
    import itertools

    for n in (1, 2, 3):
        for flat in itertools.product((0, 1), repeat=n * n):
            table = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
            assert decode_graph(encode_graph(table, n)) == table


def test_load_graph(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("# comment\n2\n0 1\n0 0\n")
    assert load_graph(f) == [[0, 1], [0, 0]]
    f.write_text("2\n0 1\n0 x\n")
    with pytest.raises(ParseError) as err:
        load_graph(f)
    assert ":3:" in str(err.value) and "'x'" in str(err.value)
    f.write_text("0\n")
    with pytest.raises(EmptyGraphError):
        load_graph(f)


def test_binary_word_rejects_star_in_bits():
    with pytest.raises(AlphabetError):
        BinaryWord("1⋆")
