"""Binary words on a circular tape and the adjacency-list input encoding."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import AlphabetError, EmptyGraphError, ParseError


class Symbol(enum.Enum):
    ZERO = "0"
    ONE = "1"
    STAR = "⋆"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str) -> Symbol:
        try:
            return _SYMBOL_ALIASES[text]
        except KeyError:
            raise AlphabetError(f"not a tape symbol: {text!r}") from None


_SYMBOL_ALIASES = {
    "0": Symbol.ZERO,
    "1": Symbol.ONE,
    "⋆": Symbol.STAR,
    "$": Symbol.STAR,  # ASCII spelling for files and shells
}

SYMBOLS: tuple[Symbol, ...] = (Symbol.ZERO, Symbol.ONE, Symbol.STAR)


@dataclass(frozen=True)
class BinaryWord:
    """The word ``⋆a₁…a_k``; ``bits`` holds ``a₁…a_k`` and ⋆ stays implicit."""

    bits: str = ""

    def __post_init__(self) -> None:
        bad = set(self.bits) - {"0", "1"}
        if bad:
            raise AlphabetError(f"binary words only contain 0 and 1, got {sorted(bad)}")

    def __len__(self) -> int:
        return len(self.bits)

    def length(self) -> int:
        return len(self.bits)

    def symbol_at(self, i: int) -> Symbol:
        return symbol_at(self, i)

    def __str__(self) -> str:
        return "⋆" + self.bits


def parse_word(text: str) -> BinaryWord:
    """Transcribe a ``0``/``1`` string; the empty string is the empty list ⋆."""
    for ch in text:
        if ch not in "01":
            raise AlphabetError(f"invalid character {ch!r} in word {text!r}")
    return BinaryWord(text)


def symbol_at(word: BinaryWord, i: int) -> Symbol:
    i %= len(word.bits) + 1
    if i == 0:
        return Symbol.STAR
    return Symbol.ONE if word.bits[i - 1] == "1" else Symbol.ZERO


def all_words(max_len: int, min_len: int = 0) -> list[BinaryWord]:
    """Every binary word with ``min_len <= k <= max_len``, shortest first."""
    out = []
    for k in range(min_len, max_len + 1):
        for code in range(2**k):
            out.append(BinaryWord(format(code, f"0{k}b") if k else ""))
    return out


def encode_graph(adjacency: Sequence[Sequence[int]], n: int | None = None) -> BinaryWord:
    """Encode a directed graph as ``⋆ 0ⁿ 1 R₁ 1 R₂ 1 … 1 R_n 1``.

    Row ``R_i`` lists the adjacency bits ``a_i1 … a_in`` separated by single
    zeros, so each row has ``2n - 1`` symbols.
    """
    if n is None:
        n = len(adjacency)
    if n < 1:
        raise EmptyGraphError("a graph needs at least one node")
    if len(adjacency) != n or any(len(row) != n for row in adjacency):
        raise ValueError(f"adjacency table is not {n}x{n}")
    parts = ["0" * n, "1"]
    for row in adjacency:
        parts.append("0".join("1" if a else "0" for a in row))
        parts.append("1")
    return BinaryWord("".join(parts))


def decode_graph(word: BinaryWord) -> list[list[int]]:
    """Invert :func:`encode_graph` by position arithmetic."""
    bits = word.bits
    n = bits.index("1") if "1" in bits else 0
    if n == 0 or len(bits) != n + 1 + n * (2 * n - 1) + n:
        raise ValueError(f"{word} is not a graph encoding")
    table = []
    for i in range(n):
        base = n + 1 + i * 2 * n
        table.append([int(bits[base + 2 * j]) for j in range(n)])
    return table


def load_graph(path: str | Path) -> list[list[int]]:
    """Read ``n`` then ``n`` rows of ``n`` space separated 0/1 entries."""
    path = Path(path)
    lines = [ln for ln in path.read_text().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty graph file", source=str(path))
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError("first line must be the node count", source=str(path), line=1,
                         token=lines[0].strip()) from None
    if n < 1:
        raise EmptyGraphError(f"{path}: a graph needs at least one node")
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} adjacency rows, found {len(lines) - 1}", source=str(path))
    table = []
    for lineno, line in enumerate(lines[1:], start=2):
        row = []
        for tok in line.split():
            if tok not in ("0", "1"):
                raise ParseError("adjacency entries are 0 or 1", source=str(path), line=lineno, token=tok)
            row.append(int(tok))
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", source=str(path), line=lineno)
        table.append(row)
    return table


def format_symbols(symbols: Iterable[Symbol]) -> str:
    return "".join(s.value for s in symbols)
