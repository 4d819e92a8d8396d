"""Permutations of {0,…,p} and their nonnegative group algebra over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {0,…,n-1} stored by its images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images} is not a permutation")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> Permutation:
        images = list(range(n))
        images[i], images[j] = images[j], images[i]
        return cls(tuple(images))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: Permutation) -> Permutation:
        """``self ∘ other``: apply ``other`` first."""
        if other.size != self.size:
            raise ValueError("permutations act on different sets")
        return Permutation(tuple(self.images[i] for i in other.images))

    __mul__ = compose

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for i, img in enumerate(self.images):
            inv[img] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == img for i, img in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(self.size):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(i) for i in c) + ")" for c in cycles)


def tau(n: int, j: int) -> Permutation:
    """The transposition exchanging 0 and j on {0,…,n-1}."""
    return Permutation.transposition(n, 0, j)


def all_permutations(n: int) -> Iterator[Permutation]:
    import itertools

    for images in itertools.permutations(range(n)):
        yield Permutation(images)


class GroupAlgebraElement:
    """Finite nonnegative combination Σ α_g λ(g) with exact rational α_g > 0."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Permutation, Fraction | int] | Iterable[tuple[Permutation, Fraction | int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Permutation, Fraction] = {}
        for g, coeff in items:
            coeff = Fraction(coeff)
            if coeff < 0:
                raise ValueError("coefficients must be nonnegative")
            if coeff:
                acc[g] = acc.get(g, Fraction(0)) + coeff
        self._terms = dict(sorted(acc.items()))

    @classmethod
    def unit(cls, g: Permutation, coeff: Fraction | int = 1) -> GroupAlgebraElement:
        return cls({g: coeff})

    @property
    def terms(self) -> dict[Permutation, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupAlgebraElement) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        return GroupAlgebraElement(list(self._terms.items()) + list(other._terms.items()))

    def __mul__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        """Convolution: λ(g)λ(h) = λ(gh)."""
        return GroupAlgebraElement(
            (g.compose(h), a * b) for g, a in self._terms.items() for h, b in other._terms.items()
        )

    def scale(self, factor: Fraction | int) -> GroupAlgebraElement:
        factor = Fraction(factor)
        if factor < 0:
            raise ValueError("scaling factor must be nonnegative")
        return GroupAlgebraElement((g, a * factor) for g, a in self._terms.items())

    def is_unitary_sum(self) -> bool:
        """All coefficients equal to 1, i.e. a plain sum of permutation unitaries."""
        return all(a == 1 for a in self._terms.values())

    def __repr__(self) -> str:
        inner = " + ".join(f"{a}·{g}" for g, a in self._terms.items())
        return f"GroupAlgebraElement({inner or '0'})"
