"""
Permutations in one-line notation (1-indexed values), pattern containment,
Rothe diagrams and the fixed pattern set used throughout the package.

>>> w = Permutation.parse("25143")
>>> w.length
5
>>> contains(Permutation.parse("526134"), Permutation.parse("1423"))
(1, 3, 5, 6)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import InvalidInput, ParseError

__all__ = [
    "Permutation", "PI", "PI_REVERSED", "identity", "longest", "all_perms",
    "length", "contains", "occurrences", "avoids_all", "reverse",
    "rothe_diagram", "lehmer_code",
]


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of {1..n} in one-line notation."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if sorted(entries) != list(range(1, len(entries) + 1)):
            raise InvalidInput(f"not a permutation of 1..{len(entries)}: {entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def parse(cls, text: str | Sequence[int] | Permutation) -> Permutation:
        """Accept "25143", "2,5,1,4,3", "2 5 1 4 3" or an integer sequence."""
        if isinstance(text, Permutation):
            return text
        if not isinstance(text, str):
            return cls(tuple(text))
        s = text.strip().strip("[]()")
        try:
            if "," in s or " " in s:
                entries = tuple(int(t) for t in s.replace(",", " ").split())
            else:
                if not s.isdigit():
                    raise ValueError
                entries = tuple(int(c) for c in s)
        except ValueError:
            raise ParseError(f"cannot parse permutation {text!r}") from None
        return cls(entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        """1-indexed access: ``w[i]`` is w_i."""
        return self.entries[i - 1]

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.entries))
        return ",".join(map(str, self.entries))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    @cached_property
    def length(self) -> int:
        return length(self)

    @cached_property
    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, v in enumerate(self.entries, 1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def position(self, value: int) -> int:
        """The (1-indexed) position i with w_i = value."""
        return self.inverse.entries[value - 1]

    def reverse(self) -> Permutation:
        return Permutation(self.entries[::-1])

    def swap_positions(self, i: int) -> Permutation:
        """Right multiplication by the simple transposition s_i."""
        e = list(self.entries)
        e[i - 1], e[i] = e[i], e[i - 1]
        return Permutation(tuple(e))

    def to_json(self) -> list[int]:
        return list(self.entries)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def longest(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def all_perms(n: int) -> list[Permutation]:
    """All of S_n in lexicographic order."""
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def length(w: Permutation) -> int:
    e = w.entries
    return sum(1 for i in range(len(e)) for j in range(i + 1, len(e)) if e[i] > e[j])


def _pattern_index(p: Sequence[int]) -> list[list[tuple[int, int]]]:
    # for each prefix length k, the comparisons the k-th chosen value must satisfy
    # against earlier chosen values: list of (earlier_index, sign)
    checks = []
    for k in range(len(p)):
        checks.append([(j, 1 if p[k] > p[j] else -1) for j in range(k)])
    return checks


def occurrences(w: Permutation, p: Permutation) -> Iterator[tuple[int, ...]]:
    """
    Yield every occurrence of `p` in `w` as a strictly increasing tuple of
    1-indexed positions, in lexicographic order.

    Depth-first extension of index prefixes; a prefix is kept only while it is
    order-isomorphic to the corresponding prefix of `p`.
    """
    e, k, n = w.entries, p.n, w.n
    if k > n:
        return
    checks = _pattern_index(p.entries)
    chosen: list[int] = []

    def extend(start: int) -> Iterator[tuple[int, ...]]:
        depth = len(chosen)
        if depth == k:
            yield tuple(i + 1 for i in chosen)
            return
        for i in range(start, n - (k - depth) + 1):
            v = e[i]
            if all((v > e[chosen[j]]) == (s > 0) for j, s in checks[depth]):
                chosen.append(i)
                yield from extend(i + 1)
                chosen.pop()

    yield from extend(0)


def contains(w: Permutation, p: Permutation) -> tuple[int, ...] | None:
    """Return the lexicographically first occurrence of `p` in `w`, or None."""
    return next(occurrences(w, p), None)


def avoids_all(w: Permutation, patterns: Iterable[Permutation]) -> bool:
    return all(contains(w, p) is None for p in patterns)


def reverse(w: Permutation) -> Permutation:
    return w.reverse()


def rothe_diagram(w: Permutation) -> frozenset[tuple[int, int]]:
    """D(w) = {(i, j) : j < w_i and i < w^{-1}(j)}, 1-indexed (row, col) cells."""
    inv = w.inverse
    return frozenset(
        (i, j)
        for i in range(1, w.n + 1)
        for j in range(1, w.n + 1)
        if j < w[i] and i < inv[j]
    )


def lehmer_code(w: Permutation) -> tuple[int, ...]:
    e = w.entries
    return tuple(sum(1 for j in range(i + 1, len(e)) if e[j] < e[i]) for i in range(len(e)))


PI: tuple[Permutation, ...] = tuple(
    Permutation.parse(s) for s in ("1423", "12543", "13254", "25143", "215643", "216543", "241653")
)
PI_REVERSED: tuple[Permutation, ...] = tuple(p.reverse() for p in PI)

VEXILLARY_PATTERN = Permutation.parse("2143")

