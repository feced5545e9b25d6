"""
Configurations in a BPD that force its co-BPD to be non-reduced.

A configuration consists of a top flat ``T`` and a bottom flat ``F`` (both H
tiles) together with two chains of alternating elbows:

* the *are chain* starts at the closest elbow below ``T``, which must be an
  SE elbow; from an SE elbow the chain continues to the closest elbow on its
  right (an NW elbow) and then to the closest elbow below that (an SE elbow),
  and it ends at the SE elbow that is the closest elbow left of ``F``;
* the *jay chain* starts at the closest elbow right of ``T``, which must be
  an NW elbow; from an NW elbow it continues to the closest elbow below (an
  SE elbow) and then to the closest elbow right of that (an NW elbow), and
  it ends at the NW elbow that is the closest elbow above ``F``.

"Closest" scans skip every tile that is not an SE or NW elbow. The witness
pipes are the pipe through the top flat and the pipe through the bottom
flat, with ``p`` the smaller label and ``q`` the larger. In a reduced BPD the
bottom-flat pipe also owns the final SE elbow; in a non-reduced one a bump
between that elbow and ``F`` can hand the flat to another pipe, and the
flat's owner is the one that matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .diagram import Diagram, Mode, co, require_valid
from .errors import InvalidInput
from .perm import Permutation, occurrences
from .trace import TraceResult, trace

__all__ = [
    "ConfigInstance", "Case", "find_configurations", "co_nonreduced",
    "classify_case", "LemmaCheck", "lemma_predicates", "LEMMA_SHAPES",
    "LEMMA_PATTERNS",
]

Cell = tuple[int, int]
ELBOW = frozenset("rj")


class Case(str, Enum):
    NO_DROOP_AFTER = "NoDroopAfter"
    CROSS_BEFORE = "CrossBefore"
    DROOP_AFTER = "DroopAfter"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ConfigInstance:
    top_flat: Cell
    bottom_flat: Cell
    are_chain: tuple[Cell, ...]
    jay_chain: tuple[Cell, ...]
    top_pipe: int
    bottom_pipe: int

    @property
    def p(self) -> int:
        return min(self.top_pipe, self.bottom_pipe)

    @property
    def q(self) -> int:
        return max(self.top_pipe, self.bottom_pipe)

    def mark(self, pipe: int) -> Cell:
        """The configuration cell a witness pipe passes through."""
        return self.top_flat if pipe == self.top_pipe else self.bottom_flat

    @property
    def cells(self) -> frozenset[Cell]:
        return frozenset((self.top_flat, self.bottom_flat) + self.are_chain + self.jay_chain)

    def to_json_obj(self) -> dict:
        return {
            "top_flat": list(self.top_flat),
            "bottom_flat": list(self.bottom_flat),
            "are_chain": [list(c) for c in self.are_chain],
            "jay_chain": [list(c) for c in self.jay_chain],
            "top_pipe": self.top_pipe,
            "bottom_pipe": self.bottom_pipe,
            "p": self.p,
            "q": self.q,
        }


def _nearest(d: Diagram, cell: Cell, di: int, dj: int) -> Cell | None:
    i, j = cell[0] + di, cell[1] + dj
    while 1 <= i <= d.n and 1 <= j <= d.n:
        if d[i, j] in ELBOW:
            return i, j
        i, j = i + di, j + dj
    return None


def _step(d: Diagram, cell: Cell, first: tuple[int, int], want_first: str,
          second: tuple[int, int], want_second: str) -> tuple[Cell, Cell] | None:
    a = _nearest(d, cell, *first)
    if a is None or d[a] != want_first:
        return None
    b = _nearest(d, a, *second)
    if b is None or d[b] != want_second:
        return None
    return a, b


def _are_chain(d: Diagram, top: Cell) -> list[Cell]:
    e = _nearest(d, top, 1, 0)
    if e is None or d[e] != "r":
        return []
    chain = [e]
    while (nxt := _step(d, chain[-1], (0, 1), "j", (1, 0), "r")) is not None:
        chain.append(nxt[1])
    return chain


def _jay_chain(d: Diagram, top: Cell) -> list[Cell]:
    k = _nearest(d, top, 0, 1)
    if k is None or d[k] != "j":
        return []
    chain = [k]
    while (nxt := _step(d, chain[-1], (1, 0), "r", (0, 1), "j")) is not None:
        chain.append(nxt[1])
    return chain


def find_configurations(d: Diagram, tr: TraceResult | None = None) -> list[ConfigInstance]:
    """Every (top flat, bottom flat) pair joined by the two elbow chains."""
    require_valid(d, Mode.BPD)
    out = []
    for top in d.cells("-"):
        are = _are_chain(d, top)
        if not are:
            continue
        jay = _jay_chain(d, top)
        for ia, e in enumerate(are):
            for ik, k in enumerate(jay):
                flat = (e[0], k[1])
                if flat[1] <= e[1] or flat[0] <= k[0] or d[flat] != "-":
                    continue
                if _nearest(d, flat, 0, -1) != e or _nearest(d, flat, -1, 0) != k:
                    continue
                if tr is None:
                    tr = trace(d, check=False)
                owner = tr.owner()
                out.append(ConfigInstance(
                    top, flat, tuple(are[: ia + 1]), tuple(jay[: ik + 1]),
                    owner[top][0], owner[flat][0],
                ))
    return out


def co_nonreduced(d: Diagram) -> bool:
    """Whether co(d) has a pipe pair crossing twice."""
    require_valid(d, Mode.BPD)
    return not trace(co(d), check=False).reduced


def _turns_north(d: Diagram, tr: TraceResult, label: int, cells) -> bool:
    # an NW elbow, or a bump where the label arrives from the west
    for c in cells:
        if d[c] == "j":
            return True
        m = tr.meetings.get(c)
        if m is not None and m.bump and m.across == label:
            return True
    return False


def classify_case(d: Diagram, inst: ConfigInstance, tr: TraceResult | None = None) -> Case:
    """
    Classify by the witness pipes along their own traversal: CrossBefore if
    p and q meet before either reaches its configuration flat; otherwise
    DroopAfter if q turns north (at an NW elbow or a bump) after its flat;
    otherwise NoDroopAfter.
    """
    tr = tr or trace(d)
    if inst not in find_configurations(d, tr):
        raise InvalidInput("configuration instance does not occur in this diagram")
    p_path, q_path = tr.paths[inst.p], tr.paths[inst.q]
    p_mark = p_path.index(inst.mark(inst.p))
    q_mark = q_path.index(inst.mark(inst.q))
    pair = tuple(sorted((inst.p, inst.q)))
    for cell, m in tr.meetings.items():
        if m.pair == pair and p_path.index(cell) < p_mark and q_path.index(cell) < q_mark:
            return Case.CROSS_BEFORE
    if _turns_north(d, tr, inst.q, q_path[q_mark + 1:]):
        return Case.DROOP_AFTER
    return Case.NO_DROOP_AFTER


# hypothesis shapes: the tiles strictly between two consecutive SE elbows of
# a pipe, read along the pipe with X tiles skipped
LEMMA_SHAPES: dict[str, tuple[str, ...]] = {
    "jay": (),
    "one_flat": ("-", "j"),
    "two_flats": ("-", "-", "j"),
    "double_flat": ("-", "j", "|"),
}
LEMMA_PATTERNS: dict[str, tuple[str, ...]] = {
    "jay": ("132",),
    "one_flat": ("1423", "1432", "13254"),
    "two_flats": ("1423", "13254", "15432"),
    "double_flat": ("1423", "13254", "14532", "15432"),
}


@dataclass(frozen=True)
class LemmaCheck:
    lemma: str
    pipe: int
    passed: bool
    witness: tuple[str, tuple[int, ...]] | None = None

    def to_json_obj(self) -> dict:
        obj = {"lemma": self.lemma, "pipe": self.pipe, "passed": self.passed}
        if self.witness:
            obj["pattern"], obj["positions"] = self.witness[0], list(self.witness[1])
        return obj


def _segments(d: Diagram, path: tuple[Cell, ...]) -> list[tuple[str, ...]]:
    ses = [k for k, c in enumerate(path) if d[c] == "r"]
    return [
        tuple(d[c] for c in path[a + 1 : b] if d[c] != "+")
        for a, b in zip(ses, ses[1:])
    ]


def _pattern_with_min(w: Permutation, patterns: tuple[str, ...], r: int):
    pos = w.position(r)
    for pat in patterns:
        p = Permutation.parse(pat)
        at = p.position(1) - 1
        for occ in occurrences(w, p):
            if occ[at] == pos:
                return pat, occ
    return None


def lemma_predicates(d: Diagram) -> list[LemmaCheck]:
    """Check each structural lemma on every pipe whose path has the lemma's shape."""
    tr = trace(d)
    out = []
    for r, path in sorted(tr.paths.items()):
        segs = _segments(d, path)
        for name, shape in LEMMA_SHAPES.items():
            if name == "jay":
                hit = any(d[c] == "j" for c in path)
            else:
                hit = shape in segs
            if hit:
                wit = _pattern_with_min(tr.perm, LEMMA_PATTERNS[name], r)
                out.append(LemmaCheck(name, r, wit is not None, wit))
    return out
