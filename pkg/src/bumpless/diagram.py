"""
Tile grids for bumpless pipe dreams (BPDs) and co-BPDs.

Cells are addressed as 1-indexed ``(row, col)`` pairs with row 1 at the top.
Each tile is stored as a single character of the text alphabet::

    .  Blank        |  V (N-S)      -  H (E-W)      +  X (both)
    r  SE ("are")   j  NW ("jay")   l  NE ("el")    n  SW ("en")

BPD pipes enter along the bottom edge and exit on the right; co-BPD pipes
enter along the top edge and exit on the right.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping

from .errors import InvalidInput, ParseError
from .perm import Permutation

__all__ = [
    "Tile", "Mode", "Diagram", "Violation", "EDGES", "validate", "is_valid",
    "rothe_bpd", "co", "flip_vertical", "to_text", "from_text", "to_json",
    "from_json", "to_unicode",
]


class Tile(str, Enum):
    BLANK = "."
    V = "|"
    H = "-"
    X = "+"
    SE = "r"
    NW = "j"
    NE = "l"
    SW = "n"

    def __str__(self) -> str:
        return self.value


class Mode(str, Enum):
    BPD = "bpd"
    COBPD = "cobpd"

    def __str__(self) -> str:
        return self.value


EDGES: dict[str, frozenset[str]] = {
    ".": frozenset(),
    "|": frozenset("NS"),
    "-": frozenset("EW"),
    "+": frozenset("NSEW"),
    "r": frozenset("SE"),
    "j": frozenset("NW"),
    "l": frozenset("NE"),
    "n": frozenset("SW"),
}
ALPHABET = frozenset(EDGES)
UNICODE = {".": "·", "|": "│", "-": "─", "+": "┼", "r": "╭", "j": "╯", "l": "╰", "n": "╮"}

LEGAL_TILES = {Mode.BPD: frozenset(".|-+rj"), Mode.COBPD: frozenset(".|-+ln")}
ELBOWS = {Mode.BPD: frozenset("rj"), Mode.COBPD: frozenset("ln")}

# co map: SE<->NE, NW<->SW, V<->Blank, H<->X
_CO = str.maketrans({"r": "l", "l": "r", "j": "n", "n": "j", "|": ".", ".": "|", "-": "+", "+": "-"})
# reflection across a horizontal axis swaps N and S
_FLIP = str.maketrans({"l": "r", "r": "l", "n": "j", "j": "n"})


@dataclass(frozen=True)
class Diagram:
    """An n x n tile grid; ``rows[i-1][j-1]`` is the tile at (i, j)."""

    rows: tuple[str, ...]
    mode: Mode = Mode.BPD

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "mode", Mode(self.mode))
        n = len(rows)
        for i, row in enumerate(rows, 1):
            if len(row) != n:
                raise InvalidInput(f"row {i} has {len(row)} tiles, expected {n}")
            bad = set(row) - ALPHABET
            if bad:
                raise InvalidInput(f"row {i} has unknown tile(s) {sorted(bad)}")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, cell: tuple[int, int]) -> str:
        i, j = cell
        return self.rows[i - 1][j - 1]

    def tile(self, i: int, j: int) -> Tile:
        return Tile(self.rows[i - 1][j - 1])

    def cells(self, kinds: str | Iterable[str] | None = None) -> Iterator[tuple[int, int]]:
        """Cells in row-major order, optionally restricted to the given tile kinds."""
        kinds = None if kinds is None else frozenset(kinds)
        for i, row in enumerate(self.rows, 1):
            for j, t in enumerate(row, 1):
                if kinds is None or t in kinds:
                    yield i, j

    def elbows(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.cells(ELBOWS[self.mode]))

    def blank_count(self) -> int:
        return sum(row.count(".") for row in self.rows)

    def with_tiles(self, changes: Mapping[tuple[int, int], str]) -> Diagram:
        rows = [list(r) for r in self.rows]
        for (i, j), t in changes.items():
            rows[i - 1][j - 1] = str(t)
        return Diagram(tuple("".join(r) for r in rows), self.mode)

    @property
    def text(self) -> str:
        return "\n".join(self.rows)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Violation:
    row: int
    col: int
    rule: str
    edge: str | None = None

    def __str__(self) -> str:
        e = f" ({self.edge} edge)" if self.edge else ""
        return f"({self.row},{self.col}){e}: {self.rule}"


def validate(d: Diagram) -> list[Violation]:
    """Return every violated rule; an empty list means the diagram is valid."""
    n, out = d.n, []
    legal = LEGAL_TILES[d.mode]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            t = d[i, j]
            e = EDGES[t]
            if t not in legal:
                out.append(Violation(i, j, f"tile {t!r} not allowed in {d.mode} mode"))
            if j < n and ("E" in e) != ("W" in EDGES[d[i, j + 1]]):
                out.append(Violation(i, j, "edge inconsistent with east neighbour", "E"))
            if i < n and ("S" in e) != ("N" in EDGES[d[i + 1, j]]):
                out.append(Violation(i, j, "edge inconsistent with south neighbour", "S"))
            if j == 1 and "W" in e:
                out.append(Violation(i, j, "first column touches west boundary", "W"))
            if j == n and "E" not in e:
                out.append(Violation(i, j, "last column must touch east boundary", "E"))
            if d.mode is Mode.BPD:
                if i == n and "S" not in e:
                    out.append(Violation(i, j, "bottom row must touch south boundary", "S"))
                if i == 1 and "N" in e:
                    out.append(Violation(i, j, "top row touches north boundary", "N"))
            else:
                if i == 1 and "N" not in e:
                    out.append(Violation(i, j, "top row must touch north boundary", "N"))
                if i == n and "S" in e:
                    out.append(Violation(i, j, "bottom row touches south boundary", "S"))
    return out


def is_valid(d: Diagram) -> bool:
    return not validate(d)


def require_valid(d: Diagram, mode: Mode | None = None) -> None:
    if mode is not None and d.mode is not mode:
        raise InvalidInput(f"expected a {mode} diagram, got {d.mode}")
    problems = validate(d)
    if problems:
        raise InvalidInput("invalid diagram: " + "; ".join(map(str, problems[:5])))


def rothe_bpd(w: Permutation) -> Diagram:
    """The Rothe BPD of w: each pipe w_i rises in column w_i and turns east in row i."""
    w = Permutation.parse(w)
    n, inv = w.n, w.inverse
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            below = i > inv[j]   # pipe j is still rising through row i
            right = j > w[i]     # pipe w_i has already turned east
            if j == w[i]:
                row.append("r")
            elif below and right:
                row.append("+")
            elif below:
                row.append("|")
            elif right:
                row.append("-")
            else:
                row.append(".")
        rows.append("".join(row))
    return Diagram(tuple(rows), Mode.BPD)


def co(d: Diagram) -> Diagram:
    """Exchange SE<->NE, NW<->SW, V<->Blank, H<->X and toggle the mode."""
    require_valid(d)
    mode = Mode.COBPD if d.mode is Mode.BPD else Mode.BPD
    return Diagram(tuple(r.translate(_CO) for r in d.rows), mode)


def flip_vertical(d: Diagram) -> Diagram:
    """Reflect a co-BPD top-to-bottom, giving a BPD."""
    require_valid(d, Mode.COBPD)
    return Diagram(tuple(r.translate(_FLIP) for r in reversed(d.rows)), Mode.BPD)


def to_text(d: Diagram) -> str:
    return d.text


def _infer_mode(rows: list[str]) -> Mode:
    chars = set("".join(rows))
    if chars & {"l", "n"} and not chars & {"r", "j"}:
        return Mode.COBPD
    return Mode.BPD


def from_text(s: str, mode: Mode | str | None = None) -> Diagram:
    """
    Parse one row per line. The mode is inferred from the elbow characters
    when not given (``l``/``n`` only means co-BPD).
    """
    lines = [ln.rstrip("\r") for ln in s.strip("\n").split("\n")]
    lines = [ln for ln in lines if ln.strip() != ""]
    if not lines:
        raise ParseError("empty diagram")
    n = len(lines)
    for i, ln in enumerate(lines, 1):
        for j, c in enumerate(ln, 1):
            if c not in ALPHABET:
                raise ParseError(f"unknown tile character {c!r}", i, j)
        if len(ln) != n:
            raise ParseError(f"expected {n} tiles, found {len(ln)}", i, min(len(ln), n) + 1)
    return Diagram(tuple(lines), Mode(mode) if mode is not None else _infer_mode(lines))


def to_unicode(d: Diagram) -> str:
    return "\n".join("".join(UNICODE[c] for c in row) for row in d.rows)


def to_json_obj(d: Diagram) -> dict:
    return {"n": d.n, "mode": d.mode.value, "tiles": [list(r) for r in d.rows]}


def from_json_obj(obj: Mapping) -> Diagram:
    try:
        tiles = obj["tiles"]
        rows = tuple("".join(r) if not isinstance(r, str) else r for r in tiles)
        d = Diagram(rows, Mode(obj.get("mode", "bpd")))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad diagram object: {exc}") from None
    if "n" in obj and obj["n"] != d.n:
        raise ParseError(f"declared n={obj['n']} but grid is {d.n}x{d.n}")
    return d


def to_json(d: Diagram) -> str:
    return json.dumps(to_json_obj(d))


def from_json(s: str) -> Diagram:
    try:
        obj = json.loads(s)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return from_json_obj(obj)
