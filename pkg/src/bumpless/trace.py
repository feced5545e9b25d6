"""
Pipe tracing with the multiple-crossing bump rule.

Pipes are labelled 1..n by entry column. In BPD mode the grid is processed
bottom-to-top, left-to-right, so that every cell sees the labels arriving
from the south and west before it is resolved; co-BPD mode is processed
top-to-bottom with labels arriving from the north and west. At an X cell a
pair that has already met is resolved as a bump: in BPD mode the west label
turns north and the south label turns east; in co-BPD mode the north label
turns east and the west label turns south.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .diagram import Diagram, Mode, require_valid
from .perm import Permutation

__all__ = ["TraceResult", "Meeting", "trace", "is_reduced", "trace_rows"]

Cell = tuple[int, int]


@dataclass(frozen=True)
class Meeting:
    """Two pipes sharing an X cell; ``through`` travels along the entry direction."""

    cell: Cell
    through: int
    across: int
    bump: bool

    @property
    def pair(self) -> tuple[int, int]:
        return tuple(sorted((self.through, self.across)))  # type: ignore[return-value]


@dataclass(frozen=True)
class TraceResult:
    perm: Permutation
    crossings: dict[tuple[int, int], int]
    bumps: frozenset[Cell]
    blank_rows: tuple[int, ...]
    jay_rows: tuple[int, ...]
    reduced: bool
    # arc-ordered cell sequence of each pipe, keyed by label
    paths: dict[int, tuple[Cell, ...]] = field(repr=False, compare=False)
    meetings: dict[Cell, Meeting] = field(repr=False, compare=False)

    def owner(self) -> dict[Cell, tuple[int, ...]]:
        """Map each non-blank cell to the label(s) passing through it."""
        out: dict[Cell, list[int]] = {}
        for label, path in self.paths.items():
            for c in path:
                out.setdefault(c, []).append(label)
        return {c: tuple(v) for c, v in out.items()}

    def to_json_obj(self) -> dict:
        return {
            "perm": self.perm.to_json(),
            "reduced": self.reduced,
            "bumps": sorted([list(c) for c in self.bumps]),
            "crossings": [
                {"pair": list(p), "count": c} for p, c in sorted(self.crossings.items())
            ],
            "blank_rows": list(self.blank_rows),
            "jay_rows": list(self.jay_rows),
        }


def trace(d: Diagram, check: bool = True) -> TraceResult:
    """Trace every pipe of a valid diagram."""
    if check:
        require_valid(d)
    n, rows = d.n, d.rows
    cobpd = d.mode is Mode.COBPD
    met: Counter = Counter()
    bumps: set[Cell] = set()
    meetings: dict[Cell, Meeting] = {}
    paths: dict[int, list[Cell]] = {k: [] for k in range(1, n + 1)}
    exits = [0] * n
    blank_rows: list[int] = []
    jay_rows: list[int] = []
    jay = "n" if cobpd else "j"

    # vertical[j]: label on the vertical edge entering the current row in column j
    vertical: list[int | None] = list(range(1, n + 1))
    order = range(1, n + 1) if cobpd else range(n, 0, -1)
    for i in order:
        row = rows[i - 1]
        west: int | None = None
        for j in range(1, n + 1):
            t = row[j - 1]
            v = vertical[j - 1]
            if t == ".":
                blank_rows.append(i)
                continue
            if t == jay:
                jay_rows.append(i)
            if t == "|":
                assert v is not None
                paths[v].append((i, j))
            elif t == "-":
                assert west is not None
                paths[west].append((i, j))
            elif t in "rl":
                # vertical label turns east
                assert v is not None
                paths[v].append((i, j))
                west, vertical[j - 1] = v, None
            elif t in "jn":
                # west label turns vertical
                assert west is not None
                paths[west].append((i, j))
                vertical[j - 1], west = west, None
            else:
                assert v is not None and west is not None
                pair = (v, west) if v < west else (west, v)
                bump = met[pair] > 0
                met[pair] += 1
                paths[v].append((i, j))
                paths[west].append((i, j))
                meetings[(i, j)] = Meeting((i, j), v, west, bump)
                if bump:
                    bumps.add((i, j))
                    vertical[j - 1], west = west, v
        assert west is not None, f"row {i} has no pipe exiting east"
        exits[i - 1] = west

    crossings = {p: c for p, c in sorted(met.items())}
    return TraceResult(
        perm=Permutation(tuple(exits)),
        crossings=crossings,
        bumps=frozenset(bumps),
        blank_rows=tuple(sorted(blank_rows)),
        jay_rows=tuple(sorted(jay_rows)),
        reduced=not bumps,
        paths={k: tuple(v) for k, v in paths.items()},
        meetings=meetings,
    )


def is_reduced(d: Diagram) -> bool:
    return trace(d).reduced


def trace_rows(d: Diagram) -> Permutation:
    return trace(d).perm
