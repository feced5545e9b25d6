"""
Droop moves, K-theoretic droop moves, and blocked regions on BPDs.

A rectangle is written ``(a, b, c, d)``: rows a..b and columns c..d, with
``(a, c)`` the top-left SE elbow that droops and ``(b, d)`` the target
corner. Both K-theoretic forms are droops whose landing cell is another
pipe's SE elbow (which becomes an X) instead of a blank:

* ``K1``: the landing cell is ``(b, e)`` with c < e < d; the landed-on pipe
  then runs east to an NW elbow at ``(b, d)`` and north to an X at ``(a, d)``
  where it crosses the drooping pipe.
* ``K2``: the landing cell is ``(r, d)`` with a < r < b; the landed-on pipe
  arrives there from an X at ``(b, c)`` (where it crossed the drooping pipe),
  running east along row b to an NW elbow at ``(b, d)`` and north to row r.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .diagram import Diagram, Mode, require_valid
from .errors import InternalInconsistency, InvalidInput, NotActive, NotApplicable
from .trace import trace

__all__ = [
    "MoveKind", "DroopMove", "BlockedRegion", "find_active_regions", "is_active",
    "apply_droop", "droop", "find_blocked_regions", "find_k_droops",
    "apply_k_droop", "apply_move", "all_moves", "closure",
]

Rect = tuple[int, int, int, int]
Cell = tuple[int, int]
ELBOW = frozenset("rj")


class MoveKind(str, Enum):
    PLAIN = "plain"
    K1 = "k1"
    K2 = "k2"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class DroopMove:
    kind: MoveKind
    rect: Rect
    param: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", MoveKind(self.kind))
        a, b, c, d = self.rect
        object.__setattr__(self, "rect", (int(a), int(b), int(c), int(d)))
        if not (a < b and c < d):
            raise InvalidInput(f"degenerate rectangle {self.rect}")
        if self.kind is MoveKind.PLAIN and self.param is not None:
            raise InvalidInput("plain droops take no parameter")
        if self.kind is MoveKind.K1 and not (self.param is not None and c < self.param < d):
            raise InvalidInput(f"K1 needs an inner column strictly between {c} and {d}")
        if self.kind is MoveKind.K2 and not (self.param is not None and a < self.param < b):
            raise InvalidInput(f"K2 needs an inner row strictly between {a} and {b}")

    @property
    def start(self) -> Cell:
        return self.rect[0], self.rect[2]

    @property
    def landing(self) -> Cell:
        a, b, c, d = self.rect
        if self.kind is MoveKind.K1:
            return b, self.param  # type: ignore[return-value]
        if self.kind is MoveKind.K2:
            return self.param, d  # type: ignore[return-value]
        return b, d

    def to_json_obj(self) -> dict:
        obj = {"kind": self.kind.value, "rect": list(self.rect)}
        if self.param is not None:
            obj["param"] = self.param
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> DroopMove:
        return cls(MoveKind(obj["kind"]), tuple(obj["rect"]), obj.get("param"))

    def __str__(self) -> str:
        (a, c), (b, d) = self.start, self.landing
        tag = "" if self.kind is MoveKind.PLAIN else f" [{self.kind}]"
        return f"({a},{c})↘({b},{d}){tag}"


@dataclass(frozen=True)
class BlockedRegion:
    rect: Rect
    blocking_elbows: frozenset[Cell]
    blocking_pipes: frozenset[int]


def _elbows_in(d: Diagram, rect: Rect, skip: Iterable[Cell] = ()) -> list[Cell]:
    a, b, c, e = rect
    skip = set(skip)
    return [
        (i, j)
        for i in range(a, b + 1)
        for j in range(c, e + 1)
        if d[i, j] in ELBOW and (i, j) not in skip
    ]


def _corners_ok(d: Diagram, rect: Rect) -> bool:
    a, b, c, e = rect
    return (
        d[a, c] == "r"
        and d[b, e] == "."
        and d[a, e] in "-j"
        and d[b, c] in "|j"
    )


def _corner_cells(rect: Rect) -> tuple[Cell, ...]:
    a, b, c, e = rect
    return (a, c), (a, e), (b, c), (b, e)


def is_active(d: Diagram, rect: Rect) -> bool:
    a, b, c, e = rect
    if not (1 <= a < b <= d.n and 1 <= c < e <= d.n):
        return False
    return _corners_ok(d, rect) and not _elbows_in(d, rect, _corner_cells(rect))


def _candidate_rects(d: Diagram) -> Iterator[Rect]:
    n = d.n
    for a, c in d.cells("r"):
        for b in range(a + 1, n + 1):
            for e in range(c + 1, n + 1):
                if d[b, e] == ".":
                    rect = (a, b, c, e)
                    if _corners_ok(d, rect):
                        yield rect


def find_active_regions(d: Diagram) -> list[Rect]:
    return [r for r in _candidate_rects(d) if not _elbows_in(d, r, _corner_cells(r))]


def find_blocked_regions(d: Diagram) -> list[BlockedRegion]:
    out = []
    owner = None
    for rect in _candidate_rects(d):
        inner = _elbows_in(d, rect, _corner_cells(rect))
        if inner:
            if owner is None:
                owner = trace(d, check=False).owner()
            pipes = frozenset(p for cell in inner for p in owner[cell])
            out.append(BlockedRegion(rect, frozenset(inner), pipes))
    return out


_TOP = {"-": ".", "+": "|"}      # remove E-W
_LEFT = {"|": ".", "+": "-"}     # remove N-S
_BOTTOM = {".": "-", "|": "+"}   # add E-W
_RIGHT = {".": "|", "-": "+"}    # add N-S
_TR = {"-": "r", "j": "|"}
_BL = {"|": "r", "j": "-"}


def _rewrite(d: Diagram, rect: Rect, landing: str) -> Diagram:
    a, b, c, e = rect
    ch: dict[Cell, str] = {(a, c): ".", (b, e): landing}
    try:
        ch[a, e] = _TR[d[a, e]]
        ch[b, c] = _BL[d[b, c]]
        for j in range(c + 1, e):
            ch[a, j] = _TOP[d[a, j]]
            ch[b, j] = _BOTTOM[d[b, j]]
        for i in range(a + 1, b):
            ch[i, c] = _LEFT[d[i, c]]
            ch[i, e] = _RIGHT[d[i, e]]
    except KeyError:
        raise InternalInconsistency(f"rectangle {rect} does not carry a droopable pipe") from None
    return d.with_tiles(ch)


def apply_droop(d: Diagram, rect: Rect) -> Diagram:
    """Droop the SE elbow at the top-left of an active rectangle into its blank corner."""
    if d.mode is not Mode.BPD:
        raise InvalidInput("droops act on BPDs")
    if not is_active(d, rect):
        raise NotActive(f"rectangle {rect} is not active")
    return _rewrite(d, rect, "j")


def droop(d: Diagram, start: Cell, end: Cell) -> Diagram:
    """Droop in cell notation ``(a, c) ↘ (b, d)``."""
    (a, c), (b, e) = start, end
    return apply_droop(d, (a, b, c, e))


def _k1_at(d: Diagram, a: int, c: int, b: int, e: int) -> DroopMove | None:
    n = d.n
    # landed-on pipe: east from (b, e) to its NW elbow
    dd = e + 1
    while dd <= n and d[b, dd] not in ELBOW:
        dd += 1
    if dd > n or d[b, dd] != "j":
        return None
    # then north in column dd to the crossing with row a
    if any(d[i, dd] in ELBOW for i in range(a + 1, b)) or d[a, dd] != "+":
        return None
    rect = (a, b, c, dd)
    if d[a, e] != "-" or d[b, c] not in "|j":
        return None
    allowed = {(a, c), (b, e), (b, dd), (b, c)}
    if _elbows_in(d, rect, allowed):
        return None
    return DroopMove(MoveKind.K1, rect, e)


def _k2_at(d: Diagram, a: int, c: int, r: int, dd: int) -> DroopMove | None:
    n = d.n
    # landed-on pipe: south from (r, dd) back to its NW elbow
    b = r + 1
    while b <= n and d[b, dd] not in ELBOW:
        b += 1
    if b > n or d[b, dd] != "j":
        return None
    rect = (a, b, c, dd)
    if d[b, c] != "+" or d[r, c] != "|" or d[a, dd] not in "-j":
        return None
    if _elbows_in(d, rect, {(a, c), (r, dd), (b, dd)}):
        return None
    return DroopMove(MoveKind.K2, rect, r)


def find_k_droops(d: Diagram) -> list[DroopMove]:
    if d.mode is not Mode.BPD:
        raise InvalidInput("K-theoretic droops act on BPDs")
    out = []
    ses = list(d.cells("r"))
    for a, c in ses:
        for r, s in ses:
            if r > a and s > c:
                for m in (_k1_at(d, a, c, r, s), _k2_at(d, a, c, r, s)):
                    if m is not None:
                        out.append(m)
    return sorted(out)


def _check_k(d: Diagram, m: DroopMove) -> bool:
    a, b, c, dd = m.rect
    if m.kind is MoveKind.K1:
        return _k1_at(d, a, c, b, m.param) == m  # type: ignore[arg-type]
    return _k2_at(d, a, c, m.param, dd) == m  # type: ignore[arg-type]


def apply_k_droop(d: Diagram, m: DroopMove) -> Diagram:
    """Apply a K-theoretic droop; the landing SE elbow becomes an X."""
    if m.kind is MoveKind.PLAIN:
        raise InvalidInput("not a K-theoretic move")
    a, b, c, dd = m.rect
    if not (1 <= a < b <= d.n and 1 <= c < dd <= d.n) or not _check_k(d, m):
        raise NotApplicable(f"{m} does not match a K-theoretic droop form")
    if m.kind is MoveKind.K1:
        return _rewrite(d, (a, b, c, m.param), "+")  # type: ignore[arg-type]
    return _rewrite(d, (a, m.param, c, dd), "+")  # type: ignore[arg-type]


def apply_move(d: Diagram, m: DroopMove) -> Diagram:
    if m.kind is MoveKind.PLAIN:
        return apply_droop(d, m.rect)
    return apply_k_droop(d, m)


def all_moves(d: Diagram, use_k: bool = True) -> list[DroopMove]:
    moves = [DroopMove(MoveKind.PLAIN, r) for r in find_active_regions(d)]
    if use_k:
        moves += find_k_droops(d)
    return sorted(moves)


def closure(start: Diagram, use_k: bool = False) -> list[Diagram]:
    """Breadth-first closure of ``{start}`` under droops (and K-droops)."""
    require_valid(start, Mode.BPD)
    seen = {start.text: start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for m in all_moves(cur, use_k):
            nxt = apply_move(cur, m)
            if nxt.text not in seen:
                seen[nxt.text] = nxt
                queue.append(nxt)
    return [seen[k] for k in sorted(seen)]

