"""
Exhaustive generation of BPDs by backtracking over tiles.

Cells are filled bottom-to-top, left-to-right. Whether a pipe arrives from
the south and from the west forces the legal tiles at each cell::

    (no, no)   -> Blank
    (yes, yes) -> X
    (yes, no)  -> V or SE
    (no, yes)  -> H or NW

with top-row tiles forbidden to touch N and last-column tiles required to
touch E. The generator carries the trace along (labels and per-pair meeting
counts), which lets :func:`bpds_of` prune as soon as a completed row exits
the wrong label.
"""

from __future__ import annotations

import hashlib
import json
import os
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterator

from . import __version__
from .diagram import Diagram, Mode, from_json_obj, to_json_obj
from .errors import LimitExceeded
from .moves import closure
from .perm import Permutation
from .diagram import rothe_bpd
from .trace import trace

__all__ = [
    "DEFAULT_MAX_N", "BpdSet", "all_diagrams", "diagrams_by_perm", "bpds_of",
    "closure_of", "set_cache_dir", "CACHE_ENV",
]

DEFAULT_MAX_N = 7
CACHE_ENV = "BUMPLESS_CACHE_DIR"

_max_n = DEFAULT_MAX_N
_cache_dir: Path | None = None


def set_max_n(n: int) -> None:
    global _max_n
    if n < 1:
        raise ValueError("max_n must be >= 1")
    _max_n = n


def set_cache_dir(path: str | os.PathLike | None) -> None:
    global _cache_dir
    _cache_dir = Path(path) if path else None


def _check_size(n: int) -> None:
    if not 1 <= n <= _max_n:
        raise LimitExceeded(f"size {n} outside the configured range 1..{_max_n} (see --max-n)")


@dataclass(frozen=True)
class BpdSet:
    """All BPDs of ``w`` and the reduced ones among them (sorted by tile text)."""

    w: Permutation
    all: tuple[Diagram, ...]
    reduced: tuple[Diagram, ...]

    @property
    def nonreduced(self) -> tuple[Diagram, ...]:
        keep = {d.text for d in self.reduced}
        return tuple(d for d in self.all if d.text not in keep)


def _generate(n: int, target: tuple[int, ...] | None) -> Iterator[tuple[str, ...]]:
    grid = [[""] * n for _ in range(n)]
    vertical: list[int | None] = list(range(1, n + 1))
    met: Counter = Counter()

    def cell(i: int, j: int, west: int | None) -> Iterator[tuple[str, ...]]:
        if j > n:
            if target is not None and west != target[i - 1]:
                return
            if i == 1:
                yield tuple("".join(r) for r in grid)
            else:
                yield from cell(i - 1, 1, None)
            return
        v = vertical[j - 1]
        last, top = j == n, i == 1
        if v is None and west is None:
            if last:
                return
            grid[i - 1][j - 1] = "."
            yield from cell(i, j + 1, None)
        elif v is not None and west is not None:
            if top:
                return
            pair = (v, west) if v < west else (west, v)
            bump = met[pair] > 0
            met[pair] += 1
            grid[i - 1][j - 1] = "+"
            if bump:
                vertical[j - 1] = west
                yield from cell(i, j + 1, v)
                vertical[j - 1] = v
            else:
                yield from cell(i, j + 1, west)
            met[pair] -= 1
        elif v is not None:
            # SE: vertical label turns east
            grid[i - 1][j - 1] = "r"
            vertical[j - 1] = None
            yield from cell(i, j + 1, v)
            vertical[j - 1] = v
            if not top and not last:
                grid[i - 1][j - 1] = "|"
                yield from cell(i, j + 1, None)
        else:
            grid[i - 1][j - 1] = "-"
            yield from cell(i, j + 1, west)
            if not top and not last:
                grid[i - 1][j - 1] = "j"
                vertical[j - 1] = west
                yield from cell(i, j + 1, None)
                vertical[j - 1] = None

    yield from cell(n, 1, None)


def all_diagrams(n: int) -> Iterator[Diagram]:
    """Every valid BPD of size n, each exactly once."""
    _check_size(n)
    for rows in _generate(n, None):
        yield Diagram(rows, Mode.BPD)


@lru_cache(maxsize=None)
def _by_perm(n: int) -> dict[Permutation, tuple[Diagram, ...]]:
    groups: dict[Permutation, list[Diagram]] = defaultdict(list)
    for d in all_diagrams(n):
        groups[trace(d, check=False).perm].append(d)
    return {w: tuple(sorted(ds, key=lambda d: d.text)) for w, ds in sorted(groups.items())}


def diagrams_by_perm(n: int) -> dict[Permutation, tuple[Diagram, ...]]:
    """All BPDs of size n grouped by traced permutation."""
    _check_size(n)
    return _by_perm(n)


def _cache_path(w: Permutation) -> Path | None:
    root = _cache_dir
    if root is None and os.environ.get(CACHE_ENV):
        root = Path(os.environ[CACHE_ENV])
    if root is None:
        return None
    key = hashlib.sha256(f"{w.n}:{w}:{__version__}".encode()).hexdigest()[:24]
    return root / f"bpds-{w.n}-{key}.json"


def _load(path: Path) -> tuple[Diagram, ...] | None:
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    return tuple(from_json_obj(o) for o in data)


def _store(path: Path, diagrams: tuple[Diagram, ...]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(f".{os.getpid()}.tmp")
    tmp.write_text(json.dumps([to_json_obj(d) for d in diagrams]))
    os.replace(tmp, path)


@lru_cache(maxsize=4096)
def _bpds_of(w: Permutation) -> BpdSet:
    found: tuple[Diagram, ...] | None = None
    path = _cache_path(w)
    if path is not None and path.exists():
        found = _load(path)
    if found is None:
        found = tuple(
            sorted((Diagram(rows, Mode.BPD) for rows in _generate(w.n, w.entries)), key=lambda d: d.text)
        )
        if path is not None:
            _store(path, found)
    reduced = tuple(d for d in found if trace(d, check=False).reduced)
    return BpdSet(w, found, reduced)


def bpds_of(w: Permutation | str) -> BpdSet:
    w = Permutation.parse(w)
    _check_size(w.n)
    return _bpds_of(w)


def closure_of(w: Permutation | str, use_k: bool = False) -> list[Diagram]:
    """Closure of the Rothe BPD of w under droops (and K-droops when ``use_k``)."""
    w = Permutation.parse(w)
    _check_size(w.n)
    return closure(rothe_bpd(w), use_k)
