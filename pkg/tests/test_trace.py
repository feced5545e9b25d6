from __future__ import annotations

from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given

from bumpless.diagram import Diagram, co, rothe_bpd
from bumpless.enumeration import all_diagrams
from bumpless.errors import InvalidInput
from bumpless.perm import Permutation, all_perms, identity
from bumpless.trace import is_reduced, trace

from conftest import D, DROOPED_1423, NONREDUCED_2143, REDUCED_2143
from strategies import diagrams

_EXIT = {
    ("|", "S"): "N", ("-", "W"): "E", ("r", "S"): "E", ("j", "W"): "N",
    ("+", "S"): "N", ("+", "W"): "E",
}
_STEP = {"N": (-1, 0, "S"), "E": (0, 1, "W")}


def follow(d: Diagram):
    """Walk every pipe from the bottom, going straight at every X."""
    n = d.n
    exits, crossed = {}, Counter()
    cells_of = {}
    for k in range(1, n + 1):
        i, j, came = n, k, "S"
        cells = []
        while True:
            out = _EXIT[d[i, j], came]
            if d[i, j] == "+":
                cells.append((i, j))
            di, dj, came = _STEP[out]
            if out == "E" and j == n:
                exits[i] = k
                break
            i, j = i + di, j + dj
        cells_of[k] = set(cells)
    for a, b in combinations(range(1, n + 1), 2):
        crossed[a, b] = len(cells_of[a] & cells_of[b])
    return Permutation.parse([exits[i] for i in range(1, n + 1)]), crossed


@pytest.mark.parametrize("n", range(1, 5))
def test_trace_matches_pipe_following(n):
    for d in all_diagrams(n):
        tr = trace(d)
        perm, crossed = follow(d)
        straight_reduced = max(crossed.values(), default=0) <= 1
        assert tr.reduced == straight_reduced
        if straight_reduced:
            assert tr.perm == perm
            assert {p: c for p, c in crossed.items() if c} == tr.crossings


@pytest.mark.parametrize("n", range(1, 6))
def test_rothe_traces(n):
    for w in all_perms(n):
        tr = trace(rothe_bpd(w))
        assert tr.perm == w and tr.reduced and is_reduced(rothe_bpd(w))
        assert len(tr.crossings) == w.length


def test_2143_fixtures():
    r = trace(D(REDUCED_2143))
    assert str(r.perm) == "2143" and r.reduced
    nr = trace(D(NONREDUCED_2143))
    assert str(nr.perm) == "2143" and not nr.reduced
    assert nr.crossings[1, 2] == 2 and len(nr.bumps) == 1


def test_drooped_1423_co_trace():
    tr = trace(co(D(DROOPED_1423)))
    assert str(tr.perm) == "3412" and not tr.reduced


def test_trace_rejects_invalid():
    with pytest.raises(InvalidInput):
        trace(Diagram((".r", "rr")))


def test_json_summary():
    obj = trace(D(NONREDUCED_2143)).to_json_obj()
    assert obj["perm"] == [2, 1, 4, 3] and obj["reduced"] is False
    assert {"pair": [1, 2], "count": 2} in obj["crossings"]


@given(diagrams)
def test_paths_cover_nonblank_cells(d):
    tr = trace(d)
    owner = tr.owner()
    assert set(owner) == set(d.cells("|-+rj"))
    assert all(len(owner[c]) == 2 for c in d.cells("+"))
    assert all(len(owner[c]) == 1 for c in d.cells("|-rj"))
    assert tr.reduced == all(c == 1 for c in tr.crossings.values())


@given(diagrams)
def test_co_trace_valid(d):
    tr = trace(co(d))
    assert sorted(tr.perm.entries) == list(range(1, d.n + 1))
