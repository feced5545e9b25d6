from __future__ import annotations

from math import factorial

import pytest

from bumpless import enumeration
from bumpless.diagram import is_valid, rothe_bpd
from bumpless.enumeration import all_diagrams, bpds_of, closure_of, diagrams_by_perm
from bumpless.errors import LimitExceeded
from bumpless.perm import Permutation, all_perms, identity
from bumpless.trace import trace


def asm_count(n: int) -> int:
    num = den = 1
    for k in range(n):
        num *= factorial(3 * k + 1)
        den *= factorial(n + k)
    return num // den


@pytest.mark.parametrize("n", range(1, 7))
def test_count_matches_asm_formula(n):
    ds = list(all_diagrams(n))
    assert len(ds) == asm_count(n)
    assert len({d.rows for d in ds}) == len(ds)


def test_small_counts():
    assert [d.rows for d in all_diagrams(1)] == [("r",)]
    assert sorted(d.rows for d in all_diagrams(2)) == sorted(
        [rothe_bpd(identity(2)).rows, rothe_bpd(Permutation.parse("21")).rows]
    )
    assert sum(len(v) for v in diagrams_by_perm(3).values()) == len(list(all_diagrams(3)))


@pytest.mark.parametrize("n", range(1, 6))
def test_members_valid_and_grouped(n):
    for w, ds in diagrams_by_perm(n).items():
        s = bpds_of(w)
        assert s.all == ds
        assert list(s.all) == sorted(s.all, key=lambda d: d.text)
        assert rothe_bpd(w) in s.reduced
        assert set(s.reduced) <= set(s.all)
        for d in s.all:
            assert is_valid(d) and trace(d).perm == w


def test_bpds_of_examples():
    s = bpds_of(identity(4))
    assert s.all == s.reduced == (rothe_bpd(identity(4)),)
    assert len(bpds_of("321").all) == 1
    s = bpds_of("2143")
    assert len(s.all) > len(s.reduced) and s.nonreduced


def test_closure_examples():
    c = closure_of("132")
    assert len(c) == 2 and set(c) == set(bpds_of("132").reduced)


@pytest.mark.parametrize("n", range(1, 6))
def test_closure_equals_enumeration(n):
    for w in all_perms(n):
        s = bpds_of(w)
        assert set(closure_of(w)) == set(s.reduced)
        assert set(closure_of(w, use_k=True)) == set(s.all)


def test_limit():
    with pytest.raises(LimitExceeded):
        list(all_diagrams(8))
    with pytest.raises(LimitExceeded):
        bpds_of("21436587")
    with pytest.raises(LimitExceeded):
        list(all_diagrams(0))


def test_cache_round_trip(tmp_path):
    enumeration.set_cache_dir(tmp_path)
    try:
        w = Permutation.parse("25143")
        enumeration._bpds_of.cache_clear()
        first = bpds_of(w)
        files = list(tmp_path.iterdir())
        assert len(files) == 1
        enumeration._bpds_of.cache_clear()
        assert bpds_of(w) == first
    finally:
        enumeration.set_cache_dir(None)
        enumeration._bpds_of.cache_clear()


def test_corrupt_cache_is_regenerated(tmp_path):
    enumeration.set_cache_dir(tmp_path)
    try:
        w = Permutation.parse("2143")
        enumeration._bpds_of.cache_clear()
        path = enumeration._cache_path(w)
        path.write_text("{broken")
        s = bpds_of(w)
        assert (len(s.reduced), len(s.nonreduced)) == (3, 1)
        assert "broken" not in path.read_text()
    finally:
        enumeration.set_cache_dir(None)
        enumeration._bpds_of.cache_clear()
