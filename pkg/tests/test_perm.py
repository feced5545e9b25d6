from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from bumpless.errors import InvalidInput
from bumpless.perm import (
    PI, PI_REVERSED, Permutation, all_perms, avoids_all, contains, identity,
    lehmer_code, longest, occurrences, reverse, rothe_diagram,
)

perms = st.integers(1, 7).flatmap(lambda n: st.permutations(range(1, n + 1))).map(Permutation.parse)


def test_parse_forms():
    assert Permutation.parse("1423") == Permutation.parse([1, 4, 2, 3])
    assert Permutation.parse("1 4 2 3") == Permutation.parse("1,4,2,3")
    assert str(Permutation.parse("10 1 2 3 4 5 6 7 8 9").n) == "10"


@pytest.mark.parametrize("bad", ["", "1224", "0123", "124", "12a"])
def test_parse_rejects(bad):
    with pytest.raises(InvalidInput):
        Permutation.parse(bad)


def test_length_examples():
    assert Permutation.parse("1432").length == 3
    assert identity(6).length == 0
    assert Permutation.parse("25143").length == 5


def test_containment_examples():
    w = Permutation.parse("526134")
    occ = contains(w, Permutation.parse("1423"))
    assert occ is not None and "".join(str(w[i]) for i in occ) == "2634"
    assert contains(w, Permutation.parse("1234")) is None
    assert contains(w, Permutation.parse("1")) is not None
    assert not avoids_all(Permutation.parse("1423"), PI)
    assert avoids_all(identity(5), PI)
    assert avoids_all(Permutation.parse("2143"), PI)


def test_occurrences_enumerates_all():
    w = Permutation.parse("2143")
    assert list(occurrences(w, Permutation.parse("21"))) == [(1, 2), (3, 4)]
    assert len(list(occurrences(Permutation.parse("321"), Permutation.parse("21")))) == 3


def test_reverse_examples():
    assert str(reverse(Permutation.parse("1423"))) == "3241"
    assert reverse(identity(5)) == longest(5)
    assert [str(p) for p in PI_REVERSED] == [str(p)[::-1] if p.n < 10 else None for p in PI]


def test_pi_members():
    assert sorted(str(p) for p in PI) == sorted(
        ["1423", "12543", "13254", "25143", "215643", "216543", "241653"]
    )


def test_rothe_diagram_examples():
    assert rothe_diagram(identity(4)) == frozenset()
    assert rothe_diagram(Permutation.parse("21")) == {(1, 1)}
    assert rothe_diagram(Permutation.parse("1423")) == {(2, 2), (2, 3)}


def test_lehmer_examples():
    assert lehmer_code(identity(4)) == (0, 0, 0, 0)
    assert lehmer_code(Permutation.parse("1423")) == (0, 2, 0, 0)
    assert lehmer_code(longest(5)) == (4, 3, 2, 1, 0)


def test_all_perms_order():
    ps = all_perms(3)
    assert [str(p) for p in ps] == ["123", "132", "213", "231", "312", "321"]


@given(perms)
def test_length_matches_diagram_and_code(w):
    assert w.length == len(rothe_diagram(w)) == sum(lehmer_code(w))


@given(perms)
def test_inverse_and_position(w):
    inv = w.inverse
    assert all(inv[w[i]] == i and w.position(w[i]) == i for i in range(1, w.n + 1))
    assert inv.inverse == w


@given(perms)
def test_reverse_involution(w):
    assert reverse(reverse(w)) == w
    assert reverse(w).length == w.n * (w.n - 1) // 2 - w.length


@given(perms, st.data())
def test_contains_agrees_with_brute_force(w, data):
    from itertools import combinations
    k = data.draw(st.integers(1, min(4, w.n)))
    p = Permutation.parse(data.draw(st.permutations(range(1, k + 1))))
    brute = any(
        Permutation.parse([sorted(w[i] for i in c).index(w[i]) + 1 for i in c]) == p
        for c in combinations(range(1, w.n + 1), k)
    )
    assert (contains(w, p) is not None) == brute
