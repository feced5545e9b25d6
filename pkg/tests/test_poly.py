from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from bumpless.errors import InvalidInput, NotInSpan, ParseError
from bumpless.perm import Permutation, all_perms, identity, longest
from bumpless.poly import (
    MultiPoly, a_table, divided_difference, grothendieck, grothendieck_oracle, schubert,
    schubert_expand, schubert_oracle, verify_g_to_s,
)

from conftest import D, DROOPED_1423

P = Permutation.parse

terms = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * 3), st.integers(-5, 5).filter(bool), max_size=6
)
polys = terms.map(lambda t: MultiPoly(3, t))


def test_bpd_formula_examples():
    assert schubert(identity(3)) == MultiPoly.const(3)
    assert str(schubert("21")) == "x1"
    assert str(schubert("132")) == "x1 + x2"
    assert grothendieck(identity(3)) == MultiPoly.const(3)
    assert str(grothendieck("21")) == "x1"
    assert str(grothendieck("132")) == "x1 + x2 - x1*x2"


def test_oracle_examples():
    x = [MultiPoly.var(4, i) for i in range(1, 5)]
    assert schubert_oracle(longest(4)) == x[0] * x[0] * x[0] * x[1] * x[1] * x[2]
    assert grothendieck_oracle("132") == MultiPoly.parse("x1 + x2 - x1*x2", 3)


@pytest.mark.parametrize("n", range(1, 5))
def test_oracles_agree(n):
    for w in all_perms(n):
        assert schubert(w) == schubert_oracle(w)
        assert grothendieck(w) == grothendieck_oracle(w)


def test_divided_difference():
    x1, x2 = MultiPoly.var(2, 1), MultiPoly.var(2, 2)
    assert divided_difference(x1 * x1, 1) == x1 + x2
    assert divided_difference(x1 * x2, 1) == MultiPoly.const(2, 0)
    with pytest.raises(InvalidInput):
        divided_difference(x1, 2)


@given(polys, polys)
def test_ring_laws(f, g):
    assert f + g == g + f
    assert f * g == g * f
    assert (f - g) + g == f
    assert f * (g + MultiPoly.const(3)) == f * g + f * MultiPoly.const(3)


@given(polys)
def test_leibniz_for_symmetric_factor(f):
    s = MultiPoly.parse("x1 + x2", 3)
    assert divided_difference(s * f, 1) == s * divided_difference(f, 1)


@given(polys)
def test_text_and_json_round_trip(f):
    assert MultiPoly.parse(str(f), 3) == f
    assert MultiPoly.from_json_obj(f.to_json_obj(), 3) == f


def test_parse_errors():
    for bad in ("x1 +", "y1", "x4", "2**x1", "x1^"):
        with pytest.raises(ParseError):
            MultiPoly.parse(bad, 3)


def test_a_table_examples():
    for w in all_perms(4):
        assert a_table(w).entries.get(w) == 1
    assert a_table(identity(4)).entries == {identity(4): 1}
    t = a_table("1423")
    assert t.signed() == {P("1423"): 1, P("2413"): -1}


def test_drooped_1423_contributes_nothing():
    from bumpless.config import co_nonreduced
    from bumpless.enumeration import bpds_of
    assert D(DROOPED_1423) in bpds_of("1423").all and co_nonreduced(D(DROOPED_1423))
    assert sum(a_table("1423").entries.values()) == len(bpds_of("1423").all) - 1


@pytest.mark.parametrize("n", range(1, 5))
def test_g_to_s_identity(n):
    for w in all_perms(n):
        assert verify_g_to_s(w)
        assert schubert_expand(grothendieck(w)) == a_table(w).signed()


def test_expand_examples():
    for w in all_perms(4):
        assert schubert_expand(schubert(w)) == {w: 1}
    assert schubert_expand(MultiPoly.parse("x1*x2", 3)) == {P("231"): 1}
    with pytest.raises(NotInSpan):
        schubert_expand(MultiPoly.parse("x3^3", 3))


def test_expansion_csv():
    assert a_table("1423").to_csv().splitlines() == ["w,v,a", "1423,1423,1", "1423,2413,1"]
