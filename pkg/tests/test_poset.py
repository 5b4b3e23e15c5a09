import json

import pytest
from hypothesis import given, strategies as st

from ppiprep.errors import InputError
from ppiprep.poset import Poset


def diamond():
    return Poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def test_transitive_closure_from_covers():
    p = Poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert p.leq("a", "c")
    assert p.lt("a", "c")
    assert not p.leq("c", "a")
    assert p.comparable("a", "c")


def test_reflexive():
    p = diamond()
    for el in p.elements:
        assert p.leq(el, el)
        assert not p.lt(el, el)


def test_cycle_rejected():
    with pytest.raises(InputError):
        Poset(["a", "b"], [("a", "b"), ("b", "a")])


def test_unknown_element_in_relation_rejected():
    with pytest.raises(InputError):
        Poset(["a"], [("a", "q")])


def test_redundant_relations_reduce_to_covers():
    # the full order relation of a chain reduces back to the two cover edges
    p = Poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    assert set(p.covers) == {("a", "b"), ("b", "c")}


def test_principal_ideal_and_filter():
    p = diamond()
    assert p.principal_ideal("1") == ["0", "a", "b", "1"]
    assert p.principal_ideal("a") == ["0", "a"]
    assert p.principal_filter("0") == ["0", "a", "b", "1"]
    assert p.principal_filter("b") == ["b", "1"]


def test_is_ideal():
    p = diamond()
    assert p.is_ideal({"0", "a"})
    assert p.is_ideal(set())
    assert not p.is_ideal({"a"})
    assert not p.is_ideal({"0", "1"})


def test_bounds():
    p = diamond()
    assert p.upper_bounds(["a", "b"]) == ["1"]
    assert p.lower_bounds(["a", "b"]) == ["0"]
    assert p.minimal_elements(["a", "b", "1"]) == ["a", "b"]
    assert p.maximal_elements(["0", "a", "b"]) == ["a", "b"]


def test_covers():
    p = diamond()
    assert p.lower_covers("1") == ["a", "b"]
    assert p.upper_covers("0") == ["a", "b"]
    assert p.lower_covers("0") == []


def test_subposet_restricts_order():
    p = diamond()
    q = p.subposet(["a", "b", "1"])
    assert q.elements == ("a", "b", "1") or list(q.elements) == ["a", "b", "1"]
    assert q.leq("a", "1")
    assert not q.comparable("a", "b")


def test_json_roundtrip():
    p = diamond()
    data = p.to_json()
    assert Poset.from_json(json.loads(json.dumps(data))) == p


def test_from_json_missing_elements():
    with pytest.raises(InputError):
        Poset.from_json({"covers": []})


def test_from_json_covers_optional():
    p = Poset.from_json({"elements": ["a", "b"]})
    assert not p.comparable("a", "b")


def test_dot_output():
    text = diamond().to_dot()
    assert text.startswith("digraph")
    assert text.count("->") == 4
    assert text.count("{") == text.count("}")


@st.composite
def random_posets(draw):
    n = draw(st.integers(min_value=1, max_value=7))
    labels = [f"e{i}" for i in range(n)]
    rel = []
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                rel.append((labels[i], labels[j]))
    return Poset(labels, rel)


@given(random_posets())
def test_leq_is_a_partial_order(p):
    els = p.elements
    for a in els:
        assert p.leq(a, a)
    for a in els:
        for b in els:
            if p.leq(a, b) and p.leq(b, a):
                assert a == b
            for c in els:
                if p.leq(a, b) and p.leq(b, c):
                    assert p.leq(a, c)


@given(random_posets())
def test_covers_match_order(p):
    # b covers a iff a < b with nothing strictly between
    for a in p.elements:
        for b in p.elements:
            strictly_between = any(p.lt(a, m) and p.lt(m, b) for m in p.elements)
            is_cover = (a, b) in set(p.covers)
            assert is_cover == (p.lt(a, b) and not strictly_between)
