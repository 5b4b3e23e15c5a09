"""Shared builders: small factor semilattices, product closure, poset views."""

import itertools
from pathlib import Path

from ppiprep.semilattice import Semilattice

DATA = Path(__file__).parent / "data"


def make_s2() -> Semilattice:
    return Semilattice(["bot", "a", "b"], [("bot", "a"), ("bot", "b")])


def make_s3() -> Semilattice:
    return Semilattice(["bot", "a", "b", "c"],
                       [("bot", "a"), ("bot", "b"), ("bot", "c")])


def make_m3() -> Semilattice:
    return Semilattice(["0", "x", "y", "z", "1"],
                       [("0", "x"), ("0", "y"), ("0", "z"),
                        ("x", "1"), ("y", "1"), ("z", "1")])


def make_c3() -> Semilattice:
    return Semilattice(["0", "m", "1"], [("0", "m"), ("m", "1")])


def make_c2() -> Semilattice:
    return Semilattice(["0", "1"], [("0", "1")])


def make_n5_poset_json() -> dict:
    return {"elements": ["0", "a", "b", "c", "1"],
            "covers": [["0", "a"], ["a", "c"], ["c", "1"], ["0", "b"], ["b", "1"]]}


def close_set(members, lats):
    """Close a set of product vectors under componentwise meets and
    existing componentwise joins."""
    members = set(members)
    while True:
        new = set()
        for m1 in members:
            for m2 in members:
                meet = tuple(l.meet(x, y) for x, y, l in zip(m1, m2, lats))
                if meet not in members:
                    new.add(meet)
                js = [l.join(x, y) for x, y, l in zip(m1, m2, lats)]
                if all(j is not None for j in js) and tuple(js) not in members:
                    new.add(tuple(js))
        if not new:
            return members
        members |= new


def as_semilattice(members, lats) -> Semilattice:
    """A closed member set as a standalone semilattice under the product order."""
    idx = [{e: k for k, e in enumerate(l.elements)} for l in lats]
    n = len(lats)
    ordered = sorted(members, key=lambda m: tuple(idx[i][m[i]] for i in range(n)))
    rel = [(m1, m2) for m1 in ordered for m2 in ordered
           if m1 != m2 and all(l.leq(x, y) for x, y, l in zip(m1, m2, lats))]
    return Semilattice(ordered, rel)


def product_universe(lats):
    return list(itertools.product(*[l.elements for l in lats]))
