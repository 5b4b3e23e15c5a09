"""Finite posets with explicit cover relations.

Elements are opaque hashable ids (strings in JSON files, tuples for derived
structures).  The canonical total order on elements is their position in the
``elements`` list; every enumeration in this package reports results in that
order so outputs are stable.  The order relation is kept as a dense boolean
matrix; the stored covers are always the transitive reduction, recomputed at
construction no matter what relation pairs were passed in.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import InputError

Element = Hashable


class Poset:
    """A finite partially ordered set.

    Parameters
    ----------
    elements:
        The ground set, in canonical order.  Duplicates are rejected.
    relations:
        Pairs ``(a, b)`` meaning ``a < b``.  Any relation whose transitive
        closure is acyclic is accepted; covers are recomputed from scratch.
    """

    def __init__(self, elements: Sequence[Element], relations: Iterable[tuple[Element, Element]] = ()):
        self.elements: list[Element] = list(elements)
        self._index: dict[Element, int] = {}
        for pos, el in enumerate(self.elements):
            if el in self._index:
                raise InputError(f"duplicate element: {el!r}")
            self._index[el] = pos
        n = len(self.elements)
        adj = np.zeros((n, n), dtype=bool)
        for a, b in relations:
            ia, ib = self.index(a), self.index(b)
            if ia == ib:
                raise InputError(f"cycle: element {a!r} related to itself")
            adj[ia, ib] = True
        closure = adj.copy()
        while True:
            nxt = closure | (closure @ closure)
            if (nxt == closure).all():
                break
            closure = nxt
        cyc = closure & closure.T
        if cyc.any():
            ia, ib = map(int, np.argwhere(cyc)[0])
            raise InputError(f"cycle through elements {self.elements[ia]!r} and {self.elements[ib]!r}")
        self._lt = closure
        self.leq_matrix: np.ndarray = closure | np.eye(n, dtype=bool)
        red = closure & ~(closure @ closure)
        self._cover_matrix = red
        self.covers: list[tuple[Element, Element]] = [
            (self.elements[i], self.elements[j]) for i, j in np.argwhere(red)
        ]
        self.covers.sort(key=lambda ab: (self.index(ab[0]), self.index(ab[1])))

    # -- basic queries ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: Element) -> bool:
        return x in self._index

    def index(self, x: Element) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise InputError(f"unknown element: {x!r}") from None

    def leq(self, x: Element, y: Element) -> bool:
        return bool(self.leq_matrix[self.index(x), self.index(y)])

    def lt(self, x: Element, y: Element) -> bool:
        return bool(self._lt[self.index(x), self.index(y)])

    def comparable(self, x: Element, y: Element) -> bool:
        i, j = self.index(x), self.index(y)
        return bool(self.leq_matrix[i, j] or self.leq_matrix[j, i])

    def sort_canonical(self, xs: Iterable[Element]) -> list[Element]:
        return sorted(xs, key=self.index)

    # -- ideals and bounds -----------------------------------------------

    def principal_ideal(self, x: Element) -> list[Element]:
        """All elements ``<= x``, in canonical order."""
        col = self.leq_matrix[:, self.index(x)]
        return [self.elements[i] for i in np.flatnonzero(col)]

    def principal_filter(self, x: Element) -> list[Element]:
        row = self.leq_matrix[self.index(x)]
        return [self.elements[i] for i in np.flatnonzero(row)]

    def is_ideal(self, xs: Iterable[Element]) -> bool:
        """True iff the set is downward closed."""
        idx = {self.index(x) for x in xs}
        for i in idx:
            below = np.flatnonzero(self.leq_matrix[:, i])
            if not all(int(b) in idx for b in below):
                return False
        return True

    def upper_bounds(self, xs: Iterable[Element]) -> list[Element]:
        mask = np.ones(len(self.elements), dtype=bool)
        for x in xs:
            mask &= self.leq_matrix[self.index(x)]
        return [self.elements[i] for i in np.flatnonzero(mask)]

    def lower_bounds(self, xs: Iterable[Element]) -> list[Element]:
        mask = np.ones(len(self.elements), dtype=bool)
        for x in xs:
            mask &= self.leq_matrix[:, self.index(x)]
        return [self.elements[i] for i in np.flatnonzero(mask)]

    def minimal_elements(self, xs: Iterable[Element] | None = None) -> list[Element]:
        idx = sorted(self.index(x) for x in xs) if xs is not None else list(range(len(self.elements)))
        out = []
        for i in idx:
            if not any(self._lt[j, i] for j in idx if j != i):
                out.append(self.elements[i])
        return out

    def maximal_elements(self, xs: Iterable[Element] | None = None) -> list[Element]:
        idx = sorted(self.index(x) for x in xs) if xs is not None else list(range(len(self.elements)))
        out = []
        for i in idx:
            if not any(self._lt[i, j] for j in idx if j != i):
                out.append(self.elements[i])
        return out

    def lower_covers(self, x: Element) -> list[Element]:
        col = self._cover_matrix[:, self.index(x)]
        return [self.elements[i] for i in np.flatnonzero(col)]

    def upper_covers(self, x: Element) -> list[Element]:
        row = self._cover_matrix[self.index(x)]
        return [self.elements[i] for i in np.flatnonzero(row)]

    def subposet(self, keep: Iterable[Element]) -> "Poset":
        """Induced subposet, elements in the parent's canonical order."""
        kept = self.sort_canonical(set(keep))
        rel = [(a, b) for a in kept for b in kept if a != b and self.leq(a, b)]
        return Poset(kept, rel)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and bool((self.leq_matrix == other.leq_matrix).all())

    def __repr__(self) -> str:
        return f"Poset({len(self.elements)} elements, {len(self.covers)} covers)"

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "covers": [[a, b] for a, b in self.covers],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Poset":
        if not isinstance(data, dict) or "elements" not in data:
            raise InputError("poset JSON must be an object with an 'elements' list")
        covers = data.get("covers", [])
        try:
            pairs = [(a, b) for a, b in covers]
        except (TypeError, ValueError):
            raise InputError("'covers' must be a list of 2-element lists") from None
        return cls(data["elements"], pairs)

    def to_dot(self, name: str = "poset") -> str:
        """Hasse diagram in DOT syntax, edges pointing upward."""
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
        for el in self.elements:
            lines.append(f'  "{_dot_id(el)}";')
        for a, b in self.covers:
            lines.append(f'  "{_dot_id(a)}" -> "{_dot_id(b)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_id(el: Element) -> str:
    if isinstance(el, tuple):
        return ",".join(str(x) for x in el)
    return str(el).replace('"', "'")
