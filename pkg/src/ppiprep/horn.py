"""Implicational systems: closures, families, recognition, and optimal bases.

An implicational system over a finite ground set describes a family of
closed sets (an intersection-closed family).  Improper implications, whose
conclusion is empty, forbid their premise outright, so closures can fail to
exist.  This module computes closures by forward chaining, decides in
polynomial time whether the closed family is a modular semilattice without
ever enumerating it, enumerates pseudoclosed sets, and produces size-optimal
implicational bases for modular families.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import BudgetError, InputError, NotModularError
from .ppip import Ppip, check_regularity, check_weak_triangle, induced_ppip, subspace_closure
from .semilattice import Semilattice

# Incremented whenever the closed family of a system is materialized.
# Operations advertised as closure-driven (closure, recognition) must leave
# this counter untouched; tests pin that behaviour.
FAMILY_ENUMERATIONS = 0

DEFAULT_BUDGET = 1 << 20


@dataclass(frozen=True)
class ClosureResult:
    """Closure of a set: its value, or ``None`` when no closed superset exists."""

    value: frozenset | None

    @property
    def exists(self) -> bool:
        return self.value is not None

    def __repr__(self) -> str:
        if self.value is None:
            return "ClosureResult(nonexistent)"
        return f"ClosureResult({sorted(map(str, self.value))})"


def _ground_key(e):
    s = str(e)
    return (0, int(s)) if s.isdigit() else (1, s)


class ImplicationalSystem:
    """Finite ground set plus implications ``premise -> conclusion``.

    An empty conclusion marks an improper implication: no closed set may
    contain the premise.  Implications are deduplicated and kept in a
    canonical order, so equal systems compare equal.
    """

    def __init__(self, ground: Iterable, implications: Iterable = ()):
        ground = list(ground)
        if len(set(ground)) != len(ground):
            raise InputError("duplicate ground elements")
        self.ground: tuple = tuple(ground)
        self._index = {e: i for i, e in enumerate(self.ground)}
        seen = set()
        canon = []
        for prem, concl in implications:
            a = frozenset(prem)
            b = frozenset(concl)
            for x in a | b:
                if x not in self._index:
                    raise InputError(f"implication mentions unknown element {x!r}")
            if (a, b) not in seen:
                seen.add((a, b))
                canon.append((a, b))
        canon.sort(key=lambda ab: (sorted(self._index[x] for x in ab[0]),
                                   sorted(self._index[x] for x in ab[1])))
        self.implications: tuple = tuple(canon)
        self._build_masks()

    def _build_masks(self) -> None:
        n = len(self.ground)
        self._bot = 1 << n
        full = (1 << n) - 1
        reduced = []
        for a, b in self.implications:
            amask = self._mask(a)
            bmask = self._mask(b) if b else self._bot
            reduced.append((amask, bmask))
        # the synthetic bottom implies everything, making nonexistence absorbing
        reduced.append((self._bot, full | self._bot))
        self._reduced = reduced
        watchers: list[list[int]] = [[] for _ in range(n + 1)]
        for i, (amask, _) in enumerate(reduced):
            m = amask
            while m:
                low = m & (-m)
                watchers[low.bit_length() - 1].append(i)
                m ^= low
        self._watchers = watchers

    def _mask(self, xs: Iterable) -> int:
        m = 0
        for x in xs:
            i = self._index.get(x)
            if i is None:
                raise InputError(f"unknown ground element {x!r}")
            m |= 1 << i
        return m

    def _unmask(self, m: int) -> frozenset:
        return frozenset(self.ground[i] for i in range(len(self.ground)) if m >> i & 1)

    def _tuple(self, m: int) -> tuple:
        return tuple(self.ground[i] for i in range(len(self.ground)) if m >> i & 1)

    def size(self) -> int:
        """Total size: sum of premise and conclusion cardinalities."""
        return sum(len(a) + len(b) for a, b in self.implications)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ImplicationalSystem):
            return NotImplemented
        return self.ground == other.ground and self.implications == other.implications

    def __repr__(self) -> str:
        return (f"ImplicationalSystem({len(self.ground)} elements, "
                f"{len(self.implications)} implications, size {self.size()})")

    # -- closure ---------------------------------------------------------

    def _close_mask(self, x: int) -> int | None:
        """Forward chaining with premise counters; ``None`` when the synthetic
        bottom is reached, i.e. no closed superset exists."""
        counts = [a.bit_count() for a, _ in self._reduced]
        result = x
        frontier = x
        for i, (_, b) in enumerate(self._reduced):
            if counts[i] == 0:
                new = b & ~result
                result |= new
                frontier |= new
        processed = 0
        while frontier:
            low = frontier & (-frontier)
            frontier ^= low
            if processed & low:
                continue
            processed |= low
            for i in self._watchers[low.bit_length() - 1]:
                counts[i] -= 1
                if counts[i] == 0:
                    new = self._reduced[i][1] & ~result
                    result |= new
                    frontier |= new
        return None if result & self._bot else result

    def closure(self, xs: Iterable) -> ClosureResult:
        m = self._close_mask(self._mask(xs))
        return ClosureResult(None if m is None else self._unmask(m))

    def is_closed(self, xs: Iterable) -> bool:
        s = frozenset(xs)
        for a, b in self.implications:
            if a <= s and not (b and b <= s):
                return False
        return True

    # -- the closed family ----------------------------------------------

    def closed_sets(self, budget: int = DEFAULT_BUDGET) -> list[frozenset]:
        """All closed sets, found by closing single-element extensions from
        the bottom; never scans the power set.  ``budget`` caps the number of
        closure computations."""
        global FAMILY_ENUMERATIONS
        FAMILY_ENUMERATIONS += 1
        spent = 1
        bottom = self._close_mask(0)
        if bottom is None:
            return []
        n = len(self.ground)
        seen = {bottom}
        queue = [bottom]
        while queue:
            cur = queue.pop()
            for i in range(n):
                if cur >> i & 1:
                    continue
                spent += 1
                if spent > budget:
                    raise BudgetError(f"family enumeration exceeded budget of {budget} closures")
                grown = self._close_mask(cur | (1 << i))
                if grown is not None and grown not in seen:
                    seen.add(grown)
                    queue.append(grown)
        out = [self._unmask(m) for m in seen]
        out.sort(key=lambda s: (len(s), sorted(self._index[x] for x in s)))
        return out

    def family(self, budget: int = DEFAULT_BUDGET) -> Semilattice:
        """The closed sets ordered by inclusion, as a semilattice whose
        element ids are canonically sorted tuples."""
        sets = self.closed_sets(budget)
        if not sets:
            raise InputError("the system has no closed sets: the empty set derives a forbidden premise")
        return _family_semilattice(self, sets)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "ground": list(self.ground),
            "implications": [
                {"premise": sorted(a, key=_ground_key), "conclusion": sorted(b, key=_ground_key)}
                for a, b in self.implications
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ImplicationalSystem":
        if "ground" not in data or "implications" not in data:
            raise InputError("implication JSON needs 'ground' and 'implications' keys")
        imps = [(imp.get("premise", []), imp.get("conclusion", [])) for imp in data["implications"]]
        return cls(data["ground"], imps)

    def to_text(self) -> str:
        lines = []
        for a, b in self.implications:
            lhs = " ".join(str(x) for x in sorted(a, key=_ground_key))
            rhs = " ".join(str(x) for x in sorted(b, key=_ground_key)) if b else "_|_"
            lines.append(f"{lhs} -> {rhs}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ImplicationalSystem":
        """Parse the line format ``a b -> c d``; ``_|_`` (or nothing) on the
        right marks an improper implication.  The ground set is the set of
        mentioned elements."""
        imps = []
        mentioned = set()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "->" not in line:
                raise InputError(f"line {lineno}: expected 'premise -> conclusion', got {raw!r}")
            lhs, rhs = line.split("->", 1)
            prem = lhs.split()
            concl = [] if rhs.strip() in ("_|_", "") else rhs.split()
            mentioned.update(prem)
            mentioned.update(concl)
            imps.append((prem, concl))
        ground = sorted(mentioned, key=_ground_key)
        return cls(ground, imps)


def _family_semilattice(sigma: ImplicationalSystem, sets: list[frozenset]) -> Semilattice:
    ids = [tuple(sorted(s, key=lambda x: sigma._index[x])) for s in sets]
    rel = [(s, t) for s in ids for t in ids if s != t and set(s) < set(t)]
    return Semilattice(ids, rel)


def closure(sigma: ImplicationalSystem, xs: Iterable) -> ClosureResult:
    return sigma.closure(xs)


def family(sigma: ImplicationalSystem, budget: int = DEFAULT_BUDGET) -> Semilattice:
    return sigma.family(budget)


# -- irreducible structure ------------------------------------------------

def _prune(sigma: ImplicationalSystem) -> tuple[ImplicationalSystem, list]:
    """Remove elements whose singleton closure does not exist.

    Implications mentioning a removed element in the premise can never fire
    inside a closed set and are dropped; implications concluding a removed
    element forbid their premise, so they become improper.  The closed family
    is unchanged, hence a single pass suffices.
    """
    removed = [e for e in sigma.ground if not sigma.closure([e]).exists]
    if not removed:
        return sigma, []
    gone = set(removed)
    kept = [e for e in sigma.ground if e not in gone]
    imps = []
    for a, b in sigma.implications:
        if a & gone:
            continue
        if b & gone:
            imps.append((a, frozenset()))
        else:
            imps.append((a, b))
    return ImplicationalSystem(kept, imps), removed


def irreducible_ppip(sigma: ImplicationalSystem) -> Ppip:
    """The poset of irreducible closed sets with the induced inconsistency
    and collinearity relations, computed through closure calls only.

    Elements whose singleton closure does not exist contribute nothing and
    are skipped.  Ids are canonically sorted tuples, matching the ids of
    ``family(sigma)``, so the result compares equal to the induced structure
    of the enumerated family.
    """
    idx = sigma._index
    singles = {}
    for e in sigma.ground:
        m = sigma._close_mask(1 << idx[e])
        if m is not None:
            singles[e] = m
    candidates = sorted(set(singles.values()), key=lambda m: (m.bit_count(), m))
    irr = []
    for f0 in candidates:
        union = 0
        for i in range(len(sigma.ground)):
            if f0 >> i & 1:
                ci = singles[sigma.ground[i]]
                if ci != f0:
                    union |= ci
        if sigma._close_mask(union) != f0:
            irr.append(f0)

    ids = [sigma._tuple(m) for m in irr]
    ids.sort(key=lambda t: (len(t), tuple(idx[x] for x in t)))
    masks = {t: sigma._mask(t) for t in ids}
    rel = [(s, t) for s in ids for t in ids
           if s != t and masks[s] & ~masks[t] == 0]

    pairjoin: dict[tuple, int | None] = {}
    for s, t in combinations(ids, 2):
        pairjoin[(s, t)] = pairjoin[(t, s)] = sigma._close_mask(masks[s] | masks[t])

    inconsistent = [frozenset((s, t)) for s, t in combinations(ids, 2)
                    if pairjoin[(s, t)] is None]
    collinear = []
    for s, t, u in combinations(ids, 3):
        if (masks[s] & ~masks[t] == 0 or masks[t] & ~masks[s] == 0 or
                masks[s] & ~masks[u] == 0 or masks[u] & ~masks[s] == 0 or
                masks[t] & ~masks[u] == 0 or masks[u] & ~masks[t] == 0):
            continue
        j = pairjoin[(s, t)]
        if j is not None and pairjoin[(t, u)] == j and pairjoin[(s, u)] == j:
            collinear.append(frozenset((s, t, u)))

    from .poset import Poset
    return Ppip(Poset(ids, rel), inconsistent, collinear)


# -- recognition ----------------------------------------------------------

def recognize_modular_semilattice(sigma: ImplicationalSystem) -> tuple[bool, dict | None]:
    """Decide whether the closed family is a modular semilattice, without
    enumerating it.

    After pruning, the inconsistent pairs are collected and three conditions
    certify that pairwise-existing joins force triple joins; then the
    irreducible structure must satisfy regularity, the weak triangle
    condition, and implication generation: each proper implication's
    conclusion points must lie in the subspace its premise points generate.
    Returns ``(True, None)`` or ``(False, witness)``.
    """
    pruned, _ = _prune(sigma)
    ground = pruned.ground
    idx = pruned._index

    inc_pairs = []
    for e1, e2 in combinations(ground, 2):
        if pruned._close_mask(1 << idx[e1] | 1 << idx[e2]) is None:
            inc_pairs.append(frozenset((e1, e2)))

    def has_inc(s: frozenset) -> bool:
        return any(p <= s for p in inc_pairs)

    for a, b in pruned.implications:
        if not b and not has_inc(a):
            return False, {"condition": "improper-premise-consistent",
                           "premise": tuple(sorted(a, key=_ground_key))}
    imps = pruned.implications
    for i in range(len(imps)):
        a, b = imps[i]
        for j in range(i, len(imps)):
            a2, b2 = imps[j]
            if has_inc(a | a2 | b | b2) and not has_inc(a | a2):
                return False, {"condition": "implication-pair",
                               "premises": (tuple(sorted(a, key=_ground_key)),
                                            tuple(sorted(a2, key=_ground_key)))}
    for a, b in imps:
        for e in ground:
            if has_inc(a | b | {e}) and not has_inc(a | {e}):
                return False, {"condition": "implication-element",
                               "premise": tuple(sorted(a, key=_ground_key)), "element": e}

    ppip = irreducible_ppip(pruned)
    witness = check_regularity(ppip)
    if witness is not None:
        witness = dict(witness)
        witness["condition"] = witness.pop("axiom")
        return False, witness
    witness = check_weak_triangle(ppip)
    if witness is not None:
        witness = dict(witness)
        witness["condition"] = witness.pop("axiom")
        return False, witness

    witness = _check_implication_generation(pruned, ppip)
    if witness is not None:
        return False, witness
    return True, None


def _check_implication_generation(sigma: ImplicationalSystem, ppip: Ppip) -> dict | None:
    """For every proper implication with consistent premise, each conclusion
    element's irreducibles must lie in the subspace generated by the premise
    elements' irreducibles.

    This closes the gap between the axioms and the family: together with the
    join conditions it makes the closure of any consistent set coincide with
    the subspace its points generate, which forces the subspace family to be
    exactly the closed family.  Dropping it admits non-modular families whose
    irreducible structure carries no collinear triples at all.
    """
    idx = sigma._index
    points = list(ppip.poset.elements)
    masks = {t: sigma._mask(t) for t in points}
    single = {e: sigma._close_mask(1 << idx[e]) for e in sigma.ground}

    def ideal_of(element_mask: int) -> set:
        return {t for t in points if masks[t] & ~element_mask == 0}

    for a, b in sigma.implications:
        if not b:
            continue
        if sigma._close_mask(sigma._mask(a)) is None:
            continue
        seed = set()
        for x in a:
            seed |= ideal_of(single[x])
        generated = subspace_closure(ppip, seed) if seed else frozenset()
        for e in b - a:
            if not ideal_of(single[e]) <= generated:
                return {"condition": "implication-generation",
                        "premise": tuple(sorted(a, key=_ground_key)),
                        "element": e}
    return None


# -- quasiclosed and pseudoclosed sets ------------------------------------

def _equiv(c1: int | None, c2: int | None) -> bool:
    return c1 == c2


def pseudoclosed_sets(sigma: ImplicationalSystem, budget: int = DEFAULT_BUDGET) -> list[frozenset]:
    """All pseudoclosed sets: minimal properly-quasiclosed sets within each
    closure-equivalence class (sets without closure share one class).

    Runs the definitional test over all subset pairs, so the work is 3^|E|,
    charged against ``budget``.  When the family is modular and the system is
    simple, the structural description (singletons of nonatomic irreducibles,
    unions of two intermediate ideals of a height-2 interval with at least
    three intermediates, and quasiclosures of minimal inconsistent pairs) is
    computed as well and the two routes are required to agree.
    """
    n = len(sigma.ground)
    if 3 ** n > budget:
        raise BudgetError(f"pseudoclosed enumeration needs 3^{n} subset tests, over budget {budget}")
    memo = [sigma._close_mask(x) for x in range(1 << n)]

    quasi = []
    for x in range(1 << n):
        cx = memo[x]
        ok = True
        y = x
        while True:
            cy = memo[y]
            if not _equiv(cy, cx) and (cy is None or cy & ~x):
                ok = False
                break
            if y == 0:
                break
            y = (y - 1) & x
        quasi.append(ok)

    proper = [x for x in range(1 << n) if quasi[x] and memo[x] != x]
    by_class: dict = {}
    for x in proper:
        by_class.setdefault(memo[x], []).append(x)
    minimal = []
    for members in by_class.values():
        for x in members:
            if not any(y != x and y & ~x == 0 for y in members):
                minimal.append(x)
    result = sorted(minimal, key=lambda m: (m.bit_count(), m))
    out = [sigma._unmask(m) for m in result]

    _crosscheck_structural(sigma, memo, set(result))
    return out


def _crosscheck_structural(sigma: ImplicationalSystem, memo: list, brute_masks: set) -> None:
    closed = [x for x in range(len(memo)) if memo[x] == x]
    if not closed:
        return
    global FAMILY_ENUMERATIONS
    FAMILY_ENUMERATIONS += 1
    L = _family_semilattice(sigma, [sigma._unmask(m) for m in closed])
    ok, _ = L.is_modular_semilattice()
    if not ok:
        return
    mapping = _simple_bijection(sigma, L)
    if mapping is None:
        return
    inverse = {t: e for e, t in mapping.items()}
    structural = set()
    for s in _structural_pseudoclosed(L):
        structural.add(sigma._mask([inverse[t] for t in s]))
    if structural != brute_masks:
        extra = [sorted(map(str, sigma._unmask(m))) for m in sorted(structural ^ brute_masks)]
        raise AssertionError(f"pseudoclosed routes disagree on {extra}")


def quasiclosure(sigma: ImplicationalSystem, xs: Iterable) -> frozenset:
    """Smallest quasiclosed superset, by growing with closures of subsets
    that lie in a strictly smaller closure class."""
    start = frozenset(xs)
    if len(start) > 20:
        raise BudgetError("quasiclosure input larger than 20 elements")
    cur = sigma._mask(start)
    n = len(sigma.ground)
    while True:
        ccur = sigma._close_mask(cur)
        grown = cur
        y = cur
        while True:
            cy = sigma._close_mask(y)
            if not _equiv(cy, ccur) and cy is not None:
                grown |= cy
            if y == 0:
                break
            y = (y - 1) & cur
        if grown == cur:
            return sigma._unmask(cur)
        cur = grown


# -- optimal bases --------------------------------------------------------

def _phi_map(L: Semilattice) -> tuple[list, dict]:
    irr = L.join_irreducibles()
    phi = {x: frozenset(p for p in irr if L.leq(p, x)) for x in L.elements}
    return irr, phi


def _mn_intervals(L: Semilattice) -> list[tuple]:
    """Height-2 intervals [y, x] whose strict interior has at least three
    elements, each covering y and covered by x, with pairwise meets y and
    pairwise joins x.  Returned as (y, x, mids) with mids canonical."""
    out = []
    for y in L.elements:
        above = [x for x in L.elements if L.lt(y, x)]
        for x in above:
            mids = [z for z in L.elements if L.lt(y, z) and L.lt(z, x)]
            if len(mids) < 3:
                continue
            covers_ok = all(y in L.lower_covers(z) and z in L.lower_covers(x) for z in mids)
            if not covers_ok:
                continue
            degenerate = False
            for z1, z2 in combinations(mids, 2):
                if L.meet(z1, z2) != y or L.join(z1, z2) != x:
                    degenerate = True
                    break
            if not degenerate:
                out.append((y, x, mids))
    return out


def optimal_base(L: Semilattice) -> ImplicationalSystem:
    """Size-optimal implicational base for a modular semilattice, over the
    ground set of its join-irreducibles.

    Three families of implications: each nonatomic irreducible implies an
    irredundant irreducible decomposition of its unique lower cover; each
    height-2 interval with at least three intermediates yields, per pair of
    intermediates, one implication between representatives; each minimal
    inconsistent pair of irreducibles implies the empty conclusion.  The
    result is checked to regenerate the family exactly.
    """
    ok, witness = L.is_modular_semilattice()
    if not ok:
        raise NotModularError(f"not a modular semilattice: {witness['condition']} fails", witness=witness)
    irr, phi = _phi_map(L)
    order = {p: i for i, p in enumerate(irr)}
    imps = []

    for q in irr:
        lower = L.lower_covers(q)
        assert len(lower) == 1
        qlow = lower[0]
        if qlow == L.min_element:
            continue
        below = [p for p in irr if L.leq(p, qlow)]
        decomposition = sorted(L.maximal_elements(below), key=order.get)
        assert L.join_all(decomposition) == qlow
        for cand in sorted(decomposition, key=order.get, reverse=True):
            if len(decomposition) == 1:
                break
            trial = [p for p in decomposition if p != cand]
            if L.join_all(trial) == qlow:
                decomposition = trial
        imps.append(({q}, frozenset(decomposition)))

    for y, x, mids in _mn_intervals(L):
        reps = []
        for z in mids:
            fresh = sorted(phi[z] - phi[y], key=order.get)
            assert fresh, "intermediate adds no irreducible"
            reps.append(fresh[0])
        assert len(set(reps)) == len(reps), "interval representatives collide"
        k = len(mids)
        for i, j in combinations(range(k), 2):
            t = min(set(range(k)) - {i, j})
            imps.append(({reps[i], reps[j]}, frozenset({reps[t]})))

    ppip = induced_ppip(L)
    for p, q in ppip.minimal_inconsistent_pairs():
        imps.append(({p, q}, frozenset()))

    base = ImplicationalSystem(irr, imps)
    produced = set(base.closed_sets())
    expected = {phi[l] for l in L.elements}
    if produced != expected:
        diff = sorted(map(str, produced.symmetric_difference(expected)))[:3]
        raise AssertionError(f"optimal base does not regenerate the family: {diff}")
    return base


def _simple_bijection(sigma: ImplicationalSystem, L: Semilattice) -> dict | None:
    """Map e -> c({e}) as a family element id, when it is a bijection onto
    the irreducibles; ``None`` otherwise."""
    irr = set(L.join_irreducibles())
    mapping = {}
    seen = set()
    for e in sigma.ground:
        r = sigma.closure([e])
        if not r.exists:
            return None
        t = tuple(sorted(r.value, key=lambda x: sigma._index[x]))
        if t in seen or t not in irr:
            return None
        seen.add(t)
        mapping[e] = t
    return mapping


def _structural_pseudoclosed(L: Semilattice) -> set[frozenset]:
    """The three structural families of pseudoclosed sets of a modular
    family, as subsets of its irreducibles."""
    irr, phi = _phi_map(L)
    out = set()
    for q in irr:
        lower = L.lower_covers(q)
        if len(lower) == 1 and lower[0] != L.min_element:
            out.add(frozenset({q}))
    for y, x, mids in _mn_intervals(L):
        for z1, z2 in combinations(mids, 2):
            out.add(phi[z1] | phi[z2])
    ppip = induced_ppip(L)
    for p, q in ppip.minimal_inconsistent_pairs():
        out.add(_family_quasiclosure(L, irr, phi, set(phi[p] | phi[q])))
    return out


def _family_quasiclosure(L: Semilattice, irr: list, phi: dict, seed: set) -> frozenset:
    """Quasiclosure inside the family viewed as a closure system on its
    irreducibles: grow by closures of subsets from strictly smaller classes."""
    if len(seed) > 20:
        raise BudgetError("quasiclosure input larger than 20 elements")

    def close(s: frozenset) -> frozenset | None:
        top = L.join_all(s)
        return None if top is None else phi[top]

    cur = frozenset(seed)
    while True:
        ccur = close(cur)
        grown = set(cur)
        for k in range(len(cur) + 1):
            for sub in combinations(sorted(cur, key=str), k):
                csub = close(frozenset(sub))
                if csub is not None and csub != ccur:
                    grown |= csub
        if frozenset(grown) == cur:
            return cur
        cur = frozenset(grown)


def optimal_base_from_implications(sigma: ImplicationalSystem,
                                   budget: int = DEFAULT_BUDGET) -> ImplicationalSystem:
    """Convert any simple system with a modular family into a size-optimal
    base over the same ground set.

    The ground set is identified with the irreducible closed sets (the map
    e -> c({e}) must be a bijection onto them), the optimal base of the
    family is computed there, and the labels are pulled back.
    """
    L = sigma.family(budget)
    mapping = _simple_bijection(sigma, L)
    if mapping is None:
        for e in sigma.ground:
            r = sigma.closure([e])
            if not r.exists:
                raise InputError(f"system is not simple: closure of {{{e!r}}} does not exist")
        values = {}
        for e in sigma.ground:
            t = tuple(sorted(sigma.closure([e]).value, key=lambda x: sigma._index[x]))
            if t in values:
                raise InputError(f"system is not simple: {values[t]!r} and {e!r} share a closure")
            values[t] = e
        bad = [e for e, t in ((e2, tuple(sorted(sigma.closure([e2]).value, key=lambda x: sigma._index[x])))
                              for e2 in sigma.ground) if t not in set(L.join_irreducibles())]
        raise InputError(f"system is not simple: closure of {{{bad[0]!r}}} is not irreducible")
    ok, witness = recognize_modular_semilattice(sigma)
    if not ok:
        raise NotModularError(f"family is not a modular semilattice: {witness['condition']} fails",
                              witness=witness)
    base = optimal_base(L)
    inverse = {t: e for e, t in mapping.items()}
    imps = [([inverse[t] for t in a], [inverse[t] for t in b]) for a, b in base.implications]
    out = ImplicationalSystem(sigma.ground, imps)
    assert set(out.closed_sets(budget)) == set(sigma.closed_sets(budget))
    return out
