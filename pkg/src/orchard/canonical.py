"""Isomorphism classes of triple systems under relabeling of lines.

The canonical key is the lexicographically smallest sorted triple list over
all relabelings. New labels are handed out in increasing order. Label 1
goes to a line of maximal triple degree d, and its partners take labels
2..2d+1 in pairs, since that is the only way the key can open with
(1,2,3), (1,4,5), ... . Every branch is bounded below by giving each
triple the smallest labels its unassigned lines could still receive; the
sorted list of these optimistic images is elementwise below any completion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .arrangement import ArrangementError, TripleSystem

Key = tuple[tuple[int, int, int], ...]


def _refined_colors(ts: TripleSystem) -> list[int]:
    """Invariant line colors: triple degree refined by co-occurrence."""
    n = ts.n
    nbrs: list[list[int]] = [[] for _ in range(n + 1)]
    for a, b, c in ts.triples:
        nbrs[a] += [b, c]
        nbrs[b] += [a, c]
        nbrs[c] += [a, b]
    color = [len(nbrs[x]) for x in range(n + 1)]
    while True:
        sig = [(color[x], tuple(sorted(color[y] for y in nbrs[x]))) for x in range(n + 1)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(color)):
            return new
        color = new


class _Search:
    def __init__(self, ts: TripleSystem, order: list[int]):
        self.n = ts.n
        self.triples = ts.triples
        self.order = order
        self.best: list[tuple[int, ...]] | None = None
        self.best_assign: list[int] | None = None
        self.nodes = 0

    def bound(self, assign: list[int], j: int) -> list[tuple[int, ...]]:
        self.nodes += 1
        # during the pair phase partners fill j+1..2d+1, everyone else comes after
        late = self.pair_end if j < self.pair_end else j
        images = []
        for t in self.rest:
            known = []
            early = lazy = 0
            for x in t:
                if assign[x]:
                    known.append(assign[x])
                elif x in self.partner_set and j < self.pair_end:
                    early += 1
                else:
                    lazy += 1
            known.sort()
            images.append(tuple(known) + tuple(range(j + 1, j + 1 + early))
                          + tuple(range(late + 1, late + 1 + lazy)))
        images.sort()
        return self.head + images

    def run(self, first: int, partners: list[tuple[int, int]]) -> None:
        # triples through label 1 always become (1,2,3), (1,4,5), ...
        self.head = [(1, 2 * k, 2 * k + 1) for k in range(1, len(partners) + 1)]
        self.rest = [t for t in self.triples if first not in t]
        self.partner_set = {x for p in partners for x in p}
        self.pair_end = 2 * len(partners) + 1
        assign = [0] * (self.n + 1)
        assign[first] = 1
        self._pairs(assign, 1, partners)

    def _pairs(self, assign, j, partners):
        if not partners:
            self._free(assign, j)
            return
        if self.best is not None and self.bound(assign, j) >= self.best:
            return
        for idx, (a, b) in enumerate(partners):
            rest = partners[:idx] + partners[idx + 1:]
            for x, y in ((a, b), (b, a)):
                assign[x], assign[y] = j + 1, j + 2
                self._pairs(assign, j + 2, rest)
                assign[x] = assign[y] = 0

    def _free(self, assign, j):
        lb = self.bound(assign, j)
        if j == self.n or all(all(assign[x] for x in t) for t in self.triples):
            if self.best is None or lb < self.best:
                self.best = lb
                self.best_assign = list(assign)
            return
        if self.best is not None and lb >= self.best:
            return
        for x in sorted(range(1, self.n + 1), key=lambda x: self.order[x]):
            if not assign[x]:
                assign[x] = j + 1
                self._free(assign, j + 1)
                assign[x] = 0


def canonical_labeling(ts: TripleSystem) -> tuple[Key, dict[int, int]]:
    """Canonical key together with a relabeling (old -> new) attaining it."""
    if not ts.triples:
        return (), {x: x for x in range(1, ts.n + 1)}
    colors = _refined_colors(ts)
    degree = [0] * (ts.n + 1)
    for t in ts.triples:
        for x in t:
            degree[x] += 1
    ranked = sorted(range(ts.n + 1), key=lambda x: (-degree[x], -colors[x], x))
    order = [0] * (ts.n + 1)
    for i, x in enumerate(ranked):
        order[x] = i
    search = _Search(ts, order)
    top = max(degree)
    for first in sorted(range(1, ts.n + 1), key=lambda x: order[x]):
        if degree[first] != top:
            continue
        partners = sorted(
            (tuple(sorted((y for y in t if y != first), key=lambda y: order[y]))
             for t in ts.triples if first in t),
            key=lambda p: (order[p[0]], order[p[1]]))
        search.run(first, partners)
    assign = search.best_assign
    nxt = max(assign) + 1
    mapping = {}
    for x in range(1, ts.n + 1):
        if assign[x]:
            mapping[x] = assign[x]
        else:
            mapping[x] = nxt
            nxt += 1
    key = tuple(sorted(tuple(sorted(mapping[x] for x in t)) for t in ts.triples))
    if list(key) != search.best:
        raise AssertionError("canonical search returned an inconsistent labeling")
    return key, mapping


def canonical_key(ts: TripleSystem) -> Key:
    return canonical_labeling(ts)[0]


def are_isomorphic(a: TripleSystem, b: TripleSystem) -> tuple[bool, dict[int, int] | None]:
    """Whether ``a`` and ``b`` differ only by labels, with a witness map a -> b."""
    if a.n != b.n:
        raise ArrangementError(f"line counts differ: {a.n} vs {b.n}")
    key_a, sigma_a = canonical_labeling(a)
    key_b, sigma_b = canonical_labeling(b)
    if key_a != key_b:
        return False, None
    inv_b = {v: k for k, v in sigma_b.items()}
    witness = {x: inv_b[sigma_a[x]] for x in range(1, a.n + 1)}
    if a.relabel(witness) != b:
        raise AssertionError("witness permutation failed to map the triples")
    return True, witness


@dataclass(frozen=True)
class IsoClass:
    key: Key
    representative: TripleSystem
    multiplicity: int

    @property
    def system(self) -> TripleSystem:
        return TripleSystem(self.representative.n, self.key)


def dedupe(systems: Iterable[TripleSystem]) -> list[IsoClass]:
    """One class per canonical key, sorted by key; first occurrence represents."""
    seen: dict[tuple[int, Key], list] = {}
    cache: dict[TripleSystem, Key] = {}
    ns = set()
    for ts in systems:
        ns.add(ts.n)
        if len(ns) > 1:
            raise ArrangementError(f"mixed line counts {sorted(ns)}")
        key = cache.get(ts)
        if key is None:
            key = cache[ts] = canonical_key(ts)
        slot = seen.setdefault((ts.n, key), [ts, 0])
        slot[1] += 1
    return [IsoClass(key, rep, count) for (_, key), (rep, count) in sorted(seen.items())]


def class_keys(systems: Sequence[TripleSystem]) -> list[Key]:
    return [c.key for c in dedupe(systems)]
