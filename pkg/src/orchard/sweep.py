"""Sweeping enumeration of pseudoline arrangements.

Line 1 plays the role of the start and end position of a sweeping
pseudoline. Along the sweep the remaining lines 2..n are recorded as the
order in which they meet the sweeping line. The sequence starts ascending,
pairs meeting on line 1 swap immediately, and every later event either
swaps two adjacent ascending labels (a double point) or reverses three
adjacent ascending labels (a triple point). The sweep ends at the fully
descending sequence, each pair having crossed exactly once.

Positions in :class:`Move` are 1-based.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, NamedTuple, Sequence

from .arrangement import TripleSystem

Pair = tuple[int, int]

SWAP = "swap"
FLIP = "flip"
class SweepError(ValueError):
    pass


class Move(NamedTuple):
    kind: str
    pos: int

    @property
    def width(self) -> int:
        return 3 if self.kind == FLIP else 2

    def __str__(self) -> str:
        return f"{'T' if self.kind == FLIP else 'S'}{self.pos}"

    @classmethod
    def parse(cls, token: str) -> Move:
        kind = {"T": FLIP, "S": SWAP}.get(token[:1])
        if kind is None or not token[1:].isdigit():
            raise SweepError(f"bad move token {token!r}")
        return cls(kind, int(token[1:]))


@dataclass(frozen=True)
class StartPairing:
    """How lines 2..n meet line 1.

    Read along line 1, the labels 2..n appear in ascending order; each pair
    ``(a, a+1)`` meets line 1 in a common triple point, each single in a
    double point.
    """

    n: int
    pairs: tuple[Pair, ...]
    singles: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.n < 3:
            raise SweepError(f"need at least 3 lines, got {self.n}")
        pairs = tuple(tuple(sorted(p)) for p in self.pairs)
        used: list[int] = [x for p in pairs for x in p]
        if len(set(used)) != len(used):
            raise SweepError(f"overlapping pairs {pairs}")
        for a, b in pairs:
            if b != a + 1 or a < 2 or b > self.n:
                raise SweepError(f"pair {(a, b)} is not two neighbours in 2..{self.n}")
        rest = tuple(x for x in range(2, self.n + 1) if x not in set(used))
        if self.singles and tuple(sorted(self.singles)) != rest:
            raise SweepError(f"singles {self.singles} do not complete pairs {pairs}")
        object.__setattr__(self, "pairs", tuple(sorted(pairs)))
        object.__setattr__(self, "singles", rest)

    @classmethod
    def default(cls, n: int) -> StartPairing:
        """Pairs (2,3), (4,5), ... with a trailing single when n is even."""
        return cls(n, tuple((a, a + 1) for a in range(2, n, 2)))

    @classmethod
    def all_for(cls, n: int) -> list[StartPairing]:
        """Every way of matching neighbours in 2..n."""
        out: list[StartPairing] = []

        def grow(a: int, acc: list[Pair]):
            if a > n:
                out.append(cls(n, tuple(acc)))
                return
            grow(a + 1, acc)
            if a + 1 <= n:
                grow(a + 2, acc + [(a, a + 1)])

        grow(2, [])
        return out

    def groups(self) -> list[tuple[int, ...]]:
        """Points of line 1 in order, as label groups."""
        firsts = {a: (a, b) for a, b in self.pairs}
        out, a = [], 2
        while a <= self.n:
            if a in firsts:
                out.append(firsts[a])
                a += 2
            else:
                out.append((a,))
                a += 1
        return out

    def initial_triples(self) -> list[tuple[int, int, int]]:
        return [(1, a, b) for a, b in self.pairs]

    def __str__(self) -> str:
        return ",".join("-".join(map(str, g)) for g in self.groups())


def _pair_bit(n: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return 1 << ((i - 2) * (n - 1) + (j - 2))


@dataclass(frozen=True)
class SweepState:
    n: int
    sequence: tuple[int, ...]
    crossed: int  # bit set over label pairs of 2..n
    triples: tuple[tuple[int, int, int], ...]

    def is_crossed(self, i: int, j: int) -> bool:
        return bool(self.crossed & _pair_bit(self.n, i, j))

    def crossed_count(self) -> int:
        return self.crossed.bit_count()

    def inversions(self) -> int:
        """Bit set of inverted pairs of ``sequence``; equals ``crossed``."""
        bits = 0
        seq = self.sequence
        for x in range(len(seq)):
            for y in range(x + 1, len(seq)):
                if seq[x] > seq[y]:
                    bits |= _pair_bit(self.n, seq[x], seq[y])
        return bits


def initial_state(p: StartPairing) -> SweepState:
    seq: list[int] = []
    crossed = 0
    for g in p.groups():
        if len(g) == 2:
            seq += [g[1], g[0]]
            crossed |= _pair_bit(p.n, *g)
        else:
            seq.append(g[0])
    return SweepState(p.n, tuple(seq), crossed, tuple(p.initial_triples()))


def legal_moves(s: SweepState) -> list[Move]:
    seq = s.sequence
    out = []
    for i in range(len(seq) - 1):
        if seq[i] < seq[i + 1]:
            if i + 2 < len(seq) and seq[i + 1] < seq[i + 2]:
                out.append(Move(FLIP, i + 1))
            out.append(Move(SWAP, i + 1))
    return out


def apply_move(s: SweepState, m: Move) -> SweepState:
    seq = list(s.sequence)
    i = m.pos - 1
    if i < 0 or i + m.width > len(seq):
        raise SweepError(f"{m} out of range for {len(seq)} labels")
    block = seq[i:i + m.width]
    if any(block[k] >= block[k + 1] for k in range(len(block) - 1)):
        raise SweepError(f"{m} is illegal: {tuple(block)} is not ascending")
    crossed = s.crossed
    for x in range(len(block)):
        for y in range(x + 1, len(block)):
            bit = _pair_bit(s.n, block[x], block[y])
            if crossed & bit:
                raise SweepError(f"pair {block[x]},{block[y]} would cross twice")
            crossed |= bit
    seq[i:i + m.width] = block[::-1]
    triples = s.triples + ((tuple(block),) if m.kind == FLIP else ())
    return SweepState(s.n, tuple(seq), crossed, triples)


def is_terminal(s: SweepState) -> bool:
    seq = s.sequence
    return all(seq[k] > seq[k + 1] for k in range(len(seq) - 1))


@dataclass(frozen=True)
class SweepWord:
    pairing: StartPairing
    moves: tuple[Move, ...]

    def states(self) -> Iterator[SweepState]:
        s = initial_state(self.pairing)
        yield s
        for m in self.moves:
            s = apply_move(s, m)
            yield s

    def final_state(self) -> SweepState:
        for s in self.states():
            pass
        return s

    @property
    def n(self) -> int:
        return self.pairing.n

    def __str__(self) -> str:
        return " ".join(str(m) for m in self.moves)

    @classmethod
    def parse(cls, pairing: StartPairing, text: str) -> SweepWord:
        return cls(pairing, tuple(Move.parse(t) for t in text.split()))


def triples_of(w: SweepWord) -> TripleSystem:
    return TripleSystem(w.n, w.final_state().triples)


# -- enumeration -------------------------------------------------------------


def _independent(p1: int, w1: int, p2: int, w2: int) -> bool:
    return p1 + w1 <= p2 or p2 + w2 <= p1


def _normal_ok(trail: list[tuple[int, int]], pos: int, kind: int) -> bool:
    """Can (pos, kind) extend ``trail`` keeping lexicographic normal form?

    A word is lexicographically minimal in its commutation class iff no
    letter could be moved left past an independent, larger letter.
    """
    width = 3 if kind == 0 else 2
    for j in range(len(trail) - 1, -1, -1):
        p, k = trail[j]
        if not _independent(p, 3 if k == 0 else 2, pos, width):
            return True
        if (p, k) > (pos, kind):
            return False
    return True


def _budget(p: StartPairing, target_t3: int) -> tuple[int, int]:
    if target_t3 < len(p.pairs):
        raise SweepError(f"target {target_t3} below the {len(p.pairs)} triples on line 1")
    crossings = comb(p.n - 1, 2) - len(p.pairs)
    flips = target_t3 - len(p.pairs)
    swaps = crossings - 3 * flips
    if swaps < 0:
        raise SweepError(
            f"{target_t3} triples leave {swaps} double points among lines 2..{p.n}")
    return flips, swaps


def _search(seq: list[int], trail: list[tuple[int, int]], flips_left: int,
            swaps_left: int, target_flips: int, normal_form: bool, prune: bool,
            out: list[tuple[tuple[int, int], ...]], flips_done: int) -> None:
    m = len(seq)
    if prune:
        if flips_left == 0 and swaps_left == 0:
            out.append(tuple(trail))
            return
    moved = False
    for i in range(m - 1):
        a = seq[i]
        b = seq[i + 1]
        if a > b:
            continue
        if i + 2 < m and b < seq[i + 2] and (not prune or flips_left) and (
                not normal_form or _normal_ok(trail, i, 0)):
            moved = True
            c = seq[i + 2]
            seq[i] = c
            seq[i + 2] = a
            trail.append((i, 0))
            _search(seq, trail, flips_left - 1, swaps_left, target_flips,
                    normal_form, prune, out, flips_done + 1)
            trail.pop()
            seq[i] = a
            seq[i + 2] = c
        if (not prune or swaps_left) and (not normal_form or _normal_ok(trail, i, 1)):
            moved = True
            seq[i] = b
            seq[i + 1] = a
            trail.append((i, 1))
            _search(seq, trail, flips_left, swaps_left - 1, target_flips,
                    normal_form, prune, out, flips_done)
            trail.pop()
            seq[i] = a
            seq[i + 1] = b
    if not prune and not moved and flips_done == target_flips:
        # no ascent left: terminal
        if all(seq[k] > seq[k + 1] for k in range(m - 1)):
            out.append(tuple(trail))


def _to_moves(trail: Sequence[tuple[int, int]]) -> tuple[Move, ...]:
    return tuple(Move(FLIP if k == 0 else SWAP, p + 1) for p, k in trail)


def _prefixes(seq: list[int], trail: list[tuple[int, int]], flips_left: int,
              swaps_left: int, depth: int, normal_form: bool, prune: bool):
    """Search frontier at ``depth`` in depth-first order."""
    if depth == 0 or (flips_left == 0 and swaps_left == 0 and prune):
        yield list(seq), list(trail), flips_left, swaps_left
        return
    m = len(seq)
    for i in range(m - 1):
        a, b = seq[i], seq[i + 1]
        if a > b:
            continue
        if i + 2 < m and b < seq[i + 2] and (not prune or flips_left) and (
                not normal_form or _normal_ok(trail, i, 0)):
            nxt = seq[:i] + [seq[i + 2], b, a] + seq[i + 3:]
            yield from _prefixes(nxt, trail + [(i, 0)], flips_left - 1, swaps_left,
                                 depth - 1, normal_form, prune)
        if (not prune or swaps_left) and (not normal_form or _normal_ok(trail, i, 1)):
            nxt = seq[:i] + [b, a] + seq[i + 2:]
            yield from _prefixes(nxt, trail + [(i, 1)], flips_left, swaps_left - 1,
                                 depth - 1, normal_form, prune)


def _run_subtree(args):
    seq, trail, flips_left, swaps_left, target_flips, normal_form, prune = args
    out: list[tuple[tuple[int, int], ...]] = []
    flips_done = sum(1 for _, k in trail if k == 0)
    _search(seq, trail, flips_left, swaps_left, target_flips, normal_form, prune,
            out, flips_done)
    return out


def default_jobs() -> int:
    return int(os.environ.get("ORCHARD_JOBS", "1"))


def enumerate_words(p: StartPairing, target_t3: int, *, normal_form: bool = True,
                    prune: bool = True, jobs: int | None = None,
                    split_depth: int = 3) -> list[SweepWord]:
    """All sweep words from ``p`` ending with exactly ``target_t3`` triples.

    With ``normal_form`` (default) each wiring diagram is listed once, as the
    lexicographically smallest ordering of its commuting moves; otherwise
    every move sequence is listed. ``prune`` only affects running time.
    Output order is depth-first order and does not depend on ``jobs``.
    """
    flips, swaps = _budget(p, target_t3)
    start = list(initial_state(p).sequence)
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1:
        found: list[tuple[tuple[int, int], ...]] = []
        _search(start, [], flips, swaps, flips, normal_form, prune, found, 0)
    else:
        from multiprocessing import get_context

        tasks = [(s, t, f, w, flips, normal_form, prune)
                 for s, t, f, w in _prefixes(start, [], flips, swaps, split_depth,
                                             normal_form, prune)]
        with get_context("spawn").Pool(jobs) as pool:
            parts = pool.map(_run_subtree, tasks, chunksize=1)
        found = [w for part in parts for w in part]
    return [SweepWord(p, _to_moves(t)) for t in found]


def pairings_like(p: StartPairing) -> list[StartPairing]:
    """All pairings with as many pairs as ``p``.

    For the default pairing these differ only in where the double points sit
    on line 1; sweeping one of them suffices up to relabeling.
    """
    return [q for q in StartPairing.all_for(p.n) if len(q.pairs) == len(p.pairs)]


# -- witnesses ---------------------------------------------------------------


def find_word(ts: TripleSystem, p: StartPairing) -> SweepWord | None:
    """A sweep word from ``p`` whose triple system is exactly ``ts``, if any."""
    wanted = set(ts.triples)
    if not set(p.initial_triples()) <= wanted:
        return None
    pair_in_triple = {(t[x], t[y]) for t in wanted for x in range(3) for y in range(x + 1, 3)}
    seq = list(initial_state(p).sequence)
    m = len(seq)
    dead: set[tuple[int, ...]] = set()
    trail: list[tuple[int, int]] = []

    def dfs() -> bool:
        key = tuple(seq)
        if key in dead:
            return False
        if all(seq[k] > seq[k + 1] for k in range(m - 1)):
            return True
        for i in range(m - 1):
            a, b = seq[i], seq[i + 1]
            if a > b:
                continue
            if i + 2 < m and b < seq[i + 2] and (a, b, seq[i + 2]) in wanted:
                c = seq[i + 2]
                seq[i], seq[i + 2] = c, a
                trail.append((i, 0))
                if dfs():
                    return True
                trail.pop()
                seq[i], seq[i + 2] = a, c
            if (a, b) not in pair_in_triple:
                seq[i], seq[i + 1] = b, a
                trail.append((i, 1))
                if dfs():
                    return True
                trail.pop()
                seq[i], seq[i + 1] = a, b
        dead.add(key)
        return False

    if not dfs():
        return None
    w = SweepWord(p, _to_moves(trail))
    if set(triples_of(w).triples) != wanted:
        return None
    return w


def pairing_for(ts: TripleSystem) -> StartPairing | None:
    """The start pairing read off ``ts`` when line 1 meets pairs (a, a+1)."""
    pairs = [(t[1], t[2]) for t in ts.triples if t[0] == 1]
    try:
        return StartPairing(ts.n, tuple(pairs))
    except SweepError:
        return None


def parse_pairs(text: str, n: int) -> StartPairing:
    """``"2-3,4-5"`` style pair list; bare labels (singles) are skipped."""
    pairs = []
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        a, _, b = chunk.partition("-")
        if not b and a.isdigit():
            continue  # a single, as printed by StartPairing
        if not b:
            raise SweepError(f"bad pair {chunk!r}; expected a-b")
        pairs.append((int(a), int(b)))
    return StartPairing(n, tuple(pairs))
