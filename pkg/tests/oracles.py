"""Independent reference implementations used as test oracles.

Nothing here imports the search code it checks; each oracle is the
slowest obvious way to compute the same answer.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations

from orchard.arrangement import TripleSystem

FLIP_CODE, SWAP_CODE = 0, 1


def start_sequence(n: int, pairs) -> list[int]:
    """Lines 2..n ascending, each pair met on line 1 already swapped."""
    seq = list(range(2, n + 1))
    for a, b in pairs:
        i = seq.index(a)
        seq[i], seq[i + 1] = b, a
    return seq


def brute_force_words(n: int, pairs) -> dict[int, set[tuple[tuple[int, int], ...]]]:
    """Every complete move sequence, grouped by triple count.

    Letters are (1-based position, code) with code 0 for a triple reversal
    and 1 for a swap. No pruning, no normal form.
    """
    out: dict[int, set] = {}
    base = len(pairs)

    def go(seq, word, flips):
        ascents = [i for i in range(len(seq) - 1) if seq[i] < seq[i + 1]]
        if not ascents:
            out.setdefault(base + flips, set()).add(tuple(word))
            return
        for i in ascents:
            if i + 2 < len(seq) and seq[i + 1] < seq[i + 2]:
                go(seq[:i] + seq[i:i + 3][::-1] + seq[i + 3:], word + [(i + 1, FLIP_CODE)], flips + 1)
            go(seq[:i] + [seq[i + 1], seq[i]] + seq[i + 2:], word + [(i + 1, SWAP_CODE)], flips)

    go(start_sequence(n, pairs), [], 0)
    return out


def _span(letter):
    pos, code = letter
    return set(range(pos, pos + (3 if code == FLIP_CODE else 2)))


def trace_normal_form(word) -> tuple:
    """Lexicographically least rearrangement using only swaps of adjacent
    letters acting on disjoint positions (greedy on the dependency order)."""
    word = list(word)
    out = []
    while word:
        # a letter is available if it commutes with everything before it
        avail = [k for k in range(len(word))
                 if all(not (_span(word[j]) & _span(word[k])) for j in range(k))]
        k = min(avail, key=lambda k: word[k])
        out.append(word.pop(k))
    return tuple(out)


def brute_canonical_key(ts: TripleSystem):
    best = None
    for perm in permutations(range(1, ts.n + 1)):
        m = dict(zip(range(1, ts.n + 1), perm))
        key = tuple(sorted(tuple(sorted(m[x] for x in t)) for t in ts.triples))
        if best is None or key < best:
            best = key
    return best


def random_triple_system(rng: random.Random, n: int, attempts: int = 40) -> TripleSystem:
    """Greedy random partial linear space on n lines."""
    used: set[frozenset[int]] = set()
    triples = []
    for _ in range(attempts):
        t = tuple(sorted(rng.sample(range(1, n + 1), 3)))
        pairs = {frozenset(p) for p in combinations(t, 2)}
        if pairs & used:
            continue
        used |= pairs
        triples.append(t)
    return TripleSystem(n, triples)


def random_permutation(rng: random.Random, n: int) -> dict[int, int]:
    img = list(range(1, n + 1))
    rng.shuffle(img)
    return dict(zip(range(1, n + 1), img))
