"""Face census of a swept arrangement on the projective plane."""

from __future__ import annotations

from .arrangement import FaceVector, melchior_identity_check, profile_of
from .sweep import SweepError, SweepWord, is_terminal, triples_of


def full_wiring(w: SweepWord) -> tuple[list[int], list[tuple[int, int]]]:
    """Wiring diagram on all n lines as (start order, [(0-based position, width)]).

    Line 1 enters on top and descends through its points first, so the
    diagram ends fully reversed with line 1 at the bottom.
    """
    n = w.n
    start = list(range(1, n + 1))
    events: list[tuple[int, int]] = []
    pos = 0
    for g in w.pairing.groups():
        events.append((pos, len(g) + 1))
        pos += len(g)
    events.extend((m.pos - 1, m.width) for m in w.moves)
    return start, events


def _find(parent: dict[int, int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def face_sizes(n: int, events: list[tuple[int, int]]) -> list[int]:
    """Side counts of all faces of a complete n-wire diagram.

    Faces are tracked per gap between neighbouring wires (gap 0 above the
    top wire, gap n below the bottom one). The region outside the drawing
    is glued antipodally: the left end of gap g meets the right end of gap
    n - g, and each gluing merges two ray edges into one edge.
    """
    sides: list[int] = []

    def new_face(s: int) -> int:
        sides.append(s)
        return len(sides) - 1

    current = [new_face(1)] + [new_face(2) for _ in range(n - 1)] + [new_face(1)]
    left = list(current)
    closed: list[int] = []
    for p, r in events:
        for g in range(p + 1, p + r):
            closed.append(current[g])
            current[g] = new_face(2)
        sides[current[p]] += 1
        sides[current[p + r]] += 1
    right = current

    parent = {f: f for f in set(left) | set(right)}
    loss = {f: 0 for f in parent}
    glue = [(left[g], right[n - g], 1 if g in (0, n) else 2) for g in range(n + 1)]
    for a, b, lost in glue:
        loss[a] += lost
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            parent[rb] = ra
    merged: dict[int, int] = {}
    for f in parent:
        root = _find(parent, f)
        merged[root] = merged.get(root, 0) + sides[f] - loss[f]
    outer = set(parent)
    return [sides[f] for f in closed if f not in outer] + list(merged.values())


def face_vector(w: SweepWord) -> FaceVector:
    s = w.final_state()
    if not is_terminal(s):
        raise SweepError("face census needs a complete sweep")
    if any(len(t) == 3 and w.n == 3 for t in s.triples):
        raise SweepError("three concurrent lines form a pencil, not an arrangement")
    _, events = full_wiring(w)
    counts: dict[int, int] = {}
    for size in face_sizes(w.n, events):
        counts[size] = counts.get(size, 0) + 1
    return FaceVector(counts)


def verify_melchior_identity(w: SweepWord) -> bool:
    return melchior_identity_check(profile_of(triples_of(w)), face_vector(w))
