"""Incidence combinatorics of simple pseudoline arrangements.

An arrangement with only double and triple points is identified by its
triple system: the set of 3-element subsets of line labels whose lines meet
in a common point. Every other pair of lines meets in a double point, so the
double points are derived, never stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, NamedTuple

Triple = tuple[int, int, int]
Pair = tuple[int, int]


class ArrangementError(ValueError):
    """Raised for inconsistent incidence data."""


def _pairs_of(t: Iterable[int]) -> list[Pair]:
    return list(combinations(sorted(t), 2))


@dataclass(frozen=True)
class TripleSystem:
    n: int
    triples: tuple[Triple, ...]

    def __init__(self, n: int, triples: Iterable[Iterable[int]]):
        normalized = []
        for t in triples:
            members = tuple(sorted(int(x) for x in t))
            if len(members) != 3 or len(set(members)) != 3:
                raise ArrangementError(f"not a triple of distinct labels: {t!r}")
            if members[0] < 1 or members[2] > n:
                raise ArrangementError(f"triple {members} has a label outside 1..{n}")
            normalized.append(members)
        seen: dict[Pair, Triple] = {}
        for t in normalized:
            for p in _pairs_of(t):
                if p in seen:
                    raise ArrangementError(
                        f"pair {{{p[0]},{p[1]}}} lies in both {list(seen[p])} and {list(t)}"
                    )
                seen[p] = t
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "triples", tuple(sorted(normalized)))

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    def relabel(self, perm: Mapping[int, int]) -> TripleSystem:
        """Image under the label map ``perm`` (old label -> new label)."""
        return TripleSystem(self.n, [[perm[x] for x in t] for t in self.triples])

    def degree(self, label: int) -> int:
        return sum(label in t for t in self.triples)

    def as_lists(self) -> list[list[int]]:
        return [list(t) for t in self.triples]


@dataclass(frozen=True)
class Profile:
    """Intersection census: ``t[r]`` points where exactly r lines meet."""

    n: int
    t: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(r): int(c) for r, c in self.t.items() if c}
        for r, c in clean.items():
            if r < 2 or r > self.n:
                raise ArrangementError(f"multiplicity {r} outside 2..{self.n}")
            if c < 0:
                raise ArrangementError(f"negative count t_{r}={c}")
        object.__setattr__(self, "t", dict(sorted(clean.items())))

    def __getitem__(self, r: int) -> int:
        return self.t.get(r, 0)

    @property
    def t2(self) -> int:
        return self[2]

    @property
    def t3(self) -> int:
        return self[3]

    def vertex_count(self) -> int:
        return sum(self.t.values())

    def edge_count(self) -> int:
        return sum(r * c for r, c in self.t.items())

    def __str__(self) -> str:
        return " ".join(f"t{r}={c}" for r, c in self.t.items()) or "empty"


@dataclass(frozen=True)
class FaceVector:
    """``p[j]`` faces bounded by exactly j sides."""

    p: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(j): int(c) for j, c in self.p.items() if c}
        for j, c in clean.items():
            if j < 3 or c < 0:
                raise ArrangementError(f"invalid face count p_{j}={c}")
        object.__setattr__(self, "p", dict(sorted(clean.items())))

    def __getitem__(self, j: int) -> int:
        return self.p.get(j, 0)

    def face_count(self) -> int:
        return sum(self.p.values())

    def side_incidences(self) -> int:
        return sum(j * c for j, c in self.p.items())


class MelchiorVerdict(NamedTuple):
    feasible: bool
    deficit: int


def profile_of(ts: TripleSystem) -> Profile:
    t3 = len(ts.triples)
    t2 = comb(ts.n, 2) - 3 * t3
    if t2 < 0:
        raise ArrangementError(
            f"{t3} triples need {3 * t3} pairs but only {comb(ts.n, 2)} exist"
        )
    return Profile(ts.n, {2: t2, 3: t3})


def pair_count_identity(p: Profile) -> bool:
    """Every pair of lines meets exactly once: C(n,2) = sum C(r,2) t_r."""
    return comb(p.n, 2) == sum(comb(r, 2) * c for r, c in p.t.items())


def melchior_feasible(p: Profile) -> MelchiorVerdict:
    """Necessary condition t2 >= 3 + sum_{r>=4} (r-3) t_r.

    Follows from the Melchior identity since every face has at least three
    sides. A feasible verdict does not imply the profile is realizable.
    """
    if p.n < 3:
        raise ArrangementError(f"Melchior bound needs n >= 3, got {p.n}")
    need = 3 + sum((r - 3) * c for r, c in p.t.items() if r >= 4)
    deficit = need - p.t2
    return MelchiorVerdict(deficit <= 0, max(deficit, 0))


def melchior_identity_check(p: Profile, f: FaceVector) -> bool:
    lhs = sum((3 - r) * c for r, c in p.t.items())
    rhs = 3 + sum((j - 3) * c for j, c in f.p.items())
    return lhs == rhs


def green_tao_bound(n: int) -> int:
    """Upper bound on t3 for n real lines, proven only for large n.

    Advisory: used as a sanity check, never to reject data.
    """
    if n < 3:
        raise ArrangementError(f"bound defined for n >= 3, got {n}")
    return 1 + n * (n - 3) // 6


def double_points_of(ts: TripleSystem) -> set[Pair]:
    covered = {p for t in ts.triples for p in _pairs_of(t)}
    return {p for p in combinations(range(1, ts.n + 1), 2) if p not in covered}
