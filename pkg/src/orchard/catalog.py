"""Reference data: the thirteen 12-line / 19-triple classes and known profiles."""

from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Profile, TripleSystem, melchior_feasible, pair_count_identity
from .formats import parse_triples

REFERENCE_CLASSES: dict[int, str] = {
    1: "[[1,2,3],[1,4,5],[1,6,7],[1,8,9],[1,10,11],[2,4,7],[2,6,9],[2,8,11],[2,10,12],[3,4,9],[3,5,7],[3,6,11],[3,8,12],[4,6,12],[4,8,10],[5,6,10],[5,9,11],[7,9,10],[7,11,12]]",
    2: "[[1,2,3],[1,4,5],[1,6,7],[1,8,9],[1,10,11],[2,4,7],[2,6,9],[2,8,11],[2,10,12],[3,4,9],[3,5,7],[3,6,11],[3,8,12],[4,6,12],[4,8,10],[5,9,11],[7,9,10],[7,11,12],[5,6,8]]",
    3: "[[1,2,3],[1,4,5],[1,6,7],[1,8,9],[1,10,11],[2,4,7],[2,6,9],[2,8,11],[2,10,12],[3,5,7],[3,6,11],[3,8,12],[4,6,12],[4,8,10],[4,9,11],[5,9,12],[7,9,10],[7,11,12],[5,6,8]]",
    4: "[[1,2,3],[1,4,5],[1,6,7],[1,8,9],[1,10,11],[2,4,7],[2,6,9],[2,8,11],[2,10,12],[3,4,10],[3,5,7],[3,6,12],[3,9,11],[4,6,11],[4,8,12],[5,6,8],[5,9,12],[7,11,12],[7,8,10]]",
    5: "[[1,2,3],[1,4,5],[1,6,7],[1,8,9],[1,10,11],[2,4,7],[2,6,9],[2,8,11],[2,10,12],[3,4,10],[3,5,7],[3,6,12],[3,9,11],[4,6,11],[4,8,12],[5,8,10],[5,9,12],[7,9,10],[7,11,12]]",
    6: "[[1,2,3],[1,4,5],[1,6,7],[1,8,9],[1,10,11],[2,4,7],[2,6,9],[2,8,11],[2,10,12],[3,4,9],[3,5,7],[3,6,11],[3,8,12],[4,6,8],[4,11,12],[5,6,10],[5,9,12],[7,9,11],[7,8,10]]",
    7: "[[1,2,3],[1,4,5],[1,6,7],[1,8,9],[1,10,11],[2,4,7],[2,6,9],[2,10,12],[3,4,9],[3,5,7],[3,6,8],[3,11,12],[4,6,11],[4,8,12],[5,6,10],[5,8,11],[5,9,12],[7,9,11],[7,8,10]]",
    8: "[[1,2,3],[1,4,5],[1,6,7],[1,8,9],[1,10,11],[2,4,7],[2,6,9],[2,8,11],[2,10,12],[3,4,10],[3,5,7],[3,6,8],[3,9,11],[4,6,11],[4,8,12],[5,6,10],[5,9,12],[7,11,12],[7,8,10]]",
    9: "[[1,2,3],[1,4,5],[1,6,7],[1,8,9],[1,10,11],[2,4,7],[2,6,9],[2,8,11],[2,10,12],[3,4,10],[3,6,8],[3,7,11],[3,9,12],[4,6,11],[4,8,12],[5,6,10],[5,7,9],[5,11,12],[7,8,10]]",
    10: "[[1,2,3],[1,4,5],[1,6,7],[1,8,9],[1,10,11],[2,4,7],[2,6,9],[2,8,11],[3,4,9],[3,5,7],[3,6,11],[3,8,10],[4,6,10],[4,8,12],[5,6,8],[5,9,11],[5,10,12],[7,11,12],[7,9,10]]",
    11: "[[1,2,3],[1,4,5],[1,6,7],[1,8,9],[1,10,11],[2,4,7],[2,6,9],[2,8,11],[2,10,12],[3,5,7],[3,6,11],[3,8,12],[4,6,12],[4,8,10],[4,9,11],[5,6,10],[5,9,12],[7,9,10],[7,11,12]]",
    12: "[[1,2,3],[1,4,5],[1,6,7],[1,8,9],[1,10,11],[2,4,7],[2,6,9],[2,8,11],[2,10,12],[3,4,10],[3,5,7],[3,6,12],[3,9,11],[4,6,11],[4,8,12],[5,6,10],[5,9,12],[7,11,12],[7,8,10]]",
    13: "[[1,2,3],[1,4,5],[1,6,7],[1,8,9],[1,10,11],[2,4,7],[2,6,9],[2,8,11],[2,10,12],[3,5,12],[3,7,10],[3,9,11],[4,8,10],[4,11,12],[5,7,8],[5,9,10],[6,8,12],[7,9,12],[3,4,6]]",
}


def reference_class(i: int) -> TripleSystem:
    return parse_triples(REFERENCE_CLASSES[i])


def reference_classes() -> dict[int, TripleSystem]:
    return {i: reference_class(i) for i in REFERENCE_CLASSES}


@dataclass(frozen=True)
class KnownProfile:
    name: str
    profile: Profile
    # set when the Melchior bound alone cannot decide
    override: str | None = None


def _fermat(k: int) -> KnownProfile:
    return KnownProfile(f"fermat-{k}", Profile(3 * k, {3: k * k, k: 3}))


KNOWN_PROFILES: list[KnownProfile] = [
    KnownProfile("dual-hesse", Profile(9, {3: 12})),
    KnownProfile("hesse", Profile(12, {2: 12, 4: 9}), override="dual to the dual-Hesse profile, which has Melchior deficit 3"),
    KnownProfile("grunbaum-13-26", Profile(13, {3: 26})),
    KnownProfile("klein", Profile(21, {3: 28, 4: 21})),
    KnownProfile("wiman", Profile(45, {3: 120, 4: 45, 5: 36})),
    *[_fermat(k) for k in range(4, 11)],
    KnownProfile("boroczky-12", Profile(12, {2: 9, 3: 19})),
]


def catalog_verdict(entry: KnownProfile) -> tuple[bool, str]:
    """(feasible, reason) for a catalog entry."""
    if not pair_count_identity(entry.profile):
        return False, "pair count violated"
    if entry.override is not None:
        return False, entry.override
    v = melchior_feasible(entry.profile)
    if v.feasible:
        return True, "Melchior bound satisfied (necessary condition only)"
    return False, f"Melchior deficit {v.deficit}"
