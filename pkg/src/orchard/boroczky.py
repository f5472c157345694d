"""Böröczky line arrangements and numeric intersection census."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .arrangement import ArrangementError, Profile, TripleSystem


class ClusterInstability(ArrangementError):
    pass


def normalize_line(coeffs) -> np.ndarray:
    v = np.asarray(coeffs, dtype=float)
    norm = np.linalg.norm(v)
    if norm == 0 or not np.all(np.isfinite(v)):
        raise ArrangementError(f"degenerate line coefficients {coeffs!r}")
    v = v / norm
    # fix the sign so equal lines compare equal
    k = int(np.flatnonzero(np.abs(v) > 1e-14)[0])
    return v if v[k] > 0 else -v


def _vertex(n: int, k: int) -> np.ndarray:
    ang = 2 * np.pi * k / n
    return np.array([np.cos(ang), np.sin(ang), 1.0])


def generate(n: int) -> list[np.ndarray]:
    """Lines of B_n as unit homogeneous vectors (a, b, c) for ax + by + c = 0.

    Vertices P_k sit at angle 2πk/n on the unit circle; line i joins P_i and
    P_{(n/2 - 2i) mod n}, or is the tangent at P_i when the two coincide.
    """
    if n % 2 or n < 6:
        raise ArrangementError(f"B_n is built here for even n >= 6, got {n}")
    lines: list[np.ndarray] = []
    for i in range(n):
        j = (n // 2 - 2 * i) % n
        p = _vertex(n, i)
        if j == i:
            # tangent to x^2 + y^2 = 1 at (x0, y0): x0 x + y0 y - 1 = 0
            line = np.array([p[0], p[1], -1.0])
        else:
            line = np.cross(p, _vertex(n, j))
        line = normalize_line(line)
        if not any(np.allclose(line, other, atol=1e-12, rtol=0) for other in lines):
            lines.append(line)
    if len(lines) != n:
        raise ArrangementError(f"B_{n} produced {len(lines)} distinct lines")
    return lines


def tangent_indices(n: int) -> list[int]:
    return [i for i in range(n) if (n // 2 - 2 * i) % n == i]


@dataclass(frozen=True)
class PointCluster:
    point: tuple[float, float, float]  # unit homogeneous representative
    members: tuple[int, ...]  # 1-based line labels

    @property
    def multiplicity(self) -> int:
        return len(self.members)

    def affine(self) -> tuple[float, float] | None:
        x, y, w = self.point
        if abs(w) < 1e-12:
            return None
        return x / w, y / w


def _projective_distance(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Sine of the angle between homogeneous unit vectors (sign-free)."""
    return np.linalg.norm(np.cross(p, q), axis=-1)


def _clusters(lines: list[np.ndarray], eps: float):
    L = np.array([normalize_line(l) for l in lines])
    pairs = list(combinations(range(len(L)), 2))
    if not pairs:
        return L, pairs, np.zeros((0, 3)), np.zeros(0, dtype=int)
    pts = np.cross(L[[a for a, _ in pairs]], L[[b for _, b in pairs]])
    norms = np.linalg.norm(pts, axis=1)
    if np.any(norms < 1e-15):
        raise ArrangementError("two input lines coincide")
    pts /= norms[:, None]
    d = _projective_distance(pts[:, None, :], pts[None, :, :])
    i, j = np.nonzero(d <= eps)
    graph = coo_matrix((np.ones(len(i)), (i, j)), shape=(len(pts), len(pts)))
    _, labels = connected_components(graph, directed=False)
    return L, pairs, pts, labels


def clusters(lines, eps: float = 1e-9) -> list[PointCluster]:
    """Group the C(n,2) pairwise intersections by projective distance <= eps."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    L, pairs, pts, labels = _clusters(list(lines), eps)
    out = []
    for c in sorted(set(labels.tolist())):
        idx = np.flatnonzero(labels == c)
        members = sorted({x for k in idx for x in pairs[k]})
        if comb(len(members), 2) != len(idx):
            raise ClusterInstability(
                f"cluster on lines {[m + 1 for m in members]} holds {len(idx)} of "
                f"{comb(len(members), 2)} pair intersections")
        rep = pts[idx[0]]
        # average with a consistent sign
        signs = np.sign(pts[idx] @ rep)
        signs[signs == 0] = 1
        mean = (pts[idx] * signs[:, None]).mean(axis=0)
        mean /= np.linalg.norm(mean)
        out.append(PointCluster(tuple(float(v) for v in mean), tuple(m + 1 for m in members)))
    out.sort(key=lambda c: (-c.multiplicity, c.members))
    return out


def intersection_profile(lines, eps: float = 1e-9, check: bool = True
                         ) -> tuple[Profile, list[PointCluster]]:
    lines = list(lines)
    found = clusters(lines, eps)
    if check:
        wide = clusters(lines, 10 * eps)
        if len(wide) != len(found):
            raise ClusterInstability(
                f"{len(found)} clusters at eps={eps:g} but {len(wide)} at {10 * eps:g}")
    counts: dict[int, int] = {}
    for c in found:
        counts[c.multiplicity] = counts.get(c.multiplicity, 0) + 1
    return Profile(len(lines), counts), found


def triple_system_of(lines, eps: float = 1e-9) -> TripleSystem:
    lines = list(lines)
    _, found = intersection_profile(lines, eps)
    high = [c for c in found if c.multiplicity >= 4]
    if high:
        raise ArrangementError(f"point of multiplicity {high[0].multiplicity} on lines {high[0].members}")
    return TripleSystem(len(lines), [c.members for c in found if c.multiplicity == 3])


def epsilon_term(n: int) -> int:
    return 0 if n % 3 == 0 else 2


def expected_profile(n: int) -> Profile:
    """Census claimed for B_n: n-3+ε doubles and 1+floor(n(n-3)/6) triples."""
    return Profile(n, {2: n - 3 + epsilon_term(n), 3: 1 + n * (n - 3) // 6})
