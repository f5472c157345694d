from __future__ import annotations

from math import comb

import numpy as np
import pytest

from orchard.arrangement import ArrangementError, pair_count_identity
from orchard.boroczky import (
    ClusterInstability,
    clusters,
    epsilon_term,
    expected_profile,
    generate,
    intersection_profile,
    normalize_line,
    tangent_indices,
    triple_system_of,
)
from orchard.canonical import are_isomorphic
from orchard.catalog import reference_class

EVEN = [6, 8, 10, 12, 14, 16, 18]


def test_twelve_lines_three_tangents():
    lines = generate(12)
    assert len(lines) == 12
    assert tangent_indices(12) == [2, 6, 10]
    for i in tangent_indices(12):
        ang = 2 * np.pi * i / 12
        # the tangent at P_i touches the unit circle at P_i only
        assert np.isclose(abs(lines[i] @ np.array([np.cos(ang), np.sin(ang), 1.0])), 0, atol=1e-12)
        assert np.isclose(np.hypot(*lines[i][:2]), abs(lines[i][2]))


def test_size_rules():
    assert len(generate(6)) == 6
    for bad in (7, 4, 5):
        with pytest.raises(ArrangementError):
            generate(bad)


def test_lines_are_unit_and_distinct():
    for n in EVEN:
        L = np.array(generate(n))
        assert np.allclose(np.linalg.norm(L, axis=1), 1)
        assert len({tuple(np.round(l, 9)) for l in L}) == n


@pytest.mark.parametrize("n", EVEN)
def test_profile_matches_formula(n):
    prof, found = intersection_profile(generate(n), 1e-9)
    exp = expected_profile(n)
    assert prof == exp
    assert prof.t3 == 1 + n * (n - 3) // 6
    assert prof.t2 == n - 3 + (0 if n % 3 == 0 else 2)
    assert pair_count_identity(prof)


@pytest.mark.parametrize("eps", [1e-10, 1e-9, 1e-8, 1e-7])
def test_cluster_counts_stable(eps):
    for n in EVEN:
        prof, _ = intersection_profile(generate(n), eps)
        assert prof == expected_profile(n)


def test_frozen_values():
    assert (expected_profile(12).t2, expected_profile(12).t3) == (9, 19)
    assert (expected_profile(10).t2, expected_profile(10).t3) == (9, 12)
    assert epsilon_term(12) == 0 and epsilon_term(10) == 2 and epsilon_term(8) == 2


def test_triple_clusters_are_tight():
    lines = generate(12)
    for c in clusters(lines, 1e-9):
        for a in c.members:
            for b in c.members:
                if a < b:
                    p = np.cross(lines[a - 1], lines[b - 1])
                    p /= np.linalg.norm(p)
                    assert np.linalg.norm(np.cross(p, c.point)) <= 1e-9


def test_parallel_lines_meet_at_infinity():
    prof, found = intersection_profile([[1, 0, 0], [1, 0, -1], [0, 1, 0]], 1e-9)
    assert prof.t2 == 3
    assert any(c.affine() is None for c in found)


def test_two_generic_lines():
    prof, found = intersection_profile([[1, 2, 3], [-2, 1, 0.5]])
    assert prof.t == {2: 1} and len(found) == 1


def test_triple_systems_of_small_cases():
    assert len(triple_system_of(generate(6))) == 4
    assert len(triple_system_of([[1, 0, 0], [0, 1, 0], [1, 1, -1]])) == 0


def test_b12_is_c6():
    ok, witness = are_isomorphic(triple_system_of(generate(12)), reference_class(6))
    assert ok and witness is not None


def test_four_concurrent_lines_rejected():
    lines = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0], [0, 0, 1]]
    with pytest.raises(ArrangementError, match="multiplicity 4"):
        triple_system_of(lines)


def test_instability_detected():
    # two intersection points 3e-9 apart: separate at 1e-9, merged at 1e-8
    lines = [[1, 0, 0], [0, 1, 0], [1, 1, 3e-9 * np.sqrt(2)]]
    with pytest.raises(ClusterInstability):
        intersection_profile(lines, 1e-9)


def test_normalize_line():
    assert np.allclose(normalize_line([0, -2, 0]), [0, 1, 0])
    with pytest.raises(ArrangementError):
        normalize_line([0, 0, 0])
    with pytest.raises(ValueError):
        clusters([[1, 0, 0], [0, 1, 0]], 0)
