from __future__ import annotations

from orchard.arrangement import profile_of
from orchard.catalog import KNOWN_PROFILES, catalog_verdict, reference_classes


def test_reference_lists_have_the_extremal_profile():
    for i, ts in reference_classes().items():
        p = profile_of(ts)
        assert (p.t2, p.t3) == (9, 19), i


def test_catalog_verdicts():
    got = {e.name: catalog_verdict(e) for e in KNOWN_PROFILES}
    assert got["dual-hesse"] == (False, "Melchior deficit 3")
    assert got["grunbaum-13-26"] == (False, "Melchior deficit 3")
    assert got["klein"] == (False, "Melchior deficit 24")
    assert got["wiman"] == (False, "Melchior deficit 120")
    for k in range(4, 11):
        assert got[f"fermat-{k}"] == (False, f"Melchior deficit {3 * k - 6}")
    assert got["hesse"][0] is False
    assert got["boroczky-12"][0] is True


def test_catalog_profiles_satisfy_pair_count():
    from orchard.arrangement import pair_count_identity

    assert all(pair_count_identity(e.profile) for e in KNOWN_PROFILES)
