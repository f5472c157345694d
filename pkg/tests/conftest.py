from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("orchard", deadline=None, max_examples=60)
settings.load_profile("orchard")


@pytest.fixture(scope="session")
def words_12_19():
    """The full 12-line / 19-triple sweep (one word per wiring diagram)."""
    from orchard.sweep import StartPairing, enumerate_words

    return enumerate_words(StartPairing.default(12), 19, jobs=1)


@pytest.fixture(scope="session")
def classes_12_19(words_12_19):
    from orchard.canonical import dedupe
    from orchard.sweep import triples_of

    return dedupe(triples_of(w) for w in words_12_19)
