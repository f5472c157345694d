"""Enumeration, classification and realizability of pseudoline arrangements."""

from .arrangement import (
    ArrangementError,
    FaceVector,
    Profile,
    TripleSystem,
    melchior_feasible,
    pair_count_identity,
    profile_of,
)
from .canonical import are_isomorphic, canonical_key, dedupe
from .sweep import Move, StartPairing, SweepWord, enumerate_words, triples_of

__all__ = [
    "ArrangementError", "FaceVector", "Profile", "TripleSystem", "melchior_feasible",
    "pair_count_identity", "profile_of", "are_isomorphic", "canonical_key", "dedupe",
    "Move", "StartPairing", "SweepWord", "enumerate_words", "triples_of",
]

__version__ = "0.1.0"
