from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from orchard.arrangement import profile_of
from orchard.faces import face_sizes, face_vector, full_wiring, verify_melchior_identity
from orchard.sweep import Move, StartPairing, SweepError, SweepWord, apply_move, initial_state, is_terminal, legal_moves, triples_of

SWAP_ONLY_3 = SweepWord(StartPairing(3, ()), (Move("swap", 1),))
NEAR_PENCIL_4 = SweepWord(StartPairing(4, ((2, 3),)), (Move("swap", 2), Move("swap", 1)))


def euler_checks(w: SweepWord):
    """Independent counts: V - E + F = 1 on the projective plane and
    every edge borders two faces."""
    prof = profile_of(triples_of(w))
    f = face_vector(w)
    V = sum(prof.t.values())
    E = sum(r * k for r, k in prof.t.items())  # a line through k points has k edges
    return V - E + f.face_count() == 1 and f.side_incidences() == 2 * E


def test_three_lines():
    f = face_vector(SWAP_ONLY_3)
    assert dict(f.p) == {3: 4}
    assert verify_melchior_identity(SWAP_ONLY_3)
    assert euler_checks(SWAP_ONLY_3)


def test_near_pencil():
    assert triples_of(NEAR_PENCIL_4).triples == ((1, 2, 3),)
    f = face_vector(NEAR_PENCIL_4)
    # V = 4, E = 2 + 2 + 2 + 3 = 9, so F = 1 + E - V = 6, all triangles
    assert dict(f.p) == {3: 6}
    assert verify_melchior_identity(NEAR_PENCIL_4)
    assert euler_checks(NEAR_PENCIL_4)


def test_pencil_rejected():
    with pytest.raises(SweepError, match="pencil"):
        face_vector(SweepWord(StartPairing(3, ((2, 3),)), ()))


def test_incomplete_word_rejected():
    w = SweepWord(StartPairing(4, ((2, 3),)), (Move("swap", 2),))
    with pytest.raises(SweepError):
        face_vector(w)


def test_wiring_starts_with_line_one():
    order, events = full_wiring(NEAR_PENCIL_4)
    assert order == [1, 2, 3, 4]
    assert events == [(0, 3), (2, 2), (1, 2), (0, 2)]


def test_twelve_line_faces(words_12_19):
    seen = set()
    for w in words_12_19:
        f = face_vector(w)
        seen.add(tuple(sorted(f.p.items())))
        assert verify_melchior_identity(w) and euler_checks(w)
    # sum (j-3) p_j = 9 - 3 = 6 for t2 = 9, t3 = 19
    assert all(sum((j - 3) * c for j, c in fs) == 6 for fs in seen)


def test_face_sizes_for_a_pencil_of_two_gaps():
    # two wires, one crossing: two digons glued into lunes on the projective plane
    assert sorted(face_sizes(2, [(0, 2)])) == [2, 2]


@st.composite
def complete_words(draw):
    n = draw(st.integers(3, 9))
    pairings = [q for q in StartPairing.all_for(n) if not (n == 3 and q.pairs)]
    p = pairings[draw(st.integers(0, len(pairings) - 1))]
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    s, moves = initial_state(p), []
    while not is_terminal(s):
        m = rng.choice(legal_moves(s))
        moves.append(m)
        s = apply_move(s, m)
    return SweepWord(p, tuple(moves))


@given(complete_words())
def test_melchior_and_euler_on_random_sweeps(w):
    assert verify_melchior_identity(w)
    assert euler_checks(w)
    assert all(j >= 3 for j in face_vector(w).p)
