"""Validation battery for the independent oracles themselves."""

from __future__ import annotations

import pytest

from khobs.diagram import BraidWord, braid_closure

from oracles import jones_at_minus1_abs, kauffman_jones, seifert_signature

# (strands, letters, |V(-1)|, signature)
BATTERY = [
    (2, (1, 1, 1), 3, -2),          # right trefoil
    (2, (-1, -1, -1), 3, 2),        # left trefoil
    (3, (1, -2, 1, -2), 5, 0),      # figure-eight
    (2, (1, 1), 2, -1),             # positive Hopf link
    (2, (1, 1, 1, 1, 1), 5, -4),    # (2,5) torus knot
    (3, (1, 2, 1, 2, 1, 2, 1, 2), 3, -6),          # (3,4) torus knot
    (3, (1, 2, 1, 2, 1, 2, 1, 2, 1, 2), 1, -8),    # (3,5) torus knot
    (2, (1,), 1, 0),                # unknot with a kink
]


@pytest.mark.parametrize("strands,letters,det,sig", BATTERY)
def test_battery(strands, letters, det, sig):
    d = braid_closure(BraidWord(strands, letters))
    assert jones_at_minus1_abs(d) == det
    assert seifert_signature(letters) == sig


def test_unknot_jones_is_one():
    d = braid_closure(BraidWord(2, (1,)))
    assert kauffman_jones(d) == {0: 1}


def test_hopf_jones_values():
    d = braid_closure(BraidWord(2, (1, 1)))
    # V = t^(1/2) + t^(5/2) in the graded-Euler normalization
    assert kauffman_jones(d) == {1: 1, 5: 1}
