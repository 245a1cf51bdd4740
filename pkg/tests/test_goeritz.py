from __future__ import annotations

import random

import pytest

from khobs.diagram import BraidWord, DiagramError, braid_closure
from khobs.goeritz import checkerboard, determinant, goeritz, signature

from oracles import jones_at_minus1_abs, seifert_signature


def test_signature_matches_seifert_oracle_on_random_braids():
    rng = random.Random(11)
    checked = 0
    while checked < 40:
        s = rng.choice([2, 3, 4])
        letters = tuple(
            rng.choice([1, -1]) * rng.randrange(1, s) for _ in range(rng.randrange(1, 10))
        )
        d = braid_closure(BraidWord(s, letters))
        assert signature(d) == seifert_signature(letters), letters
        checked += 1


def test_determinant_matches_bracket_oracle(corpus_links):
    for name, d in corpus_links.items():
        if len(d.crossings) > 12:
            continue
        assert determinant(d) == jones_at_minus1_abs(d), name


def test_coloring_duality(corpus_links):
    for name, d in corpus_links.items():
        if not d.crossings:
            continue
        col = checkerboard(d)
        dual = checkerboard(d, dual=True)
        gd, gdd = goeritz(d, col), goeritz(d, dual)
        assert gd.sigma_G - gd.mu_L == gdd.sigma_G - gdd.mu_L, name
        assert abs(gd.det_G) == abs(gdd.det_G), name


def test_known_values(corpus_links):
    assert determinant(corpus_links["trefoil"]) == 3
    assert signature(corpus_links["trefoil"]) == -2
    assert determinant(corpus_links["fig8-knot"]) == 5
    assert signature(corpus_links["fig8-knot"]) == 0
    assert determinant(corpus_links["unlink2"]) == 0
    assert determinant(corpus_links["fig8-tau0"]) == 0
    assert determinant(corpus_links["10_124"]) == 1
    assert signature(corpus_links["10_124"]) == -8


def test_split_determinant_multiplies():
    # distant split union of two trefoils inside one braid closure
    d = braid_closure(BraidWord(4, (1, 1, 1, 3, 3, 3)))
    assert determinant(d) == 9
    assert signature(d) == -4


def test_open_diagram_rejected():
    from khobs.tangle import trivial_tangle

    with pytest.raises(DiagramError):
        checkerboard(trivial_tangle().diagram)
