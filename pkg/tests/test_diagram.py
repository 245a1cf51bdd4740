from __future__ import annotations

import random

import pytest

from khobs.diagram import (
    BraidWord,
    DiagramError,
    braid_closure,
    count_components,
    mirror,
    orient,
    resolve,
)
from khobs._moves import conjugate, r2_insert, r3_rewrite, r3_sites, stabilize


def test_braid_word_validation():
    with pytest.raises(DiagramError):
        BraidWord(2, (2,))
    with pytest.raises(DiagramError):
        BraidWord(2, (0,))
    with pytest.raises(DiagramError):
        BraidWord(0, ())


def test_closure_components():
    assert count_components(braid_closure(BraidWord(2, (1, 1, 1)))) == 1
    assert count_components(braid_closure(BraidWord(2, (1, 1)))) == 2
    assert count_components(braid_closure(BraidWord(3, ()))) == 3


def test_mirror_is_involution():
    rng = random.Random(0)
    for _ in range(10):
        s = rng.choice([2, 3, 4])
        letters = tuple(
            rng.choice([1, -1]) * rng.randrange(1, s) for _ in range(rng.randrange(0, 8))
        )
        d = braid_closure(BraidWord(s, letters))
        assert mirror(mirror(d)) == d


def test_mirror_negates_signs():
    d = braid_closure(BraidWord(3, (1, -2, 1, -2)))
    assert sorted(orient(mirror(d)).signs) == sorted(-x for x in orient(d).signs)


def test_resolve_drops_a_crossing():
    d = braid_closure(BraidWord(2, (1, 1, 1)))
    for r in (0, 1):
        assert len(resolve(d, 0, r).crossings) == len(d.crossings) - 1


def test_moves_change_word_but_not_component_count():
    w = BraidWord(3, (1, 2, 1, -2))
    c = count_components(braid_closure(w))
    assert count_components(braid_closure(r2_insert(w, 1, 2))) == c
    assert count_components(braid_closure(conjugate(w))) == c
    assert count_components(braid_closure(stabilize(w))) == c
    sites = r3_sites(BraidWord(3, (1, 2, 1)))
    assert sites == [0]
    assert r3_rewrite(BraidWord(3, (1, 2, 1)), 0).letters == (2, 1, 2)
