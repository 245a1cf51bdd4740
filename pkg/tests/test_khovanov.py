from __future__ import annotations

import random

import pytest

from khobs.diagram import BraidWord, braid_closure, mirror
from khobs.goeritz import determinant, signature
from khobs.khovanov import (
    BigradedRanks,
    CapacityError,
    euler,
    jones,
    reduced_kh,
    width,
)
from khobs._moves import random_equivalent

from oracles import kauffman_jones


def test_unknot_single_generator(corpus_links):
    r = reduced_kh(corpus_links["unknot"], backend="naive")
    assert r.entries == {(0, 0): 1}


def test_trefoil_column(corpus_links):
    r = reduced_kh(corpus_links["trefoil"], backend="naive")
    w = width(r)
    assert w.width == 1 and w.column_ranks == (3,)
    # single column with q-offsets (0, 2, 3) in doubled units (0, 4, 6)
    tqs = sorted(tq for _, tq in r.entries)
    assert [tq - tqs[0] for tq in tqs] == [0, 4, 6]


def test_mirror_negates_gradings(corpus_links):
    for name in ("trefoil", "fig8-knot", "hopf"):
        d = corpus_links[name]
        r = reduced_kh(d)
        rm = reduced_kh(mirror(d))
        assert rm.entries == {(-td, -tq): rk for (td, tq), rk in r.entries.items()}
        assert signature(mirror(d)) == -signature(d)


def test_euler_equals_determinant(corpus_links):
    for name, d in corpus_links.items():
        assert euler(reduced_kh(d)) == determinant(d), name


def test_jones_matches_bracket_oracle(corpus_links):
    for name, d in corpus_links.items():
        if len(d.crossings) > 12:
            continue
        assert dict(jones(reduced_kh(d)).coeffs) == kauffman_jones(d), name


def test_jones_at_minus1_equals_determinant(corpus_links):
    for name, d in corpus_links.items():
        assert jones(reduced_kh(d)).eval_minus1_abs() == determinant(d), name


def test_basepoint_independence(corpus_links):
    for name in ("trefoil", "fig8-knot", "10_124"):
        d = corpus_links[name]
        ref = reduced_kh(d).entries
        ends = sorted({h for e in d.edges for h in e})
        rng = random.Random(hash(name) & 0xFFFF)
        for h in rng.sample(ends, 3):
            assert reduced_kh(d.with_basepoint(h)).entries == ref, name


def test_reidemeister_invariance():
    rng = random.Random(2024)
    checked = 0
    while checked < 50:
        s = rng.choice([2, 3])
        letters = tuple(
            rng.choice([1, -1]) * rng.randrange(1, s) for _ in range(rng.randrange(1, 8))
        )
        w = BraidWord(s, letters)
        base = reduced_kh(braid_closure(w)).entries
        moved = random_equivalent(w, rng, steps=4)
        assert reduced_kh(braid_closure(moved)).entries == base, (w, moved)
        checked += 1


def test_naive_capacity_error():
    d = braid_closure(BraidWord(2, (1,) * 5))
    with pytest.raises(CapacityError):
        reduced_kh(d, backend="naive", capacity=4)


def test_bigraded_ranks_ops():
    r = BigradedRanks({(0, 0): 1, (2, 4): 2})
    assert r.total_rank() == 3
    assert r.delta_support() == [0, 2]
    assert r.column_rank(2) == 2
    shifted = r.shifted(d_two_delta=2, d_two_q=-2)
    assert shifted.entries == {(2, -2): 1, (4, 2): 2}
    rel = r.as_relative()
    assert not rel.absolute
    with pytest.raises(ValueError):
        BigradedRanks({(0, 1): 1})  # parity violation
    with pytest.raises(ValueError):
        BigradedRanks({(0, 0): 0})  # non-positive rank
