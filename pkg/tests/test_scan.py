from __future__ import annotations

import random

import pytest

from khobs.diagram import BraidWord, braid_closure
from khobs.khovanov import reduced_kh
from khobs.scan import ScanCapacityError, scan_reduced_table, scan_unreduced_table


def test_backends_agree_on_corpus(corpus_links):
    for name, d in corpus_links.items():
        if len(d.crossings) > 12:
            continue
        naive = reduced_kh(d, backend="naive")
        scan = reduced_kh(d, backend="scan")
        assert naive.entries == scan.entries, name


def test_backends_agree_on_random_braids():
    rng = random.Random(5)
    for _ in range(25):
        s = rng.choice([2, 3, 4])
        letters = tuple(
            rng.choice([1, -1]) * rng.randrange(1, s) for _ in range(rng.randrange(0, 11))
        )
        d = braid_closure(BraidWord(s, letters))
        assert (
            reduced_kh(d, backend="naive").entries
            == reduced_kh(d, backend="scan").entries
        ), letters


def test_unreduced_is_reduced_times_loop():
    # over F2 the unreduced ranks are the reduced ones convolved with q + 1/q
    rng = random.Random(6)
    for _ in range(10):
        s = rng.choice([2, 3])
        letters = tuple(
            rng.choice([1, -1]) * rng.randrange(1, s) for _ in range(rng.randrange(1, 9))
        )
        d = braid_closure(BraidWord(s, letters))
        red = scan_reduced_table(d)
        unred = scan_unreduced_table(d)
        expect = {}
        for (i, j), rk in red.items():
            for dj in (1, -1):
                expect[(i, j + dj)] = expect.get((i, j + dj), 0) + rk
        assert expect == unred, letters


def test_scan_capacity_error():
    d = braid_closure(BraidWord(3, (1, -2, 1, -2)))
    with pytest.raises(ScanCapacityError):
        scan_reduced_table(d, capacity=2)


def test_free_loop_diagrams(corpus_links):
    r = reduced_kh(corpus_links["unlink2"])
    assert r.total_rank() == 2
