from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khobs.goeritz import determinant
from khobs.khovanov import reduced_kh
from khobs.tangle import (
    CalibrationError,
    ContinuedFraction,
    Slope,
    Tangle,
    braid_of_cf,
    calibrate,
    cf_expand,
    cf_resolve,
    mirror_tangle,
    tau,
    trivial_tangle,
)


def test_cf_examples():
    assert cf_expand(Slope(13, 10)).terms == (1, 3, 3)
    assert cf_expand(Slope(1, 0)).terms == ()
    assert cf_expand(Slope(5, 2)).terms == (2, 2)
    assert cf_expand(Slope(0, 1)).terms == (0,)


@given(p=st.integers(min_value=0, max_value=400), q=st.integers(min_value=0, max_value=400))
@settings(max_examples=200, deadline=None)
def test_cf_round_trip(p, q):
    import math

    if p == q == 0:
        return
    g = math.gcd(p, q)
    s = Slope(p // g, q // g)
    assert cf_expand(s).value == (s.p, s.q)


def test_cf_resolve_farey_parents():
    cf = cf_expand(Slope(13, 10))
    drop, dec, parity = cf_resolve(cf)
    # parents (p0/q0, p1/q1) of p/q satisfy mediant addition
    p0, q0 = drop.value
    p1, q1 = dec.value
    assert (p0 + p1, q0 + q1) == (13, 10)
    assert parity == cf.r % 2


def test_braid_of_cf_closure_parity():
    word, parity = braid_of_cf(cf_expand(Slope(13, 10)))
    assert parity == "odd"
    word2, parity2 = braid_of_cf(cf_expand(Slope(5, 2)))
    assert parity2 == "even"


def test_trivial_tangle_two_bridge_determinants():
    t = trivial_tangle()
    for p, q in [(1, 0), (0, 1), (3, 1), (5, 2), (13, 10), (7, 3)]:
        assert determinant(tau(t, Slope(p, q))) == p, (p, q)


def test_trivial_meridian_is_unknot():
    t = trivial_tangle()
    assert reduced_kh(tau(t, Slope(1, 0))).total_rank() == 1


def test_negative_slope_is_mirror():
    # tau(-p/q) is the mirror image of tau(p/q) of the mirrored tangle
    t = trivial_tangle()
    r_neg = reduced_kh(tau(t, Slope(-3, 1)))
    r_pos = reduced_kh(tau(mirror_tangle(t), Slope(3, 1)))
    assert r_neg.entries == {(-td, -tq): rk for (td, tq), rk in r_pos.entries.items()}


def test_calibration(corpus_tangles):
    assert calibrate(corpus_tangles["trivial"].tangle) == 0
    assert calibrate(corpus_tangles["fig8"].tangle) == 0
    assert calibrate(corpus_tangles["trefoil"].tangle) == 6


def test_calibration_rejects_bad_meridian(corpus_tangles):
    # rotating the corner labels swaps the closures, so the 1/0 closure is
    # no longer a rank-1 unknot
    t = corpus_tangles["fig8"].tangle
    bad = Tangle(diagram=t.diagram, nw=t.ne, ne=t.se, sw=t.nw, se=t.sw)
    with pytest.raises(CalibrationError):
        calibrate(bad)


def test_det_equals_filling_order(reports):
    for name, rep in reports.items():
        for n, det in rep.dets.items():
            assert det == abs(n), (name, n)


def test_farey_determinant_additivity(corpus_tangles):
    rng = random.Random(17)
    for name, spec in corpus_tangles.items():
        t = spec.tangle
        f = calibrate(t)
        for _ in range(20):
            q = rng.randrange(1, 8)
            p = rng.randrange(0, 20)
            import math

            if math.gcd(p, q) != 1:
                continue
            d = determinant(tau(t, Slope(p + f * q, q)))
            assert d == p, (name, p, q)
