from __future__ import annotations

import pytest

from khobs.obstruct import (
    interval_bounds,
    obstruct,
    scan_integers,
    unknot_certificate,
)
from khobs.tangle import Slope


def test_trivial_report(reports):
    rep = reports["trivial"]
    assert rep.stabilized
    assert rep.w_min == 1
    assert all(w == 1 for n, w in rep.widths.items() if n != 0)
    assert rep.widths[0] == 2  # the 0-filling branch set is the 2-unlink


def test_fig8_report(reports):
    rep = reports["fig8"]
    assert rep.stabilized
    assert (rep.w_min, rep.w_max) == (2, 3)
    assert rep.ell == 0
    assert rep.genericity == "decay-generic"
    # column totals from the scan: F^|n| + F^4 + F^4 below the transition,
    # F^(4+n) + F^4 above it
    for n in range(-5, 0):
        assert sorted(rep.columns(n).values()) == sorted([abs(n), 4, 4]), n
    assert sorted(rep.columns(0).values()) == [1, 4, 5]
    for n in range(1, 6):
        assert sorted(rep.columns(n).values()) == sorted([4 + n, 4]), n


def test_trefoil_report(reports):
    rep = reports["trefoil"]
    assert rep.stabilized
    assert (rep.w_min, rep.w_max) == (1, 2)
    assert rep.genericity == "expansion-generic"


def test_width_spread_bounded(reports):
    for name, rep in reports.items():
        assert rep.w_max - rep.w_min in (0, 1), name


def test_unique_transition_when_generic(reports):
    for name, rep in reports.items():
        if rep.genericity in ("expansion-generic", "decay-generic"):
            assert rep.ell is not None, name
            assert rep.widths[rep.ell] != rep.widths[rep.ell + 1], name


def test_tail_increments(reports):
    # stabilized tails add exactly one generator per step on one diagonal
    for name, rep in reports.items():
        lo, hi = rep.window
        for a, b in [(hi - 1, hi), (lo + 1, lo)]:
            ra = rep.ranks[a].total_rank()
            rb = rep.ranks[b].total_rank()
            assert rb == ra + 1, (name, a, b)
            ca, cb = rep.columns(a), rep.columns(b)
            diff = {
                td: cb.get(td, 0) - ca.get(td, 0)
                for td in set(ca) | set(cb)
                if cb.get(td, 0) != ca.get(td, 0)
            }
            assert list(diff.values()) == [1], (name, a, b)


def test_cone_rank_inequality(reports):
    # |Kh(tau(n+1))| <= |Kh(tau(n))| + 1 with even defect (mapping cone
    # over the rank-1 meridian leg)
    for name, rep in reports.items():
        lo, hi = rep.window
        for n in range(lo, hi):
            defect = rep.ranks[n].total_rank() + 1 - rep.ranks[n + 1].total_rank()
            assert defect >= 0 and defect % 2 == 0, (name, n)


def test_support_nesting(reports):
    # supports of consecutive slopes are nested up to one even alignment
    # shift; the shift absorbs the orientation ambiguity of the signature
    # on two-component branch sets
    for name, rep in reports.items():
        lo, hi = rep.window
        for n in range(lo, hi):
            sa = set(rep.columns(n))
            sb = set(rep.columns(n + 1))
            nested = any(
                {x + s for x in sa} <= sb or sb <= {x + s for x in sa}
                for s in (-2, 0, 2)
            )
            assert nested, (name, n, sa, sb)


def test_interval_bounds_exact_cases(reports):
    rep = reports["fig8"]
    b = interval_bounds(rep, Slope(1, 0))
    assert (b.lower, b.upper, b.exact) == (1, 1, True)
    b = interval_bounds(rep, Slope(3, 1))
    assert (b.lower, b.upper, b.exact) == (2, 2, True)
    b = interval_bounds(rep, Slope(-2, 1))
    assert (b.lower, b.upper, b.exact) == (3, 3, True)
    # beyond the window but stabilized: tail width applies
    b = interval_bounds(rep, Slope(40, 1))
    assert (b.lower, b.upper) == (2, 2)


def test_interval_bounds_transition(reports):
    rep = reports["fig8"]
    b = interval_bounds(rep, Slope(1, 2))  # inside the transition [0, 1]
    assert (b.lower, b.upper) == (rep.w_min, rep.w_max)
    b = interval_bounds(rep, Slope(-1, 2))
    assert (b.lower, b.upper) == (3, 3)


def test_verdicts(reports):
    fig8 = reports["fig8"]
    for s in [Slope(1, 2), Slope(13, 10), Slope(-5, 2), Slope(3, 1)]:
        assert obstruct(fig8, s, "lens").status == "Obstructed", s
    assert obstruct(fig8, Slope(-5, 2), "finite").status == "Obstructed"
    assert obstruct(fig8, Slope(13, 10), "finite").status == "Inconclusive"
    trivial = reports["trivial"]
    for s in [Slope(1, 2), Slope(13, 10), Slope(5, 1)]:
        assert obstruct(trivial, s, "lens").status == "Inconclusive", s
    with pytest.raises(ValueError):
        obstruct(fig8, Slope(1, 2), "weird")


def test_verdict_monotonicity(reports):
    # a finite obstruction implies a lens obstruction at the same slope
    for name, rep in reports.items():
        for s in [Slope(1, 2), Slope(-3, 2), Slope(7, 5), Slope(2, 1)]:
            if obstruct(rep, s, "finite").status == "Obstructed":
                assert obstruct(rep, s, "lens").status == "Obstructed", (name, s)


def test_unknot_certificates(reports):
    assert unknot_certificate(reports["trivial"]).verdict == "is-trivial-pattern"
    assert unknot_certificate(reports["fig8"]).verdict == "is-nontrivial"
    assert unknot_certificate(reports["trefoil"]).verdict == "is-nontrivial"


def test_window_validation(corpus_tangles):
    with pytest.raises(ValueError):
        scan_integers(corpus_tangles["trivial"].tangle, window=(3, 3))
