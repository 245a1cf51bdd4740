"""Four-ended tangles, continued fractions, and the branch-set links tau(p/q).

A Tangle is a planar diagram with four free half-edges labeled NW, NE, SW,
SE.  A non-negative slope p/q expands to a continued fraction [a1,...,ar]
(a1 >= 0, ai > 0 for i > 1, ar > 1 when r > 1), which drives a three-strand
braid sigma2^{a1} sigma1^{-a2} sigma2^{a3} ... acting east of the tangle.
The parity of r selects the odd (numerator) or even (denominator) closure;
the resulting closed diagram tau(p/q) is the branch set of the corresponding
Dehn filling of the double branched cover.  Negative slopes mirror the
tangle and the slope together.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from .diagram import (
    BraidWord,
    Crossing,
    DiagramError,
    PlanarDiagram,
    mirror as mirror_diagram,
)

__all__ = [
    "Tangle",
    "ContinuedFraction",
    "Slope",
    "CalibrationError",
    "cf_expand",
    "cf_resolve",
    "braid_of_cf",
    "tau",
    "calibrate",
    "mirror_tangle",
    "trivial_tangle",
    "braidcut_tangle",
    "pretzel_strip_tangle",
]


class CalibrationError(RuntimeError):
    """No framing offset in the search window fits the determinant pattern."""


@dataclass(frozen=True)
class Slope:
    """A reduced rational p/q with q >= 0; 1/0 is the meridian."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 0:
            raise DiagramError("slope denominator must be non-negative")
        if self.q == 0 and abs(self.p) != 1:
            raise DiagramError("slope with q = 0 must be +-1/0")
        if gcd(abs(self.p), self.q) != 1:
            raise DiagramError(f"slope {self.p}/{self.q} is not reduced")

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class ContinuedFraction:
    """Normal-form continued fraction for a non-negative slope.

    terms = [a1,...,ar] with a1 >= 0, ai > 0 for i > 1 and ar > 1 when
    r > 1; the empty sequence denotes 1/0.  ``mirrored`` records that the
    original slope was negative and refers to the mirrored tangle.
    """

    terms: Tuple[int, ...]
    mirrored: bool = False

    def __post_init__(self) -> None:
        t = self.terms
        if t:
            if t[0] < 0 or any(a <= 0 for a in t[1:]):
                raise DiagramError(f"continued fraction {list(t)} not in normal form")
            if len(t) > 1 and t[-1] == 1:
                raise DiagramError("normal form requires the last term > 1")

    @property
    def r(self) -> int:
        return len(self.terms)

    @property
    def value(self) -> Tuple[int, int]:
        """(p, q) of the evaluated fraction; (1, 0) for the empty sequence."""
        p, q = 1, 0
        for a in reversed(self.terms):
            # a + 1/(p/q) = (a p + q)/p
            p, q = a * p + q, p
        return p, q


def _normalized(terms: List[int]) -> Tuple[int, ...]:
    t = list(terms)
    while len(t) > 1 and t[-1] == 1:
        t.pop()
        t[-1] += 1
    return tuple(t)


def cf_expand(s: Slope) -> ContinuedFraction:
    """Normal-form expansion with a1 = floor(p/q); [ ] for 1/0."""
    mirrored = s.p < 0
    p, q = abs(s.p), s.q
    if q == 0:
        return ContinuedFraction(terms=(), mirrored=mirrored)
    terms: List[int] = []
    while q:
        a = p // q
        terms.append(a)
        p, q = q, p - a * q
    return ContinuedFraction(terms=_normalized(terms), mirrored=mirrored)


def cf_resolve(
    cf: ContinuedFraction,
) -> Tuple[ContinuedFraction, ContinuedFraction, int]:
    """Resolve the terminal crossing: ([a1..a_{r-1}], [a1..ar - 1], r mod 2).

    For odd r the 0-resolution is the decremented fraction, for even r the
    dropped one.  Farey additivity p = p0 + p1, q = q0 + q1 holds.
    """
    if cf.r == 0:
        raise DiagramError("cannot resolve the empty continued fraction")
    drop = ContinuedFraction(
        terms=_normalized(list(cf.terms[:-1])), mirrored=cf.mirrored
    )
    dec_terms = list(cf.terms)
    dec_terms[-1] -= 1
    if dec_terms and dec_terms[-1] == 0 and len(dec_terms) == 1:
        dec = ContinuedFraction(terms=(0,), mirrored=cf.mirrored)
    else:
        if dec_terms[-1] == 0:
            # [a1,...,a_{r-1},0] = [a1,...,a_{r-2} + a_r'] never arises: the
            # decremented last term is >= 1 whenever r > 1 in normal form.
            raise DiagramError("degenerate decrement")
        dec = ContinuedFraction(terms=_normalized(dec_terms), mirrored=cf.mirrored)
    return drop, dec, cf.r % 2


def braid_of_cf(cf: ContinuedFraction) -> Tuple[BraidWord, str]:
    """Three-strand braid sigma2^{a1} sigma1^{-a2} ... and the closure parity."""
    letters: List[int] = []
    for i, a in enumerate(cf.terms):
        gen = 2 if i % 2 == 0 else 1
        sign = 1 if i % 2 == 0 else -1
        letters.extend([sign * gen] * a)
    parity = "odd" if cf.r % 2 == 1 else "even"
    return BraidWord(strands=3, letters=tuple(letters)), parity


@dataclass(frozen=True)
class Tangle:
    """A diagram with four free ends on the boundary circle.

    ``nw, ne, sw, se`` are the boundary half-edge ids in their compass
    positions; the underlying diagram's boundary is exactly these four.
    """

    diagram: PlanarDiagram
    nw: int
    ne: int
    sw: int
    se: int
    name: Optional[str] = None

    def __post_init__(self) -> None:
        ends = {self.nw, self.ne, self.sw, self.se}
        if len(ends) != 4 or set(self.diagram.boundary) != ends:
            raise DiagramError("tangle needs exactly the four labeled boundary ends")
        pairing = self.strand_pairing()
        if len(pairing) != 2:
            raise DiagramError("tangle must consist of two properly embedded strands")

    def strand_pairing(self) -> Tuple[Tuple[int, int], ...]:
        """How the four ends pair up through the tangle."""
        d = self.diagram
        pairs = []
        seen = set()
        for start in (self.nw, self.ne, self.sw, self.se):
            if start in seen:
                continue
            h = d.mate[start]
            while h not in (self.nw, self.ne, self.sw, self.se):
                ci, k = d.slot_of[h]
                h = d.mate[d.crossings[ci].halfedges[(k + 2) % 4]]
            seen.add(start)
            seen.add(h)
            pairs.append((start, h))
        return tuple(pairs)


def mirror_tangle(t: Tangle) -> Tangle:
    return replace(t, diagram=mirror_diagram(t.diagram))


# ---------------------------------------------------------------------------
# tau
# ---------------------------------------------------------------------------


def tau(t: Tangle, s: Slope) -> PlanarDiagram:
    """Closure of the braid-twisted tangle: the branch set of the p/q filling.

    The braid for the continued fraction of the slope acts on three strand
    positions east of the tangle (NW wraps over the north to the top
    position, NE and SE feed the middle and bottom); the parity-matched
    closure caps two east positions and routes the remaining one to SW.
    The basepoint sits on the SW closure arc.
    """
    if s.p < 0:
        return mirror_diagram(tau(mirror_tangle(t), Slope(-s.p, s.q)))
    cf = cf_expand(s)
    word, parity = braid_of_cf(cf)

    d = t.diagram
    base = max(list(d.slot_of) + list(d.boundary), default=-1) + 1
    crossings = list(d.crossings)
    emap = dict(d.mate)  # endpoint -> partner for the current open arcs
    loops = d.free_loops

    def connect(x: int, y: int) -> Optional[Tuple[int, int]]:
        """Join two dangling points, splicing through existing arc ends."""
        nonlocal loops
        if x in emap:
            xr = emap.pop(x)
            emap.pop(xr, None)
        else:
            xr = x
        if y in emap:
            yr = emap.pop(y)
            emap.pop(yr, None)
        else:
            yr = y
        if xr == yr or (xr == y and yr == x):
            loops += 1
            return None
        emap[xr] = yr
        emap[yr] = xr
        return (xr, yr)

    pending = [t.nw, t.ne, t.se]  # east positions, top to bottom
    for li, k in enumerate(word.letters):
        p = abs(k) - 1
        h = [base + 4 * li + x for x in range(4)]  # NW, SW, SE, NE slots
        connect(pending[p], h[0])
        connect(pending[p + 1], h[1])
        pending[p] = h[3]
        pending[p + 1] = h[2]
        crossings.append(Crossing(tuple(h), over=0 if k > 0 else 1))
    if parity == "odd":
        connect(pending[0], pending[1])
        sw_edge = connect(pending[2], t.sw)
    else:
        connect(pending[1], pending[2])
        sw_edge = connect(pending[0], t.sw)
    edges = tuple(
        (a, b) for a, b in ((k, v) for k, v in emap.items() if k < v)
    )
    return PlanarDiagram(
        crossings=tuple(crossings),
        edges=edges,
        basepoint=sw_edge[0] if sw_edge is not None else None,
        free_loops=loops,
        label=f"tau({s})" if t.name is None else f"{t.name}:tau({s})",
    )


def calibrate(t: Tangle, window: int = 20) -> int:
    """Framing offset f with det(tau((n+f)/1)) = |n| near 0 and tau(1/0) trivial.

    Searches f in [-window, window]; raises CalibrationError when no offset
    fits, which certifies that the tangle is not in preferred knot form.
    """
    from .goeritz import determinant
    from .khovanov import reduced_kh

    meridian = reduced_kh(tau(t, Slope(1, 0)))
    if meridian.total_rank() != 1:
        raise CalibrationError(
            "tau(1/0) is not an unknot candidate (total reduced rank "
            f"{meridian.total_rank()}); not a preferred knot tangle"
        )
    for f in range(-window, window + 1):
        if all(determinant(tau(t, Slope(n + f, 1))) == abs(n) for n in range(-2, 3)):
            return f
    raise CalibrationError(
        f"no framing offset in [-{window}, {window}] matches the determinant "
        "pattern; not a preferred knot tangle"
    )


# ---------------------------------------------------------------------------
# fixture constructors
# ---------------------------------------------------------------------------


def trivial_tangle() -> Tangle:
    """Two horizontal arcs NW-NE and SW-SE."""
    d = PlanarDiagram(
        crossings=(),
        edges=((0, 1), (2, 3)),
        boundary=(0, 1, 2, 3),
        label="trivial-tangle",
    )
    return Tangle(diagram=d, nw=0, ne=1, sw=2, se=3, name="trivial")


def braidcut_tangle(
    strands: int,
    pre: Tuple[int, ...],
    post: Tuple[int, ...] = (),
    pair: int = 1,
    name: Optional[str] = None,
) -> Tangle:
    """Trace closure of pre . post with strands pair, pair+1 cut in between.

    The cut exposes four ends: NE and SE are the outgoing strands of ``pre``
    at the cut positions, NW and SW the incoming strands of ``post``; tau's
    east twist region then reinstates the twists of the braid family that the
    cut removed.
    """
    s = strands
    crossings: List[Crossing] = []
    edges: List[Tuple[int, int]] = []
    pending: List[Optional[int]] = [None] * s
    first_in: List[Optional[int]] = [None] * s
    letters = list(pre) + list(post)
    ncut = len(pre)
    j = pair - 1
    base = 4 * len(letters)
    nw, sw, ne, se = base, base + 1, base + 2, base + 3
    cut_done = False

    def do_cut() -> None:
        if pending[j] is None or pending[j + 1] is None:
            raise DiagramError("cut positions must be used by the pre-braid")
        edges.append((pending[j], ne))
        edges.append((pending[j + 1], se))
        pending[j], pending[j + 1] = nw, sw

    for li, k in enumerate(letters):
        if li == ncut and not cut_done:
            do_cut()
            cut_done = True
        p = abs(k) - 1
        h = [4 * li + x for x in range(4)]
        for pos, slot_in in ((p, 0), (p + 1, 1)):
            if pending[pos] is None:
                first_in[pos] = h[slot_in]
            else:
                edges.append((pending[pos], h[slot_in]))
        pending[p] = h[3]
        pending[p + 1] = h[2]
        crossings.append(Crossing(tuple(h), over=0 if k > 0 else 1))
    if not cut_done:
        do_cut()
    for pos in range(s):
        if pending[pos] is None:
            raise DiagramError("braidcut family braid must use every strand")
        edges.append((pending[pos], first_in[pos]))
    d = PlanarDiagram(
        crossings=tuple(crossings),
        edges=tuple(edges),
        boundary=(nw, ne, sw, se),
        label=name,
    )
    return Tangle(diagram=d, nw=nw, ne=ne, sw=sw, se=se, name=name)


def pretzel_strip_tangle(a: int, b: int, name: Optional[str] = None) -> Tangle:
    """Two vertical twist strips of a and b signed crossings, third slot open.

    Closing the open slot with n east twists produces three-strip pretzel
    links; with a = 2, b = -3 this is the quotient tangle of a trefoil up to
    framing.
    """

    def strip(count: int, base: int):
        n = abs(count)
        over = 0 if count > 0 else 1
        cs = []
        for i in range(n):
            cs.append(Crossing(tuple(base + 4 * i + x for x in range(4)), over=over))
        es = []
        for i in range(n - 1):
            # bottom of crossing i to top of crossing i+1
            es.append((base + 4 * i + 1, base + 4 * (i + 1)))
            es.append((base + 4 * i + 2, base + 4 * (i + 1) + 3))
        top = (base + 0, base + 3)  # NW, NE slots of the first crossing
        last = base + 4 * (n - 1)
        bottom = (last + 1, last + 2)  # SW, SE slots of the last crossing
        return cs, es, top, bottom

    if a == 0 or b == 0:
        raise DiagramError("pretzel strips need nonzero twist counts")
    cs1, es1, top1, bot1 = strip(a, 0)
    cs2, es2, top2, bot2 = strip(b, 4 * abs(a))
    base = 4 * (abs(a) + abs(b))
    nw, ne, sw, se = base, base + 1, base + 2, base + 3
    edges = (
        es1
        + es2
        + [
            (top1[1], top2[0]),  # top arc between the strips
            (bot1[1], bot2[0]),  # bottom arc between the strips
            (nw, top1[0]),
            (ne, top2[1]),
            (sw, bot1[0]),
            (se, bot2[1]),
        ]
    )
    d = PlanarDiagram(
        crossings=tuple(cs1 + cs2),
        edges=tuple(edges),
        boundary=(nw, ne, sw, se),
        label=name,
    )
    # Rotate the compass labels a quarter turn so that tau's east twist slot
    # fills the open strip vertically, matching the two existing strips.
    return Tangle(diagram=d, nw=ne, ne=se, sw=nw, se=sw, name=name)
