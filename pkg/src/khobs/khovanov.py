"""Reduced Khovanov homology over GF(2) in the (delta, q) diagonal grading.

Internal gradings follow the standard cube of resolutions:

    i = (number of 1-smoothings) - n_minus
    j = (algebra degree) + (number of 1-smoothings) + n_plus - 2 * n_minus

with the reduced theory shifted so the unknot sits at (i, j) = (0, 0).  The
exported gradings are q = j/2 and delta = i - j/2, stored doubled
(two_q = j, two_delta = 2i - j) so that all lattice points are integers.
With this convention u = delta + q = i, the trefoil is a single delta-column,
and the Jones identity V_L(t) = sum (-1)^u t^q rk holds verbatim.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Optional, Tuple

from .diagram import (
    OrientedDiagram,
    PlanarDiagram,
    orient,
    resolve,
    _smoothing_pairs,
)
from .gf2 import gf2_rank

__all__ = [
    "BigradedRanks",
    "WidthProfile",
    "SkeinReport",
    "CapacityError",
    "reduced_kh",
    "width",
    "euler",
    "jones",
    "sigma_normalize",
    "skein_check",
    "JonesPolynomial",
]

DEFAULT_NAIVE_CAP = 16


class CapacityError(RuntimeError):
    """Raised when a diagram exceeds a backend's configured capacity."""


@dataclass(frozen=True)
class BigradedRanks:
    """Finitely supported rank table over the doubled (delta, q) lattice."""

    entries: Dict[Tuple[int, int], int]
    absolute: bool = True

    def __post_init__(self) -> None:
        for (td, tq), rk in self.entries.items():
            if rk < 1:
                raise ValueError(f"rank at ({td},{tq}) must be positive, got {rk}")
            if (td + tq) % 2 != 0:
                raise ValueError(f"two_delta + two_q must be even at ({td},{tq})")

    def total_rank(self) -> int:
        return sum(self.entries.values())

    def delta_support(self) -> List[int]:
        return sorted({td for td, _ in self.entries})

    def column_rank(self, two_delta: int) -> int:
        return sum(rk for (td, _), rk in self.entries.items() if td == two_delta)

    def shifted(self, d_two_delta: int = 0, d_two_q: int = 0) -> "BigradedRanks":
        return BigradedRanks(
            {(td + d_two_delta, tq + d_two_q): rk for (td, tq), rk in self.entries.items()},
            absolute=self.absolute,
        )

    def negated(self) -> "BigradedRanks":
        """Mirror rule: both coordinates negated."""
        return BigradedRanks(
            {(-td, -tq): rk for (td, tq), rk in self.entries.items()},
            absolute=self.absolute,
        )

    def as_relative(self) -> "BigradedRanks":
        if not self.entries:
            return BigradedRanks({}, absolute=False)
        td0 = min(td for td, _ in self.entries)
        tq0 = min(tq for _, tq in self.entries if True)
        # normalize so the minimal support corner sits at the origin parity class
        shift_q = tq0 if (tq0 + td0) % 2 == 0 else tq0 - 1
        return BigradedRanks(
            {(td - td0, tq - shift_q): rk for (td, tq), rk in self.entries.items()},
            absolute=False,
        )

    def to_table(self) -> Dict[int, Dict[int, int]]:
        """Structured export {two_delta: {two_q: rank}}."""
        out: Dict[int, Dict[int, int]] = {}
        for (td, tq), rk in sorted(self.entries.items()):
            out.setdefault(td, {})[tq] = rk
        return out

    def ascii_grid(self) -> str:
        """Grid with delta horizontal and q vertical, blanks for zero ranks."""
        if not self.entries:
            return "(empty)"
        tds = self.delta_support()
        tqs = sorted({tq for _, tq in self.entries}, reverse=True)
        colw = max(
            [len(_half_str(td)) for td in tds]
            + [len(str(rk)) for rk in self.entries.values()]
        ) + 1
        rows = []
        head = "q\\d".rjust(6) + "".join(_half_str(td).rjust(colw) for td in tds)
        rows.append(head)
        for tq in tqs:
            cells = []
            for td in tds:
                rk = self.entries.get((td, tq))
                cells.append((str(rk) if rk else "").rjust(colw))
            rows.append(_half_str(tq).rjust(6) + "".join(cells))
        return "\n".join(rows)


def _half_str(doubled: int) -> str:
    return str(doubled // 2) if doubled % 2 == 0 else f"{doubled}/2"


@dataclass(frozen=True)
class WidthProfile:
    """Number of delta-diagonals in the support, with per-column total ranks."""

    width: int
    column_ranks: Tuple[int, ...]


@dataclass(frozen=True)
class JonesPolynomial:
    """Laurent polynomial in t with half-integer exponents, keyed by 2*exponent."""

    coeffs: Dict[int, int]

    def eval_minus1_abs(self) -> int:
        # t = -1 with t^(1/2) = i; powers of i cycle with period 4 in two_q.
        re = im = 0
        for tq, c in self.coeffs.items():
            k = tq % 4
            if k == 0:
                re += c
            elif k == 1:
                im += c
            elif k == 2:
                re -= c
            else:
                im -= c
        if re and im:
            raise AssertionError("evaluation at t=-1 must be real or imaginary")
        return abs(re) + abs(im)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for tq in sorted(self.coeffs):
            c = self.coeffs[tq]
            if c == 0:
                continue
            mono = "1" if tq == 0 else f"t^{_half_str(tq)}"
            if tq != 0 and abs(c) == 1:
                body = mono
            elif tq == 0:
                body = str(abs(c))
            else:
                body = f"{abs(c)}*{mono}"
            terms.append(("- " if c < 0 else "+ ") + body)
        out = " ".join(terms)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


@dataclass(frozen=True)
class SkeinReport:
    """Classification and checks for the mapping-cone skein relation at a crossing."""

    case: str  # MO | MO-degenerate-0 | MO-degenerate-1 | inapplicable
    dets: Tuple[int, int, int]  # det L, det L0, det L1
    sigmas: Tuple[int, int, int]
    support_ok: Optional[bool]
    rank_balance: Optional[int]  # rk L0 + rk L1 - rk L


# ---------------------------------------------------------------------------
# naive backend: full cube of resolutions
# ---------------------------------------------------------------------------


def _vertex_circles(
    d: PlanarDiagram, pairs0, pairs1, v: int
) -> Tuple[Dict[int, int], int]:
    """Circle id per half-edge for resolution vertex v, plus circle count."""
    parent: Dict[int, int] = {}

    def find(x: int) -> int:
        r = x
        while parent[r] != r:
            r = parent[r]
        while parent[x] != r:
            parent[x], x = r, parent[x]
        return r

    def union(x: int, y: int) -> None:
        if x not in parent:
            parent[x] = x
        if y not in parent:
            parent[y] = y
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for a, b in d.edges:
        union(a, b)
    for ci in range(len(d.crossings)):
        pairs = pairs1[ci] if (v >> ci) & 1 else pairs0[ci]
        for a, b in pairs:
            union(a, b)
    roots: Dict[int, int] = {}
    circ: Dict[int, int] = {}
    for h in sorted(parent):
        r = find(h)
        if r not in roots:
            roots[r] = len(roots)
        circ[h] = roots[r]
    return circ, len(roots)


def _cube_ranks(
    d: PlanarDiagram, reduced: bool
) -> Dict[Tuple[int, int], int]:
    """Homology ranks of the (reduced) cube, keyed by internal (i, j).

    Assumes at least one crossing and, when reduced, a basepoint on an edge.
    The free-loop tensor factors are NOT applied here.
    """
    od = orient(d)
    n = len(d.crossings)
    npos, nneg = od.n_plus, od.n_minus
    pairs0 = [_smoothing_pairs(c, 0) for c in d.crossings]
    pairs1 = [_smoothing_pairs(c, 1) for c in d.crossings]

    # Per-vertex circle data.
    circs: List[Dict[int, int]] = []
    ncircs: List[int] = []
    slots: List[List[int]] = []  # per vertex: circle ids of stored (non-bp) circles
    slot_index: List[Dict[int, int]] = []
    reps: List[Dict[int, int]] = []  # circle id -> smallest half-edge
    bp_cids: List[int] = []
    for v in range(1 << n):
        circ, nc = _vertex_circles(d, pairs0, pairs1, v)
        rep: Dict[int, int] = {}
        for h in sorted(circ):
            rep.setdefault(circ[h], h)
        bp_cid = circ[d.basepoint] if reduced else -1
        stored = [cid for cid in range(nc) if cid != bp_cid]
        circs.append(circ)
        ncircs.append(nc)
        slots.append(stored)
        slot_index.append({cid: k for k, cid in enumerate(stored)})
        reps.append(rep)
        bp_cids.append(bp_cid)

    # Generator indexing per (j, i_raw) bucket.
    index: Dict[Tuple[int, int], Dict[Tuple[int, int], int]] = {}
    dims: Dict[Tuple[int, int], int] = {}
    for v in range(1 << n):
        i_raw = bin(v).count("1")
        nslots = len(slots[v])
        base_deg = (-1 if reduced else 0)  # basepoint circle carries X
        for g in range(1 << nslots):
            algdeg = base_deg + (nslots - 2 * bin(g).count("1"))
            j = algdeg + i_raw + npos - 2 * nneg
            bucket = index.setdefault((j, i_raw), {})
            bucket[(v, g)] = len(bucket)
            dims[(j, i_raw)] = len(bucket)

    # Differential rows per (j, i_raw): columns index the (j, i_raw + 1) bucket.
    rows: Dict[Tuple[int, int], List[int]] = {
        key: [0] * dim for key, dim in dims.items()
    }

    for v in range(1 << n):
        i_raw = bin(v).count("1")
        nslots = len(slots[v])
        for ci in range(n):
            if (v >> ci) & 1:
                continue
            w = v | (1 << ci)
            touched_v = {circs[v][h] for h in d.crossings[ci].halfedges}
            touched_w = {circs[w][h] for h in d.crossings[ci].halfedges}

            # Map each untouched source circle to its target slot.
            carry: List[Tuple[int, int]] = []  # (source slot k, target slot)
            for k, cid in enumerate(slots[v]):
                if cid in touched_v:
                    continue
                tcid = circs[w][reps[v][cid]]
                carry.append((k, slot_index[w][tcid]))

            bp_v, bp_w = bp_cids[v], bp_cids[w]
            merging = len(touched_v) == 2
            if merging:
                a_cid, b_cid = sorted(touched_v)
                (tcid,) = touched_w
            else:
                (s_cid,) = touched_v
                t_a, t_b = sorted(touched_w)

            for g in range(1 << nslots):
                src = index[( _gen_j(g, nslots, i_raw, npos, nneg, reduced), i_raw)][(v, g)]
                jkey = _gen_j(g, nslots, i_raw, npos, nneg, reduced)
                targets: List[int] = []
                if merging:
                    targets = _merge_targets(
                        g, slots[v], slot_index[w], carry, a_cid, b_cid, tcid,
                        bp_v, bp_w, slot_index[v],
                    )
                else:
                    targets = _split_targets(
                        g, slots[v], slot_index[w], carry, s_cid, t_a, t_b,
                        bp_v, bp_w, slot_index[v],
                    )
                if not targets:
                    continue
                tbucket = index[(jkey, i_raw + 1)]
                acc = 0
                for tg in targets:
                    acc ^= 1 << tbucket[(w, tg)]
                rows[(jkey, i_raw)][src] ^= acc

    # Homology ranks per (i, j).
    out: Dict[Tuple[int, int], int] = {}
    rank_cache: Dict[Tuple[int, int], int] = {}
    for (j, i_raw), dim in dims.items():
        mat = [r for r in rows[(j, i_raw)] if r]
        rank_cache[(j, i_raw)] = (
            gf2_rank(mat, dims.get((j, i_raw + 1), 0)) if mat else 0
        )
    for (j, i_raw), dim in dims.items():
        h = dim - rank_cache[(j, i_raw)] - rank_cache.get((j, i_raw - 1), 0)
        if h:
            out[(i_raw - nneg, j)] = h
    return out


def _gen_j(g: int, nslots: int, i_raw: int, npos: int, nneg: int, reduced: bool) -> int:
    algdeg = (-1 if reduced else 0) + (nslots - 2 * bin(g).count("1"))
    return algdeg + i_raw + npos - 2 * nneg


def _merge_targets(
    g, slots_v, slot_index_w, carry, a_cid, b_cid, tcid, bp_v, bp_w, slot_index_v
):
    """Target generator bitmasks for a merge; empty list means zero."""
    base = 0
    for k, t in carry:
        if (g >> k) & 1:
            base |= 1 << t
    if bp_v in (a_cid, b_cid):
        other = b_cid if bp_v == a_cid else a_cid
        x_other = (g >> slot_index_v[other]) & 1
        if x_other:
            return []  # X * X = 0 on the basepoint circle
        return [base]
    xa = (g >> slot_index_v[a_cid]) & 1
    xb = (g >> slot_index_v[b_cid]) & 1
    if xa and xb:
        return []
    t = slot_index_w[tcid]
    lab = xa or xb
    return [base | (lab << t)]


def _split_targets(
    g, slots_v, slot_index_w, carry, s_cid, t_a, t_b, bp_v, bp_w, slot_index_v
):
    base = 0
    for k, t in carry:
        if (g >> k) & 1:
            base |= 1 << t
    if s_cid == bp_v:
        # X -> X (x) X: the non-basepoint offspring gets X.
        new_cid = t_a if t_b == bp_w else t_b
        return [base | (1 << slot_index_w[new_cid])]
    ka, kb = slot_index_w[t_a], slot_index_w[t_b]
    if (g >> slot_index_v[s_cid]) & 1:
        return [base | (1 << ka) | (1 << kb)]
    # Delta(1) = 1 (x) X + X (x) 1
    return [base | (1 << ka), base | (1 << kb)]


def _convolve_loops(table: Dict[Tuple[int, int], int], loops: int) -> Dict[Tuple[int, int], int]:
    """Tensor with (q + q^-1) per extra circle, acting on internal (i, j)."""
    for _ in range(loops):
        new: Dict[Tuple[int, int], int] = {}
        for (i, j), rk in table.items():
            for dj in (1, -1):
                new[(i, j + dj)] = new.get((i, j + dj), 0) + rk
        table = new
    return table


def _to_bigraded(table: Dict[Tuple[int, int], int]) -> BigradedRanks:
    """Convert internal reduced (i, j_reduced) ranks to doubled (delta, q)."""
    return BigradedRanks(
        {(2 * i - j, j): rk for (i, j), rk in table.items() if rk}
    )


def naive_reduced_table(d: PlanarDiagram) -> Dict[Tuple[int, int], int]:
    """Reduced ranks keyed by internal (i, j_reduced) via the full cube."""
    if not d.crossings:
        if d.free_loops < 1:
            raise ValueError("empty diagram")
        return _convolve_loops({(0, 0): 1}, d.free_loops - 1)
    if d.basepoint is not None:
        table = _cube_ranks(d, reduced=True)
        table = {(i, j + 1): rk for (i, j), rk in table.items()}  # unknot at j=0
        return _convolve_loops(table, d.free_loops)
    # Basepoint on a free loop: reduced = unreduced(crossing part) (x) V^(loops-1).
    table = _cube_ranks(d, reduced=False)
    return _convolve_loops(table, d.free_loops - 1)


def naive_unreduced_table(d: PlanarDiagram) -> Dict[Tuple[int, int], int]:
    """Unreduced ranks keyed by internal (i, j); test oracle."""
    if not d.crossings:
        return _convolve_loops({(0, 1): 1, (0, -1): 1}, d.free_loops - 1)
    table = _cube_ranks(d, reduced=False)
    return _convolve_loops(table, d.free_loops)


def _naive_cap() -> int:
    return int(os.environ.get("KHOBS_NAIVE_CAP", DEFAULT_NAIVE_CAP))


def reduced_kh(
    d: PlanarDiagram,
    backend: str = "scan",
    capacity: Optional[int] = None,
) -> BigradedRanks:
    """Reduced Khovanov homology ranks of a closed diagram over GF(2)."""
    if not d.is_closed():
        raise ValueError("reduced_kh requires a closed diagram")
    if backend == "naive":
        cap = capacity if capacity is not None else _naive_cap()
        if len(d.crossings) > cap:
            raise CapacityError(
                f"{len(d.crossings)} crossings exceed the naive backend cap {cap}; "
                "use the scan backend"
            )
        return _to_bigraded(naive_reduced_table(d))
    if backend == "scan":
        from .scan import scan_reduced_table

        return _to_bigraded(scan_reduced_table(d, capacity=capacity))
    raise ValueError(f"unknown backend {backend!r}")


# ---------------------------------------------------------------------------
# derived quantities
# ---------------------------------------------------------------------------


def width(r: BigradedRanks) -> WidthProfile:
    """Homological width and per-diagonal column ranks."""
    tds = r.delta_support()
    if not tds:
        raise ValueError("empty rank table")
    cols = tuple(r.column_rank(td) for td in tds)
    return WidthProfile(width=len(tds), column_ranks=cols)


def euler(r: BigradedRanks) -> int:
    """|alternating sum of delta-column ranks| (the chi >= 0 convention)."""
    tds = r.delta_support()
    if not tds:
        raise ValueError("empty rank table")
    td0 = tds[0]
    total = 0
    for td in tds:
        sign = -1 if ((td - td0) // 2) % 2 else 1
        total += sign * r.column_rank(td)
    return abs(total)


def jones(r: BigradedRanks) -> JonesPolynomial:
    """V_L(t) = sum (-1)^u t^q rk with u = delta + q."""
    if not r.absolute:
        raise ValueError("jones requires absolute gradings")
    coeffs: Dict[int, int] = {}
    for (td, tq), rk in r.entries.items():
        u = (td + tq) // 2
        coeffs[tq] = coeffs.get(tq, 0) + (-1 if u % 2 else 1) * rk
    return JonesPolynomial({tq: c for tq, c in coeffs.items() if c})


def sigma_normalize(r: BigradedRanks, sigma: int) -> BigradedRanks:
    """Shift delta by -sigma/2 (two_delta by -sigma)."""
    if not r.absolute:
        raise ValueError("sigma_normalize requires absolute gradings")
    return r.shifted(d_two_delta=-sigma)


def skein_check(
    od: OrientedDiagram, crossing_id: int, backend: str = "scan"
) -> SkeinReport:
    """Classify and verify the mapping-cone skein relation at one crossing."""
    from .goeritz import determinant, signature

    d = od.diagram
    if not 0 <= crossing_id < len(d.crossings):
        raise ValueError(f"invalid crossing id {crossing_id}")
    d0 = resolve(d, crossing_id, 0)
    d1 = resolve(d, crossing_id, 1)
    det_l, det0, det1 = determinant(d), determinant(d0), determinant(d1)

    if det0 > 0 and det1 > 0 and det_l == det0 + det1:
        case = "MO"
    elif det0 == 0 and det_l == det1 != 0:
        case = "MO-degenerate-0"
    elif det1 == 0 and det_l == det0 != 0:
        case = "MO-degenerate-1"
    else:
        return SkeinReport(
            case="inapplicable",
            dets=(det_l, det0, det1),
            sigmas=(signature(d), signature(d0), signature(d1)),
            support_ok=None,
            rank_balance=None,
        )

    sig, sig0, sig1 = signature(d), signature(d0), signature(d1)
    kh = reduced_kh(d, backend=backend)
    kh0 = reduced_kh(d0, backend=backend)
    kh1 = reduced_kh(d1, backend=backend)
    balance = kh0.total_rank() + kh1.total_rank() - kh.total_rank()

    supp = {td - sig for td in kh.delta_support()}
    supp0 = {td - sig0 for td in kh0.delta_support()}
    supp1 = {td - sig1 for td in kh1.delta_support()}
    if case == "MO-degenerate-0":
        supp0 = {td - 1 for td in supp0}
    elif case == "MO-degenerate-1":
        supp1 = {td + 1 for td in supp1}
    support_ok = supp <= (supp0 | supp1) and balance >= 0 and balance % 2 == 0

    return SkeinReport(
        case=case,
        dets=(det_l, det0, det1),
        sigmas=(sig, sig0, sig1),
        support_ok=support_ok,
        rank_balance=balance,
    )
