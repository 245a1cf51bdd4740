"""Scanning backend: divide-and-conquer Khovanov complex simplification.

Crossings are glued one at a time into a complex over a local cobordism
category on the processed boundary.  Objects are crossingless matchings of
the dangling half-edges with homological/quantum shifts; morphism entries are
GF(2) sums of dotted flat cobordisms, recorded by which boundary pieces carry
a dot.  Closed circles produced by a gluing are immediately delooped into two
shifted copies, and invertible entries are cancelled by Gaussian elimination,
so intermediate complexes stay small.

The scan computes the unreduced ranks; reduced ranks are recovered by exact
division of each homological degree by (q + 1/q), which is an isomorphism of
rank tables over GF(2).

Evaluation rules for a glued surface component with Euler characteristic chi,
b boundary pieces and d dots (genus g = (2 - chi - b)/2):

* g >= 1 or d >= 2: the component vanishes.
* closed (b = 0): survives with coefficient 1 iff it is a once-dotted sphere.
* g = 0, d = 1: every boundary piece of the component carries a dot.
* g = 0, d = 0: sum of the b assignments dotting all but one boundary piece.

Delooping uses: projection to the +1 summand = dotted cap, to -1 = plain cap;
inclusion of +1 = plain cup, of -1 = dotted cup.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .diagram import PlanarDiagram, orient, _smoothing_pairs

__all__ = ["scan_reduced_table", "scan_unreduced_table", "ScanCapacityError"]

Term = FrozenSet[object]  # frozenset of dotted piece ids
Morphism = Set[Term]
Match = Tuple[Tuple[int, int], ...]

DEFAULT_SCAN_CAP = 200_000


class ScanCapacityError(RuntimeError):
    pass


@dataclass
class _Obj:
    match: Match  # sorted arcs (a, b), a < b
    h: int
    q: int


def _xor_in(m: Morphism, terms: Iterable[Term]) -> None:
    for t in terms:
        if t in m:
            m.discard(t)
        else:
            m.add(t)


# ---------------------------------------------------------------------------
# tracing
# ---------------------------------------------------------------------------


def _trace(
    arcs: Dict[int, Tuple[int, object]],
    conn: Dict[int, int],
):
    """Follow arcs and connectors to new arcs and closed circles.

    ``arcs`` maps each point to (partner, primitive id); ``conn`` maps glued
    points to their connector partner.  Returns (new_arcs, circles) where each
    new arc is ((end_a, end_b), primitives) and each circle is
    (min_point, primitives).
    """
    seen: Set[int] = set()
    new_arcs = []
    circles = []
    endpoints = [p for p in sorted(arcs) if p not in conn]
    for start in endpoints:
        if start in seen:
            continue
        prims = []
        p = start
        while True:
            seen.add(p)
            partner, prim = arcs[p]
            prims.append(prim)
            seen.add(partner)
            if partner not in conn:
                end = partner
                break
            p = conn[partner]
        a, b = (start, end) if start < end else (end, start)
        new_arcs.append(((a, b), tuple(prims)))
    for start in sorted(arcs):
        if start in seen:
            continue
        prims = []
        p = start
        low = start
        while p not in seen:
            seen.add(p)
            partner, prim = arcs[p]
            prims.append(prim)
            seen.add(partner)
            low = min(low, p, partner)
            p = conn[partner]
        circles.append((low, tuple(prims)))
    return new_arcs, circles


# ---------------------------------------------------------------------------
# surface evaluation
# ---------------------------------------------------------------------------


class _UF:
    def __init__(self) -> None:
        self.parent: Dict[object, object] = {}

    def find(self, x):
        p = self.parent
        if x not in p:
            p[x] = x
            return x
        r = x
        while p[r] != r:
            r = p[r]
        while p[x] != r:
            p[x], x = r, p[x]
        return r

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry


def _evaluate(
    piece_dots: Dict[object, int],
    gluings: Sequence[Tuple[object, object]],
    circle_caps: Sequence[Tuple[object, int, Iterable[object]]],
    result_pieces: Sequence[Tuple[object, object]],
) -> List[Term]:
    """Evaluate a glued surface into a GF(2) list of dotted-piece terms.

    piece_dots: primitive sheet id -> dot count (every sheet has chi = 1).
    gluings: interval gluings between two sheets (chi -= 1 each).
    circle_caps: (cap sheet id, cap dots, sheets met by the capped circle).
    result_pieces: (result piece id, any sheet containing it).
    """
    uf = _UF()
    for pid in piece_dots:
        uf.find(pid)
    for a, b in gluings:
        uf.union(a, b)
    for cap_id, cap_dots, touched in circle_caps:
        uf.find(cap_id)
        for t in touched:
            uf.union(cap_id, t)

    chi: Dict[object, int] = {}
    dots: Dict[object, int] = {}
    for pid, d in piece_dots.items():
        r = uf.find(pid)
        chi[r] = chi.get(r, 0) + 1
        dots[r] = dots.get(r, 0) + d
    for cap_id, cap_dots, _ in circle_caps:
        r = uf.find(cap_id)
        chi[r] = chi.get(r, 0) + 1
        dots[r] = dots.get(r, 0) + cap_dots
    for a, b in gluings:
        r = uf.find(a)
        chi[r] = chi.get(r, 0) - 1

    comp_results: Dict[object, List[object]] = {}
    for rid, sheet in result_pieces:
        comp_results.setdefault(uf.find(sheet), []).append(rid)

    variants_per_comp: List[List[FrozenSet[object]]] = []
    for r in chi:
        b = len(comp_results.get(r, ()))
        d = dots.get(r, 0)
        g2 = 2 - chi[r] - b  # = 2g
        if g2 < 0:
            raise AssertionError("negative genus in surface evaluation")
        if g2 > 0 or d >= 2:
            return []
        if b == 0:
            if d != 1:  # undotted sphere evaluates to zero
                return []
            variants_per_comp.append([frozenset()])
            continue
        rids = comp_results[r]
        if d == 1:
            variants_per_comp.append([frozenset(rids)])
        else:
            variants_per_comp.append(
                [frozenset(x for x in rids if x != skip) for skip in rids]
            )

    terms: List[Term] = []
    for combo in product(*variants_per_comp):
        acc: FrozenSet[object] = frozenset()
        for part in combo:
            acc |= part
        terms.append(acc)
    return terms


# ---------------------------------------------------------------------------
# composition of flat morphisms
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def _cycles_of(match_a: Match, match_b: Match) -> Dict[int, int]:
    """Cycles of the union of two perfect matchings; id = min point."""
    nxt_a = {}
    for a, b in match_a:
        nxt_a[a] = b
        nxt_a[b] = a
    nxt_b = {}
    for a, b in match_b:
        nxt_b[a] = b
        nxt_b[b] = a
    piece_of: Dict[int, int] = {}
    for start in sorted(nxt_a):
        if start in piece_of:
            continue
        cyc = [start]
        p = start
        use_a = True
        while True:
            p = nxt_a[p] if use_a else nxt_b[p]
            use_a = not use_a
            if p == start:
                break
            cyc.append(p)
        low = min(cyc)
        for x in cyc:
            piece_of[x] = low
    return piece_of


@lru_cache(maxsize=1 << 16)
def _compose_ctx(match_a: Match, match_b: Match, match_c: Match):
    """Shared scaffolding for composing A -> B with B -> C."""
    f_piece = _cycles_of(match_a, match_b)
    g_piece = _cycles_of(match_b, match_c)
    res_piece = _cycles_of(match_a, match_c)
    gluings = tuple((("f", f_piece[a]), ("g", g_piece[a])) for a, _ in match_b)
    result_pieces: Dict[int, object] = {}
    for a, _ in match_a:
        result_pieces[res_piece[a]] = ("f", f_piece[a])
    for a, _ in match_c:
        result_pieces.setdefault(res_piece[a], ("g", g_piece[a]))
    rp = tuple(result_pieces.items())
    fp_ids = frozenset(("f", p) for p in f_piece.values())
    gp_ids = frozenset(("g", p) for p in g_piece.values())
    return f_piece, g_piece, gluings, rp, fp_ids, gp_ids


@lru_cache(maxsize=1 << 18)
def _compose_terms(
    match_a: Match, match_b: Match, match_c: Match, tf: Term, tg: Term
) -> Tuple[Term, ...]:
    f_piece, g_piece, gluings, rp, fp_ids, gp_ids = _compose_ctx(
        match_a, match_b, match_c
    )
    dots = {pid: 0 for pid in fp_ids}
    for pid in gp_ids:
        dots[pid] = 0
    for p in tf:
        dots[("f", p)] += 1
    for p in tg:
        dots[("g", p)] += 1
    return tuple(_evaluate(dots, gluings, (), rp))


def compose(match_a: Match, match_b: Match, match_c: Match, f, g) -> Morphism:
    """Composite g after f of morphisms f: A -> B, g: B -> C."""
    out: Morphism = set()
    for tf in f:
        for tg in g:
            _xor_in(out, _compose_terms(match_a, match_b, match_c, tf, tg))
    return out


_INVERT_MEMO: Dict[Tuple[Match, FrozenSet[Term]], Tuple[Term, ...]] = {}


def _invert(match: Match, f: Morphism) -> Morphism:
    """Inverse of an invertible entry (identity plus dotted nilpotents)."""
    key = (match, frozenset(f))
    hit = _INVERT_MEMO.get(key)
    if hit is not None:
        return set(hit)
    ident: Term = frozenset()
    n: Morphism = set(f)
    n.discard(ident)
    inv: Morphism = {ident}
    cur: Morphism = set(n)
    while cur:
        _xor_in(inv, cur)
        cur = compose(match, match, match, cur, n)
    _INVERT_MEMO[key] = tuple(inv)
    return inv


# ---------------------------------------------------------------------------
# the scan complex
# ---------------------------------------------------------------------------


class _Complex:
    def __init__(self, cap: int) -> None:
        self.objs: Dict[int, _Obj] = {0: _Obj(match=(), h=0, q=0)}
        self.diff: Dict[Tuple[int, int], Morphism] = {}
        self.frontier: Set[int] = set()
        self.cap = cap

    # -- gluing ------------------------------------------------------------

    def glue_crossing(self, d: PlanarDiagram, ci: int) -> None:
        c = d.crossings[ci]
        slots = set(c.halfedges)
        conn: Dict[int, int] = {}
        for x in c.halfedges:
            m = d.mate[x]
            if m in self.frontier or (m in slots and x < m):
                conn[x] = m
                conn[m] = x
        rho = {r: _smoothing_pairs(c, r) for r in (0, 1)}

        trace_cache: Dict[Tuple[Match, int], tuple] = {}

        def traced(match: Match, r: int):
            key = (match, r)
            if key not in trace_cache:
                arcs: Dict[int, Tuple[int, object]] = {}
                for a, b in match:
                    arcs[a] = (b, ("A", (a, b)))
                    arcs[b] = (a, ("A", (a, b)))
                for k, (a, b) in enumerate(rho[r]):
                    arcs[a] = (b, ("R", k))
                    arcs[b] = (a, ("R", k))
                trace_cache[key] = _trace(arcs, conn)
            return trace_cache[key]

        conn_pairs = tuple((x, y) for x, y in conn.items() if x < y)

        # -- new objects: (old object, r, circle labels) -------------------
        new_objs: Dict[int, _Obj] = {}
        new_index: Dict[Tuple[int, int, Tuple[int, ...]], int] = {}
        idx = 0
        for oi in sorted(self.objs):
            o = self.objs[oi]
            for r in (0, 1):
                new_arcs, circles = traced(o.match, r)
                match = tuple(sorted(ep for ep, _ in new_arcs))
                for eps in product((1, -1), repeat=len(circles)):
                    new_objs[idx] = _Obj(match=match, h=o.h + r, q=o.q + r + sum(eps))
                    new_index[(oi, r, eps)] = idx
                    idx += 1
        if idx > self.cap:
            raise ScanCapacityError(
                f"scan complex grew to {idx} objects (cap {self.cap})"
            )

        new_diff: Dict[Tuple[int, int], Morphism] = {}

        def add_entry(si: int, ti: int, terms) -> None:
            if not terms:
                return
            m = new_diff.setdefault((si, ti), set())
            _xor_in(m, terms)
            if not m:
                del new_diff[(si, ti)]

        # -- saddle entries: (O,0,eps) -> (O,1,eps') -----------------------
        saddle_memo: Dict[tuple, Dict[tuple, Tuple[Term, ...]]] = {}

        def saddle_table(match: Match) -> Dict[tuple, Tuple[Term, ...]]:
            hit = saddle_memo.get(match)
            if hit is not None:
                return hit
            arc_sheet = {}
            for a, b in match:
                arc_sheet[a] = ("ID", (a, b))
                arc_sheet[b] = ("ID", (a, b))

            def sheet_of_prim(prim):
                kind, key = prim
                return ("ID", key) if kind == "A" else ("SAD",)

            src_arcs, src_circ = traced(match, 0)
            tgt_arcs, tgt_circ = traced(match, 1)
            src_m = tuple(sorted(ep for ep, _ in src_arcs))
            tgt_m = tuple(sorted(ep for ep, _ in tgt_arcs))
            res_piece = _cycles_of(src_m, tgt_m)
            result: Dict[int, object] = {}
            for ep, prims in src_arcs:
                result.setdefault(res_piece[ep[0]], sheet_of_prim(prims[0]))
            for ep, prims in tgt_arcs:
                result.setdefault(res_piece[ep[0]], sheet_of_prim(prims[0]))
            rp = tuple(result.items())
            base_sheets = {("SAD",)} | set(arc_sheet.values())
            gl = tuple(
                (
                    arc_sheet.get(x, ("SAD",)),
                    arc_sheet.get(y, ("SAD",)),
                )
                for x, y in conn_pairs
            )
            table: Dict[tuple, Tuple[Term, ...]] = {}
            for eps_s in product((1, -1), repeat=len(src_circ)):
                for eps_t in product((1, -1), repeat=len(tgt_circ)):
                    caps = []
                    for k, (_low, prims) in enumerate(src_circ):
                        caps.append(
                            (
                                ("CUP", k),
                                1 if eps_s[k] == -1 else 0,
                                {sheet_of_prim(p) for p in prims},
                            )
                        )
                    for k, (_low, prims) in enumerate(tgt_circ):
                        caps.append(
                            (
                                ("CAP", k),
                                1 if eps_t[k] == 1 else 0,
                                {sheet_of_prim(p) for p in prims},
                            )
                        )
                    dots = {pid: 0 for pid in base_sheets}
                    terms = tuple(_evaluate(dots, gl, caps, rp))
                    if terms:
                        table[(eps_s, eps_t)] = terms
            saddle_memo[match] = table
            return table

        for oi in sorted(self.objs):
            o = self.objs[oi]
            for (eps_s, eps_t), terms in saddle_table(o.match).items():
                add_entry(new_index[(oi, 0, eps_s)], new_index[(oi, 1, eps_t)], terms)

        # -- transferred entries: f: O -> P gives (O,r,eps) -> (P,r,eps') --
        transfer_ctx: Dict[tuple, tuple] = {}
        transfer_memo: Dict[tuple, Tuple[Term, ...]] = {}

        def ctx(a_match: Match, b_match: Match, r: int):
            key = (a_match, b_match, r)
            hit = transfer_ctx.get(key)
            if hit is not None:
                return hit
            fpiece = _cycles_of(a_match, b_match)
            rho_arc_of = {}
            for k, (x, y) in enumerate(rho[r]):
                rho_arc_of[x] = k
                rho_arc_of[y] = k

            def sheet_of_prim(prim):
                kind, key2 = prim
                if kind == "A":
                    return ("F", fpiece[key2[0]])
                return ("RID", key2)

            src_arcs, src_circ = traced(a_match, r)
            tgt_arcs, tgt_circ = traced(b_match, r)
            src_m = tuple(sorted(ep for ep, _ in src_arcs))
            tgt_m = tuple(sorted(ep for ep, _ in tgt_arcs))
            res_piece = _cycles_of(src_m, tgt_m)
            result: Dict[int, object] = {}
            for ep, prims in src_arcs:
                result.setdefault(res_piece[ep[0]], sheet_of_prim(prims[0]))
            for ep, prims in tgt_arcs:
                result.setdefault(res_piece[ep[0]], sheet_of_prim(prims[0]))
            rp = tuple(result.items())
            base_sheets = frozenset(("F", p) for p in fpiece.values()) | frozenset(
                ("RID", k) for k in range(len(rho[r]))
            )
            gl = tuple(
                (
                    ("F", fpiece[x]) if x in fpiece else ("RID", rho_arc_of[x]),
                    ("F", fpiece[y]) if y in fpiece else ("RID", rho_arc_of[y]),
                )
                for x, y in conn_pairs
            )
            src_caps = tuple(
                (("CUP", k), frozenset(sheet_of_prim(p) for p in prims))
                for k, (_low, prims) in enumerate(src_circ)
            )
            tgt_caps = tuple(
                (("CAP", k), frozenset(sheet_of_prim(p) for p in prims))
                for k, (_low, prims) in enumerate(tgt_circ)
            )
            val = (fpiece, rp, base_sheets, gl, src_caps, tgt_caps)
            transfer_ctx[key] = val
            return val

        def transfer_terms(
            a_match: Match, b_match: Match, r: int, term: Term, eps_s, eps_t
        ) -> Tuple[Term, ...]:
            key = (a_match, b_match, r, term, eps_s, eps_t)
            hit = transfer_memo.get(key)
            if hit is not None:
                return hit
            fpiece, rp, base_sheets, gl, src_caps, tgt_caps = ctx(a_match, b_match, r)
            caps = []
            for k, (cid, touched) in enumerate(src_caps):
                caps.append((cid, 1 if eps_s[k] == -1 else 0, touched))
            for k, (cid, touched) in enumerate(tgt_caps):
                caps.append((cid, 1 if eps_t[k] == 1 else 0, touched))
            dots = {pid: 0 for pid in base_sheets}
            for q2 in term:
                dots[("F", q2)] += 1
            out = tuple(_evaluate(dots, gl, caps, rp))
            transfer_memo[key] = out
            return out

        for (si, ti), mor in sorted(self.diff.items()):
            o, p = self.objs[si], self.objs[ti]
            for r in (0, 1):
                _, src_circ = traced(o.match, r)
                _, tgt_circ = traced(p.match, r)
                for eps_s in product((1, -1), repeat=len(src_circ)):
                    for eps_t in product((1, -1), repeat=len(tgt_circ)):
                        acc: Morphism = set()
                        for term in mor:
                            _xor_in(
                                acc,
                                transfer_terms(
                                    o.match, p.match, r, term, eps_s, eps_t
                                ),
                            )
                        if acc:
                            add_entry(
                                new_index[(si, r, eps_s)],
                                new_index[(ti, r, eps_t)],
                                acc,
                            )

        self.objs = new_objs
        self.diff = new_diff
        self.frontier = (self.frontier - set(conn)) | (slots - set(conn))
        self.eliminate()

    # -- Gaussian elimination ---------------------------------------------

    def _is_iso(self, key: Tuple[int, int]) -> bool:
        si, ti = key
        mor = self.diff.get(key)
        if mor is None or si not in self.objs or ti not in self.objs:
            return False
        s, t = self.objs[si], self.objs[ti]
        return s.match == t.match and s.q == t.q and frozenset() in mor

    def eliminate(self) -> None:
        out_adj: Dict[int, Set[int]] = {}
        in_adj: Dict[int, Set[int]] = {}
        for si, ti in self.diff:
            out_adj.setdefault(si, set()).add(ti)
            in_adj.setdefault(ti, set()).add(si)
        candidates: Set[Tuple[int, int]] = {
            k for k in self.diff if self._is_iso(k)
        }

        def set_entry(key: Tuple[int, int], mor: Morphism) -> None:
            si, ti = key
            if mor:
                self.diff[key] = mor
                out_adj.setdefault(si, set()).add(ti)
                in_adj.setdefault(ti, set()).add(si)
                if self._is_iso(key):
                    candidates.add(key)
                else:
                    candidates.discard(key)
            elif key in self.diff:
                del self.diff[key]
                out_adj[si].discard(ti)
                in_adj[ti].discard(si)
                candidates.discard(key)

        while candidates:
            best = min(
                candidates,
                key=lambda k: (
                    (len(in_adj.get(k[1], ())) - 1)
                    * (len(out_adj.get(k[0], ())) - 1),
                    k,
                ),
            )
            candidates.discard(best)
            if not self._is_iso(best):
                continue
            si, ti = best
            match = self.objs[si].match
            f = self.diff.pop(best)
            out_adj[si].discard(ti)
            in_adj[ti].discard(si)
            f_inv = _invert(match, f)
            ins = sorted(s2 for s2 in in_adj.get(ti, ()) if s2 != si)
            outs = sorted(t2 for t2 in out_adj.get(si, ()) if t2 != ti)
            for s2 in ins:
                g = self.diff[(s2, ti)]
                a_match = self.objs[s2].match
                left = compose(a_match, match, match, g, f_inv)
                if not left:
                    continue
                for t2 in outs:
                    e = self.diff[(si, t2)]
                    c_match = self.objs[t2].match
                    upd = compose(a_match, match, c_match, left, e)
                    if not upd:
                        continue
                    key = (s2, t2)
                    m = self.diff.get(key, set())
                    _xor_in(m, upd)
                    set_entry(key, m)
            for s2 in list(in_adj.get(ti, ())):
                set_entry((s2, ti), set())
            for t2 in list(out_adj.get(si, ())):
                set_entry((si, t2), set())
            for t2 in list(out_adj.get(ti, ())):
                set_entry((ti, t2), set())
            for s2 in list(in_adj.get(si, ())):
                set_entry((s2, si), set())
            del self.objs[si], self.objs[ti]

    # -- output ------------------------------------------------------------

    def ranks(self) -> Dict[Tuple[int, int], int]:
        if self.diff:
            raise AssertionError("scan finished with a nonzero differential")
        out: Dict[Tuple[int, int], int] = {}
        for o in self.objs.values():
            if o.match:
                raise AssertionError("scan finished with nonempty frontier matching")
            out[(o.h, o.q)] = out.get((o.h, o.q), 0) + 1
        return out


def _scan_cap() -> int:
    return int(os.environ.get("KHOBS_SCAN_CAP", DEFAULT_SCAN_CAP))


def scan_unreduced_table(
    d: PlanarDiagram, capacity: Optional[int] = None
) -> Dict[Tuple[int, int], int]:
    """Unreduced ranks keyed by internal (i, j)."""
    od = orient(d)
    cx = _Complex(cap=capacity if capacity is not None else _scan_cap())
    for ci in range(len(d.crossings)):
        cx.glue_crossing(d, ci)
    raw = cx.ranks()
    table: Dict[Tuple[int, int], int] = {}
    for (h, q), rk in raw.items():
        i = h - od.n_minus
        j = q + od.n_plus - 2 * od.n_minus
        table[(i, j)] = table.get((i, j), 0) + rk
    loops = d.free_loops if d.crossings else d.free_loops - 1
    if not d.crossings:
        table = {(0, 1): 1, (0, -1): 1}
    for _ in range(loops):
        new: Dict[Tuple[int, int], int] = {}
        for (i, j), rk in table.items():
            for dj in (1, -1):
                new[(i, j + dj)] = new.get((i, j + dj), 0) + rk
        table = new
    return table


def scan_reduced_table(
    d: PlanarDiagram, capacity: Optional[int] = None
) -> Dict[Tuple[int, int], int]:
    """Reduced ranks keyed by internal (i, j_reduced), via exact division.

    Over GF(2) the unreduced homology is the reduced one tensored with the
    rank-2 algebra, so each homological degree divides exactly by (q + 1/q).
    """
    unred = scan_unreduced_table(d, capacity=capacity)
    by_i: Dict[int, Dict[int, int]] = {}
    for (i, j), rk in unred.items():
        by_i.setdefault(i, {})[j] = rk
    table: Dict[Tuple[int, int], int] = {}
    for i, poly in by_i.items():
        rem = dict(poly)
        while rem:
            jmax = max(rem)
            c = rem.pop(jmax)
            if c <= 0:
                raise AssertionError("unreduced table does not divide by q + 1/q")
            jq = jmax - 1
            table[(i, jq)] = table.get((i, jq), 0) + c
            lower = jq - 1
            got = rem.get(lower, 0) - c
            if got < 0:
                raise AssertionError("unreduced table does not divide by q + 1/q")
            if got:
                rem[lower] = got
            elif lower in rem:
                del rem[lower]
    return table
