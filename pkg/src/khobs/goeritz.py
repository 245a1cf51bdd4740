"""Checkerboard colorings, Goeritz matrices, signature and determinant.

A closed connected diagram's complementary regions are two-colored so that
regions sharing an edge get opposite colors.  The Goeritz matrix is built on
the white regions R_1..R_n (discarding R_0) from per-crossing incidence
numbers mu(c); the link signature is signature(G) - mu(L) where mu(L) sums
mu(c) over type II crossings.  All arithmetic is exact.

Crossings incident to a single white region are removed beforehand by
reducing Reidemeister-1 moves; diagrams still violating the condition are
rejected.  Disconnected diagrams are handled split-component-wise: signatures
add, determinants multiply, with a crossingless split component forcing
determinant zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .diagram import DiagramError, PlanarDiagram, orient, resolve, _smoothing_pairs

__all__ = [
    "Coloring",
    "GoeritzData",
    "checkerboard",
    "goeritz",
    "signature",
    "determinant",
]


@dataclass(frozen=True)
class Coloring:
    """A checkerboard coloring of a closed connected diagram.

    ``faces`` are dart orbits; ``colors[f]`` is "black" or "white";
    ``white_regions`` lists white face indices, R_0 first.
    """

    diagram: PlanarDiagram
    faces: Tuple[Tuple[int, ...], ...]
    colors: Tuple[str, ...]
    white_regions: Tuple[int, ...]

    @property
    def face_of(self) -> Dict[int, int]:
        try:
            return self._face_of  # type: ignore[attr-defined]
        except AttributeError:
            fo = {h: i for i, orbit in enumerate(self.faces) for h in orbit}
            object.__setattr__(self, "_face_of", fo)
            return fo

    def corner_face(self, ci: int, k: int) -> int:
        """Face filling the corner between slots k and k+1 of crossing ci."""
        c = self.diagram.crossings[ci]
        return self.face_of[c.halfedges[(k + 1) % 4]]


@dataclass(frozen=True)
class GoeritzData:
    matrix: Tuple[Tuple[int, ...], ...]
    mu: Tuple[int, ...]  # incidence number per crossing
    types: Tuple[str, ...]  # "I" or "II" per crossing
    mu_L: int
    sigma_G: int
    det_G: int


# ---------------------------------------------------------------------------
# Reidemeister-1 reduction
# ---------------------------------------------------------------------------


def _kink_crossing(d: PlanarDiagram) -> Optional[Tuple[int, int]]:
    """A crossing with a loop edge between adjacent slots, if any.

    Returns (crossing index, resolution r whose smoothing removes the kink
    without creating a circle).
    """
    for ci, c in enumerate(d.crossings):
        slot = {h: k for k, h in enumerate(c.halfedges)}
        for k in range(4):
            h = c.halfedges[k]
            if d.mate.get(h) == c.halfedges[(k + 1) % 4]:
                loop = {k, (k + 1) % 4}
                for r in (0, 1):
                    pairs = _smoothing_pairs(c, r)
                    if not any({slot[a], slot[b]} == loop for a, b in pairs):
                        return ci, r
    return None


def _reduce_r1(d: PlanarDiagram) -> PlanarDiagram:
    while True:
        hit = _kink_crossing(d)
        if hit is None:
            return d
        ci, r = hit
        d = resolve(d, ci, r)


# ---------------------------------------------------------------------------
# coloring
# ---------------------------------------------------------------------------


def checkerboard(d: PlanarDiagram, dual: bool = False) -> Coloring:
    """Two-color the regions of a closed connected diagram.

    The deterministic reference face (standing in for the unbounded region)
    is colored black; ``dual=True`` swaps the colors.  Kinks are removed
    first so that every crossing meets two distinct white regions.
    """
    if not d.is_closed():
        raise DiagramError("checkerboard coloring needs a closed diagram")
    d = _reduce_r1(d)
    if not d.crossings:
        col = Coloring(diagram=d, faces=((), ()), colors=("black", "white"),
                       white_regions=(1,))
        return col
    faces = tuple(d.face_orbits())
    face_of = {h: i for i, orbit in enumerate(faces) for h in orbit}
    adj: Dict[int, set] = {i: set() for i in range(len(faces))}
    for a, b in d.edges:
        ca, cb = d.slot_of[a], d.slot_of[b]
        fa = face_of[d.crossings[ca[0]].halfedges[(ca[1] + 1) % 4]]
        fb = face_of[d.crossings[cb[0]].halfedges[(cb[1] + 1) % 4]]
        adj[fa].add(fb)
        adj[fb].add(fa)
    ref = min(range(len(faces)), key=lambda i: min(faces[i]))
    color: Dict[int, str] = {}
    first = "white" if dual else "black"
    stack = [(ref, first)]
    while stack:
        f, col_f = stack.pop()
        if f in color:
            if color[f] != col_f:
                raise DiagramError("region graph is not two-colorable")
            continue
        color[f] = col_f
        other = "white" if col_f == "black" else "black"
        for g in adj[f]:
            stack.append((g, other))
    if len(color) != len(faces):
        raise DiagramError("disconnected region graph; diagram must be connected")
    colors = tuple(color[i] for i in range(len(faces)))
    whites = tuple(
        sorted((i for i in range(len(faces)) if colors[i] == "white"),
               key=lambda i: min(faces[i]))
    )
    col = Coloring(diagram=d, faces=faces, colors=colors, white_regions=whites)
    _check_distinct_white(col)
    return col


def _white_pair(col: Coloring, ci: int) -> Tuple[int, int, int]:
    """(white corner base k, white region of corner k, of corner k+2)."""
    f = [col.corner_face(ci, k) for k in range(4)]
    c = col.colors
    if c[f[0]] == "white":
        if c[f[1]] == "white" or c[f[2]] != "white":
            raise DiagramError("corner colors do not alternate")
        return 0, f[0], f[2]
    if c[f[1]] != "white" or c[f[3]] != "white":
        raise DiagramError("corner colors do not alternate")
    return 1, f[1], f[3]


def _check_distinct_white(col: Coloring) -> None:
    for ci in range(len(col.diagram.crossings)):
        _, ra, rb = _white_pair(col, ci)
        if ra == rb:
            raise DiagramError(
                f"crossing {ci} is incident to a single white region "
                "and is not removable by Reidemeister-1 moves"
            )


# ---------------------------------------------------------------------------
# exact symmetric signature and determinant
# ---------------------------------------------------------------------------


def _sym_signature(m: Sequence[Sequence[int]]) -> int:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    alive = list(range(n))
    sig = 0
    while alive:
        piv = next((i for i in alive if a[i][i] != 0), None)
        if piv is None:
            pair = next(
                ((i, j) for ii, i in enumerate(alive) for j in alive[ii + 1 :]
                 if a[i][j] != 0),
                None,
            )
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        sig += 1 if p > 0 else -1
        alive.remove(piv)
        for i in alive:
            if a[i][piv] != 0:
                f = a[i][piv] / p
                for k in range(n):
                    a[i][k] -= f * a[piv][k]
                for k in range(n):
                    a[k][i] -= f * a[k][piv]
    return sig


def _int_det(m: Sequence[Sequence[int]]) -> int:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            for k in range(col, n):
                a[r][k] -= f * a[col][k]
    assert det.denominator == 1
    return int(det)


# ---------------------------------------------------------------------------
# Goeritz data
# ---------------------------------------------------------------------------


def goeritz(d: PlanarDiagram, col: Optional[Coloring] = None) -> GoeritzData:
    if col is None:
        col = checkerboard(d)
    d = col.diagram
    od = orient(d)
    whites = col.white_regions
    widx = {f: i for i, f in enumerate(whites)}
    n_all = len(whites)
    full = [[0] * n_all for _ in range(n_all)]
    mus: List[int] = []
    types: List[str] = []
    mu_L = 0
    for ci, c in enumerate(d.crossings):
        base, ra, rb = _white_pair(col, ci)
        u = (c.over + 1) % 2  # understrand slot base
        mu = 1 if base == u else -1
        mus.append(mu)
        ty = "II" if od.signs[ci] == mu else "I"
        types.append(ty)
        if ty == "II":
            mu_L += mu
        i, j = widx[ra], widx[rb]
        full[i][j] -= mu
        full[j][i] -= mu
    for i in range(n_all):
        full[i][i] = -sum(full[i][k] for k in range(n_all) if k != i)
    # discard R_0
    g = [[full[i][j] for j in range(1, n_all)] for i in range(1, n_all)]
    matrix = tuple(tuple(row) for row in g)
    return GoeritzData(
        matrix=matrix,
        mu=tuple(mus),
        types=tuple(types),
        mu_L=mu_L,
        sigma_G=_sym_signature(g),
        det_G=_int_det(g),
    )


# ---------------------------------------------------------------------------
# split components
# ---------------------------------------------------------------------------


def _split(d: PlanarDiagram) -> Tuple[List[PlanarDiagram], int]:
    """Connected crossing-bearing subdiagrams and the free-loop count."""
    n = len(d.crossings)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in d.edges:
        ra, rb = find(d.slot_of[a][0]), find(d.slot_of[b][0])
        if ra != rb:
            parent[ra] = rb
    groups: Dict[int, List[int]] = {}
    for ci in range(n):
        groups.setdefault(find(ci), []).append(ci)
    subs = []
    for root in sorted(groups, key=lambda r: min(groups[r])):
        cis = set(groups[root])
        crossings = tuple(d.crossings[ci] for ci in sorted(cis))
        halfedges = {h for ci in cis for h in d.crossings[ci].halfedges}
        edges = tuple(e for e in d.edges if e[0] in halfedges)
        subs.append(PlanarDiagram(crossings=crossings, edges=edges))
    return subs, d.free_loops


def signature(d: PlanarDiagram) -> int:
    """Gordon-Litherland signature; split components add, free loops give 0."""
    subs, _ = _split(d)
    total = 0
    for sub in subs:
        g = goeritz(sub)
        total += g.sigma_G - g.mu_L
    return total


def determinant(d: PlanarDiagram) -> int:
    """Link determinant |det G|; zero when a crossingless split factor exists."""
    subs, loops = _split(d)
    pieces = len(subs) + loops
    if loops and pieces >= 2:
        return 0
    prod = 1
    for sub in subs:
        prod *= abs(goeritz(sub).det_G)
    return prod
