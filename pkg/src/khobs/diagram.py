"""Planar link diagrams as half-edge combinatorial maps.

A diagram is a 4-valent map: each crossing records its four half-edges in
counterclockwise order together with an over/under flag, and edges pair
half-edges.  Crossing-free circle components are counted separately in
``free_loops``.  Slot conventions for a crossing built from a braid letter:

    slot 0 = NW (in, upper strand)     slot 3 = NE (out, upper)
    slot 1 = SW (in, lower strand)     slot 2 = SE (out, lower)

so slots appear in counterclockwise order NW, SW, SE, NE.  The strand
entering at slot k leaves at slot k+2.  The ``over`` flag o means the strand
through slots (o, o+2) passes over the other one.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "Crossing",
    "PlanarDiagram",
    "OrientedDiagram",
    "BraidWord",
    "braid_closure",
    "orient",
    "resolve",
    "mirror",
    "count_components",
]


class DiagramError(ValueError):
    """Raised for structurally invalid diagram input."""


@dataclass(frozen=True)
class Crossing:
    """One crossing: four half-edge ids in counterclockwise order plus over flag."""

    halfedges: Tuple[int, int, int, int]
    over: int  # 0 or 1: the strand through slots (over, over+2) is the overstrand

    def __post_init__(self) -> None:
        if self.over not in (0, 1):
            raise DiagramError(f"over flag must be 0 or 1, got {self.over}")
        if len(set(self.halfedges)) != 4:
            raise DiagramError(f"crossing half-edges must be distinct: {self.halfedges}")

    def slot(self, halfedge: int) -> int:
        return self.halfedges.index(halfedge)


def _edge_key(a: int, b: int) -> Tuple[int, int]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class PlanarDiagram:
    """An unoriented link (or tangle) diagram.

    Parameters
    ----------
    crossings : tuple of Crossing
    edges : tuple of (int, int)
        Each pair joins two half-edges; every half-edge of every crossing
        appears in exactly one pair, except declared boundary half-edges.
    basepoint : int or None
        Half-edge carrying the reduced-homology marked point; None puts the
        basepoint on a free loop (or leaves it unset for tangles).
    free_loops : int
        Number of crossing-free circle components.
    boundary : tuple of int
        Free half-edges (empty for closed diagrams; 4 for a tangle).
    """

    crossings: Tuple[Crossing, ...]
    edges: Tuple[Tuple[int, int], ...]
    basepoint: Optional[int] = None
    free_loops: int = 0
    boundary: Tuple[int, ...] = ()
    label: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(
            self, "edges", tuple(sorted(_edge_key(a, b) for a, b in self.edges))
        )
        object.__setattr__(self, "boundary", tuple(self.boundary))
        self._validate()

    # -- structural accessors -------------------------------------------------

    @property
    def mate(self) -> Dict[int, int]:
        try:
            return self._mate  # type: ignore[attr-defined]
        except AttributeError:
            m: Dict[int, int] = {}
            for a, b in self.edges:
                m[a] = b
                m[b] = a
            object.__setattr__(self, "_mate", m)
            return m

    @property
    def slot_of(self) -> Dict[int, Tuple[int, int]]:
        """Map half-edge -> (crossing index, slot)."""
        try:
            return self._slot_of  # type: ignore[attr-defined]
        except AttributeError:
            s: Dict[int, Tuple[int, int]] = {}
            for ci, c in enumerate(self.crossings):
                for k, h in enumerate(c.halfedges):
                    s[h] = (ci, k)
            object.__setattr__(self, "_slot_of", s)
            return s

    def is_closed(self) -> bool:
        return not self.boundary

    def _validate(self) -> None:
        slot_halfedges: List[int] = []
        for c in self.crossings:
            slot_halfedges.extend(c.halfedges)
        if len(set(slot_halfedges)) != len(slot_halfedges):
            raise DiagramError("a half-edge appears in two crossing slots")
        edge_halfedges: List[int] = []
        for a, b in self.edges:
            if a == b:
                raise DiagramError(f"degenerate edge ({a},{a})")
            edge_halfedges.extend((a, b))
        if len(set(edge_halfedges)) != len(edge_halfedges):
            raise DiagramError("a half-edge appears in two edge pairings")
        slots = set(slot_halfedges)
        paired = set(edge_halfedges)
        bd = set(self.boundary)
        if len(bd) != len(self.boundary):
            raise DiagramError("repeated boundary half-edge")
        if slots - paired - bd:
            raise DiagramError(f"unpaired half-edges: {sorted(slots - paired - bd)}")
        if bd & slots:
            raise DiagramError("boundary half-edges may not sit in crossing slots")
        if not bd - paired == bd:
            # boundary half-edges are paired into the diagram through one edge
            pass
        for h in paired - slots:
            if h not in bd and not self._is_bare_arc_end(h, slots, bd):
                raise DiagramError(f"half-edge {h} paired but not on a crossing or boundary")
        if self.basepoint is not None and self.basepoint not in paired:
            raise DiagramError("basepoint must lie on an existing edge")
        if self.free_loops < 0:
            raise DiagramError("free_loops must be non-negative")
        if self.is_closed() and self.crossings:
            self._check_planarity()

    @staticmethod
    def _is_bare_arc_end(h: int, slots: set, bd: set) -> bool:
        # An edge may join two boundary half-edges directly (a crossing-free
        # tangle strand); any other non-slot half-edge is invalid.
        return h in bd

    # -- combinatorial map ----------------------------------------------------

    def face_orbits(self) -> List[Tuple[int, ...]]:
        """Faces of the map as orbits of darts (closed diagrams only)."""
        if not self.is_closed():
            raise DiagramError("faces are defined for closed diagrams")
        mate = self.mate
        slot_of = self.slot_of
        darts = sorted(slot_of)
        seen = set()
        orbits: List[Tuple[int, ...]] = []
        for start in darts:
            if start in seen:
                continue
            orbit = []
            h = start
            while h not in seen:
                seen.add(h)
                orbit.append(h)
                ci, k = slot_of[mate[h]]
                h = self.crossings[ci].halfedges[(k + 1) % 4]
            orbits.append(tuple(orbit))
        return orbits

    def _graph_components(self) -> int:
        if not self.crossings:
            return 0
        parent = list(range(len(self.crossings)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        slot_of = self.slot_of
        for a, b in self.edges:
            if a in slot_of and b in slot_of:
                ra, rb = find(slot_of[a][0]), find(slot_of[b][0])
                if ra != rb:
                    parent[ra] = rb
        return len({find(i) for i in range(len(self.crossings))})

    def _check_planarity(self) -> None:
        v = len(self.crossings)
        e = len(self.edges)
        f = len(self.face_orbits())
        k = self._graph_components()
        if v - e + f != 2 * k:
            raise DiagramError(
                f"non-planar combinatorial map: V-E+F = {v}-{e}+{f} != 2*{k}"
            )

    # -- convenience ----------------------------------------------------------

    def with_label(self, label: str) -> "PlanarDiagram":
        return replace(self, label=label)

    def with_basepoint(self, basepoint: Optional[int]) -> "PlanarDiagram":
        return replace(self, basepoint=basepoint)


@dataclass(frozen=True)
class OrientedDiagram:
    """A PlanarDiagram with a chosen orientation and crossing signs."""

    diagram: PlanarDiagram
    directions: Tuple[Tuple[int, int], ...]  # (tail half-edge, head half-edge) per edge
    signs: Tuple[int, ...]
    n_plus: int
    n_minus: int

    @property
    def head_of(self) -> Dict[Tuple[int, int], int]:
        return {_edge_key(t, h): h for t, h in self.directions}


@dataclass(frozen=True)
class BraidWord:
    """A braid word on ``strands`` strands; letter k>0 is sigma_k, k<0 its inverse."""

    strands: int
    letters: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.strands < 1:
            raise DiagramError("strands must be positive")
        for k in self.letters:
            if k == 0 or abs(k) >= self.strands:
                raise DiagramError(f"letter {k} invalid for {self.strands} strands")

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-k for k in self.letters))


def braid_closure(word: BraidWord) -> PlanarDiagram:
    """Trace closure of a braid word: strand i at the end rejoins strand i at the start.

    The basepoint is placed on the closure arc of strand 1.
    """
    s = word.strands
    crossings: List[Crossing] = []
    edges: List[Tuple[int, int]] = []
    pending: List[Optional[int]] = [None] * s
    first_in: List[Optional[int]] = [None] * s

    for ci, k in enumerate(word.letters):
        p = abs(k) - 1  # upper strand position, 0-indexed
        h = [4 * ci + t for t in range(4)]  # NW, SW, SE, NE
        for pos, slot_in in ((p, 0), (p + 1, 1)):
            if pending[pos] is None:
                first_in[pos] = h[slot_in]
            else:
                edges.append((pending[pos], h[slot_in]))
        pending[p] = h[3]
        pending[p + 1] = h[2]
        crossings.append(Crossing(tuple(h), over=0 if k > 0 else 1))

    free_loops = 0
    basepoint: Optional[int] = None
    for pos in range(s):
        if pending[pos] is None:
            free_loops += 1
        else:
            edges.append((pending[pos], first_in[pos]))
            if pos == 0:
                basepoint = first_in[pos]
    if basepoint is None and free_loops == 0 and edges:
        basepoint = edges[0][0]
    return PlanarDiagram(
        crossings=tuple(crossings),
        edges=tuple(edges),
        basepoint=basepoint,
        free_loops=free_loops,
    )


def _strand_components(d: PlanarDiagram) -> List[List[int]]:
    """Link components as ordered lists of half-edges (closed diagrams only).

    Each component is a cyclic sequence h0, mate(h0), next-through-crossing, ...
    starting from its smallest half-edge, recorded as the sequence of
    "departing" half-edges (tails) along the traversal.
    """
    mate = d.mate
    slot_of = d.slot_of
    seen = set()
    comps: List[List[int]] = []
    for start in sorted(mate):
        if start in seen:
            continue
        comp = []
        h = start
        while h not in seen:
            seen.add(h)
            comp.append(h)
            m = mate[h]
            seen.add(m)
            if m not in slot_of:  # boundary stub: open strand, stop here
                break
            ci, k = slot_of[m]
            h = d.crossings[ci].halfedges[(k + 2) % 4]
        comps.append(comp)
    return comps


def count_components(d: PlanarDiagram) -> int:
    """Number of link components (strand tracing plus free loops)."""
    return len(_strand_components(d)) + d.free_loops


def orient(
    d: PlanarDiagram, flip_components: Iterable[int] = ()
) -> OrientedDiagram:
    """Deterministic orientation and crossing signs.

    Components are traversed in order of their smallest half-edge, oriented
    away from it; ``flip_components`` reverses the listed component indices.
    """
    if not d.is_closed():
        raise DiagramError("orient requires a closed diagram")
    flips = set(flip_components)
    mate = d.mate
    slot_of = d.slot_of
    directions: List[Tuple[int, int]] = []
    out_halfedges = set()  # half-edges that are tails (strand departs through them)
    for idx, comp in enumerate(_strand_components(d)):
        tails = comp if idx not in flips else [mate[h] for h in reversed(comp)]
        for t in tails:
            directions.append((t, mate[t]))
            out_halfedges.add(t)

    signs: List[int] = []
    n_plus = n_minus = 0
    for c in d.crossings:
        o = c.over
        over_out = o if c.halfedges[o] in out_halfedges else o + 2
        under_out = (o + 1) if c.halfedges[(o + 1) % 4] in out_halfedges else o + 3
        sign = 1 if (under_out - over_out) % 4 == 1 else -1
        signs.append(sign)
        if sign > 0:
            n_plus += 1
        else:
            n_minus += 1
    return OrientedDiagram(
        diagram=d,
        directions=tuple(directions),
        signs=tuple(signs),
        n_plus=n_plus,
        n_minus=n_minus,
    )


def _smoothing_pairs(c: Crossing, r: int) -> List[Tuple[int, int]]:
    """Half-edge pairs joined by the r-smoothing of crossing c.

    The 0-smoothing merges the two regions swept by rotating the overstrand
    counterclockwise onto the understrand (Kauffman A-smoothing); for a
    positive braid letter this is the strand-preserving smoothing.
    """
    o = c.over
    if r == 0:
        idx = [(o % 4, (o + 3) % 4), ((o + 1) % 4, (o + 2) % 4)]
    elif r == 1:
        idx = [(o % 4, (o + 1) % 4), ((o + 2) % 4, (o + 3) % 4)]
    else:
        raise DiagramError(f"resolution must be 0 or 1, got {r}")
    return [(c.halfedges[i], c.halfedges[j]) for i, j in idx]


def resolve(d: PlanarDiagram, crossing_id: int, r: int) -> PlanarDiagram:
    """Replace one crossing by its r-smoothing."""
    if not 0 <= crossing_id < len(d.crossings):
        raise DiagramError(f"invalid crossing id {crossing_id}")
    c = d.crossings[crossing_id]
    mate = dict(d.mate)
    loops = d.free_loops
    removed = set(c.halfedges)
    for x, y in _smoothing_pairs(c, r):
        a, b = mate.pop(x), mate.pop(y)
        if a == y:  # the smoothing arc closes up with a loop edge
            loops += 1
            continue
        del mate[a], mate[b]
        mate[a] = b
        mate[b] = a

    basepoint = d.basepoint
    if basepoint is not None and basepoint not in mate:
        old_mate = d.mate[basepoint]
        if old_mate in mate:
            basepoint = old_mate
        else:
            basepoint = min(mate) if mate else None

    edges = tuple({_edge_key(a, b) for a, b in mate.items()})
    crossings = tuple(cc for i, cc in enumerate(d.crossings) if i != crossing_id)
    return PlanarDiagram(
        crossings=crossings,
        edges=edges,
        basepoint=basepoint,
        free_loops=loops,
        boundary=d.boundary,
    )


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    """Toggle every crossing's over/under flag."""
    crossings = tuple(Crossing(c.halfedges, 1 - c.over) for c in d.crossings)
    return replace(d, crossings=crossings)
