"""Text formats for link diagrams and tangles, plus the bundled corpus.

Three file kinds are recognized by their first non-comment line:

``pd``
    Closed diagram as a PD code.  Header lines ``convention: under-first``
    (required), ``basepoint: LABEL`` and ``loops: K`` (optional), then one
    crossing per line: four edge labels in counterclockwise cyclic order
    starting from an understrand.

``braid``
    One line ``braid S: k1 k2 ... kn`` closing a braid word on S strands
    (letter k crosses strands |k|, |k|+1; positive letters cross over).

``tangle``
    Header ``tangle`` with optional ``name:``, ``c_M:``, ``lambda_M:`` and
    ``provenance:`` lines, then one constructor stanza: ``trivial``,
    ``pretzel-strip A B``, ``braidcut S pair P`` (with ``pre:``/``post:``
    letter lines), or ``pd-boundary: NW NE SW SE`` followed by PD crossing
    lines in which the four boundary labels each appear once.

See docs/FORMATS.md for the full grammar with examples.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .diagram import BraidWord, Crossing, PlanarDiagram, braid_closure
from .slopes import STANDARD_KNOT_SYSTEM, SlopeSystem
from .tangle import Tangle, braidcut_tangle, pretzel_strip_tangle, trivial_tangle

__all__ = [
    "FormatError",
    "TangleSpec",
    "parse_link",
    "parse_tangle",
    "format_pd",
    "load_link",
    "load_tangle",
    "corpus_dir",
    "corpus_names",
]


class FormatError(ValueError):
    """Raised when an input file does not match the documented grammar."""


@dataclass(frozen=True)
class TangleSpec:
    """A parsed tangle file: the tangle plus its filling arithmetic data."""

    tangle: Tangle
    system: SlopeSystem = STANDARD_KNOT_SYSTEM
    provenance: Optional[str] = None


# ---------------------------------------------------------------------------
# low-level line handling
# ---------------------------------------------------------------------------


def _lines(text: str) -> List[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _ints(s: str, what: str) -> List[int]:
    try:
        return [int(tok) for tok in s.split()]
    except ValueError as e:
        raise FormatError(f"bad integer in {what}: {s!r}") from e


# ---------------------------------------------------------------------------
# PD codes
# ---------------------------------------------------------------------------


def _pd_rows(lines: List[str]) -> List[List[int]]:
    rows = []
    for line in lines:
        row = _ints(line, "PD crossing line")
        if len(row) != 4:
            raise FormatError(f"PD crossing line needs 4 labels: {line!r}")
        rows.append(row)
    return rows


def _build_pd(
    rows: List[List[int]], basepoint_label: object, loops: int
) -> PlanarDiagram:
    """Closed diagram from PD rows; every label must appear exactly twice.

    ``basepoint_label`` is an edge label, the string "loop" (marking a free
    loop component), or None for the default (lowest edge label).
    """
    crossings = []
    slots_of_label: Dict[int, List[int]] = {}
    for ci, row in enumerate(rows):
        hs = tuple(4 * ci + k for k in range(4))
        crossings.append(Crossing(halfedges=hs, over=1))
        for k, label in enumerate(row):
            slots_of_label.setdefault(label, []).append(hs[k])
    edges = []
    basepoint = None
    for label in sorted(slots_of_label):
        ends = slots_of_label[label]
        if len(ends) != 2:
            raise FormatError(
                f"edge label {label} appears {len(ends)} times; expected 2"
            )
        edges.append((ends[0], ends[1]))
        if label == basepoint_label:
            basepoint = ends[0]
    if basepoint_label == "loop":
        if loops < 1:
            raise FormatError("'basepoint: loop' requires a positive loop count")
    elif basepoint_label is not None and basepoint is None:
        raise FormatError(f"basepoint label {basepoint_label} not present")
    elif basepoint is None and (edges or loops == 0):
        basepoint = edges[0][0] if edges else None
    return PlanarDiagram(
        crossings=tuple(crossings),
        edges=tuple(edges),
        basepoint=basepoint,
        free_loops=loops,
    )


def parse_link(text: str) -> PlanarDiagram:
    """Parse a ``pd`` or ``braid`` file into a closed diagram."""
    lines = _lines(text)
    if not lines:
        raise FormatError("empty input")
    head = lines[0]
    if head.startswith("braid"):
        if len(lines) != 1:
            raise FormatError("braid files hold a single line")
        body = head[len("braid") :].strip()
        if ":" not in body:
            raise FormatError("braid line needs 'braid S: letters'")
        s_part, letters_part = body.split(":", 1)
        strands = _ints(s_part, "braid strand count")
        if len(strands) != 1:
            raise FormatError("braid line needs one strand count")
        letters = _ints(letters_part, "braid letters")
        try:
            return braid_closure(BraidWord(strands[0], tuple(letters)))
        except ValueError as e:
            raise FormatError(str(e)) from e
    if head != "pd":
        raise FormatError(f"unknown link header {head!r}")
    basepoint_label: object = None
    loops = 0
    convention = None
    body_rows: List[str] = []
    for line in lines[1:]:
        if line.startswith("convention:"):
            convention = line.split(":", 1)[1].strip()
        elif line.startswith("basepoint:"):
            tok = line.split(":", 1)[1].strip()
            if tok == "loop":
                basepoint_label = "loop"
            else:
                (basepoint_label,) = _ints(tok, "basepoint")
        elif line.startswith("loops:"):
            (loops,) = _ints(line.split(":", 1)[1], "loops")
        else:
            body_rows.append(line)
    if convention != "under-first":
        raise FormatError("pd files require 'convention: under-first'")
    try:
        return _build_pd(_pd_rows(body_rows), basepoint_label, loops)
    except ValueError as e:
        if isinstance(e, FormatError):
            raise
        raise FormatError(str(e)) from e


def format_pd(d: PlanarDiagram) -> str:
    """Render a closed diagram as a ``pd`` file.

    The unoriented diagram round-trips exactly.  PD files carry no component
    orientations, and the deterministic orientation chosen while parsing can
    differ from the one chosen for ``d``; for links of several components
    this shifts the absolute (delta, q) gradings of reduced homology by the
    usual reorientation rule, while ranks, width and determinant agree.
    """
    if not d.is_closed():
        raise FormatError("format_pd needs a closed diagram")
    label_of: Dict[int, int] = {}
    for label, (a, b) in enumerate(sorted(d.edges), start=1):
        label_of[a] = label_of[b] = label
    out = ["pd", "convention: under-first"]
    if d.basepoint is not None:
        out.append(f"basepoint: {label_of[d.basepoint]}")
    elif d.free_loops:
        out.append("basepoint: loop")
    if d.free_loops:
        out.append(f"loops: {d.free_loops}")
    for c in d.crossings:
        u = (c.over + 1) % 2
        row = [label_of[c.halfedges[(u + k) % 4]] for k in range(4)]
        out.append(" ".join(str(x) for x in row))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# tangles
# ---------------------------------------------------------------------------


def _pd_boundary_tangle(
    corners: List[int], rows: List[List[int]], name: Optional[str]
) -> Tangle:
    if len(corners) != 4 or len(set(corners)) != 4:
        raise FormatError("pd-boundary needs 4 distinct corner labels")
    crossings = []
    slots_of_label: Dict[int, List[int]] = {}
    for ci, row in enumerate(rows):
        hs = tuple(4 * ci + k for k in range(4))
        crossings.append(Crossing(halfedges=hs, over=1))
        for k, label in enumerate(row):
            slots_of_label.setdefault(label, []).append(hs[k])
    edges = []
    fresh = 4 * len(rows)
    corner_he: Dict[int, int] = {}
    for label in sorted(slots_of_label):
        ends = slots_of_label[label]
        if label in corners:
            if len(ends) != 1:
                raise FormatError(f"boundary label {label} must appear once")
            edges.append((ends[0], fresh))
            corner_he[label] = fresh
            fresh += 1
        elif len(ends) == 2:
            edges.append((ends[0], ends[1]))
        else:
            raise FormatError(
                f"edge label {label} appears {len(ends)} times; expected 2"
            )
    nw, ne, sw, se = (corner_he[c] for c in corners)
    d = PlanarDiagram(
        crossings=tuple(crossings),
        edges=tuple(edges),
        boundary=(nw, ne, sw, se),
    )
    return Tangle(diagram=d, nw=nw, ne=ne, sw=sw, se=se, name=name)


def parse_tangle(text: str) -> TangleSpec:
    """Parse a ``tangle`` file."""
    lines = _lines(text)
    if not lines or lines[0] != "tangle":
        raise FormatError("tangle files start with a 'tangle' line")
    name: Optional[str] = None
    c_m = 1
    lambda_m = (0, 1)
    provenance: Optional[str] = None
    fields = {"pre": None, "post": None}
    body: List[str] = []
    for line in lines[1:]:
        key = line.split(":", 1)[0] if ":" in line else None
        if key == "name":
            name = line.split(":", 1)[1].strip()
        elif key == "c_M":
            (c_m,) = _ints(line.split(":", 1)[1], "c_M")
        elif key == "lambda_M":
            vals = _ints(line.split(":", 1)[1], "lambda_M")
            if len(vals) != 2:
                raise FormatError("lambda_M needs two integers")
            lambda_m = (vals[0], vals[1])
        elif key == "provenance":
            provenance = line.split(":", 1)[1].strip()
        elif key in fields:
            fields[key] = tuple(_ints(line.split(":", 1)[1], key))
        else:
            body.append(line)
    try:
        system = SlopeSystem(lambda_M=lambda_m, c_M=c_m)
    except ValueError as e:
        raise FormatError(str(e)) from e
    if not body:
        raise FormatError("tangle file needs a constructor stanza")
    head, args = body[0].split()[0], body[0].split()[1:]
    try:
        if head == "trivial":
            t = trivial_tangle()
            if name:
                t = Tangle(diagram=t.diagram, nw=t.nw, ne=t.ne, sw=t.sw,
                           se=t.se, name=name)
        elif head == "pretzel-strip":
            if len(args) != 2:
                raise FormatError("pretzel-strip needs two integers")
            t = pretzel_strip_tangle(int(args[0]), int(args[1]), name=name)
        elif head == "braidcut":
            if len(args) != 3 or args[1] != "pair":
                raise FormatError("braidcut stanza is 'braidcut S pair P'")
            t = braidcut_tangle(
                int(args[0]),
                fields["pre"] or (),
                fields["post"] or (),
                pair=int(args[2]),
                name=name,
            )
        elif head == "pd-boundary:":
            corners = [int(a) for a in args]
            t = _pd_boundary_tangle(corners, _pd_rows(body[1:]), name)
        else:
            raise FormatError(f"unknown tangle constructor {head!r}")
    except FormatError:
        raise
    except ValueError as e:
        raise FormatError(str(e)) from e
    return TangleSpec(tangle=t, system=system, provenance=provenance)


# ---------------------------------------------------------------------------
# corpus resolution
# ---------------------------------------------------------------------------

_LINK_EXTS = (".pd", ".braid")
_TANGLE_EXT = ".tangle"


def corpus_dir() -> Path:
    override = os.environ.get("KHOBS_CORPUS")
    if override:
        return Path(override)
    return Path(__file__).resolve().parents[2] / "corpus"


def corpus_names() -> List[str]:
    d = corpus_dir()
    if not d.is_dir():
        return []
    return sorted(
        {p.stem for p in d.iterdir() if p.suffix in _LINK_EXTS + (_TANGLE_EXT,)}
    )


def _resolve(arg: str, exts: Tuple[str, ...]) -> Path:
    if arg.startswith("corpus:"):
        stem = arg[len("corpus:") :]
        for ext in exts:
            p = corpus_dir() / (stem + ext)
            if p.is_file():
                return p
        raise FormatError(
            f"no corpus fixture {stem!r} with extension in {exts}; "
            f"available: {', '.join(corpus_names())}"
        )
    p = Path(arg)
    if not p.is_file():
        raise FormatError(f"no such file: {arg}")
    return p


def load_link(arg: str) -> PlanarDiagram:
    """Load a closed diagram from a path or ``corpus:NAME``."""
    return parse_link(_resolve(arg, _LINK_EXTS).read_text())


def load_tangle(arg: str) -> TangleSpec:
    """Load a tangle from a path or ``corpus:NAME``."""
    return parse_tangle(_resolve(arg, (_TANGLE_EXT,)).read_text())
