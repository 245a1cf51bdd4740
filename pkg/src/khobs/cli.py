"""Command-line interface.

Commands: ``kh``, ``jones``, ``goeritz``, ``tau``, ``scan``, ``obstruct``,
``unknot-check``.  Inputs are file paths or ``corpus:NAME`` fixtures; see
docs/FORMATS.md for the file grammars.  Exit codes: 0 on success (verdicts
are data, not errors), 2 on parse errors, 3 on capacity overruns.  The
``KHOBS_SCAN_CAP`` environment variable sets the default scan capacity,
overridden per-run by ``--capacity``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Tuple

from .formats import FormatError, format_pd, load_link, load_tangle
from .goeritz import determinant, signature
from .khovanov import CapacityError, jones, reduced_kh, width
from .obstruct import (
    StabilityReport,
    interval_bounds,
    obstruct,
    scan_integers,
    unknot_certificate,
)
from .scan import ScanCapacityError
from .tangle import CalibrationError, Slope, tau

__all__ = ["main"]

EXIT_PARSE = 2
EXIT_CAPACITY = 3


def _parse_slope(text: str) -> Slope:
    try:
        if "/" in text:
            p_s, q_s = text.split("/", 1)
            return Slope(int(p_s), int(q_s))
        return Slope(int(text), 1)
    except ValueError as e:
        raise FormatError(f"bad slope {text!r}: expected P/Q or an integer") from e


def _parse_window(text: Optional[str]) -> Optional[Tuple[int, int]]:
    if text is None:
        return None
    try:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    except ValueError as e:
        raise FormatError(f"bad window {text!r}: expected a..b") from e
    if lo >= hi:
        raise FormatError(f"bad window {text!r}: need a < b")
    return lo, hi


def _emit_json(payload: object) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_kh(args: argparse.Namespace) -> int:
    d = load_link(args.input)
    r = reduced_kh(d, backend=args.backend, capacity=args.capacity)
    w = width(r)
    if args.format == "json":
        _emit_json(
            {
                "entries": [
                    [td, tq, rk] for (td, tq), rk in sorted(r.entries.items())
                ],
                "total_rank": r.total_rank(),
                "width": w.width,
                "column_ranks": list(w.column_ranks),
            }
        )
    else:
        print(r.ascii_grid())
        print(f"total rank: {r.total_rank()}")
        print(f"width: {w.width}  columns: {w.column_ranks}")
    return 0


def _cmd_jones(args: argparse.Namespace) -> int:
    d = load_link(args.input)
    v = jones(reduced_kh(d, backend=args.backend, capacity=args.capacity))
    if args.format == "json":
        _emit_json(
            {
                "coeffs": {str(tq): c for tq, c in sorted(v.coeffs.items())},
                "abs_at_minus_1": v.eval_minus1_abs(),
            }
        )
    else:
        print(f"V(t) = {v}")
        print(f"|V(-1)| = {v.eval_minus1_abs()}")
    return 0


def _cmd_goeritz(args: argparse.Namespace) -> int:
    d = load_link(args.input)
    det, sig = determinant(d), signature(d)
    if args.format == "json":
        _emit_json({"determinant": det, "signature": sig})
    else:
        print(f"determinant: {det}")
        print(f"signature: {sig}")
    return 0


def _cmd_tau(args: argparse.Namespace) -> int:
    spec = load_tangle(args.input)
    s = _parse_slope(args.slope)
    d = tau(spec.tangle, s)
    if args.format == "json":
        _emit_json(
            {
                "slope": [s.p, s.q],
                "crossings": len(d.crossings),
                "pd": format_pd(d),
            }
        )
    else:
        print(format_pd(d), end="")
    return 0


def _report_rows(rep: StabilityReport) -> List[dict]:
    rows = []
    for n in sorted(rep.widths):
        rows.append(
            {
                "n": n,
                "det": rep.dets[n],
                "sigma": rep.sigmas[n],
                "width": rep.widths[n],
                "columns": [rep.columns(n)[td] for td in sorted(rep.columns(n))],
            }
        )
    return rows


def _cmd_scan(args: argparse.Namespace) -> int:
    spec = load_tangle(args.input)
    rep = scan_integers(
        spec.tangle,
        window=_parse_window(args.window),
        backend=args.backend,
        capacity=args.capacity,
        system=spec.system,
    )
    if args.format == "json":
        _emit_json(
            {
                "name": rep.name,
                "offset": rep.offset,
                "window": list(rep.window),
                "rows": _report_rows(rep),
                "w_min": rep.w_min,
                "w_max": rep.w_max,
                "ell": rep.ell,
                "genericity": rep.genericity,
                "strong_generic": rep.strong_generic,
                "stabilized": rep.stabilized,
            }
        )
    else:
        print(f"tangle: {rep.name}  offset: {rep.offset}  window: {rep.window}")
        print("     n   det sigma width  columns")
        for row in _report_rows(rep):
            print(
                f"{row['n']:6d} {row['det']:5d} {row['sigma']:5d}"
                f" {row['width']:5d}  {tuple(row['columns'])}"
            )
        print(
            f"w_min: {rep.w_min}  w_max: {rep.w_max}  ell: {rep.ell}  "
            f"genericity: {rep.genericity}"
        )
        print(f"stabilized: {rep.stabilized}  strong_generic: {rep.strong_generic}")
    return 0


def _cmd_obstruct(args: argparse.Namespace) -> int:
    spec = load_tangle(args.input)
    rep = scan_integers(
        spec.tangle,
        window=_parse_window(args.window),
        backend=args.backend,
        capacity=args.capacity,
        system=spec.system,
    )
    lo, hi = rep.window
    rows = []
    # one tail interval on each side, then every interval inside the window
    for n in range(lo - 1, hi + 1):
        v = obstruct(rep, Slope(2 * n + 1, 2), mode=args.mode)
        rows.append(
            {
                "interval": [n, n + 1],
                "lower": v.lower,
                "upper": v.upper,
                "status": v.status,
                "reason": v.reason,
            }
        )
    overall = (
        "Obstructed"
        if all(r["status"] == "Obstructed" for r in rows)
        else "Inconclusive"
    )
    if args.format == "json":
        _emit_json({"mode": args.mode, "intervals": rows, "overall": overall})
    else:
        print(f"mode: {args.mode}  window: {rep.window}")
        for r in rows:
            a, b = r["interval"]
            print(
                f"[{a:4d},{b:4d}]  width in [{r['lower']},{r['upper']}]"
                f"  {r['status']}: {r['reason']}"
            )
        print(f"overall: {overall}")
    return 0


def _cmd_unknot_check(args: argparse.Namespace) -> int:
    spec = load_tangle(args.input)
    rep = scan_integers(
        spec.tangle,
        window=_parse_window(args.window),
        backend=args.backend,
        capacity=args.capacity,
        system=spec.system,
    )
    cert = unknot_certificate(rep)
    if args.format == "json":
        _emit_json(
            {
                "verdict": cert.verdict,
                "witness": cert.witness,
                "reason": cert.reason,
            }
        )
    else:
        print(cert.verdict)
        print(f"reason: {cert.reason}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, tangle: bool = False) -> None:
    p.add_argument("input", help="file path or corpus:NAME")
    p.add_argument("--backend", choices=("scan", "naive"), default="scan")
    p.add_argument("--capacity", type=int, default=None)
    p.add_argument("--format", choices=("grid", "json"), default="grid")
    if tangle:
        p.add_argument("--window", default=None, help="integer window a..b")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="khobs",
        description="Reduced Khovanov homology and width-based surgery obstructions.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kh", help="rank table of a closed diagram")
    _add_common(p)
    p.set_defaults(func=_cmd_kh)

    p = sub.add_parser("jones", help="Jones polynomial from the rank table")
    _add_common(p)
    p.set_defaults(func=_cmd_jones)

    p = sub.add_parser("goeritz", help="determinant and signature")
    _add_common(p)
    p.set_defaults(func=_cmd_goeritz)

    p = sub.add_parser("tau", help="branch set of a rational filling")
    _add_common(p)
    p.add_argument("slope", help="filling slope P/Q or integer")
    p.set_defaults(func=_cmd_tau)

    p = sub.add_parser("scan", help="integer-slope width scan of a tangle")
    _add_common(p, tangle=True)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("obstruct", help="surgery verdicts over a window")
    _add_common(p, tangle=True)
    p.add_argument("--mode", choices=("lens", "finite"), default="lens")
    p.set_defaults(func=_cmd_obstruct)

    p = sub.add_parser("unknot-check", help="compare against the trivial pattern")
    _add_common(p, tangle=True)
    p.set_defaults(func=_cmd_unknot_check)

    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, CalibrationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (CapacityError, ScanCapacityError) as e:
        print(f"capacity exceeded: {e}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
