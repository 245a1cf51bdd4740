"""GF(2) linear algebra on int-bitset rows, with an optional compiled kernel.

Rows are Python ints read as bit vectors.  When the Cython extension
``khobs._gf2core`` is available it is used for larger eliminations; otherwise
a pure-Python fallback runs.  Both paths are exercised by the benchmark
script and the test suite.
"""

from __future__ import annotations

from typing import List, Sequence

try:
    import numpy as _np

    from . import _gf2core  # type: ignore[attr-defined]

    HAVE_COMPILED = True
except Exception:  # pragma: no cover - depends on build environment
    _np = None
    _gf2core = None
    HAVE_COMPILED = False

__all__ = ["gf2_rank", "gf2_rank_pure", "gf2_rank_compiled", "HAVE_COMPILED"]

# Below this many rows the packing overhead dominates; measured in the
# benchmark script.
_COMPILED_MIN_ROWS = 48


def gf2_rank_pure(rows: Sequence[int]) -> int:
    """Rank over GF(2) via incremental reduction against a pivot basis."""
    pivots: List[int] = []
    pivot_bits: List[int] = []
    rank = 0
    for v in rows:
        for p, low in zip(pivots, pivot_bits):
            if v & low:
                v ^= p
        if v:
            pivots.append(v)
            pivot_bits.append(v & -v)
            rank += 1
    return rank


def gf2_rank_compiled(rows: Sequence[int], n_cols: int) -> int:
    """Rank via the compiled kernel on a packed uint64 matrix."""
    if not HAVE_COMPILED:
        raise RuntimeError("compiled GF(2) kernel not available")
    if not rows:
        return 0
    n_words = max(1, (n_cols + 63) // 64)
    nbytes = n_words * 8
    buf = bytearray(len(rows) * nbytes)
    for i, r in enumerate(rows):
        buf[i * nbytes : i * nbytes + nbytes] = int(r).to_bytes(nbytes, "little")
    mat = _np.frombuffer(bytes(buf), dtype=_np.uint64).reshape(len(rows), n_words).copy()
    return int(_gf2core.rank_packed(mat))


def gf2_rank(rows: Sequence[int], n_cols: int) -> int:
    """Rank over GF(2), dispatching to the compiled kernel when worthwhile."""
    if HAVE_COMPILED and len(rows) >= _COMPILED_MIN_ROWS and n_cols > 0:
        return gf2_rank_compiled(rows, n_cols)
    return gf2_rank_pure(rows)
