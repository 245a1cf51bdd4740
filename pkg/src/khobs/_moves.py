"""Braid-level Reidemeister and Markov moves for invariance testing.

Closures of braid words related by these rewrites are isotopic links, so
every invariant computed downstream must agree across them: inserting a
cancelling pair realizes Reidemeister 2, the braid relation realizes
Reidemeister 3, and Markov stabilization realizes Reidemeister 1.
"""

from __future__ import annotations

import random
from typing import List

from .diagram import BraidWord

__all__ = ["r2_insert", "r3_sites", "r3_rewrite", "conjugate", "stabilize",
           "random_equivalent"]


def r2_insert(w: BraidWord, pos: int, k: int) -> BraidWord:
    """Insert the cancelling pair (k, -k) at position pos."""
    if not 1 <= abs(k) < w.strands:
        raise ValueError(f"letter {k} out of range for {w.strands} strands")
    letters = list(w.letters)
    letters[pos:pos] = [k, -k]
    return BraidWord(w.strands, tuple(letters))


def r3_sites(w: BraidWord) -> List[int]:
    """Positions where the braid relation (a, b, a) -> (b, a, b) applies."""
    out = []
    ls = w.letters
    for i in range(len(ls) - 2):
        a, b = ls[i], ls[i + 1]
        if ls[i + 2] == a and (a > 0) == (b > 0) and abs(abs(a) - abs(b)) == 1:
            out.append(i)
    return out


def r3_rewrite(w: BraidWord, pos: int) -> BraidWord:
    """Apply the braid relation at a site reported by r3_sites."""
    a, b = w.letters[pos], w.letters[pos + 1]
    letters = list(w.letters)
    letters[pos : pos + 3] = [b, a, b]
    return BraidWord(w.strands, tuple(letters))


def conjugate(w: BraidWord) -> BraidWord:
    """Cycle the first letter to the end (Markov conjugation)."""
    if not w.letters:
        return w
    return BraidWord(w.strands, w.letters[1:] + w.letters[:1])


def stabilize(w: BraidWord, sign: int = 1) -> BraidWord:
    """Markov stabilization: one more strand crossed once at the bottom."""
    letter = w.strands if sign > 0 else -w.strands
    return BraidWord(w.strands + 1, w.letters + (letter,))


def random_equivalent(w: BraidWord, rng: random.Random, steps: int = 4) -> BraidWord:
    """A braid whose closure is isotopic to w's, via random moves."""
    for _ in range(steps):
        choice = rng.randrange(4)
        if choice == 0 and w.strands >= 2:
            pos = rng.randrange(len(w.letters) + 1)
            k = rng.choice([1, -1]) * rng.randrange(1, w.strands)
            w = r2_insert(w, pos, k)
        elif choice == 1:
            sites = r3_sites(w)
            if sites:
                w = r3_rewrite(w, rng.choice(sites))
        elif choice == 2:
            w = conjugate(w)
        else:
            w = stabilize(w, rng.choice([1, -1]))
    return w
