"""Homological arithmetic of Dehn fillings.

A SlopeSystem records the rational longitude lambda_M = (x, y) in a fixed
basis together with the positive constant c_M; the order of the first
homology of the filling along p/q is c_M * |p y - q x|.  qa_propagate
unwinds a non-negative slope through the Farey recursion of its continued
fraction, verifying determinant additivity at every node down to the two
base legs 1/0 and 0; the certificate is conditional on those base links.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Tuple

from .diagram import DiagramError
from .tangle import ContinuedFraction, Slope, cf_expand, cf_resolve

__all__ = [
    "SlopeSystem",
    "FareyNode",
    "QACertificate",
    "filling_order",
    "qa_propagate",
    "STANDARD_KNOT_SYSTEM",
]


@dataclass(frozen=True)
class SlopeSystem:
    """Rational longitude (x, y) and the homology constant c_M."""

    lambda_M: Tuple[int, int]
    c_M: int = 1

    def __post_init__(self) -> None:
        x, y = self.lambda_M
        if gcd(abs(x), abs(y)) != 1:
            raise DiagramError("lambda_M must be a primitive pair")
        if self.c_M < 1:
            raise DiagramError("c_M must be a positive integer")


#: A knot in the 3-sphere: the longitude is 0-framed, c_M = 1.
STANDARD_KNOT_SYSTEM = SlopeSystem(lambda_M=(0, 1), c_M=1)


def filling_order(sys: SlopeSystem, s: Slope) -> int:
    """|H_1| of the filling along s: c_M times the intersection with lambda_M."""
    x, y = sys.lambda_M
    return sys.c_M * abs(s.p * y - s.q * x)


@dataclass(frozen=True)
class FareyNode:
    """One node of the Farey resolution tree with its determinant."""

    slope: Tuple[int, int]
    terms: Tuple[int, ...]
    det: int
    children: Optional[Tuple["FareyNode", "FareyNode"]] = None

    @property
    def depth(self) -> int:
        if self.children is None:
            return 0
        return 1 + max(c.depth for c in self.children)

    def count(self) -> int:
        if self.children is None:
            return 1
        return 1 + sum(c.count() for c in self.children)


@dataclass(frozen=True)
class QACertificate:
    """Conditional quasi-alternating certificate for tau(target).

    Valid only under the hypothesis that the two base links tau(1/0) and
    tau(0) are quasi-alternating; the tree records verified determinant
    additivity at every internal node.
    """

    system: SlopeSystem
    det_meridian: int
    det_zero: int
    target: Slope
    root: FareyNode

    @property
    def depth(self) -> int:
        return self.root.depth


def qa_propagate(
    sys: SlopeSystem, det_meridian: int, det_zero: int, target: Slope
) -> QACertificate:
    """Farey recursion from the target slope down to the triad legs.

    det_meridian and det_zero are the determinants of tau(1/0) and tau(0)
    (both must be positive multiples of c_M); every node's determinant is
    the sum of its two resolutions', terminating at the two legs.
    """
    if det_meridian <= 0 or det_zero <= 0:
        raise DiagramError(
            "triad hypothesis fails: both base determinants must be positive"
        )
    if det_meridian % sys.c_M or det_zero % sys.c_M:
        raise DiagramError("base determinants must be multiples of c_M")
    if target.p < 0:
        raise DiagramError("negative target slope: mirror the tangle first")

    def build(cf: ContinuedFraction) -> FareyNode:
        p, q = cf.value
        det = p * det_meridian + q * det_zero
        if cf.r == 0:
            assert det == det_meridian
            return FareyNode(slope=(1, 0), terms=(), det=det)
        if cf.terms == (0,):
            assert det == det_zero
            return FareyNode(slope=(0, 1), terms=(0,), det=det)
        drop, dec, _parity = cf_resolve(cf)
        c0, c1 = build(drop), build(dec)
        if c0.det + c1.det != det:
            raise DiagramError(
                f"determinant additivity fails at {p}/{q}: "
                f"{c0.det} + {c1.det} != {det}"
            )
        return FareyNode(slope=(p, q), terms=cf.terms, det=det, children=(c0, c1))

    root = build(cf_expand(target))
    return QACertificate(
        system=sys,
        det_meridian=det_meridian,
        det_zero=det_zero,
        target=target,
        root=root,
    )
