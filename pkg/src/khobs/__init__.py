"""Reduced Khovanov homology over GF(2) and homological-width surgery obstructions."""

from .diagram import (
    BraidWord,
    OrientedDiagram,
    PlanarDiagram,
    braid_closure,
    count_components,
    mirror,
    orient,
    resolve,
)
from .formats import TangleSpec, load_link, load_tangle
from .goeritz import checkerboard, determinant, goeritz, signature
from .khovanov import (
    BigradedRanks,
    SkeinReport,
    WidthProfile,
    euler,
    jones,
    reduced_kh,
    sigma_normalize,
    skein_check,
    width,
)
from .obstruct import (
    StabilityReport,
    UnknotCertificate,
    Verdict,
    interval_bounds,
    obstruct,
    scan_integers,
    unknot_certificate,
)
from .slopes import (
    STANDARD_KNOT_SYSTEM,
    QACertificate,
    SlopeSystem,
    filling_order,
    qa_propagate,
)
from .tangle import (
    Slope,
    Tangle,
    braidcut_tangle,
    calibrate,
    cf_expand,
    mirror_tangle,
    pretzel_strip_tangle,
    tau,
    trivial_tangle,
)

__all__ = [
    "BraidWord",
    "OrientedDiagram",
    "PlanarDiagram",
    "braid_closure",
    "count_components",
    "mirror",
    "orient",
    "resolve",
    "TangleSpec",
    "load_link",
    "load_tangle",
    "checkerboard",
    "determinant",
    "goeritz",
    "signature",
    "BigradedRanks",
    "SkeinReport",
    "WidthProfile",
    "euler",
    "jones",
    "reduced_kh",
    "sigma_normalize",
    "skein_check",
    "width",
    "StabilityReport",
    "UnknotCertificate",
    "Verdict",
    "interval_bounds",
    "obstruct",
    "scan_integers",
    "unknot_certificate",
    "STANDARD_KNOT_SYSTEM",
    "QACertificate",
    "SlopeSystem",
    "filling_order",
    "qa_propagate",
    "Slope",
    "Tangle",
    "braidcut_tangle",
    "calibrate",
    "cf_expand",
    "mirror_tangle",
    "pretzel_strip_tangle",
    "tau",
    "trivial_tangle",
]
