from __future__ import annotations

import pytest

from khobs.formats import load_link, load_tangle
from khobs.obstruct import scan_integers

LINK_NAMES = ["unknot", "trefoil", "fig8-knot", "hopf", "unlink2", "10_124", "fig8-tau0"]
TANGLE_NAMES = ["trivial", "fig8", "trefoil"]


@pytest.fixture(scope="session")
def corpus_links():
    return {name: load_link(f"corpus:{name}") for name in LINK_NAMES}


@pytest.fixture(scope="session")
def corpus_tangles():
    return {name: load_tangle(f"corpus:{name}") for name in TANGLE_NAMES}


@pytest.fixture(scope="session")
def reports(corpus_tangles):
    return {
        name: scan_integers(spec.tangle, system=spec.system)
        for name, spec in corpus_tangles.items()
    }
