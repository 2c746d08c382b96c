"""Reference data shipped with the package: example ideals, the four test
complexes and the published distance tables."""
from __future__ import annotations

import json
from importlib import resources

from .monomial import MonomialIdeal
from .simplicial import SimplicialComplex

LABELS = ("C1", "C2", "C3", "C4")


def _load(name: str) -> dict:
    return json.loads(resources.files("lcmfilt.data").joinpath(name).read_text())


def example_small() -> MonomialIdeal:
    """<abc, bd, cd, e> on a..e."""
    return MonomialIdeal.from_json(_load("small_example.json"))


def example_large() -> MonomialIdeal:
    """The 15-generator ideal on x1..x7 whose complex has facets 123, 14, 15, 34, 45, 67."""
    return MonomialIdeal.from_json(_load("large_example.json"))


def sample_complexes() -> dict[str, SimplicialComplex]:
    data = _load("four_complexes.json")["complexes"]
    return {label: SimplicialComplex.from_json(data[label]) for label in LABELS}


EXAMPLE_SMALL_USUAL = ("abc bd cd e", "abce bcd bde cde", "abcd bcde", "abcde")
EXAMPLE_SMALL_STEPWISE = ("abc bd cd e", "abce bcd bde cde", "bcde")

EXAMPLE_LARGE_USUAL_STEPS = 15
EXAMPLE_LARGE_STEPWISE_STEPS = 6
# (stepwise index, usual index) pairs as published
EXAMPLE_LARGE_EQUALITIES = ((1, 1), (2, 2), (5, 9), (5, 10), (6, 12), (6, 13), (6, 14), (6, 15))
EXAMPLE_LARGE_UNMATCHED = (3, 4, 5, 6, 7, 8, 11)

STIRLING_ROWS = {
    2: (1,),
    3: (3, 1),
    4: (7, 6, 1),
    5: (15, 25, 10, 1),
    6: (31, 90, 65, 15, 1),
    7: (63, 301, 350, 140, 21, 1),
    8: (127, 966, 1701, 1050, 266, 28, 1),
    9: (255, 3025, 7770, 6951, 2646, 462, 36, 1),
    10: (511, 9330, 34105, 42525, 22827, 5880, 750, 45, 1),
}

# published pairwise distances, keyed by (mode, metric)
TABLES = {
    ("usual", "bottleneck"): ((0, 3, 4.5, 3.5), (3, 0, 4.5, 3.5), (4.5, 4.5, 0, 4.5), (3.5, 3.5, 4.5, 0)),
    ("usual", "wasserstein"): ((0, 5, 15.5, 20.5), (5, 0, 17, 20.5), (15.5, 17, 0, 16.5), (20.5, 20.5, 16.5, 0)),
    ("stepwise", "bottleneck"): ((0, 0.5, 1, 1), (0.5, 0, 1, 1), (1, 1, 0, 0), (1, 1, 0, 0)),
    ("stepwise", "wasserstein"): ((0, 0.5, 2.5, 2.5), (0.5, 0, 2, 2), (2.5, 2, 0, 0), (2.5, 2, 0, 0)),
}

# reference signatures (kind, n, k, fold), checked by permutation enumeration
SIGNATURES = {
    ("kofn", 3, 2, 1): ("0/1", "1/1", "0/1"),
    ("clin", 4, 2, 1): ("0/1", "1/2", "1/2", "0/1"),
    ("kofn", 4, 2, 2): ("0/1", "0/1", "1/1", "0/1"),
}
