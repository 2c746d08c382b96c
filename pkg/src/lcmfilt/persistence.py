"""Persistent homology of complex sequences induced by lcm-filtrations.

A descending chain of squarefree ideals gives an ascending chain of
Stanley-Reisner complexes.  Faces are born at the 1-based index of the first
complex containing them; diagrams are computed over GF(2) by the standard
column reduction, and compared with bottleneck and Wasserstein distances.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.optimize import linear_sum_assignment

from .filtration import IdealFiltration, lcm_filtration, stepwise_filtration
from .monomial import Monomial, MonomialIdeal, polarize
from .simplicial import SimplicialComplex, sr_complex, sr_ideal

INF = math.inf


class NestingError(RuntimeError):
    """A complex sequence that should be ascending is not."""


@dataclass(frozen=True)
class ComplexFiltration:
    steps: tuple[SimplicialComplex, ...]

    def __post_init__(self):
        for t in range(len(self.steps) - 1):
            if not self.steps[t].is_subcomplex_of(self.steps[t + 1]):
                raise NestingError(f"step {t + 1} is not contained in step {t + 2}")

    def __len__(self) -> int:
        return len(self.steps)

    def births(self) -> dict[int, int]:
        """Face mask -> first (1-based) step containing it."""
        born: dict[int, int] = {}
        for t, cx in enumerate(self.steps, start=1):
            for m in cx.face_masks():
                born.setdefault(m, t)
        return born


def _polarize_chain(filtration: IdealFiltration) -> list[MonomialIdeal]:
    base = polarize(filtration.steps[0])
    offsets = {}
    for j, (var, level) in enumerate(base.varmap):
        if level == 1:
            offsets[var] = j
    n = len(base.varmap)
    out = []
    for ideal in filtration.steps:
        gens = []
        for g in ideal.generators:
            support = [offsets[i] + lvl for i, e in enumerate(g.exponents) for lvl in range(e)]
            gens.append(Monomial.from_support(support, n))
        out.append(MonomialIdeal.from_generators(n, gens))
    return out


def complexes_of(filtration: IdealFiltration) -> ComplexFiltration:
    steps = list(filtration.steps)
    if not all(s.is_squarefree() for s in steps):
        steps = _polarize_chain(filtration)
    return ComplexFiltration(tuple(sr_complex(s) for s in steps))


@dataclass(frozen=True)
class PersistenceDiagram:
    """Birth/death pairs per homology dimension; ``death == inf`` marks essential classes."""

    dims: dict = field(default_factory=dict)

    def points(self, d: int) -> list[tuple[float, float]]:
        return list(self.dims.get(d, ()))

    def finite(self, d: int) -> list[tuple[float, float]]:
        return [p for p in self.points(d) if p[1] != INF]

    def essential(self, d: int) -> list[float]:
        return sorted(b for b, dd in self.points(d) if dd == INF)

    def to_json(self) -> dict:
        return {"dims": {str(d): [[b, "inf" if dd == INF else dd] for b, dd in pts] for d, pts in sorted(self.dims.items())}}

    @classmethod
    def from_json(cls, data: dict) -> PersistenceDiagram:
        dims = {}
        for d, pts in data["dims"].items():
            dims[int(d)] = tuple(sorted((b, INF if dd == "inf" else dd) for b, dd in pts))
        return cls(dims)


def persistence_diagram(cf: ComplexFiltration, maxdim: int | None = None) -> PersistenceDiagram:
    born = cf.births()
    # filtration order: birth step, then dimension, then a fixed tiebreak
    simplices = sorted((m for m in born if m), key=lambda m: (born[m], m.bit_count(), m))
    if maxdim is not None:
        simplices = [m for m in simplices if m.bit_count() - 1 <= maxdim + 1]
    index = {m: i for i, m in enumerate(simplices)}
    low_owner: dict[int, int] = {}
    paired: set[int] = set()
    pairs: dict[int, list] = {}
    for j, m in enumerate(simplices):
        col = 0
        if m.bit_count() > 1:
            w = m
            while w:
                bit = w & -w
                col |= 1 << index[m ^ bit]
                w ^= bit
        while col:
            low = col.bit_length() - 1
            other = low_owner.get(low)
            if other is None:
                break
            col ^= other
        if col:
            low = col.bit_length() - 1
            low_owner[low] = col
            paired.add(low)
            paired.add(j)
            b, d = born[simplices[low]], born[m]
            dim = simplices[low].bit_count() - 1
            if d > b:
                pairs.setdefault(dim, []).append((b, d))
    for j, m in enumerate(simplices):
        if j not in paired:
            dim = m.bit_count() - 1
            if maxdim is None or dim <= maxdim:
                pairs.setdefault(dim, []).append((born[m], INF))
    return PersistenceDiagram({d: tuple(sorted(p)) for d, p in sorted(pairs.items())})


# --- distances --------------------------------------------------------------

@dataclass(frozen=True)
class DistanceConventions:
    """Knobs for comparing diagrams.

    ``aggregate`` combines per-dimension distances (``"sum"`` or ``"max"``).  ``essential``
    is ``"match"`` (pair essential classes by birth, infinite if counts differ)
    or ``"ignore"``.  ``internal_p`` is the ground metric on the plane.
    """

    aggregate: str = "sum"
    essential: str = "match"
    internal_p: float = INF
    dims: tuple[int, ...] | None = None


DEFAULT = DistanceConventions()


def _ground(a, b, p: float) -> float:
    dx, dy = abs(a[0] - b[0]), abs(a[1] - b[1])
    if p == INF:
        return max(dx, dy)
    return (dx**p + dy**p) ** (1 / p)


def _diag(a, p: float) -> float:
    # distance from (b, d) to its nearest diagonal point under the ground metric
    half = (a[1] - a[0]) / 2
    if p == INF:
        return half
    return (2 * half**p) ** (1 / p)


def _essential_costs(e1: list[float], e2: list[float]) -> list[float] | None:
    if len(e1) != len(e2):
        return None
    return [abs(x - y) for x, y in zip(sorted(e1), sorted(e2))]


def _augmented(pts1, pts2, p: float) -> np.ndarray:
    """Cost matrix of the usual diagonal-augmented assignment problem."""
    n, m = len(pts1), len(pts2)
    big = INF
    cost = np.zeros((n + m, n + m))
    for i, a in enumerate(pts1):
        for j, b in enumerate(pts2):
            cost[i, j] = _ground(a, b, p)
    cost[:n, m:] = big
    cost[n:, :m] = big
    for i, a in enumerate(pts1):
        cost[i, m + i] = _diag(a, p)
    for j, b in enumerate(pts2):
        cost[n + j, j] = _diag(b, p)
    return cost


def bottleneck_finite(pts1, pts2, p: float = INF) -> float:
    """Exact bottleneck distance between finite point multisets."""
    if not pts1 and not pts2:
        return 0.0
    cost = _augmented(pts1, pts2, p)
    cands = np.unique(cost[np.isfinite(cost)])
    lo, hi = 0, len(cands) - 1
    # smallest threshold admitting a perfect matching
    while lo < hi:
        mid = (lo + hi) // 2
        t = cands[mid]
        feas = np.where(cost <= t + 1e-12, 0.0, 1.0)
        r, c = linear_sum_assignment(feas)
        if feas[r, c].sum() == 0:
            hi = mid
        else:
            lo = mid + 1
    return float(cands[lo])


def wasserstein_finite(pts1, pts2, q: float = 1, p: float = INF) -> float:
    """Sum of q-th powers of the optimal matching costs (not yet rooted)."""
    if not pts1 and not pts2:
        return 0.0
    cost = _augmented(pts1, pts2, p)
    finite = np.where(np.isfinite(cost), cost, 1e18)
    r, c = linear_sum_assignment(finite**q if q != 1 else finite)
    return float(sum(cost[i, j] ** q for i, j in zip(r, c)))


def _dims(d1: PersistenceDiagram, d2: PersistenceDiagram, conv: DistanceConventions):
    if conv.dims is not None:
        return conv.dims
    return tuple(sorted(set(d1.dims) | set(d2.dims)))


def _aggregate(values, how: str) -> float:
    values = list(values)
    if not values:
        return 0.0
    if how == "max":
        return max(values)
    if how == "sum":
        return sum(values)
    raise ValueError(f"unknown aggregation {how!r}")


def bottleneck(d1: PersistenceDiagram, d2: PersistenceDiagram, conv: DistanceConventions = DEFAULT) -> float:
    per_dim = []
    for d in _dims(d1, d2, conv):
        value = bottleneck_finite(d1.finite(d), d2.finite(d), conv.internal_p)
        if conv.essential == "match":
            ess = _essential_costs(d1.essential(d), d2.essential(d))
            if ess is None:
                return INF
            value = max([value, *ess])
        per_dim.append(value)
    return _aggregate(per_dim, conv.aggregate)


def wasserstein(d1: PersistenceDiagram, d2: PersistenceDiagram, q: float = 1, conv: DistanceConventions = DEFAULT) -> float:
    per_dim = []
    for d in _dims(d1, d2, conv):
        total = wasserstein_finite(d1.finite(d), d2.finite(d), q, conv.internal_p)
        if conv.essential == "match":
            ess = _essential_costs(d1.essential(d), d2.essential(d))
            if ess is None:
                return INF
            total += sum(c**q for c in ess)
        per_dim.append(total ** (1 / q))
    return _aggregate(per_dim, conv.aggregate)


# --- matrices -----------------------------------------------------------------

def complex_diagram(cx: SimplicialComplex, mode: str = "usual", maxdim: int | None = None) -> PersistenceDiagram:
    """Diagram of the complexes induced by the chosen filtration of ``I_cx``."""
    ideal = sr_ideal(cx)
    if ideal.is_zero():
        return persistence_diagram(ComplexFiltration((cx,)), maxdim)
    if mode == "usual":
        filt = lcm_filtration(ideal)
    elif mode == "stepwise":
        filt = stepwise_filtration(ideal)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return persistence_diagram(complexes_of(filt), maxdim)


def distance(d1: PersistenceDiagram, d2: PersistenceDiagram, metric: str, conv: DistanceConventions = DEFAULT, q: float = 1) -> float:
    if metric == "bottleneck":
        return bottleneck(d1, d2, conv)
    if metric == "wasserstein":
        return wasserstein(d1, d2, q, conv)
    raise ValueError(f"unknown metric {metric!r}")


def diagram_distance_matrix(diagrams, metric: str, conv: DistanceConventions = DEFAULT, q: float = 1) -> list[list[float]]:
    n = len(diagrams)
    mat = [[0.0] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        mat[i][j] = mat[j][i] = distance(diagrams[i], diagrams[j], metric, conv, q)
    return mat


def distance_matrix(complexes, mode: str = "usual", metric: str = "bottleneck", conv: DistanceConventions = DEFAULT,
                    q: float = 1, maxdim: int | None = None) -> list[list[float]]:
    diagrams = [complex_diagram(cx, mode, maxdim) for cx in complexes]
    return diagram_distance_matrix(diagrams, metric, conv, q)


def matrix_csv(mat, labels=None) -> str:
    labels = labels or [f"C{i + 1}" for i in range(len(mat))]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["", *labels])
    for label, row in zip(labels, mat):
        w.writerow([label, *("inf" if x == INF else f"{x:.12g}" for x in row)])
    return buf.getvalue()
