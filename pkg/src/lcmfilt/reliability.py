"""Failure ideals of k-out-of-n systems and their (k-fold) signatures.

Signatures are exact.  For i.i.d. component lifetimes the first ``i`` failed
components form a uniform random ``i``-subset, so
``P(T <= T_(i)) = f_i / C(n, i)`` where ``f_i`` counts squarefree degree-``i``
monomials in the failure ideal, and ``s_i`` is the difference of consecutive
terms.  The k-fold variant runs the same formula on the k-fold lcm-ideal.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Literal

from .filtration import kfold_lcm_ideal
from .lattice import GuardExceeded, build_lcm_lattice
from .monomial import MonomialIdeal, NotSquarefreeError, count_squarefree_multiples

SystemKind = Literal["kofn", "consecutive-linear", "consecutive-circular"]

KIND_ALIASES = {
    "kofn": "kofn",
    "clin": "consecutive-linear",
    "consecutive-linear": "consecutive-linear",
    "ccirc": "consecutive-circular",
    "consecutive-circular": "consecutive-circular",
}
KINDS = ("kofn", "consecutive-linear", "consecutive-circular")


@dataclass(frozen=True)
class SystemSpec:
    kind: str
    n: int
    k: int

    def __post_init__(self):
        if self.kind not in KIND_ALIASES:
            raise ValueError(f"unknown system kind {self.kind!r}")
        object.__setattr__(self, "kind", KIND_ALIASES[self.kind])
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")


def failure_ideal(spec: SystemSpec) -> MonomialIdeal:
    n, k = spec.n, spec.k
    if spec.kind == "kofn":
        supports = combinations(range(n), k)
    elif spec.kind == "consecutive-linear":
        supports = (range(i, i + k) for i in range(n - k + 1))
    else:
        supports = ([(i + j) % n for j in range(k)] for i in range(n))
    names = [f"x{i + 1}" for i in range(n)]
    return MonomialIdeal.from_supports(n, supports, names)


def _require_squarefree(ideal: MonomialIdeal) -> None:
    if not ideal.is_squarefree():
        raise NotSquarefreeError("signatures need a squarefree failure ideal")


def signature_from_counts(counts: list[int], n: int) -> tuple[Fraction, ...]:
    """``counts[d]`` = number of failed d-subsets, ``d = 0..n``."""
    cdf = [Fraction(counts[d], comb(n, d)) for d in range(n + 1)]
    return tuple(cdf[i] - cdf[i - 1] for i in range(1, n + 1))


def signature(ideal: MonomialIdeal, n: int | None = None) -> tuple[Fraction, ...]:
    n = ideal.nvars if n is None else n
    if n != ideal.nvars:
        raise ValueError(f"ideal has {ideal.nvars} variables, not {n}")
    _require_squarefree(ideal)
    counts = [0] + [count_squarefree_multiples(ideal, d) for d in range(1, n + 1)]
    return signature_from_counts(counts, n)


def kfold_signature(ideal: MonomialIdeal, n: int | None = None, k: int = 1) -> tuple[Fraction, ...]:
    """Signature of the time at which ``k`` distinct minimal failures have occurred.

    Entries are unconditioned differences; their sum is the probability that
    ``k`` minimal failures happen at all (see :func:`normalizing_sum`).
    """
    n = ideal.nvars if n is None else n
    _require_squarefree(ideal)
    ik = kfold_lcm_ideal(ideal, k)
    if ik.is_zero():
        return tuple(Fraction(0) for _ in range(n))
    return signature(ik, n)


def normalizing_sum(sig) -> Fraction:
    return sum(sig, Fraction(0))


def format_signature(sig) -> list[str]:
    return [f"{s.numerator}/{s.denominator}" for s in sig]


@dataclass(frozen=True)
class CurvePoint:
    kind: str
    k: int
    generators: int
    lattice_size: int | None
    ratio: Fraction | None


def lattice_ratio_curve(n: int, kinds=KINDS, max_atoms: int | None = -1, kmin: int = 2, kmax: int | None = None) -> list[CurvePoint]:
    """Lattice size over 2^r for each kind and ``k = kmin..kmax`` (default ``n-1``).

    Points whose generator count exceeds the lattice guard are kept with a
    null size and ratio.
    """
    kmax = n - 1 if kmax is None else kmax
    out = []
    for kind in kinds:
        kind = KIND_ALIASES[kind]
        for k in range(kmin, kmax + 1):
            ideal = failure_ideal(SystemSpec(kind, n, k))
            try:
                lat = build_lcm_lattice(ideal, max_atoms)
                out.append(CurvePoint(kind, k, ideal.r, lat.size, lat.density))
            except GuardExceeded:
                out.append(CurvePoint(kind, k, ideal.r, None, None))
    return out


def curve_csv(points: list[CurvePoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "k", "generators", "lattice_size", "ratio"])
    for p in points:
        w.writerow([
            p.kind, p.k, p.generators,
            "" if p.lattice_size is None else p.lattice_size,
            "" if p.ratio is None else f"{float(p.ratio):.12g}",
        ])
    return buf.getvalue()
