"""The usual and the stepwise lcm-filtration of a monomial ideal."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from math import comb
from typing import Literal

from .lattice import GuardExceeded
from .monomial import Backend, MonomialIdeal, minimal_raw

DEFAULT_FILTRATION_GUARD = 22
DEFAULT_SUBSET_GUARD = 50_000_000

Kind = Literal["usual", "stepwise"]


@dataclass(frozen=True)
class IdealFiltration:
    kind: Kind
    nvars: int
    steps: tuple[MonomialIdeal, ...]
    # lcm evaluations actually performed to produce each step (step 1 costs 0)
    evaluations: tuple[int, ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.steps)

    def step(self, k: int) -> MonomialIdeal:
        """1-based access, matching the usual I_1, I_2, ... indexing."""
        if k < 1:
            raise IndexError(k)
        return self.steps[k - 1]

    def to_json(self) -> dict:
        return {"kind": self.kind, "steps": [s.to_json() for s in self.steps]}

    def summary_rows(self) -> list[dict]:
        rows = []
        for k, ideal in enumerate(self.steps, start=1):
            rows.append({
                "step": k,
                "generators": ideal.r,
                "max_degree": max((g.degree for g in ideal.generators), default=0),
                "lcm_evaluations": self.evaluations[k - 1] if self.evaluations else "",
            })
        return rows

    def summary_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, ["step", "generators", "max_degree", "lcm_evaluations"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.summary_rows())
        return buf.getvalue()


def _kfold_raw(atoms: list, k: int, backend: Backend) -> tuple[list, int]:
    """Minimal generators of the k-fold lcm-ideal, plus lcm evaluations used.

    Subsets are grown depth-first with a running lcm; a branch is dropped once
    its running lcm is a multiple of a generator already found, because every
    completion would be a multiple too.
    """
    lcm, div = backend.lcm, backend.divides
    r = len(atoms)
    found: list = []
    evals = 0

    def covered(m) -> bool:
        return any(div(g, m) for g in found)

    def add(m) -> None:
        found[:] = [g for g in found if not div(m, g)]
        found.append(m)

    def grow(start: int, depth: int, running) -> None:
        nonlocal evals
        for i in range(start, r - (k - depth) + 1):
            m = lcm(running, atoms[i])
            evals += 1
            if covered(m):
                continue
            if depth + 1 == k:
                add(m)
            else:
                grow(i + 1, depth + 1, m)

    if k == 1:
        return minimal_raw(atoms, backend), 0
    for i in range(r - k + 1):
        if not covered(atoms[i]):
            grow(i + 1, 1, atoms[i])
    return found, evals


def kfold_lcm_ideal(ideal: MonomialIdeal, k: int, max_subsets: int = DEFAULT_SUBSET_GUARD) -> MonomialIdeal:
    """The k-fold lcm-ideal: generated by the lcms of all k-subsets of G(I).

    For ``k > r`` there are no k-subsets and the zero ideal is returned.
    """
    ideal.require_nonzero()
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > ideal.r:
        return MonomialIdeal(ideal.nvars, (), ideal.names)
    if comb(ideal.r, k) > max_subsets:
        raise GuardExceeded(f"C({ideal.r},{k}) subsets exceed guard {max_subsets}")
    backend = Backend.for_monomials(ideal.generators, ideal.nvars)
    atoms = [backend.encode(g) for g in ideal.generators]
    raw, _ = _kfold_raw(atoms, k, backend)
    return MonomialIdeal.from_generators(ideal.nvars, (backend.decode(m) for m in raw), ideal.names)


def lcm_filtration(ideal: MonomialIdeal, max_generators: int = DEFAULT_FILTRATION_GUARD) -> IdealFiltration:
    ideal.require_nonzero()
    if max_generators is not None and ideal.r > max_generators:
        raise GuardExceeded(f"ideal has {ideal.r} generators, filtration guard is {max_generators}")
    backend = Backend.for_monomials(ideal.generators, ideal.nvars)
    atoms = [backend.encode(g) for g in ideal.generators]
    steps = [ideal]
    evals = [0]
    for k in range(2, ideal.r + 1):
        raw, n = _kfold_raw(atoms, k, backend)
        steps.append(MonomialIdeal.from_generators(ideal.nvars, (backend.decode(m) for m in raw), ideal.names))
        evals.append(n)
    return IdealFiltration("usual", ideal.nvars, tuple(steps), tuple(evals))


def stepwise_next(ideal: MonomialIdeal) -> MonomialIdeal:
    """Pairwise lcms of the minimal generators of ``ideal``."""
    backend = Backend.for_monomials(ideal.generators, ideal.nvars)
    raws = [backend.encode(g) for g in ideal.generators]
    lcm = backend.lcm
    pairs = (lcm(a, b) for i, a in enumerate(raws) for b in raws[i + 1:])
    kept = minimal_raw(pairs, backend)
    return MonomialIdeal.from_generators(ideal.nvars, (backend.decode(m) for m in kept), ideal.names)


def stepwise_filtration(ideal: MonomialIdeal) -> IdealFiltration:
    """Iterate pairwise lcms until a principal ideal is reached."""
    ideal.require_nonzero()
    steps = [ideal]
    evals = [0]
    while steps[-1].r > 1:
        prev = steps[-1]
        evals.append(comb(prev.r, 2))
        steps.append(stepwise_next(prev))
    return IdealFiltration("stepwise", ideal.nvars, tuple(steps), tuple(evals))


@dataclass(frozen=True)
class ComparisonReport:
    usual_counts: tuple[int, ...]
    stepwise_counts: tuple[int, ...]
    # (stepwise index j, usual index k) with stepwise step j == usual step k, 1-based
    equalities: tuple[tuple[int, int], ...]
    unmatched_usual: tuple[int, ...]
    unmatched_stepwise: tuple[int, ...]
    # lcm evaluations under the C(r,k) versus C(|G|,2) cost model
    usual_cost_model: int
    stepwise_cost_model: int
    # evaluations the pruned subset search actually performed
    usual_evaluations: int

    def equality_classes(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Group the equalities as ``(stepwise indices, usual indices)``."""
        by_j: dict[int, list[int]] = {}
        for j, k in self.equalities:
            by_j.setdefault(j, []).append(k)
        return [((j,), tuple(ks)) for j, ks in sorted(by_j.items())]

    def distinct_ideals_coincide(self) -> bool:
        return not self.unmatched_usual and not self.unmatched_stepwise

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "usual_generators", "stepwise_generators", "usual_lcm_evaluations", "stepwise_lcm_evaluations", "matches"])
        r = self.usual_counts[0]
        for k in range(1, max(len(self.usual_counts), len(self.stepwise_counts)) + 1):
            u = self.usual_counts[k - 1] if k <= len(self.usual_counts) else ""
            s = self.stepwise_counts[k - 1] if k <= len(self.stepwise_counts) else ""
            ucost = comb(r, k) if k <= len(self.usual_counts) and k > 1 else (0 if k == 1 else "")
            scost = comb(self.stepwise_counts[k - 2], 2) if 1 < k <= len(self.stepwise_counts) else (0 if k == 1 else "")
            matches = ";".join(str(kk) for j, kk in self.equalities if j == k)
            w.writerow([k, u, s, ucost, scost, matches])
        return buf.getvalue()


def compare(usual: IdealFiltration, stepwise: IdealFiltration) -> ComparisonReport:
    equalities = tuple(
        (j, k)
        for j, s in enumerate(stepwise.steps, start=1)
        for k, u in enumerate(usual.steps, start=1)
        if s == u
    )
    matched_u = {k for _, k in equalities}
    matched_s = {j for j, _ in equalities}
    r = usual.steps[0].r
    return ComparisonReport(
        usual_counts=tuple(s.r for s in usual.steps),
        stepwise_counts=tuple(s.r for s in stepwise.steps),
        equalities=equalities,
        unmatched_usual=tuple(k for k in range(1, len(usual) + 1) if k not in matched_u),
        unmatched_stepwise=tuple(j for j in range(1, len(stepwise) + 1) if j not in matched_s),
        usual_cost_model=sum(comb(r, k) for k in range(2, r + 1)),
        stepwise_cost_model=sum(stepwise.evaluations),
        usual_evaluations=sum(usual.evaluations),
    )


def compare_filtrations(ideal: MonomialIdeal, max_generators: int = DEFAULT_FILTRATION_GUARD) -> ComparisonReport:
    return compare(lcm_filtration(ideal, max_generators), stepwise_filtration(ideal))
