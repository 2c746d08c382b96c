"""Recompute every shipped reference value and compare it with the stored one."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import fixtures
from .filtration import compare, lcm_filtration, stepwise_filtration
from .graphs import Graph, enumerate_cuts, stirling2
from .monomial import MonomialIdeal
from .persistence import DEFAULT, DistanceConventions, complex_diagram, diagram_distance_matrix
from .reliability import SystemSpec, failure_ideal, format_signature, kfold_signature

PASS = "pass"
FAIL = "fail"
# computed values differ but the comparison conventions are not pinned down
CONVENTION = "convention-mismatch"

TOLERANCE = 1e-9


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""
    computed: object = None
    expected: object = None

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.computed is not None:
            out["computed"] = self.computed
            out["expected"] = self.expected
        return out


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "", computed=None, expected=None, soft: bool = False) -> Check:
        status = PASS if ok else (CONVENTION if soft else FAIL)
        check = Check(name, status, detail, computed, expected)
        self.checks.append(check)
        return check

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def to_json(self) -> dict:
        return {
            "checks": [c.to_json() for c in self.checks],
            "summary": {s: sum(c.status == s for c in self.checks) for s in (PASS, FAIL, CONVENTION)},
        }

    def to_text(self) -> str:
        lines = [f"{c.status.upper():<20} {c.name}" + (f"  ({c.detail})" if c.detail else "") for c in self.checks]
        summary = self.to_json()["summary"]
        lines.append(f"{summary[PASS]} passed, {summary[FAIL]} failed, {summary[CONVENTION]} convention mismatches")
        return "\n".join(lines) + "\n"


def _steps(names, texts) -> list[MonomialIdeal]:
    return [MonomialIdeal.parse(t, names) for t in texts]


def check_small_example(report: Report) -> None:
    ideal = fixtures.example_small()
    names = list(ideal.names)
    usual, stepwise = lcm_filtration(ideal), stepwise_filtration(ideal)
    report.add("small example: usual filtration", list(usual.steps) == _steps(names, fixtures.EXAMPLE_SMALL_USUAL),
               computed=[s.format() for s in usual.steps], expected=list(fixtures.EXAMPLE_SMALL_USUAL))
    report.add("small example: stepwise filtration", list(stepwise.steps) == _steps(names, fixtures.EXAMPLE_SMALL_STEPWISE),
               computed=[s.format() for s in stepwise.steps], expected=list(fixtures.EXAMPLE_SMALL_STEPWISE))


def check_large_example(report: Report) -> None:
    ideal = fixtures.example_large()
    cmp = compare(lcm_filtration(ideal), stepwise_filtration(ideal))
    report.add("large example: usual step count", len(cmp.usual_counts) == fixtures.EXAMPLE_LARGE_USUAL_STEPS,
               computed=len(cmp.usual_counts), expected=fixtures.EXAMPLE_LARGE_USUAL_STEPS)
    report.add("large example: stepwise step count", len(cmp.stepwise_counts) == fixtures.EXAMPLE_LARGE_STEPWISE_STEPS,
               computed=len(cmp.stepwise_counts), expected=fixtures.EXAMPLE_LARGE_STEPWISE_STEPS)
    stated = set(fixtures.EXAMPLE_LARGE_EQUALITIES)
    found = set(cmp.equalities)
    report.add("large example: stated equalities hold", stated <= found,
               computed=sorted(found), expected=sorted(stated))
    extra = sorted(found - stated)
    report.add("large example: unmatched usual steps", cmp.unmatched_usual == fixtures.EXAMPLE_LARGE_UNMATCHED,
               detail=f"additional equalities found: {extra}" if extra else "",
               computed=list(cmp.unmatched_usual), expected=list(fixtures.EXAMPLE_LARGE_UNMATCHED))


def check_stirling(report: Report, enumerate_upto: int = 6) -> None:
    bad = []
    for i, row in fixtures.STIRLING_ROWS.items():
        for j, expected in enumerate(row, start=2):
            if stirling2(i, j) != expected:
                bad.append((i, j))
            elif i <= enumerate_upto and len(enumerate_cuts(Graph.complete(i), j)) != expected:
                bad.append((i, j))
    total = sum(len(r) for r in fixtures.STIRLING_ROWS.values())
    report.add(f"partition table ({total} entries)", not bad,
               detail=f"enumerated cuts for i <= {enumerate_upto}" + (f"; mismatches {bad}" if bad else ""))


def check_signatures(report: Report) -> None:
    for (kind, n, k, fold), expected in fixtures.SIGNATURES.items():
        ideal = failure_ideal(SystemSpec(kind, n, k))
        got = format_signature(kfold_signature(ideal, n, fold))
        report.add(f"signature {kind}({n},{k}) fold {fold}", got == list(expected), computed=got, expected=list(expected))


def _matrix_check(report: Report, mode: str, metric: str, diagrams, conv: DistanceConventions) -> None:
    mat = diagram_distance_matrix(diagrams, metric, conv)
    table = fixtures.TABLES[(mode, metric)]
    labels = fixtures.LABELS
    off = []
    for i in range(4):
        for j in range(i + 1, 4):
            if abs(mat[i][j] - table[i][j]) > TOLERANCE:
                off.append(f"{labels[i]}{labels[j]} {mat[i][j]:g} vs {table[i][j]:g}")
    report.add(f"{metric} distances, {mode} filtration", not off, detail="; ".join(off),
               computed=[list(r) for r in mat], expected=[list(r) for r in table], soft=True)


def check_tables(report: Report, conv: DistanceConventions = DEFAULT) -> None:
    complexes = list(fixtures.sample_complexes().values())
    for mode in ("usual", "stepwise"):
        diagrams = [complex_diagram(cx, mode) for cx in complexes]
        for metric in ("bottleneck", "wasserstein"):
            _matrix_check(report, mode, metric, diagrams, conv)


def reproduce(conv: DistanceConventions = DEFAULT, enumerate_upto: int = 6) -> Report:
    report = Report()
    check_small_example(report)
    check_large_example(report)
    check_stirling(report, enumerate_upto)
    check_signatures(report)
    check_tables(report, conv)
    return report

