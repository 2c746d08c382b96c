"""Command-line front end.

Every output starts with a metadata header: a ``"meta"`` key in JSON, ``#``
comment lines in CSV and text.  Exit codes: 0 success, 2 bad input,
3 guard exceeded, 4 reference mismatch.
"""
from __future__ import annotations

import json
import math
import re
import sys
from fractions import Fraction
from functools import wraps

import click

from . import __version__, fixtures
from .filtration import DEFAULT_FILTRATION_GUARD, compare, lcm_filtration, stepwise_filtration
from .graphs import Graph, cut_ideal, deletion_experiment, enumerate_cuts, experiment_csv
from .lattice import GuardExceeded, build_lcm_lattice
from .lattice import guard_atoms as env_guard_atoms
from .monomial import DimensionMismatch, MonomialIdeal, NotSquarefreeError, ZeroIdealError
from .persistence import (
    DistanceConventions, PersistenceDiagram, complex_diagram, diagram_distance_matrix, distance, matrix_csv,
)
from .reliability import KIND_ALIASES, KINDS, SystemSpec, curve_csv, failure_ideal, format_signature, kfold_signature, \
    lattice_ratio_curve, normalizing_sum
from .reproduce import reproduce
from .simplicial import (
    SimplicialComplex, VoidComplexError, betti_numbers, f_vector, reduced_betti_numbers, sensitive_corners,
    stepwise_complex_filtration,
)

EXIT_INPUT, EXIT_GUARD, EXIT_MISMATCH = 2, 3, 4

INPUT_ERRORS = (ValueError, KeyError, TypeError, OSError, DimensionMismatch, ZeroIdealError,
                NotSquarefreeError, VoidComplexError)


class Config:
    def __init__(self, seed: int, guard: int, max_generators: int, jobs: int):
        self.seed = seed
        self.guard = guard
        self.max_generators = max_generators
        self.jobs = jobs

    def meta(self, **extra) -> dict:
        out = {
            "tool": "lcmfilt",
            "version": __version__,
            "seed": self.seed,
            "guards": {"max_lattice_atoms": self.guard, "max_generators": self.max_generators},
        }
        out.update(extra)
        return out

    def header(self, **extra) -> str:
        meta = self.meta(**extra)
        guards = meta.pop("guards")
        parts = [f"{k}={v}" for k, v in meta.items()] + [f"{k}={v}" for k, v in guards.items()]
        return "# " + " ".join(parts) + "\n"


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def guarded(fn):
    """Map library exceptions onto exit codes."""

    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except GuardExceeded as exc:
            _fail(EXIT_GUARD, f"guard exceeded: {exc}")
        except json.JSONDecodeError as exc:
            _fail(EXIT_INPUT, f"malformed JSON: {exc}")
        except INPUT_ERRORS as exc:
            _fail(EXIT_INPUT, str(exc))

    return wrapper


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        click.echo(text, nl=False)
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _emit_json(cfg: Config, payload: dict, output: str | None, **meta) -> None:
    doc = {"meta": cfg.meta(**meta), **payload}
    text = json.dumps(doc, indent=2, default=_jsonable)
    # keep innermost scalar arrays (exponent vectors, facets) on one line
    text = _FLAT_ARRAY.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)
    _emit(text + "\n", output)


_FLAT_ARRAY = re.compile(r"\[\s+([^\[\]{}\"]*?)\s+\]")


def _emit_csv(cfg: Config, body: str, output: str | None, **meta) -> None:
    _emit(cfg.header(**meta) + body, output)


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _float(x: float):
    return "inf" if x == math.inf else x


def _load_ideal(path: str) -> MonomialIdeal:
    return MonomialIdeal.from_json(_read_json(path))


def _load_complex(path: str) -> SimplicialComplex:
    return SimplicialComplex.from_json(_read_json(path))


output_option = click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
                             help="Write to this file instead of stdout.")
field_option = click.option("--field", default="Q", show_default=True, help="Coefficient field: Q or a prime p.")


@click.group()
@click.version_option(__version__, prog_name="lcmfilt")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for randomized experiments.")
@click.option("--guard-atoms", type=click.IntRange(min=1), default=None,
              help="Largest generator count for lcm-lattices [default: $LCMFILT_GUARD_ATOMS or 25].")
@click.option("--max-generators", type=click.IntRange(min=1), default=DEFAULT_FILTRATION_GUARD, show_default=True,
              help="Largest generator count for the usual filtration.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True, help="Worker processes.")
@click.pass_context
def main(ctx, seed, guard_atoms, max_generators, jobs):
    """lcm-lattices, lcm-filtrations and their applications."""
    if guard_atoms is None:
        try:
            guard_atoms = env_guard_atoms()
        except ValueError as exc:
            _fail(EXIT_INPUT, str(exc))
    ctx.obj = Config(seed, guard_atoms, max_generators, jobs)


# --- ideal ------------------------------------------------------------------

@main.group()
def ideal():
    """Operations on a monomial ideal given as JSON."""


@ideal.command("filtration")
@click.argument("path")
@click.option("--kind", type=click.Choice(["both", "usual", "stepwise"]), default="both", show_default=True)
@output_option
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Also write the step-by-step comparison table here.")
@click.pass_obj
@guarded
def ideal_filtration(cfg, path, kind, output, csv_path):
    """Usual and/or stepwise lcm-filtration."""
    ideal = _load_ideal(path)
    ideal.require_nonzero()
    payload = {}
    usual = stepwise = None
    if kind in ("both", "usual"):
        usual = lcm_filtration(ideal, cfg.max_generators)
        payload["usual"] = usual.to_json()["steps"]
    if kind in ("both", "stepwise"):
        stepwise = stepwise_filtration(ideal)
        payload["stepwise"] = stepwise.to_json()["steps"]
    if usual is not None and stepwise is not None:
        report = compare(usual, stepwise)
        payload["equalities"] = [list(e) for e in report.equalities]
        payload["unmatched_usual"] = list(report.unmatched_usual)
        payload["unmatched_stepwise"] = list(report.unmatched_stepwise)
        if csv_path:
            _emit_csv(cfg, report.to_csv(), csv_path)
    elif csv_path:
        filt = usual or stepwise
        _emit_csv(cfg, filt.summary_csv(), csv_path)
    _emit_json(cfg, payload, output)


@ideal.command("lattice")
@click.argument("path")
@click.option("--elements/--no-elements", default=True, show_default=True)
@output_option
@click.pass_obj
@guarded
def ideal_lattice(cfg, path, elements, output):
    """lcm-lattice size and poset density."""
    lat = build_lcm_lattice(_load_ideal(path), cfg.guard)
    payload = lat.to_json(include_elements=elements)
    payload["pden"] = lat.density
    _emit_json(cfg, payload, output)


@ideal.command("corners")
@click.argument("path")
@field_option
@output_option
@click.pass_obj
@guarded
def ideal_corners(cfg, path, field, output):
    """Multidegrees with a nonzero multigraded Betti number."""
    table = sensitive_corners(_load_ideal(path), field, cfg.guard)
    rows = [{"i": i, "multidegree": list(mu.exponents), "betti": v} for i, mu, v in table.rows()]
    _emit_json(cfg, {"field": field, "corners": rows}, output)


# --- complex ----------------------------------------------------------------

@main.group("complex")
def complex_():
    """Operations on a simplicial complex given as JSON facets."""


@complex_.command("step")
@click.argument("path")
@click.option("--rule", type=click.Choice(["pairs", "codim1"]), default="pairs", show_default=True)
@click.option("--steps", type=click.IntRange(min=1), default=None, help="Stop after this many steps.")
@output_option
@click.pass_obj
@guarded
def complex_step(cfg, path, rule, steps, output):
    """Stepwise complex sequence until it stabilizes."""
    chain = stepwise_complex_filtration(_load_complex(path), rule, steps)
    _emit_json(cfg, {"rule": rule, "steps": [cx.to_json() for cx in chain]}, output)


@complex_.command("betti")
@click.argument("path")
@field_option
@click.option("--reduced", is_flag=True, help="Reduced Betti numbers, indexed from -1.")
@output_option
@click.pass_obj
@guarded
def complex_betti(cfg, path, field, reduced, output):
    cx = _load_complex(path)
    if reduced:
        payload = {"reduced": {str(d): v for d, v in sorted(reduced_betti_numbers(cx, field).items())}}
    else:
        payload = {"betti": betti_numbers(cx, field)}
    _emit_json(cfg, {"field": field, **payload}, output)


@complex_.command("fvector")
@click.argument("path")
@output_option
@click.pass_obj
@guarded
def complex_fvector(cfg, path, output):
    _emit_json(cfg, {"f": f_vector(_load_complex(path))}, output)


# --- graph ------------------------------------------------------------------

def _load_graph(path: str | None, complete: int | None) -> Graph:
    if complete is not None:
        return Graph.complete(complete)
    if path is None:
        raise ValueError("give a graph file or --complete N")
    return Graph.from_json(_read_json(path))


graph_source = [
    click.argument("path", required=False),
    click.option("--complete", type=click.IntRange(min=2), default=None, help="Use K_N instead of a file."),
]


def _graph_source(fn):
    for deco in reversed(graph_source):
        fn = deco(fn)
    return fn


@main.group()
def graph():
    """Cuts, cut ideals and the edge-deletion experiment."""


@graph.command("cuts")
@_graph_source
@click.option("--j", "j", type=click.IntRange(min=1), required=True, help="Number of blocks.")
@output_option
@click.pass_obj
@guarded
def graph_cuts(cfg, path, complete, j, output):
    """Partitions into j connected blocks."""
    cuts = enumerate_cuts(_load_graph(path, complete), j)
    _emit_json(cfg, {"j": j, "count": len(cuts), "cuts": [str(c) for c in cuts]}, output)


@graph.command("cutideal")
@_graph_source
@output_option
@click.pass_obj
@guarded
def graph_cutideal(cfg, path, complete, output):
    g = _load_graph(path, complete)
    _emit_json(cfg, {"ideal": cut_ideal(g).to_json()}, output)


def _run_er(cfg, n, runs, max_elements, output):
    rows = deletion_experiment(n, runs, cfg.seed, jobs=cfg.jobs, max_atoms=None, max_elements=max_elements)
    _emit_csv(cfg, experiment_csv(rows), output, experiment="edge-deletion", n=n, runs=runs,
              max_lattice_elements=max_elements)


def _run_kcurve(cfg, n, kinds, output):
    points = lattice_ratio_curve(n, kinds or KINDS, cfg.guard)
    _emit_csv(cfg, curve_csv(points), output, experiment="lattice-ratio", n=n)


er_options = [
    click.option("--n", type=click.IntRange(min=2), required=True, help="Vertices of the starting complete graph."),
    click.option("--runs", type=click.IntRange(min=1), default=10, show_default=True),
    click.option("--max-elements", type=click.IntRange(min=1), default=1 << 20, show_default=True,
                 help="Lattice size cap for each step."),
    output_option,
]


def _er_options(fn):
    for deco in reversed(er_options):
        fn = deco(fn)
    return fn


@graph.command("experiment")
@_er_options
@click.pass_obj
@guarded
def graph_experiment(cfg, n, runs, max_elements, output):
    """Delete the edges of K_n in random order and record pden per step."""
    _run_er(cfg, n, runs, max_elements, output)


# --- system -----------------------------------------------------------------

kind_choice = click.Choice(sorted(KIND_ALIASES))


@main.group()
def system():
    """Failure ideals of k-out-of-n systems."""


@system.command("signature")
@click.option("--kind", type=kind_choice, required=True)
@click.option("--n", type=click.IntRange(min=1), required=True)
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--fold", type=click.IntRange(min=1), default=1, show_default=True)
@output_option
@click.pass_obj
@guarded
def system_signature(cfg, kind, n, k, fold, output):
    """Exact (k-fold) signature as p/q strings."""
    spec = SystemSpec(kind, n, k)
    sig = kfold_signature(failure_ideal(spec), n, fold)
    _emit_json(cfg, {"kind": spec.kind, "n": n, "k": k, "fold": fold,
                     "s": format_signature(sig), "sum": normalizing_sum(sig)}, output)


kinds_option = click.option("--kind", "kinds", type=kind_choice, multiple=True, help="Repeatable; default all kinds.")


@system.command("kcurve")
@click.option("--n", type=click.IntRange(min=3), required=True)
@kinds_option
@output_option
@click.pass_obj
@guarded
def system_kcurve(cfg, n, kinds, output):
    """Lattice size over 2^r for k = 2..n-1."""
    _run_kcurve(cfg, n, kinds, output)


# --- experiment (shortcuts) ---------------------------------------------------

@main.group()
def experiment():
    """Plot-ready experiment tables."""


@experiment.command("er")
@_er_options
@click.pass_obj
@guarded
def experiment_er(cfg, n, runs, max_elements, output):
    _run_er(cfg, n, runs, max_elements, output)


@experiment.command("kcurve")
@click.option("--n", type=click.IntRange(min=3), required=True)
@kinds_option
@output_option
@click.pass_obj
@guarded
def experiment_kcurve(cfg, n, kinds, output):
    _run_kcurve(cfg, n, kinds, output)


# --- persist ----------------------------------------------------------------

def _conventions(aggregate, essential, internal_p) -> DistanceConventions:
    p = math.inf if internal_p == "inf" else float(internal_p)
    return DistanceConventions(aggregate=aggregate, essential=essential, internal_p=p)


convention_options = [
    click.option("--metric", type=click.Choice(["bottleneck", "wasserstein"]), default="bottleneck", show_default=True),
    click.option("--q", type=click.FloatRange(min=1), default=1.0, show_default=True, help="Wasserstein order."),
    click.option("--aggregate", type=click.Choice(["sum", "max"]), default="sum", show_default=True,
                 help="How per-dimension distances are combined."),
    click.option("--essential", type=click.Choice(["match", "ignore"]), default="match", show_default=True),
    click.option("--internal-p", default="inf", show_default=True, help="Ground metric exponent on the plane."),
]
mode_option = click.option("--mode", type=click.Choice(["usual", "stepwise"]), default="usual", show_default=True)


def _convention_options(fn):
    for deco in reversed(convention_options):
        fn = deco(fn)
    return fn


@main.group()
def persist():
    """Persistence diagrams of filtration-induced complex sequences."""


@persist.command("diagram")
@click.argument("path")
@mode_option
@click.option("--maxdim", type=click.IntRange(min=0), default=None)
@output_option
@click.pass_obj
@guarded
def persist_diagram(cfg, path, mode, maxdim, output):
    dgm = complex_diagram(_load_complex(path), mode, maxdim)
    _emit_json(cfg, {"mode": mode, **dgm.to_json()}, output)


def _diagram_from(path: str, mode: str) -> PersistenceDiagram:
    data = _read_json(path)
    if "dims" in data:
        return PersistenceDiagram.from_json(data)
    return complex_diagram(SimplicialComplex.from_json(data), mode)


@persist.command("distance")
@click.argument("first")
@click.argument("second")
@mode_option
@_convention_options
@output_option
@click.pass_obj
@guarded
def persist_distance(cfg, first, second, mode, metric, q, aggregate, essential, internal_p, output):
    """Distance between two diagrams (or complexes, diagrammed with --mode)."""
    conv = _conventions(aggregate, essential, internal_p)
    value = distance(_diagram_from(first, mode), _diagram_from(second, mode), metric, conv, q)
    _emit_json(cfg, {"metric": metric, "q": q, "aggregate": aggregate, "essential": essential,
                     "distance": _float(value)}, output)


@persist.command("matrix")
@click.argument("paths", nargs=-1)
@click.option("--fixtures", "use_fixtures", is_flag=True, help="Use the four bundled test complexes.")
@mode_option
@_convention_options
@output_option
@click.pass_obj
@guarded
def persist_matrix(cfg, paths, use_fixtures, mode, metric, q, aggregate, essential, internal_p, output):
    """Pairwise distance matrix as CSV."""
    if use_fixtures:
        complexes = list(fixtures.sample_complexes().values())
        labels = list(fixtures.LABELS)
    elif paths:
        complexes = [_load_complex(p) for p in paths]
        labels = None
    else:
        raise ValueError("give complex files or --fixtures")
    conv = _conventions(aggregate, essential, internal_p)
    diagrams = [complex_diagram(cx, mode) for cx in complexes]
    mat = diagram_distance_matrix(diagrams, metric, conv, q)
    _emit_csv(cfg, matrix_csv(mat, labels), output, mode=mode, metric=metric, aggregate=aggregate)


# --- reproduce-paper ----------------------------------------------------------

@main.command("reproduce-paper")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--enumerate-upto", type=click.IntRange(min=2, max=10), default=6, show_default=True,
              help="Enumerate cuts of K_i for i up to this value; larger rows use the recurrence.")
@output_option
@click.pass_obj
@guarded
def reproduce_paper(cfg, fmt, enumerate_upto, output):
    """Recompute all bundled reference values; exit 4 if any check fails."""
    report = reproduce(enumerate_upto=enumerate_upto)
    if fmt == "json":
        _emit_json(cfg, report.to_json(), output)
    else:
        _emit(cfg.header() + report.to_text(), output)
    if report.failed:
        sys.exit(EXIT_MISMATCH)


if __name__ == "__main__":
    main()
