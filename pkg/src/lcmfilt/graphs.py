"""Cut ideals and partition ideals of graphs, and the edge-deletion experiment.

Vertices are ``0..n-1``.  Edge ``(u, v)`` with ``u < v`` gets variable index
from the lexicographic order of edges.
"""
from __future__ import annotations

import csv
import hashlib
import io
import random
import struct
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .lattice import GuardExceeded, build_lcm_lattice
from .monomial import Monomial, MonomialIdeal
from .simplicial import SimplicialComplex


@dataclass(frozen=True)
class Graph:
    nvertices: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, nvertices: int, edges) -> Graph:
        if nvertices < 1:
            raise ValueError("a graph needs at least one vertex")
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < nvertices and 0 <= v < nvertices):
                raise ValueError(f"edge ({u}, {v}) outside vertex range")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"repeated edge {e}")
            seen.add(e)
        return cls(nvertices, tuple(sorted(seen)))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, tuple(combinations(range(n), 2)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def star(cls, n: int) -> Graph:
        return cls(n, tuple((0, i) for i in range(1, n)))

    @property
    def nedges(self) -> int:
        return len(self.edges)

    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def edge_names(self) -> list[str]:
        if self.nvertices <= 9:
            return [f"e{u + 1}{v + 1}" for u, v in self.edges]
        return [f"e{u + 1}_{v + 1}" for u, v in self.edges]

    def density(self) -> float:
        total = comb(self.nvertices, 2)
        return self.nedges / total if total else 0.0

    def adjacency(self) -> list[int]:
        adj = [0] * self.nvertices
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def without(self, edge) -> Graph:
        return Graph(self.nvertices, tuple(e for e in self.edges if e != edge))

    def to_json(self) -> dict:
        return {"nvertices": self.nvertices, "edges": [[u + 1, v + 1] for u, v in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        try:
            return cls.from_edges(int(data["nvertices"]), [(int(u) - 1, int(v) - 1) for u, v in data["edges"]])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed graph JSON: {exc}") from exc


def _connected(block: int, adj: list[int]) -> bool:
    start = block & -block
    seen = start
    frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        nbrs = adj[low.bit_length() - 1] & block & ~seen
        seen |= nbrs
        frontier |= nbrs
    return seen == block


# --- partitions -------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """Set partition; blocks ordered by their smallest element."""

    blocks: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, blocks) -> Partition:
        blocks = [frozenset(b) for b in blocks]
        if any(not b for b in blocks):
            raise ValueError("empty block")
        union: set[int] = set()
        for b in blocks:
            if union & b:
                raise ValueError("blocks overlap")
            union |= b
        return cls(tuple(sorted(blocks, key=min)))

    @classmethod
    def parse(cls, text: str) -> Partition:
        """``Partition.parse("1|23")``, 1-based single-digit vertices."""
        return cls.of([int(c) - 1 for c in part] for part in text.split("|"))

    @property
    def ground(self) -> frozenset[int]:
        return frozenset().union(*self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self) -> dict[int, int]:
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    def __str__(self) -> str:
        return "|".join("".join(str(v + 1) for v in sorted(b)) for b in self.blocks)


def set_partitions(n: int, j: int):
    """All partitions of ``range(n)`` into exactly ``j`` blocks, as block-label lists."""
    labels = [0] * n

    def rec(i: int, used: int):
        if n - i < j - used:
            return
        if i == n:
            if used == j:
                yield list(labels)
            return
        for b in range(used):
            labels[i] = b
            yield from rec(i + 1, used)
        if used < j:
            labels[i] = used
            yield from rec(i + 1, used + 1)

    if n == 0:
        return
    yield from rec(0, 0)


def _blocks(labels: list[int], j: int) -> list[int]:
    out = [0] * j
    for v, b in enumerate(labels):
        out[b] |= 1 << v
    return out


def enumerate_cuts(graph: Graph, j: int) -> list[Partition]:
    """All ``j``-partitions of the vertex set whose blocks induce connected subgraphs."""
    if not 1 <= j <= graph.nvertices:
        raise ValueError(f"j={j} outside 1..{graph.nvertices}")
    adj = graph.adjacency()
    out = []
    for labels in set_partitions(graph.nvertices, j):
        blocks = _blocks(labels, j)
        if all(_connected(b, adj) for b in blocks):
            out.append(Partition.of(_mask_verts(b) for b in blocks))
    return out


def _mask_verts(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def crossing_mask(graph: Graph, labels) -> int:
    """Edge-variable mask of the edges joining different blocks."""
    m = 0
    for i, (u, v) in enumerate(graph.edges):
        if labels[u] != labels[v]:
            m |= 1 << i
    return m


def cut_monomial(graph: Graph, part: Partition) -> Monomial:
    if part.ground != frozenset(range(graph.nvertices)):
        raise ValueError("partition does not cover the vertex set")
    where = part.block_of()
    return Monomial.from_mask(crossing_mask(graph, where), graph.nedges)


def cut_ideal(graph: Graph) -> MonomialIdeal:
    """Ideal of crossing monomials of 2-partitions, unit monomials excluded.

    Defined for any graph with an edge: non-crossing bipartitions of a
    disconnected graph would give the unit monomial and are skipped.  For
    connected graphs this agrees with the 2-cut ideal.
    """
    if graph.nedges == 0:
        raise ValueError("the cut ideal of an edgeless graph is undefined")
    n = graph.nvertices
    gens = set()
    # vertex n-1 always on side 0 so each bipartition is seen once
    for side in range(1, 1 << (n - 1)):
        labels = [(side >> v) & 1 for v in range(n)]
        m = crossing_mask(graph, labels)
        if m:
            gens.add(m)
    return MonomialIdeal.from_generators(
        graph.nedges, (Monomial.from_mask(m, graph.nedges) for m in gens), graph.edge_names()
    )


def partition_ideal(graph: Graph, j: int) -> MonomialIdeal:
    """Ideal generated by the crossing monomials of all ``j``-cuts."""
    adj = graph.adjacency()
    gens = set()
    for labels in set_partitions(graph.nvertices, j):
        if all(_connected(b, adj) for b in _blocks(labels, j)):
            gens.add(crossing_mask(graph, labels))
    if not gens:
        raise ValueError(f"graph has no {j}-cuts")
    return MonomialIdeal.from_generators(
        graph.nedges, (Monomial.from_mask(m, graph.nedges) for m in gens), graph.edge_names()
    )


def is_forest_mask(graph: Graph, mask: int) -> bool:
    parent = list(range(graph.nvertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (u, v) in enumerate(graph.edges):
        if mask >> i & 1:
            a, b = find(u), find(v)
            if a == b:
                return False
            parent[a] = b
    return True


def acyclic_edge_sets(graph: Graph, size: int) -> list[int]:
    out = []
    for combo in combinations(range(graph.nedges), size):
        mask = 0
        for i in combo:
            mask |= 1 << i
        if is_forest_mask(graph, mask):
            out.append(mask)
    return out


def spanning_tree_complement_facets(i: int) -> SimplicialComplex:
    """Complex on the edges of K_i whose facets are complements of spanning trees."""
    if i < 2:
        raise ValueError("need i >= 2")
    return forest_complement_complex(i, i - 1)


def forest_complement_complex(i: int, size: int) -> SimplicialComplex:
    g = Graph.complete(i)
    full = (1 << g.nedges) - 1
    return SimplicialComplex.from_masks(g.nedges, [full & ~m for m in acyclic_edge_sets(g, size)])


def partitions_compatible(delta: Partition, tau: Partition) -> bool:
    """Same number of blocks, each block of ``delta`` nested with some block of ``tau``."""
    if delta.ground != tau.ground:
        raise ValueError("partitions of different sets")
    if len(delta) != len(tau):
        return False
    return all(any(d <= t or t <= d for t in tau.blocks) for d in delta.blocks)


def partition_refines(delta: Partition, tau: Partition) -> bool:
    """``delta`` has more blocks, each inside a block of ``tau``."""
    if delta.ground != tau.ground:
        raise ValueError("partitions of different sets")
    if not len(tau) < len(delta):
        return False
    return all(any(d <= t for t in tau.blocks) for d in delta.blocks)


def partition_union(delta: Partition, tau: Partition) -> Partition:
    """Blocks common to both, or nested inside a block of the other.

    Raises ``ValueError`` for incompatible inputs, and when the selected
    blocks fail to cover the ground set (e.g. ``1|23`` with ``12|3`` selects
    only ``1`` and ``3``).
    """
    if not partitions_compatible(delta, tau):
        raise ValueError("union is only defined for compatible partitions")
    chosen = {d for d in delta.blocks if any(d <= t for t in tau.blocks)}
    chosen |= {t for t in tau.blocks if any(t < d for d in delta.blocks)}
    covered = frozenset().union(*chosen) if chosen else frozenset()
    if covered != delta.ground or sum(len(b) for b in chosen) != len(covered):
        raise ValueError(f"union of {delta} and {tau} is not a partition")
    return Partition.of(chosen)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if n == k:
        return 1
    if k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def verify_cut_theorem(i: int, kmax: int | None = None, max_generators: int = 22) -> dict[int, bool]:
    """Check I_{2^(k-1)} = ... = I_{2^k - 1} = P_{i,k+1} for the cut ideal of K_i.

    Returns ``{k: holds}`` for every ``k <= kmax`` with ``2^k - 1 <= r``.
    """
    from .filtration import lcm_filtration

    g = Graph.complete(i)
    ideal = cut_ideal(g)
    filt = lcm_filtration(ideal, max_generators)
    r = ideal.r
    results = {}
    k = 1
    while 2**k - 1 <= r and (kmax is None or k <= kmax):
        target = partition_ideal(g, k + 1)
        results[k] = all(filt.step(s) == target for s in range(2 ** (k - 1), 2**k))
        k += 1
    return results


# --- random graphs ------------------------------------------------------------

def _uniform(*key: int) -> float:
    h = hashlib.blake2b(struct.pack(f">{len(key)}q", *key), digest_size=8).digest()
    return int.from_bytes(h, "big") / 2**64


def derive_seed(seed: int, stream: int) -> int:
    h = hashlib.blake2b(struct.pack(">qq", seed, stream), digest_size=8).digest()
    return int.from_bytes(h, "big")


def er_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p) where edge number ``i`` is kept iff ``U(seed, i) < p``."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    edges = [e for i, e in enumerate(combinations(range(n), 2)) if _uniform(seed, i) < p]
    return Graph(n, tuple(edges))


@dataclass(frozen=True)
class DeletionRow:
    run: int
    step: int
    edges_remaining: int
    density: float
    generators: int | None
    pden: float | None
    is_forest: bool


EXPERIMENT_COLUMNS = ["run", "step", "edges_remaining", "density", "generators", "pden"]


def deletion_run(n: int, run: int, seed: int, max_atoms: int | None = None, max_elements: int = 1 << 20) -> list[DeletionRow]:
    """Delete the edges of K_n in a seeded random order, measuring pden each step."""
    rng = random.Random(derive_seed(seed, run))
    g = Graph.complete(n)
    order = list(g.edges)
    rng.shuffle(order)
    rows = []
    for step in range(len(order) + 1):
        if step:
            g = g.without(order[step - 1])
        forest = is_forest_mask(g, (1 << g.nedges) - 1)
        if g.nedges == 0:
            rows.append(DeletionRow(run, step, 0, 0.0, None, None, forest))
            continue
        ideal = cut_ideal(g)
        try:
            pden = float(build_lcm_lattice(ideal, max_atoms, max_elements).density)
        except GuardExceeded:
            pden = None
        rows.append(DeletionRow(run, step, g.nedges, g.density(), ideal.r, pden, forest))
    return rows


def deletion_experiment(n: int, runs: int, seed: int, jobs: int = 1, **guards) -> list[DeletionRow]:
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            futures = [pool.submit(deletion_run, n, run, seed, **guards) for run in range(runs)]
            parts = [f.result() for f in futures]
    else:
        parts = [deletion_run(n, run, seed, **guards) for run in range(runs)]
    return [row for part in parts for row in part]


def fmt_float(x: float | None) -> str:
    if x is None:
        return ""
    return f"{x:.12g}"


def experiment_csv(rows: list[DeletionRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EXPERIMENT_COLUMNS)
    for r in rows:
        w.writerow([r.run, r.step, r.edges_remaining, fmt_float(r.density),
                    "" if r.generators is None else r.generators, fmt_float(r.pden)])
    return buf.getvalue()
