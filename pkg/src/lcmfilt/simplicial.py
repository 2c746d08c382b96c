"""Simplicial complexes, the Stanley-Reisner correspondence and Hochster's formula.

Faces are handled internally as vertex bitmasks; the public API speaks in
sorted vertex tuples (0-based).  Complex JSON files use 1-based vertices.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .lattice import build_lcm_lattice
from .linalg import rank
from .monomial import Monomial, MonomialIdeal, NotSquarefreeError


class VoidComplexError(ValueError):
    pass


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _verts(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def maximal_masks(masks) -> list[int]:
    cands = sorted(set(masks), key=int.bit_count, reverse=True)
    kept: list[int] = []
    for m in cands:
        if not any(m & ~f == 0 for f in kept):
            kept.append(m)
    return kept


def minimal_masks(masks) -> list[int]:
    cands = sorted(set(masks), key=int.bit_count)
    kept: list[int] = []
    for m in cands:
        if not any(g & ~m == 0 for g in kept):
            kept.append(m)
    return kept


def minimal_transversals(edges, nvertices: int) -> list[int]:
    """Minimal vertex sets meeting every edge of a hypergraph (Berge's method).

    An empty edge can never be met, so the answer is then the empty list.
    """
    trans = [0]
    for e in minimal_masks(edges):
        if e == 0:
            return []
        nxt = []
        for t in trans:
            if t & e:
                nxt.append(t)
            else:
                v = e
                while v:
                    low = v & -v
                    nxt.append(t | low)
                    v ^= low
        trans = minimal_masks(nxt)
    return trans


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex on vertices ``0..nvertices-1`` given by its facets.

    ``facets == ()`` is the void complex; ``facets == ((),)`` the irrelevant
    complex whose only face is the empty set.
    """

    nvertices: int
    facets: tuple[tuple[int, ...], ...]

    @classmethod
    def from_facets(cls, nvertices: int, facets) -> SimplicialComplex:
        masks = []
        for f in facets:
            f = tuple(f)
            for v in f:
                if not 0 <= v < nvertices:
                    raise ValueError(f"vertex {v} outside 0..{nvertices - 1}")
            masks.append(_mask(f))
        return cls.from_masks(nvertices, masks)

    @classmethod
    def from_masks(cls, nvertices: int, masks) -> SimplicialComplex:
        facets = sorted(_verts(m) for m in maximal_masks(masks))
        return cls(nvertices, tuple(sorted(facets, key=lambda f: (len(f), f))))

    @classmethod
    def void(cls, nvertices: int) -> SimplicialComplex:
        return cls(nvertices, ())

    @classmethod
    def simplex(cls, nvertices: int) -> SimplicialComplex:
        return cls(nvertices, (tuple(range(nvertices)),))

    def is_void(self) -> bool:
        return not self.facets

    def is_irrelevant(self) -> bool:
        return self.facets == ((),)

    @property
    def dimension(self) -> int:
        if self.is_void():
            raise VoidComplexError("the void complex has no dimension")
        return max(len(f) for f in self.facets) - 1

    def facet_masks(self) -> list[int]:
        return [_mask(f) for f in self.facets]

    def contains(self, face) -> bool:
        m = _mask(face)
        return any(m & ~f == 0 for f in self.facet_masks())

    def face_masks(self) -> set[int]:
        faces: set[int] = set()
        for f in self.facet_masks():
            if f in faces:
                continue
            # enumerate all submasks of the facet
            sub = f
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f
        return faces

    def faces(self) -> list[tuple[int, ...]]:
        return sorted((_verts(m) for m in self.face_masks()), key=lambda f: (len(f), f))

    def is_subcomplex_of(self, other: SimplicialComplex) -> bool:
        big = other.facet_masks()
        return all(any(f & ~g == 0 for g in big) for f in self.facet_masks())

    def to_json(self) -> dict:
        return {"nvertices": self.nvertices, "facets": [[v + 1 for v in f] for f in self.facets]}

    @classmethod
    def from_json(cls, data: dict) -> SimplicialComplex:
        try:
            n = int(data["nvertices"])
            facets = [[int(v) - 1 for v in f] for f in data["facets"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed complex JSON: {exc}") from exc
        return cls.from_facets(n, facets)

    def format(self) -> str:
        if self.is_void():
            return "void"
        return "{" + ", ".join("".join(str(v + 1) for v in f) or "{}" for f in self.facets) + "}"


# --- Stanley-Reisner correspondence ----------------------------------------

def sr_ideal(cx: SimplicialComplex) -> MonomialIdeal:
    """Ideal of minimal non-faces.

    A set is a non-face iff it meets the complement of every facet, so the
    minimal non-faces are the minimal transversals of the facet complements.
    The full simplex gives the zero ideal.
    """
    if cx.is_void():
        raise VoidComplexError("the void complex has no Stanley-Reisner ideal")
    full = (1 << cx.nvertices) - 1
    comps = [full & ~f for f in cx.facet_masks()]
    gens = minimal_transversals(comps, cx.nvertices)
    return MonomialIdeal.from_generators(cx.nvertices, (Monomial.from_mask(g, cx.nvertices) for g in gens))


def sr_complex(ideal: MonomialIdeal) -> SimplicialComplex:
    """Complex of all sets whose monomial avoids ``ideal``.

    Facets are the complements of the minimal vertex covers of the generator
    supports.
    """
    if not ideal.is_squarefree():
        raise NotSquarefreeError("sr_complex needs a squarefree ideal; polarize first")
    n = ideal.nvars
    if ideal.is_zero():
        return SimplicialComplex.simplex(n)
    full = (1 << n) - 1
    covers = minimal_transversals(ideal.masks(), n)
    return SimplicialComplex.from_masks(n, [full & ~c for c in covers])


def stepwise_complex_step(cx: SimplicialComplex, rule: str = "pairs") -> SimplicialComplex:
    """One step of the stepwise filtration on the complex side.

    ``rule="pairs"`` adds every set containing at most one minimal non-face of
    ``cx``; this is the complex of the pairwise-lcm ideal.  ``rule="codim1"`` adds
    every set all but at most one of whose codimension-one subsets are faces.
    The two agree unless some non-face sits inside a set with two vertices to
    spare (e.g. ``{a,b,e}`` over the non-face ``{e}``), where ``codim1`` is smaller.
    """
    if cx.is_void():
        return cx
    if rule == "pairs":
        return _pairs_step(cx)
    if rule == "codim1":
        return _codim1_step(cx)
    raise ValueError(f"unknown rule {rule!r}")


def _codim1_step(cx: SimplicialComplex) -> SimplicialComplex:
    # a qualifying set with >= 2 vertices contains a face plus one vertex;
    # singletons always qualify
    n = cx.nvertices
    faces = cx.face_masks()
    added = {1 << v for v in range(n)}
    for f in faces:
        for v in range(n):
            bit = 1 << v
            if f & bit:
                continue
            cand = f | bit
            if cand in faces or cand in added:
                continue
            present = 0
            w = cand
            while w:
                low = w & -w
                if (cand ^ low) in faces:
                    present += 1
                w ^= low
            if present >= cand.bit_count() - 1:
                added.add(cand)
    return SimplicialComplex.from_masks(n, list(faces | added))


def minimal_nonfaces(cx: SimplicialComplex) -> list[int]:
    """Minimal non-faces as masks, found by growing faces by one vertex."""
    faces = cx.face_masks()
    out = set()
    for f in faces:
        for v in range(cx.nvertices):
            cand = f | (1 << v)
            if cand == f or cand in faces:
                continue
            w = cand
            ok = True
            while w:
                low = w & -w
                if (cand ^ low) not in faces:
                    ok = False
                    break
                w ^= low
            if ok:
                out.add(cand)
    if not faces:
        out.add(0)
    return sorted(out)


def _pairs_step(cx: SimplicialComplex) -> SimplicialComplex:
    n = cx.nvertices
    nonfaces = minimal_nonfaces(cx)
    new = list(cx.facet_masks())
    for s in nonfaces:
        others = [t for t in nonfaces if t != s]
        outside = [v for v in range(n) if not s >> v & 1]

        def grow(i: int, cur: int) -> None:
            extended = False
            for j in range(i, len(outside)):
                nxt = cur | (1 << outside[j])
                if any(t & ~nxt == 0 for t in others):
                    continue
                extended = True
                grow(j + 1, nxt)
            if not extended:
                new.append(cur)

        if not any(t & ~s == 0 for t in others):
            grow(0, s)
    return SimplicialComplex.from_masks(n, new)


def stepwise_complex_filtration(cx: SimplicialComplex, rule: str = "pairs", max_steps: int | None = None) -> list[SimplicialComplex]:
    """Iterate :func:`stepwise_complex_step` until the first fixed point."""
    out = [cx]
    while max_steps is None or len(out) < max_steps:
        nxt = stepwise_complex_step(out[-1], rule)
        if nxt == out[-1]:
            break
        out.append(nxt)
    return out


# --- homology ---------------------------------------------------------------

def f_vector(cx: SimplicialComplex) -> list[int]:
    if cx.is_void():
        raise VoidComplexError("f-vector of the void complex is undefined")
    counts = [0] * (cx.dimension + 2)
    for m in cx.face_masks():
        counts[m.bit_count()] += 1
    return counts


def _faces_by_dim(cx: SimplicialComplex) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for m in cx.face_masks():
        out.setdefault(m.bit_count() - 1, []).append(m)
    for d in out:
        out[d].sort()
    return out


def boundary_matrix(rows: list[int], cols: list[int]) -> list[list[int]]:
    """Signed boundary from faces ``cols`` (dim d) to ``rows`` (dim d-1)."""
    index = {m: i for i, m in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for j, c in enumerate(cols):
        sign = 1
        w = c
        while w:
            low = w & -w
            mat[index[c ^ low]][j] = sign
            sign = -sign
            w ^= low
    return mat


def _reduced_homology(cx: SimplicialComplex, field="Q") -> dict[int, int]:
    """Reduced Betti numbers keyed by dimension, from -1 up; void gives ``{}``."""
    if cx.is_void():
        return {}
    faces = _faces_by_dim(cx)
    top = max(faces)
    ranks = {}
    for d in range(0, top + 1):
        ranks[d] = rank(boundary_matrix(faces[d - 1], faces[d]), field)
    ranks[top + 1] = 0
    out = {}
    for d in range(-1, top + 1):
        out[d] = len(faces[d]) - ranks.get(d, 0) - ranks[d + 1]
    return out


def reduced_betti_numbers(cx: SimplicialComplex, field="Q") -> dict[int, int]:
    if cx.is_void():
        raise VoidComplexError("homology of the void complex is not defined here")
    return _reduced_homology(cx, field)


def betti_numbers(cx: SimplicialComplex, field="Q") -> list[int]:
    """Ordinary (non-reduced) Betti numbers beta_0, beta_1, ..."""
    red = reduced_betti_numbers(cx, field)
    top = max(red)
    out = [red[d] for d in range(0, top + 1)]
    if out:
        out[0] += 1
    return out


def reduced_homology_dim(cx: SimplicialComplex, d: int, field="Q") -> int:
    """dim of reduced homology in degree ``d``; zero for the void complex."""
    return _reduced_homology(cx, field).get(d, 0)


# --- Koszul complexes and Hochster's formula --------------------------------

def upper_koszul(ideal: MonomialIdeal, mu: Monomial) -> SimplicialComplex:
    """``{tau in supp(mu) : x^(mu - tau) in I}``, on the support of ``mu``.

    Vertices are the support positions of ``mu`` in increasing order; the
    complex lives on ``len(supp(mu))`` vertices.
    """
    supp = mu.support
    faces = []
    for size in range(len(supp) + 1):
        for tau in combinations(range(len(supp)), size):
            exps = list(mu.exponents)
            for t in tau:
                exps[supp[t]] -= 1
            if ideal.contains(Monomial(tuple(exps))):
                faces.append(_mask(tau))
    return SimplicialComplex.from_masks(len(supp), faces)


def lower_koszul(ideal: MonomialIdeal, mu: Monomial) -> SimplicialComplex:
    """``{tau in supp(mu) : x^(mu' + tau) not in I}`` with ``mu' = mu - supp(mu)``."""
    supp = mu.support
    base = [e - 1 if e else 0 for e in mu.exponents]
    faces = []
    for size in range(len(supp) + 1):
        for tau in combinations(range(len(supp)), size):
            exps = list(base)
            for t in tau:
                exps[supp[t]] += 1
            if not ideal.contains(Monomial(tuple(exps))):
                faces.append(_mask(tau))
    return SimplicialComplex.from_masks(len(supp), faces)


def betti_at(ideal: MonomialIdeal, mu: Monomial, i: int, field="Q") -> int:
    """Multigraded Betti number beta_{i,mu}(I) via the upper Koszul complex."""
    return reduced_homology_dim(upper_koszul(ideal, mu), i - 1, field)


def betti_at_lower(ideal: MonomialIdeal, mu: Monomial, i: int, field="Q") -> int:
    """beta_{i,mu}(I) through the lower Koszul complex: H~_{s-i-2}(K_mu), s = |supp(mu)|.

    The lower complex is the Alexander dual of the upper one inside the
    simplex on supp(mu), which fixes the shift.  For squarefree mu, s is the
    total degree; for other mu the total degree would give the wrong index.
    """
    return reduced_homology_dim(lower_koszul(ideal, mu), len(mu.support) - i - 2, field)


@dataclass(frozen=True)
class BettiTable:
    entries: dict

    def total(self, i: int) -> int:
        return sum(v for (j, _), v in self.entries.items() if j == i)

    def corners(self) -> list[Monomial]:
        return sorted({mu for _, mu in self.entries})

    def rows(self) -> list[tuple[int, Monomial, int]]:
        return sorted(((i, mu, v) for (i, mu), v in self.entries.items()), key=lambda t: (t[0], t[1].sort_key()))


def sensitive_corners(ideal: MonomialIdeal, field="Q", max_atoms: int | None = -1) -> BettiTable:
    """All ``(i, mu)`` with mu in the lcm-lattice and beta_{i,mu} nonzero."""
    lattice = build_lcm_lattice(ideal, max_atoms)
    entries = {}
    for mu in lattice.elements:
        if mu.is_one():
            continue
        cx = upper_koszul(ideal, mu)
        red = _reduced_homology(cx, field)
        for d, v in red.items():
            if v:
                entries[(d + 1, mu)] = v
    return BettiTable(entries)
