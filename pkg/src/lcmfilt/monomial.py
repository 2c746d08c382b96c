"""Monomials, monomial ideals and the squarefree fast path.

Monomials are exponent vectors.  Squarefree monomials can additionally be
packed into integer bitmasks (bit ``i`` set iff ``x_i`` divides), in which
case ``lcm`` is bitwise OR and divisibility is a mask test.  The lattice and
filtration code pick whichever backend fits the input; both produce the same
:class:`Monomial` objects on the way out.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

MAX_EXPONENT = 2**31 - 1


class DimensionMismatch(ValueError):
    pass


class ZeroIdealError(ValueError):
    """Raised when an operation needs at least one generator."""


class NotSquarefreeError(ValueError):
    pass


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        for e in exps:
            if e < 0 or e > MAX_EXPONENT:
                raise ValueError(f"exponent out of range: {e}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def one(cls, nvars: int) -> Monomial:
        return cls((0,) * nvars)

    @classmethod
    def from_support(cls, support: Iterable[int], nvars: int) -> Monomial:
        exps = [0] * nvars
        for i in support:
            exps[i] = 1
        return cls(tuple(exps))

    @classmethod
    def from_mask(cls, mask: int, nvars: int) -> Monomial:
        return cls(tuple((mask >> i) & 1 for i in range(nvars)))

    @property
    def nvars(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exponents) if e)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def is_one(self) -> bool:
        return not any(self.exponents)

    def to_mask(self) -> int:
        if not self.is_squarefree():
            raise NotSquarefreeError(f"{self} is not squarefree")
        mask = 0
        for i, e in enumerate(self.exponents):
            if e:
                mask |= 1 << i
        return mask

    def sort_key(self):
        # graded lex, x_1 > x_2 > ...: ascending degree, then x_1-heavy first
        return (self.degree, tuple(-e for e in self.exponents))

    def __lt__(self, other: Monomial) -> bool:
        return self.sort_key() < other.sort_key()

    def __mul__(self, other: Monomial) -> Monomial:
        _check_dims(self, other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def format(self, names: Sequence[str] | None = None) -> str:
        if self.is_one():
            return "1"
        names = names or default_names(self.nvars)
        parts = []
        for name, e in zip(names, self.exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.format()


def default_names(nvars: int) -> list[str]:
    if nvars <= 26:
        return [chr(ord("a") + i) for i in range(nvars)]
    return [f"x{i + 1}" for i in range(nvars)]


def _check_dims(a: Monomial, b: Monomial) -> None:
    if len(a.exponents) != len(b.exponents):
        raise DimensionMismatch(f"ambient dimensions differ: {len(a.exponents)} vs {len(b.exponents)}")


def lcm(a: Monomial, b: Monomial) -> Monomial:
    _check_dims(a, b)
    return Monomial(tuple(map(max, a.exponents, b.exponents)))


def lcm_all(monomials: Iterable[Monomial], nvars: int) -> Monomial:
    out = [0] * nvars
    for m in monomials:
        if m.nvars != nvars:
            raise DimensionMismatch(f"expected {nvars} variables, got {m.nvars}")
        out = [max(x, y) for x, y in zip(out, m.exponents)]
    return Monomial(tuple(out))


def divides(a: Monomial, b: Monomial) -> bool:
    _check_dims(a, b)
    return all(x <= y for x, y in zip(a.exponents, b.exponents))


# --- raw backends: tuples of exponents, or squarefree bitmasks -------------

def tuple_lcm(a, b):
    return tuple(map(max, a, b))


def tuple_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mask_lcm(a, b):
    return a | b


def mask_divides(a, b):
    return a & ~b == 0


class Backend:
    """Raw encoding used by the combinatorial inner loops."""

    def __init__(self, squarefree: bool, nvars: int):
        self.squarefree = squarefree
        self.nvars = nvars
        if squarefree:
            self.lcm, self.divides = mask_lcm, mask_divides
            self.one = 0
        else:
            self.lcm, self.divides = tuple_lcm, tuple_divides
            self.one = (0,) * nvars

    @classmethod
    def for_monomials(cls, monomials: Sequence[Monomial], nvars: int) -> Backend:
        return cls(all(m.is_squarefree() for m in monomials), nvars)

    def encode(self, m: Monomial):
        return m.to_mask() if self.squarefree else m.exponents

    def decode(self, raw) -> Monomial:
        if self.squarefree:
            return Monomial.from_mask(raw, self.nvars)
        return Monomial(raw)


def minimal_raw(raws: Iterable, backend: Backend) -> list:
    """Divisibility antichain of raw monomials (order unspecified)."""
    degree = int.bit_count if backend.squarefree else sum
    cands = sorted(set(raws), key=degree)
    div = backend.divides
    kept: list = []
    lower: list = []  # kept generators of strictly smaller degree than the current one
    current = None
    # distinct monomials of equal degree never divide each other
    for m in cands:
        d = degree(m)
        if d != current:
            lower = list(kept)
            current = d
        if not any(div(g, m) for g in lower):
            kept.append(m)
    return kept


def minimalize(gens: Iterable[Monomial]) -> list[Monomial]:
    gens = list(gens)
    if not gens:
        return []
    nvars = gens[0].nvars
    for g in gens:
        if g.nvars != nvars:
            raise DimensionMismatch("generators live in different rings")
    backend = Backend.for_monomials(gens, nvars)
    kept = minimal_raw((backend.encode(g) for g in gens), backend)
    return sorted((backend.decode(m) for m in kept), key=Monomial.sort_key)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators.

    Construct through :meth:`from_generators`, which minimalizes and records
    whether the input was redundant.  An empty generator tuple is the zero
    ideal.
    """

    nvars: int
    generators: tuple[Monomial, ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)
    reduced: bool = field(default=False, compare=False)

    @classmethod
    def from_generators(cls, nvars: int, gens: Iterable[Monomial], names: Sequence[str] | None = None) -> MonomialIdeal:
        if nvars < 1:
            raise ValueError("nvars must be positive")
        gens = list(gens)
        for g in gens:
            if g.nvars != nvars:
                raise DimensionMismatch(f"generator {g.exponents} does not have {nvars} variables")
        minimal = minimalize(gens)
        reduced = len(minimal) != len(gens)
        if names is not None:
            names = tuple(names)
            if len(names) != nvars:
                raise ValueError("names must match nvars")
        return cls(nvars, tuple(minimal), names, reduced)

    @classmethod
    def from_exponents(cls, nvars: int, vectors: Iterable[Sequence[int]], names=None) -> MonomialIdeal:
        return cls.from_generators(nvars, (Monomial(tuple(v)) for v in vectors), names)

    @classmethod
    def from_supports(cls, nvars: int, supports: Iterable[Iterable[int]], names=None) -> MonomialIdeal:
        return cls.from_generators(nvars, (Monomial.from_support(s, nvars) for s in supports), names)

    @classmethod
    def parse(cls, text: str | Sequence[str], names: Sequence[str]) -> MonomialIdeal:
        """``MonomialIdeal.parse("abc, bd, cd, e", "abcde")``."""
        if isinstance(text, str):
            items = [t for t in re.split(r"[,\s]+", text.strip()) if t]
        else:
            items = list(text)
        names = list(names)
        gens = [parse_monomial(t, names) for t in items]
        return cls.from_generators(len(names), gens, names)

    @property
    def r(self) -> int:
        return len(self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def require_nonzero(self) -> None:
        if self.is_zero():
            raise ZeroIdealError("operation requires a nonzero ideal")

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.generators)

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.generators)

    def __contains__(self, m: Monomial) -> bool:
        return self.contains(m)

    def masks(self) -> list[int]:
        return [g.to_mask() for g in self.generators]

    def format(self) -> str:
        names = list(self.names) if self.names else None
        return "<" + ", ".join(g.format(names) for g in self.generators) + ">"

    def __str__(self) -> str:
        return self.format()

    def to_json(self) -> dict:
        out = {"nvars": self.nvars, "generators": [list(g.exponents) for g in self.generators]}
        if self.names:
            out["vars"] = list(self.names)
        return out

    @classmethod
    def from_json(cls, data: dict) -> MonomialIdeal:
        try:
            nvars = int(data["nvars"])
            gens = data["generators"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed ideal JSON: {exc}") from exc
        names = data.get("vars")
        return cls.from_exponents(nvars, gens, names)


def parse_monomial(token: str, names: Sequence[str]) -> Monomial:
    """Parse ``"ab^2c"`` or ``"x1x3^2"`` against the given variable names."""
    exps = [0] * len(names)
    if token.strip() == "1":
        return Monomial(tuple(exps))
    # longest names first so that x10 wins over x1
    order = sorted(range(len(names)), key=lambda i: -len(names[i]))
    pos = 0
    while pos < len(token):
        for i in order:
            if token.startswith(names[i], pos):
                pos += len(names[i])
                m = re.match(r"\^(\d+)", token[pos:])
                if m:
                    exps[i] += int(m.group(1))
                    pos += m.end()
                else:
                    exps[i] += 1
                break
        else:
            raise ValueError(f"cannot parse monomial {token!r} at position {pos}")
    return Monomial(tuple(exps))


# --- polarization -----------------------------------------------------------

@dataclass(frozen=True)
class Polarization:
    ideal: MonomialIdeal
    # new variable index -> (original variable, exponent level starting at 1)
    varmap: tuple[tuple[int, int], ...]
    original_nvars: int

    def depolarize_monomial(self, m: Monomial) -> Monomial:
        exps = [0] * self.original_nvars
        for j, e in enumerate(m.exponents):
            if e:
                var, level = self.varmap[j]
                exps[var] = max(exps[var], level)
        return Monomial(tuple(exps))

    def depolarize(self) -> MonomialIdeal:
        return MonomialIdeal.from_generators(
            self.original_nvars, (self.depolarize_monomial(g) for g in self.ideal.generators)
        )


def polarize(ideal: MonomialIdeal) -> Polarization:
    """Replace ``x_i^e`` by ``x_{i,1} x_{i,2} ... x_{i,e}``."""
    ideal.require_nonzero()
    levels = [max(g.exponents[i] for g in ideal.generators) for i in range(ideal.nvars)]
    varmap = []
    offset = []
    for i, top in enumerate(levels):
        offset.append(len(varmap))
        # variables absent from every generator keep one slot so squarefree input maps to itself
        for level in range(1, max(top, 1) + 1):
            varmap.append((i, level))
    new_n = len(varmap)
    gens = []
    for g in ideal.generators:
        support = [offset[i] + lvl for i, e in enumerate(g.exponents) for lvl in range(e)]
        gens.append(Monomial.from_support(support, new_n))
    names = None
    if ideal.names:
        names = [
            ideal.names[v] if levels[v] <= 1 else f"{ideal.names[v]}_{lvl}" for v, lvl in varmap
        ]
    pol = MonomialIdeal.from_generators(new_n, gens, names)
    return Polarization(pol, tuple(varmap), ideal.nvars)


# --- squarefree degree counting --------------------------------------------

def count_squarefree_multiples(ideal: MonomialIdeal, d: int) -> int:
    """Number of squarefree degree-``d`` monomials lying in ``ideal``.

    Counts the complement: ``d``-subsets containing no generator support are
    enumerated by backtracking that abandons a branch as soon as it swallows a
    generator.
    """
    if not ideal.is_squarefree():
        raise NotSquarefreeError("count_squarefree_multiples needs a squarefree ideal")
    n = ideal.nvars
    if d < 0 or d > n:
        raise ValueError(f"degree {d} outside 0..{n}")
    masks = ideal.masks()
    if not masks:
        return 0
    if 0 in masks:
        return comb(n, d)
    # generators indexed by their highest variable: checked when that variable is added
    by_top: list[list[int]] = [[] for _ in range(n)]
    for g in masks:
        by_top[g.bit_length() - 1].append(g)

    def free_sets(start: int, chosen: int, remaining: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for v in range(start, n - remaining + 1):
            nxt = chosen | (1 << v)
            if any(g & ~nxt == 0 for g in by_top[v]):
                continue
            total += free_sets(v + 1, nxt, remaining - 1)
        return total

    return comb(n, d) - free_sets(0, 0, d)

