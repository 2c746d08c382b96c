"""lcm-lattices and poset density."""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .monomial import Backend, Monomial, MonomialIdeal

DEFAULT_GUARD_ATOMS = 25


class GuardExceeded(RuntimeError):
    """An input is larger than the configured computation guard."""


def guard_atoms() -> int:
    value = os.environ.get("LCMFILT_GUARD_ATOMS")
    if value is None:
        return DEFAULT_GUARD_ATOMS
    guard = int(value)
    if guard <= 0:
        raise ValueError("LCMFILT_GUARD_ATOMS must be positive")
    return guard


@dataclass(frozen=True)
class LcmLattice:
    nvars: int
    atom_count: int
    elements: tuple[Monomial, ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def density(self) -> Fraction:
        return Fraction(self.size, 2**self.atom_count)

    def to_json(self, include_elements: bool = True) -> dict:
        out = {"atoms": self.atom_count, "size": self.size}
        if include_elements:
            out["elements"] = [list(m.exponents) for m in self.elements]
        return out


def lattice_closure(atoms, backend: Backend, max_elements: int | None = None) -> set:
    """All lcms of subsets of ``atoms`` (raw encoding), bottom included.

    Atoms are added one at a time and joined against the current element set,
    so the work is proportional to ``len(atoms) * len(result)``.
    """
    lcm = backend.lcm
    elements = {backend.one}
    for a in atoms:
        if a in elements:
            continue
        elements |= {lcm(a, e) for e in elements}
        if max_elements is not None and len(elements) > max_elements:
            raise GuardExceeded(f"lcm-lattice exceeds {max_elements} elements")
    return elements


def build_lcm_lattice(ideal: MonomialIdeal, max_atoms: int | None = -1, max_elements: int | None = None) -> LcmLattice:
    """Build the lcm-lattice of ``ideal``.

    ``max_atoms=-1`` reads the guard from ``LCMFILT_GUARD_ATOMS`` (default 25);
    ``None`` disables it, in which case ``max_elements`` should bound the work.
    """
    ideal.require_nonzero()
    if max_atoms == -1:
        max_atoms = guard_atoms()
    if max_atoms is not None and ideal.r > max_atoms:
        raise GuardExceeded(f"ideal has {ideal.r} generators, lattice guard is {max_atoms}")
    backend = Backend.for_monomials(ideal.generators, ideal.nvars)
    raw = lattice_closure([backend.encode(g) for g in ideal.generators], backend, max_elements)
    elements = sorted((backend.decode(e) for e in raw), key=Monomial.sort_key)
    return LcmLattice(ideal.nvars, ideal.r, tuple(elements))


def poset_density(ideal: MonomialIdeal, max_atoms: int | None = -1, max_elements: int | None = None) -> Fraction:
    return build_lcm_lattice(ideal, max_atoms, max_elements).density


def is_taylor(ideal: MonomialIdeal, max_atoms: int | None = -1) -> bool:
    return poset_density(ideal, max_atoms) == 1
