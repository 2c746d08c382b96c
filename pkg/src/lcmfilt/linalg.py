"""Exact matrix rank over the rationals or a prime field.

Boundary matrices here are small and integral, so plain Python integers with
fraction-free elimination are exact and fast enough.
"""
from __future__ import annotations


def parse_field(field) -> int:
    """0 for the rationals, otherwise the prime characteristic."""
    if field in ("Q", "QQ", "rationals", 0, None):
        return 0
    p = int(str(field).removeprefix("GF(").removesuffix(")")) if isinstance(field, str) else int(field)
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"not a prime: {field!r}")
    return p


def rank(matrix, field="Q") -> int:
    p = parse_field(field)
    rows = [list(r) for r in matrix if any(r)]
    if not rows:
        return 0
    if p:
        return _rank_mod_p(rows, p)
    return _rank_bareiss(rows)


def _rank_bareiss(rows: list[list[int]]) -> int:
    ncols = len(rows[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, len(rows)):
            a = rows[i][c]
            row_i, row_r = rows[i], rows[r]
            rows[i] = [(piv * row_i[j] - a * row_r[j]) // prev for j in range(ncols)]
        prev = piv
        r += 1
        if r == len(rows):
            break
    return r


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [[x % p for x in row] for row in rows]
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(r + 1, len(rows)):
            a = rows[i][c]
            if a:
                rows[i] = [(x - a * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r
