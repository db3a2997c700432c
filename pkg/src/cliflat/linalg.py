"""Exact Gaussian elimination over the rationals."""

from __future__ import annotations

from typing import Sequence

from .rational import Q

__all__ = ["nullspace", "rref", "solve"]


def _size(q: Q) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Q]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Among the candidate pivots in a column the entry with the smallest bit
    size is chosen; over an exact field this only affects coefficient growth.
    """
    m = [[Q(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        best = None
        for i in range(r, len(m)):
            v = m[i][c]
            if v and (best is None or _size(v) < _size(m[best][c])):
                best = i
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [a - f * b for a, b in zip(m[i], prow)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Q]]:
    """Basis of ``{v : rows @ v = 0}``, one vector per free column."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Q(0)] * ncols
        v[f] = Q(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> tuple[list[Q] | None, int]:
    """One solution of ``rows @ v = rhs`` (free variables set to 0) and the rank.

    Returns ``(None, rank)`` when the system is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None, len(pivots) - 1
    v = [Q(0)] * ncols
    for row, pc in zip(red, pivots):
        v[pc] = row[ncols]
    return v, len(pivots)
