"""Exact Gaussian elimination over AlgNum (or Fraction) entries.

Matrices are plain lists of rows.  Nothing here is clever; sizes stay in the
tens for the lattices and in the low thousands for the oracle's section
spaces, where entries are small rationals.
"""

from __future__ import annotations

from typing import Sequence

__all__ = ["SingularMatrix", "rref", "rank", "solve", "nullspace", "det", "is_negative_definite"]


class SingularMatrix(ValueError):
    pass


def _copy(rows: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in rows]


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = _copy(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    """Solve ``a @ x = b`` for square nonsingular ``a``; ``b`` has one column per RHS."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("solve needs a square matrix")
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in red[:n]]


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of ``{x : rows @ x = 0}``."""
    if ncols is None:
        ncols = len(rows[0])
    red, piv = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    zero = 0 * (red[0][0] if red and red[0] else 1)
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = zero + 1
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def det(a: Sequence[Sequence]):
    n = len(a)
    m = _copy(a)
    out = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return 0 * out
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            out = -out
        out = out * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def is_negative_definite(a: Sequence[Sequence]) -> bool:
    """Sylvester's criterion applied to ``-a`` (empty matrix counts as definite)."""
    n = len(a)
    for k in range(1, n + 1):
        minor = [[-a[i][j] for j in range(k)] for i in range(k)]
        if not det(minor) > 0:
            return False
    return True
