"""Exact integer-lattice membership via column Hermite reduction.

The central question answered here: given generator vectors g_1, ..., g_n in
Z^m and a target t in Z^m, does t lie in the lattice they span, and if so,
with which integer coefficients?  Everything uses exact Python integers, so
there are no overflow or conditioning concerns.
"""

from __future__ import annotations

from typing import Optional, Sequence


def solve_lattice(
    columns: Sequence[Sequence[int]], target: Sequence[int]
) -> Optional[list[int]]:
    """Solve sum_j x_j * columns[j] == target over the integers.

    Returns a coefficient list, or None when the target is not in the
    lattice spanned by the columns.
    """
    m = len(target)
    n = len(columns)
    for col in columns:
        if len(col) != m:
            raise ValueError("column/target dimension mismatch")
    cols = [list(c) for c in columns]
    # U records the column operations: cols[j] == sum_k U[k][j] * columns[k].
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    pivots: list[tuple[int, int]] = []  # (row, column) pairs in echelon order
    for r in range(m):
        j0 = len(pivots)
        # Eliminate row r across the not-yet-pivotal columns by gcd steps.
        while True:
            nz = [j for j in range(j0, n) if cols[j][r] != 0]
            if not nz:
                break
            if len(nz) == 1:
                j = nz[0]
                _swap_columns(cols, U, j0, j)
                pivots.append((r, j0))
                break
            jmin = min(nz, key=lambda j: abs(cols[j][r]))
            for j in nz:
                if j == jmin:
                    continue
                q = cols[j][r] // cols[jmin][r]
                if q:
                    _add_multiple(cols, U, j, jmin, -q)

    # Forward substitution: columns past the pivot set vanish on all
    # processed rows, and each pivot column vanishes above its pivot row.
    y = [0] * n
    residual = list(target)
    piv_by_row = dict(pivots)
    for r in range(m):
        j = piv_by_row.get(r)
        if j is None:
            if residual[r] != 0:
                return None
            continue
        head = cols[j][r]
        if residual[r] % head != 0:
            return None
        q = residual[r] // head
        y[j] = q
        if q:
            for i in range(m):
                residual[i] -= q * cols[j][i]
    if any(residual):
        return None

    # Translate back through the recorded column operations.
    x = [0] * n
    for j in range(n):
        if y[j]:
            for k in range(n):
                x[k] += y[j] * U[k][j]
    return x


def solve_affine(
    columns: Sequence[Sequence[int]], target: Sequence[int]
) -> Optional[tuple[list[int], list[list[int]]]]:
    """All integer solutions of sum_j x_j * columns[j] == target.

    Returns (particular, kernel_basis) — the full solution set is the
    particular solution plus integer combinations of the kernel vectors —
    or None when no solution exists.
    """
    m = len(target)
    n = len(columns)
    for col in columns:
        if len(col) != m:
            raise ValueError("column/target dimension mismatch")
    cols = [list(c) for c in columns]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    pivots: list[tuple[int, int]] = []
    for r in range(m):
        j0 = len(pivots)
        while True:
            nz = [j for j in range(j0, n) if cols[j][r] != 0]
            if not nz:
                break
            if len(nz) == 1:
                j = nz[0]
                _swap_columns(cols, U, j0, j)
                pivots.append((r, j0))
                break
            jmin = min(nz, key=lambda j: abs(cols[j][r]))
            for j in nz:
                if j == jmin:
                    continue
                q = cols[j][r] // cols[jmin][r]
                if q:
                    _add_multiple(cols, U, j, jmin, -q)

    y = [0] * n
    residual = list(target)
    piv_by_row = dict(pivots)
    for r in range(m):
        j = piv_by_row.get(r)
        if j is None:
            if residual[r] != 0:
                return None
            continue
        head = cols[j][r]
        if residual[r] % head != 0:
            return None
        q = residual[r] // head
        y[j] = q
        if q:
            for i in range(m):
                residual[i] -= q * cols[j][i]
    if any(residual):
        return None

    x = [0] * n
    for j in range(n):
        if y[j]:
            for k in range(n):
                x[k] += y[j] * U[k][j]
    # Columns past the pivot block were reduced to zero, so the matching
    # columns of U span the integer kernel.
    kernel = [
        [U[k][j] for k in range(n)] for j in range(len(pivots), n)
    ]
    return x, kernel


def in_lattice(columns: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """Membership test without caring about the witness."""
    return solve_lattice(columns, target) is not None


def _swap_columns(cols, U, a, b):
    if a == b:
        return
    cols[a], cols[b] = cols[b], cols[a]
    for row in U:
        row[a], row[b] = row[b], row[a]


def _add_multiple(cols, U, dst, src, factor):
    col_d, col_s = cols[dst], cols[src]
    for i in range(len(col_d)):
        col_d[i] += factor * col_s[i]
    for row in U:
        row[dst] += factor * row[src]
