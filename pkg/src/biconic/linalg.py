"""Small exact linear algebra over any field whose elements support the
Python arithmetic operators (Fraction, number-field elements)."""

from __future__ import annotations


def det(mat: list[list]):
    """Determinant by fraction-free-ish Gaussian elimination with pivoting."""
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    m = [list(row) for row in mat]
    sign = 1
    result_one = None
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            return mat[0][0] * 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            f = m[r][col] / p
            for c in range(col, n):
                m[r][c] = m[r][c] - f * m[col][c]
    out = m[0][0]
    for i in range(1, n):
        out = out * m[i][i]
    return out if sign == 1 else -out


def rank(mat: list[list]) -> int:
    rows = [list(r) for r in mat]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    for col in range(ncols):
        piv = None
        for r in range(rk, len(rows)):
            if rows[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk][col]
        for r in range(len(rows)):
            if r != rk and rows[r][col] != 0:
                f = rows[r][col] / p
                for c in range(ncols):
                    rows[r][c] = rows[r][c] - f * rows[rk][c]
        rk += 1
        if rk == len(rows):
            break
    return rk


def kernel(mat: list[list], one) -> list[list]:
    """Basis of the right kernel.  ``one`` is the field's multiplicative unit."""
    rows = [list(r) for r in mat]
    if not rows:
        return []
    ncols = len(rows[0])
    zero = one * 0
    pivots = []
    rk = 0
    for col in range(ncols):
        piv = None
        for r in range(rk, len(rows)):
            if rows[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk][col]
        rows[rk] = [c / p for c in rows[rk]]
        for r in range(len(rows)):
            if r != rk and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rk])]
        pivots.append(col)
        rk += 1
        if rk == len(rows):
            break
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def solve(mat: list[list], rhs: list, one):
    """One solution of mat * x = rhs, or None if inconsistent."""
    n = len(mat)
    ncols = len(mat[0])
    rows = [list(mat[i]) + [rhs[i]] for i in range(n)]
    zero = one * 0
    pivots = []
    rk = 0
    for col in range(ncols):
        piv = None
        for r in range(rk, n):
            if rows[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk][col]
        rows[rk] = [c / p for c in rows[rk]]
        for r in range(n):
            if r != rk and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rk])]
        pivots.append(col)
        rk += 1
        if rk == n:
            break
    for r in range(rk, n):
        if rows[r][ncols] != 0:
            return None
    x = [zero] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][ncols]
    return x
