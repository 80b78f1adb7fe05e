"""Exact integer/rational linear algebra: determinants and inertia."""

from __future__ import annotations

from fractions import Fraction

__all__ = ["integer_determinant", "eliminate", "inertia", "symmetric_determinant", "signature"]


def integer_determinant(matrix) -> int:
    """Bareiss fraction-free elimination."""
    M = [list(map(int, row)) for row in matrix]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inertia(matrix) -> tuple[int, int, int]:
    """``(positive, negative, zero)`` eigenvalue counts of a symmetric matrix."""
    return eliminate(matrix)[:3]


def symmetric_determinant(matrix) -> int:
    """Determinant of a symmetric integer matrix (product of the pivots below)."""
    return int(eliminate(matrix)[3])


def eliminate(matrix):
    """Inertia and determinant of a symmetric matrix.

    Symmetric Gaussian elimination by congruence over the rationals.  Pivots
    are chosen with the fewest nonzeros in their row to keep fill-in low;
    when every remaining diagonal entry vanishes, ``e_i -> e_i + e_j`` creates
    a nonzero one.
    """
    n = len(matrix)
    rows = [{j: Fraction(v) for j, v in enumerate(r) if v} for r in matrix]
    for i, r in enumerate(rows):
        for j, v in r.items():
            if rows[j].get(i, 0) != v:
                raise ValueError("matrix is not symmetric")
    alive = set(range(n))
    pos = neg = 0
    det = Fraction(1)
    while alive:
        # drop zero rows
        for i in [i for i in alive if not rows[i]]:
            alive.discard(i)
        if not alive:
            break
        diag = [i for i in alive if rows[i].get(i)]
        if diag:
            p = min(diag, key=lambda i: (len(rows[i]), i))
        else:
            i = min(alive, key=lambda i: (len(rows[i]), i))
            j = min(rows[i])
            # congruence e_i -> e_i + e_j
            row = dict(rows[i])
            for k, v in rows[j].items():
                row[k] = row.get(k, 0) + v
            row[i] = row.get(i, 0) + row.get(j, 0)
            row = {k: v for k, v in row.items() if v}
            rows[i] = row
            for k in alive:
                if k != i:
                    if k in row:
                        rows[k][i] = row[k]
                    else:
                        rows[k].pop(i, None)
            p = i
        piv = rows[p][p]
        det *= piv
        if piv > 0:
            pos += 1
        else:
            neg += 1
        prow = rows[p]
        for k in list(prow):
            if k == p:
                continue
            f = prow[k] / piv
            rk = rows[k]
            for j, v in prow.items():
                if j == p:
                    continue
                nv = rk.get(j, 0) - f * v
                if nv:
                    rk[j] = nv
                else:
                    rk.pop(j, None)
            rk.pop(p, None)
        rows[p] = {}
        alive.discard(p)
    zero = n - pos - neg
    return pos, neg, zero, (det if not zero else Fraction(0))


def signature(matrix) -> int:
    p, m, _ = inertia(matrix)
    return p - m
