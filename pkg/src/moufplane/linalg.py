"""Exact Gaussian elimination over any of the ground fields.

Matrices are lists of rows.  Nothing here is clever: the systems that occur
are at most 8x8.
"""

from __future__ import annotations


class SingularMatrix(ArithmeticError):
    pass


def rref(rows, field):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.one / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows, field) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows, field):
    """Basis of ``{v : rows @ v == 0}``, one vector per free column."""
    ncols = len(rows[0])
    red, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve(rows, rhs, field):
    """One solution of ``rows @ x == rhs`` with every free variable set to 0.

    Returns ``None`` when the system is inconsistent.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    red, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][ncols]
    return x


def inverse(rows, field):
    n = len(rows)
    aug = [list(r) + [field.one if i == j else field.zero for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in red]


def matvec(rows, v, field):
    out = []
    for r in rows:
        acc = field.zero
        for a, b in zip(r, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def matmul(a, b, field):
    cols = list(zip(*b))
    return [matvec([list(c) for c in cols], row, field) for row in a]


def transpose(rows):
    return [list(c) for c in zip(*rows)]
