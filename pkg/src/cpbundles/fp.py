"""Small dense linear algebra over F_p.

Matrices are lists of rows; vectors are lists of ints in ``[0, p)``. The
spaces handled here are at most a few hundred dimensional, so plain Gaussian
elimination is all we need.
"""

from __future__ import annotations


def reduce_rows(rows, p):
    """Reduced row echelon form. Returns ``(rows, pivot_columns)``."""
    m = [[x % p for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, p) -> int:
    return len(reduce_rows(rows, p)[1])


def kernel(matrix, ncols, p):
    """Basis of ``{v : matrix @ v = 0}`` for a matrix with ``ncols`` columns."""
    red, pivots = reduce_rows(matrix, p) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def apply(matrix, v, p):
    return [sum(a * b for a, b in zip(row, v)) % p for row in matrix]


def matmul(a, b, p):
    """``a @ b`` where ``a`` is m x k and ``b`` is k x n."""
    if not a:
        return []
    cols = list(zip(*b)) if b else []
    n = len(b[0]) if b else 0
    if not cols:
        return [[0] * n for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) % p for col in cols] for row in a]


def extend_independent(base, candidates, p):
    """Pick candidates that stay linearly independent modulo ``span(base)``."""
    picked = []
    current = [list(v) for v in base]
    r = rank(current, p) if current else 0
    for v in candidates:
        trial = current + [list(v)]
        r2 = rank(trial, p)
        if r2 > r:
            picked.append(list(v))
            current = trial
            r = r2
    return picked
