"""Small dense linear algebra over exact rationals (gmpy2.mpq).

Matrices are lists of row lists. Sizes here are tiny (multiplicity-space
blocks), so plain Gaussian elimination is the right tool.
"""

from gmpy2 import mpq

QQ0 = mpq(0)
QQ1 = mpq(1)


def rat(x) -> mpq:
    return mpq(x)


def rref(mat):
    """Reduced row echelon form; returns (new matrix, pivot column list)."""
    m = [[mpq(v) for v in row] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def kernel_basis(mat):
    """Canonical kernel basis of a rational matrix: one vector per free
    column of the RREF, ordered by free column, with a 1 in that slot."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    red, pivots = rref(mat)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vec = [QQ0] * cols
        vec[free] = QQ1
        for r, p in enumerate(pivots):
            vec[p] = -red[r][free]
        basis.append(vec)
    return basis


def invert(mat):
    """Exact inverse of a square rational matrix."""
    n = len(mat)
    aug = [[mpq(v) for v in row] + [QQ1 if i == j else QQ0 for j in range(n)]
           for i, row in enumerate(mat)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def mat_vec(mat, vec):
    return [sum((a * b for a, b in zip(row, vec)), QQ0) for row in mat]


def mat_mul(a, b):
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), QQ0) for col in cols] for row in a]


class ExactSolver:
    """LU-style repeated solver for a fixed square rational matrix."""

    def __init__(self, mat):
        self.n = len(mat)
        self._inv = invert(mat)

    def solve(self, rhs):
        return mat_vec(self._inv, rhs)


def float_kernel_basis(mat, tol=1e-8):
    """Kernel basis of a float matrix via Gaussian elimination with partial
    pivoting; mirrors the canonical rational form."""
    import numpy as np

    m = np.array(mat, dtype=float)
    rows, cols = m.shape
    pivots = []
    r = 0
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 1.0)
    for c in range(cols):
        if r >= rows:
            break
        pivot = int(np.argmax(np.abs(m[r:, c]))) + r
        if abs(m[pivot, c]) <= tol * scale:
            continue
        m[[r, pivot]] = m[[pivot, r]]
        m[r] /= m[r, c]
        for i in range(rows):
            if i != r:
                m[i] -= m[i, c] * m[r]
        pivots.append(c)
        r += 1
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vec = np.zeros(cols)
        vec[free] = 1.0
        for rr, p in enumerate(pivots):
            vec[p] = -m[rr, free]
        basis.append(vec)
    return basis
