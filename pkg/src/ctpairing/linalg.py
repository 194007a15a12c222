"""Small exact linear algebra over Q and over commutative rings.

Field routines (Gaussian elimination) expect mpq entries.  Ring routines use
only +, -, * on the entries, so they work for polynomials, etale algebra
elements and p-adic elements alike.
"""

from gmpy2 import mpq


def mat_identity(n):
    return [[mpq(1) if i == j else mpq(0) for j in range(n)] for i in range(n)]


def mat_transpose(a):
    return [list(row) for row in zip(*a)]


def mat_mul(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    return [
        [sum((a[i][t] * b[t][j] for t in range(k)), start=a[i][0] * 0) for j in range(m)]
        for i in range(n)
    ]


def mat_vec(a, v):
    return [sum((row[j] * v[j] for j in range(len(v))), start=row[0] * 0) for row in a]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def det_field(a):
    """Determinant over Q by fraction-full Gaussian elimination."""
    n = len(a)
    m = [[mpq(x) for x in row] for row in a]
    det = mpq(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return mpq(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            factor = m[r][col] * inv
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    return det


def solve_field(a, b):
    """Solve a x = b over Q; raises ValueError if the matrix is singular."""
    n = len(a)
    m = [[mpq(x) for x in row] + [mpq(y)] for row, y in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular system")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [row[n] for row in m]


def inverse_field(a):
    n = len(a)
    cols = [solve_field(a, [mpq(1) if i == j else mpq(0) for i in range(n)]) for j in range(n)]
    return mat_transpose(cols)


def kernel_field(a):
    """Basis of the right kernel of a rational matrix (list of vectors)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[mpq(x) for x in row] for row in a]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [mpq(0)] * cols
        v[fc] = mpq(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def det_ring(a):
    """Determinant over a commutative ring via column-subset expansion.

    Memoizes on subsets of columns, costing O(2^n * n) ring multiplications;
    fine for the n <= 6 matrices handled here.
    """
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    memo = {}

    def minor(cols):
        # determinant of rows n-len(cols)..n-1 on the given column tuple
        if cols in memo:
            return memo[cols]
        k = len(cols)
        row = a[n - k]
        total = None
        for idx, c in enumerate(cols):
            if k == 1:
                term = row[c]
            else:
                term = row[c] * minor(cols[:idx] + cols[idx + 1 :])
            if idx % 2:
                term = -term
            total = term if total is None else total + term
        memo[cols] = total
        return total

    return minor(tuple(range(n)))


def adjugate_ring(a):
    """Adjugate matrix over a commutative ring (transpose of cofactors)."""
    n = len(a)
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [
                [a[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            cof = det_ring(sub)
            if (i + j) % 2:
                cof = -cof
            adj[j][i] = cof
    return adj
