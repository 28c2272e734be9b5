"""Exact integer and rational linear algebra helpers.

Everything here works on plain lists of lists with int / Fraction entries;
matrices are small (a few hundred rows at most), so no numpy.
"""

from fractions import Fraction


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                row = out[i]
                for j in range(m):
                    row[j] += a * Bt[j]
    return out


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_inverse(A):
    """Inverse of a square matrix, exact, as Fractions."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def solve_left(B, v):
    """Solve x*B = v (row-vector convention).  Returns Fractions."""
    Binv = mat_inverse(B)
    return [sum(Fraction(v[k]) * Binv[k][j] for k in range(len(v)))
            for j in range(len(B))]


def is_integral(vec_or_mat):
    rows = vec_or_mat if vec_or_mat and isinstance(vec_or_mat[0], list) else [vec_or_mat]
    return all(Fraction(x).denominator == 1 for row in rows for x in row)


def to_int(vec_or_mat):
    if vec_or_mat and isinstance(vec_or_mat[0], list):
        return [[int(x) for x in row] for row in vec_or_mat]
    return [int(x) for x in vec_or_mat]


def rational_rank(A):
    if not A:
        return 0
    M = [[Fraction(x) for x in row] for row in A]
    n, m = len(M), len(M[0])
    rank = 0
    for col in range(m):
        piv = next((r for r in range(rank, n) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = 1 / M[rank][col]
        M[rank] = [x * inv for x in M[rank]]
        for r in range(n):
            if r != rank and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[rank])]
        rank += 1
        if rank == n:
            break
    return rank


def smith_normal_form(M):
    """Smith normal form of an integer matrix.

    Returns (U, D, V) with D = U*M*V, U and V unimodular, D diagonal with
    d_1 | d_2 | ... all non-negative.
    """
    A = [list(map(int, row)) for row in M]
    n = len(A)
    m = len(A[0]) if n else 0
    U = identity(n)
    V = identity(m)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):  # row_i += c*row_j
        A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]

    def add_col(i, j, c):  # col_i += c*col_j
        for row in A:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(n, m):
        # find a nonzero pivot in the remaining block
        piv = None
        for i in range(t, n):
            for j in range(t, m):
                if A[i][j] != 0:
                    if piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, n):
                if A[i][t] != 0:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t] != 0:
                        swap_rows(i, t)
                        dirty = True
            for j in range(t + 1, m):
                if A[t][j] != 0:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j] != 0:
                        swap_cols(j, t)
                        dirty = True
            if not dirty:
                break
        if A[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain
    k = min(n, m)
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            a, b = A[i][i], A[i + 1][i + 1]
            if a and b % a != 0:
                # fold d_{i+1} into row i and rediagonalise the 2x2 block
                add_row(i, i + 1, 1)
                while True:
                    if A[i][i + 1] != 0:
                        q = A[i][i + 1] // A[i][i] if A[i][i] else 0
                        add_col(i + 1, i, -q)
                        if A[i][i + 1] != 0:
                            swap_cols(i, i + 1)
                            continue
                    if A[i + 1][i] != 0:
                        q = A[i + 1][i] // A[i][i] if A[i][i] else 0
                        add_row(i + 1, i, -q)
                        if A[i + 1][i] != 0:
                            swap_rows(i, i + 1)
                            continue
                    break
                if A[i][i] < 0:
                    negate_row(i)
                if A[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True
    D = [[A[i][j] if i == j else 0 for j in range(m)] for i in range(n)]
    return U, D, V


def invariant_factors(M):
    """Diagonal of the Smith normal form, trailing zeros for rank deficit."""
    n = len(M)
    m = len(M[0]) if n else 0
    _, D, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(n, m))]
