"""Exact linear algebra over the integers and rationals.

Everything in this package runs on unbounded Python ints and Fractions;
there is deliberately no floating point anywhere.  The matrices that show
up (degree slices of graded rings, Chevalley operators, monomial tables)
are tiny, so the simple cubic algorithms below are plenty.
"""

from __future__ import annotations

from fractions import Fraction


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) = x*a + y*b and g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def hermite_normal_form(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Row-style Hermite normal form.

    Returns (H, U, pivots) with U unimodular, U @ rows == H, H in row
    echelon form with positive pivots and reduced entries above them.
    ``pivots`` lists the pivot column of each nonzero row of H.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    H = [list(r) for r in rows]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    row = 0
    pivots: list[int] = []
    for col in range(n):
        # clear the column below `row` with gcd steps
        pivot = None
        for i in range(row, m):
            if H[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        H[row], H[pivot] = H[pivot], H[row]
        U[row], U[pivot] = U[pivot], U[row]
        if H[row][col] < 0:
            H[row] = [-x for x in H[row]]
            U[row] = [-x for x in U[row]]
        for i in range(row + 1, m):
            while H[i][col]:
                a, b = H[row][col], H[i][col]
                q = b // a  # floor division: remainder lands in [0, a)
                if q:
                    for k in range(n):
                        H[i][k] -= q * H[row][k]
                    for k in range(m):
                        U[i][k] -= q * U[row][k]
                if H[i][col]:
                    H[row], H[i] = H[i], H[row]
                    U[row], U[i] = U[i], U[row]
        # reduce entries above the pivot
        a = H[row][col]
        for i in range(row):
            q = H[i][col] // a
            if q:
                for k in range(n):
                    H[i][k] -= q * H[row][k]
                for k in range(m):
                    U[i][k] -= q * U[row][k]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return H, U, pivots


def solve_int_rowspan(rows: list[list[int]], target: list[int]) -> list[int] | None:
    """Integer solution x of x @ rows == target, or None.

    Used to certify that a vector lies in the lattice spanned by ``rows``.
    """
    if not rows:
        return [] if not any(target) else None
    H, U, pivots = hermite_normal_form(rows)
    n = len(target)
    t = list(target)
    y = [0] * len(rows)
    for r, col in enumerate(pivots):
        if t[col] % H[r][col] != 0:
            return None
        q = t[col] // H[r][col]
        y[r] = q
        if q:
            for k in range(n):
                t[k] -= q * H[r][k]
    if any(t):
        return None
    m = len(rows)
    return [sum(y[r] * U[r][i] for r in range(m)) for i in range(m)]


def solve_rational_rowspan(
    rows: list[list[int]], target: list[int]
) -> list[Fraction] | None:
    """Rational solution x of x @ rows == target, or None."""
    if not rows:
        return [] if not any(target) else None
    m, n = len(rows), len(rows[0])
    # Gaussian elimination on the transposed system rows^T x^T = target^T.
    aug = [[Fraction(rows[i][j]) for i in range(m)] + [Fraction(target[j])] for j in range(n)]
    pivot_of_col: list[int | None] = [None] * m
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivot_of_col[c] = r
        r += 1
    x = [Fraction(0)] * m
    for c in range(m):
        if pivot_of_col[c] is not None:
            x[c] = aug[pivot_of_col[c]][m]
    # rows without pivots must have zero residual
    for i in range(n):
        if all(aug[i][c] == 0 for c in range(m)) and aug[i][m] != 0:
            return None
    # verify (cheap, and guards against rank deficiencies above)
    for j in range(n):
        if sum(x[i] * rows[i][j] for i in range(m)) != target[j]:
            return None
    return x


def rational_rank(rows: list[list[int]]) -> int:
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    mat = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    for col in range(n):
        p = next((i for i in range(rank, m) if mat[i][col]), None)
        if p is None:
            continue
        mat[rank], mat[p] = mat[p], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for i in range(m):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def smith_normal_form(
    mat: list[list[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form D = U @ mat @ V with U, V unimodular.

    D is diagonal with d_1 | d_2 | ... >= 0.  The factorization is verified
    by reconstruction before returning.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    D = [list(r) for r in mat]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j
        for k in range(n):
            D[i][k] -= q * D[j][k]
        for k in range(m):
            U[i][k] -= q * U[j][k]

    def col_op(i, j, q):  # col_i -= q * col_j
        for k in range(m):
            D[k][i] -= q * D[k][j]
        for k in range(n):
            V[k][i] -= q * V[k][j]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for k in range(m):
            D[k][i], D[k][j] = D[k][j], D[k][i]
        for k in range(n):
            V[k][i], V[k][j] = V[k][j], V[k][i]

    t = 0
    while t < min(m, n):
        # find a nonzero pivot
        piv = next(
            ((i, j) for i in range(t, m) for j in range(t, n) if D[i][j]), None
        )
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            for i in range(t + 1, m):
                if D[i][t] % D[t][t]:
                    # make the pivot divide via a Bezout row combination
                    g, x, y = _xgcd(D[t][t], D[i][t])
                    a, b = D[t][t] // g, D[i][t] // g
                    rt = [x * D[t][k] + y * D[i][k] for k in range(n)]
                    ri = [-b * D[t][k] + a * D[i][k] for k in range(n)]
                    ut = [x * U[t][k] + y * U[i][k] for k in range(m)]
                    ui = [-b * U[t][k] + a * U[i][k] for k in range(m)]
                    D[t], D[i], U[t], U[i] = rt, ri, ut, ui
            for i in range(t + 1, m):
                if D[i][t]:
                    row_op(i, t, D[i][t] // D[t][t])
            for j in range(t + 1, n):
                if D[t][j] % D[t][t]:
                    g, x, y = _xgcd(D[t][t], D[t][j])
                    a, b = D[t][t] // g, D[t][j] // g
                    ct = [x * D[k][t] + y * D[k][j] for k in range(m)]
                    cj = [-b * D[k][t] + a * D[k][j] for k in range(m)]
                    vt = [x * V[k][t] + y * V[k][j] for k in range(n)]
                    vj = [-b * V[k][t] + a * V[k][j] for k in range(n)]
                    for k in range(m):
                        D[k][t], D[k][j] = ct[k], cj[k]
                    for k in range(n):
                        V[k][t], V[k][j] = vt[k], vj[k]
            for j in range(t + 1, n):
                if D[t][j]:
                    col_op(j, t, D[t][j] // D[t][t])
            if all(D[i][t] == 0 for i in range(t + 1, m)) and all(
                D[t][j] == 0 for j in range(t + 1, n)
            ):
                break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    # enforce the divisibility chain d_t | d_{t+1}
    changed = True
    while changed:
        changed = False
        for i in range(min(m, n) - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if a and b and b % a:
                # fold b into the a-position and re-diagonalize the 2x2 block
                col_op(i, i + 1, -1)  # puts b into column i of row i+1
                g, x, y = _xgcd(a, b)
                aa, bb = a // g, b // g
                rt = [x * D[i][k] + y * D[i + 1][k] for k in range(n)]
                ri = [-bb * D[i][k] + aa * D[i + 1][k] for k in range(n)]
                ut = [x * U[i][k] + y * U[i + 1][k] for k in range(m)]
                ui = [-bb * U[i][k] + aa * U[i + 1][k] for k in range(m)]
                D[i], D[i + 1], U[i], U[i + 1] = rt, ri, ut, ui
                if D[i][i + 1]:
                    col_op(i + 1, i, D[i][i + 1] // D[i][i])
                if D[i + 1][i]:
                    row_op(i + 1, i, D[i + 1][i] // D[i][i])
                changed = True
    _verify_snf(mat, D, U, V)
    return D, U, V


def _verify_snf(A, D, U, V):
    m = len(A)
    n = len(A[0]) if m else 0
    for i in range(m):
        for j in range(n):
            s = sum(U[i][k] * sum(A[k][l] * V[l][j] for l in range(n)) for k in range(m))
            if s != D[i][j]:
                raise ArithmeticError("Smith normal form reconstruction failed")


def smith_invariants(mat: list[list[int]]) -> list[int]:
    """Nonzero diagonal invariants d_1 | d_2 | ... of the Smith form."""
    if not mat or not mat[0]:
        return []
    D, _, _ = smith_normal_form(mat)
    return [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i]]


def det(mat: list[list[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Gaussian)."""
    n = len(mat)
    A = [[Fraction(v) for v in row] for row in mat]
    sign = 1
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / A[c][c]
                A[i] = [v - f * w for v, w in zip(A[i], A[c])]
    d = sign * Fraction(1)
    for i in range(n):
        d *= A[i][i]
    assert d.denominator == 1
    return int(d)
