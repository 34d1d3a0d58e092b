"""Exact dense linear algebra on list-of-lists matrices.

Entries are ``int``, ``Fraction``, ``QuadScalar`` or ``UPoly``. Rational matrices go
through fraction-free (Bareiss) elimination on integers; other field entries use
ordinary Gaussian elimination.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import lcm

from .scalars import QuadScalar, as_fraction
from .upoly import UPoly, Factorization, factor_rational


def shape(M) -> tuple[int, int]:
    rows = len(M)
    return rows, (len(M[0]) if rows else 0)


def zeros(m: int, n: int) -> list[list]:
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n: int) -> list[list]:
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = Fraction(1)
    return M


def to_matrix(rows) -> list[list]:
    out = []
    for r in rows:
        out.append([c if isinstance(c, (QuadScalar, UPoly)) else as_fraction(c) for c in r])
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def transpose(M) -> list[list]:
    return [list(col) for col in zip(*M)] if M else []


def matmul(A, B) -> list[list]:
    m, k = shape(A)
    k2, n = shape(B)
    if k != k2:
        raise ValueError(f"shape mismatch {m}x{k} * {k2}x{n}")
    out = []
    Bt = transpose(B) if B else []
    for row in A:
        nz = [(j, x) for j, x in enumerate(row) if x]
        out_row = []
        for col in Bt:
            acc = 0
            for j, x in nz:
                y = col[j]
                if y:
                    acc = acc + x * y
            out_row.append(acc if not isinstance(acc, int) else Fraction(acc))
        out.append(out_row)
    if not B and m:
        return [[] for _ in range(m)]
    return out


def matvec(A, v) -> list:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in A]


def mat_add(A, B) -> list[list]:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B) -> list[list]:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, s) -> list[list]:
    return [[s * x for x in row] for row in A]


def is_zero_matrix(A) -> bool:
    return all(not x for row in A for x in row)


def kron(A, B) -> list[list]:
    ma, na = shape(A)
    mb, nb = shape(B)
    out = [[Fraction(0)] * (na * nb) for _ in range(ma * mb)]
    for i in range(ma):
        for j in range(na):
            a = A[i][j]
            if not a:
                continue
            for k in range(mb):
                rowk = B[k]
                orow = out[i * mb + k]
                for l in range(nb):
                    if rowk[l]:
                        orow[j * nb + l] = a * rowk[l]
    return out


def block_diag(blocks) -> list[list]:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def commutator(A, B) -> list[list]:
    return mat_sub(matmul(A, B), matmul(B, A))


def trace(A):
    return sum((A[i][i] for i in range(len(A))), Fraction(0))


# ---------------------------------------------------------------------------
# rank


def _is_rational_matrix(M) -> bool:
    for row in M:
        for x in row:
            if isinstance(x, UPoly):
                return False
            if isinstance(x, QuadScalar) and x.b:
                return False
    return True


def _integer_rows(M) -> list[list[int]]:
    rows = []
    for row in M:
        fr = [as_fraction(x) for x in row]
        den = 1
        for x in fr:
            if x:
                den = lcm(den, x.denominator)
        rows.append([int(x * den) for x in fr])
    return rows


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by one-step fraction-free elimination (mutates rows)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    r = 0
    prev = 1
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, m):
            row = rows[i]
            a = row[c]
            if a:
                for j in range(c + 1, n):
                    row[j] = (p * row[j] - a * prow[j]) // prev
            else:
                for j in range(c + 1, n):
                    if row[j]:
                        row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == m:
            break
    return r


def _field_rank(M) -> int:
    rows = to_matrix(M)
    m = len(rows)
    n = len(rows[0]) if m else 0
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[c] if not isinstance(prow[c], QuadScalar) else prow[c].inverse()
        for i in range(r + 1, m):
            a = rows[i][c]
            if a:
                f = a * inv
                row = rows[i]
                for j in range(c, n):
                    if prow[j]:
                        row[j] = row[j] - f * prow[j]
        r += 1
        if r == m:
            break
    return r


def rank(M) -> int:
    """Exact rank over the fraction field of the entries."""
    if not M or not M[0]:
        return 0
    if _is_rational_matrix(M):
        return bareiss_rank(_integer_rows(M))
    if any(isinstance(x, UPoly) for row in M for x in row):
        return sum(1 for d in upoly_diagonal_form(M) if d)
    return _field_rank(M)


def rref(M):
    """Reduced row echelon form over the entry field; returns (R, pivot_columns)."""
    R = to_matrix(M)
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if R[i][c]:
                piv = i
                break
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        p = R[r][c]
        R[r] = [x / p for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def kernel_basis(M, ncols: int | None = None) -> list[list]:
    """Basis of the right null space ``{v : M v = 0}``."""
    if not M:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    n = len(M[0])
    R, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -R[row_idx][free]
        basis.append(v)
    return basis


def row_space_basis(vectors) -> list[list]:
    if not vectors:
        return []
    R, pivots = rref(vectors)
    return R[: len(pivots)]


def solve(A, b):
    """One solution x of A x = b, or None when inconsistent."""
    m, n = shape(A)
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row_idx, pc in enumerate(pivots):
        x[pc] = R[row_idx][n]
    return x


def inverse(M) -> list[list]:
    n = len(M)
    aug = [list(M[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def det(M):
    n = len(M)
    if n == 0:
        return Fraction(1)
    if _is_rational_matrix(M):
        rows = [[as_fraction(x) for x in r] for r in M]
        dens = []
        ints = []
        for r in rows:
            d = 1
            for x in r:
                d = lcm(d, x.denominator)
            dens.append(d)
            ints.append([int(x * d) for x in r])
        val = _bareiss_det(ints)
        scale = 1
        for d in dens:
            scale *= d
        return Fraction(val, scale)
    R = to_matrix(M)
    sign = 1
    acc = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if R[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            R[c], R[piv] = R[piv], R[c]
            sign = -sign
        p = R[c][c]
        acc = acc * p
        for i in range(c + 1, n):
            if R[i][c]:
                f = R[i][c] / p
                R[i] = [x - f * y for x, y in zip(R[i], R[c])]
    return acc * sign


def _bareiss_det(A: list[list[int]]) -> int:
    A = [list(r) for r in A]
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# characteristic polynomials and eigenvalues


def char_poly_coeffs(M, one):
    """Coefficients c[0..n] of det(x I - M), by Faddeev-LeVerrier.

    Works over any commutative ring containing Q (only division by integers is used),
    so it also serves symbolic matrices whose entries are multivariate polynomials.
    ``one`` is the ring's unit.
    """
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("char_poly needs a square matrix")
    zero = one - one
    coeffs = [zero] * (n + 1)
    coeffs[n] = one
    Mk = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        prod = _ring_matmul(M, Mk, zero)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            prod[i][i] = prod[i][i] + c_prev
        Mk = prod
        AM = _ring_matmul(M, Mk, zero)
        tr = zero
        for i in range(n):
            tr = tr + AM[i][i]
        coeffs[n - k] = tr * Fraction(-1, k)
    return coeffs


def _ring_matmul(A, B, zero):
    n = len(A)
    m = len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            acc = zero
            for k in range(len(B)):
                a = Ai[k]
                if not a:
                    continue
                b = B[k][j]
                if b:
                    acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def char_poly(M) -> UPoly:
    """Monic characteristic polynomial det(x I - M)."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("char_poly needs a square matrix")
    return UPoly(char_poly_coeffs(to_matrix(M), Fraction(1)))


def eigen_factors(M) -> Factorization:
    """Factor the characteristic polynomial of a rational matrix over Q."""
    return factor_rational(char_poly(M))


def exterior_power(M, q: int) -> list[list]:
    """Matrix of the q-th exterior power on the sorted-subset basis (signed minors)."""
    m, n = shape(M)
    if m != n:
        raise ValueError("exterior power of a non-square matrix")
    if not 0 <= q <= n:
        raise ValueError(f"exterior degree {q} outside 0..{n}")
    subsets = list(combinations(range(n), q))
    out = []
    for I in subsets:
        row = []
        for J in subsets:
            row.append(det([[M[i][j] for j in J] for i in I]) if q else Fraction(1))
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# Smith normal form over Z, and diagonal forms over Q[x]


def smith_normal_form(M):
    """Return (U, D, V) with U*M*V = D, U and V unimodular, D diagonal with
    nonnegative entries forming a divisibility chain."""
    D = [[int(as_fraction(x)) for x in row] for row in M]
    if any(as_fraction(x).denominator != 1 for row in M for x in row):
        raise ValueError("smith_normal_form needs integer entries")
    m, n = shape(D)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            rest = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
            rest += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            if rest:
                _, i1, j1 = min(rest)
                if i1 != t:
                    swap_rows(t, i1)
                else:
                    swap_cols(t, j1)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return U, D, V


def upoly_diagonal_form(M) -> list[UPoly]:
    """Diagonal entries of a unimodular diagonalization of a matrix over Q[x].

    The product of the nonzero entries is the gcd of the maximal nonvanishing minors
    (up to a unit), so its roots are exactly the specializations where rank drops.
    """
    A = [[x if isinstance(x, UPoly) else UPoly([x]) for x in row] for row in M]
    m, n = shape(A)
    diag = []
    t = 0
    while t < min(m, n):
        entries = [(A[i][j].degree, i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        A[t], A[i0] = A[i0], A[t]
        for row in A:
            row[t], row[j0] = row[j0], row[t]
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] = row[j] - q * row[t]
            rest = [(A[i][t].degree, i, t) for i in range(t + 1, m) if A[i][t]]
            rest += [(A[t][j].degree, t, j) for j in range(t + 1, n) if A[t][j]]
            if not rest:
                break
            _, i1, j1 = min(rest)
            if i1 != t:
                A[t], A[i1] = A[i1], A[t]
            else:
                for row in A:
                    row[t], row[j1] = row[j1], row[t]
        diag.append(A[t][t].monic())
        t += 1
    return diag
