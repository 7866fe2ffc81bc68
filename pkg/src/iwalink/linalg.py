"""Exact integer and rational linear algebra on small dense matrices.

Matrices are plain lists of lists of Python ints (or Fractions where noted).
Nothing here is meant for large problems; every routine is exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def transpose(A):
    return [list(row) for row in zip(*A)]


def smith_normal_form(A):
    """Return ``(D, U, V)`` with ``U @ A @ V == D`` and U, V unimodular.

    D is diagonal with nonnegative entries, each dividing the next.  A may be
    empty in either dimension.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not nonzero:
                return D, U, V
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = D[t][t]
            done = True
            for i in range(t + 1, m):
                q = D[i][t] // piv
                if q:
                    add_row(t, i, -q)
                if D[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = D[t][j] // piv
                if q:
                    add_col(t, j, -q)
                if D[t][j]:
                    done = False
            if not done:
                continue
            # divisibility of the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % piv), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return D, U, V


def diagonal(D) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def integer_inverse(M):
    """Inverse of a unimodular integer matrix (raises if not unimodular)."""
    inv = rational_inverse(M)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def rational_inverse(M):
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def unimodular_completion(e) -> list[list[int]]:
    """A unimodular matrix whose first row is the primitive vector ``e``."""
    e = [int(x) for x in e]
    g = 0
    for x in e:
        g = gcd(g, x)
    if g != 1:
        raise ValueError(f"vector {e} is not primitive")
    D, U, V = smith_normal_form([e])
    W = integer_inverse(V)
    # e V = U^{-1} (1, 0, ..., 0) and U = [[+-1]]
    if W[0] != e:
        W[0] = [-x for x in W[0]]
    assert W[0] == e
    return W


def bareiss_det(M) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if A[r][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def solve_rational(A, b) -> list[Fraction]:
    """Solve the square system ``A x = b`` exactly.

    Uses fraction-free (Bareiss) forward elimination on the augmented integer
    matrix, then rational back substitution.  Entries of A and b may be ints
    or Fractions; Fractions are cleared to a common denominator per row.
    """
    n = len(A)
    rows = []
    for row, rhs in zip(A, b):
        vals = [Fraction(x) for x in row] + [Fraction(rhs)]
        den = 1
        for v in vals:
            den = den * v.denominator // gcd(den, v.denominator)
        rows.append([int(v * den) for v in vals])
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if rows[r][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        rows[k], rows[piv] = rows[piv], rows[k]
        akk = rows[k][k]
        for i in range(k + 1, n):
            aik = rows[i][k]
            rows[i] = [(rows[i][j] * akk - aik * rows[k][j]) // prev if j > k else 0
                       for j in range(n + 1)]
        prev = akk
    x = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        s = Fraction(rows[k][n]) - sum(rows[k][j] * x[j] for j in range(k + 1, n))
        x[k] = s / rows[k][k]
    return x


def rank_mod_p(M, p: int) -> int:
    A = [[x % p for x in row] for row in M]
    rank = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [(x * inv) % p for x in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [(a - f * b) % p for a, b in zip(A[r], A[rank])]
        rank += 1
    return rank


def primitive_directions(bounds, limit: int | None = None) -> list[tuple[int, ...]]:
    """Integer vectors e with ``|e_i| <= bounds[i]``, gcd 1, first nonzero entry positive.

    Returns them in order of increasing max-norm, then lexicographically.
    Returns None when more than ``limit`` vectors would be produced.
    """
    import itertools

    bounds = [int(b) for b in bounds]
    if limit is not None:
        total = 1
        for b in bounds:
            total *= 2 * b + 1
        if total // 2 > limit:
            return None
    out = []
    for e in itertools.product(*(range(-b, b + 1) for b in bounds)):
        first = next((x for x in e if x), 0)
        if first <= 0:
            continue
        g = 0
        for x in e:
            g = gcd(g, x)
        if g == 1:
            out.append(tuple(e))
    out.sort(key=lambda e: (max(abs(x) for x in e), e))
    return out
