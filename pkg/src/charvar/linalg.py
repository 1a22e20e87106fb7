"""Exact linear algebra: Smith and Hermite forms over Z, rank over Q(zeta_N)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CyclotomicNumber, cyclotomic_polynomial


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _copy(M) -> list[list[int]]:
    return [list(map(int, row)) for row in M]


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Return (D, U, V) with U*M*V = D diagonal, d1 | d2 | ..., U and V unimodular.

    Pivots are chosen with the smallest nonzero absolute value.
    """
    A = _copy(M)
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        done = False
            if done:
                # divisibility: every remaining entry must be a multiple of p
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            # a remainder appeared: move the smallest entry of row/column t to the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cand)
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return A, U, V


def invariant_factors(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith form."""
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def hermite_rows(M: Sequence[Sequence[int]]):
    """Row-style Hermite normal form with the row operations that produce it.

    Returns (H, ops) where H is in row echelon form with positive pivots and
    entries above each pivot reduced into [0, pivot).  ``ops`` lists the
    elementary operations in order: ``("add", i, j, k)`` means row_i += k*row_j,
    ``("swap", i, j)`` and ``("neg", i)``.
    """
    A = _copy(M)
    m = len(A)
    n = len(A[0]) if m else 0
    ops: list[tuple] = []

    def add(i, j, k):
        if k:
            A[i] = [a + k * b for a, b in zip(A[i], A[j])]
            ops.append(("add", i, j, k))

    def swap(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            ops.append(("swap", i, j))

    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            rows = [i for i in range(r, m) if A[i][c]]
            if not rows:
                break
            piv = min(rows, key=lambda i: abs(A[i][c]))
            swap(r, piv)
            clean = True
            for i in range(r + 1, m):
                if A[i][c]:
                    add(i, r, -(A[i][c] // A[r][c]))
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if r < m and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-a for a in A[r]]
                ops.append(("neg", r))
            for i in range(r):
                add(i, r, -(A[i][c] // A[r][c]))
            r += 1
    return A, ops


def integer_kernel(M: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Z-basis of {v : M v = 0}, returned in Hermite form."""
    if not M:
        if ncols is None:
            raise ValueError("ncols is required for an empty matrix")
        return _identity(ncols)
    n = len(M[0])
    D, _, V = smith_normal_form(M)
    rank = sum(1 for i in range(min(len(D), n)) if D[i][i])
    basis = [[V[i][j] for i in range(n)] for j in range(rank, n)]
    if not basis:
        return []
    H, _ = hermite_rows(basis)
    return [row for row in H if any(row)]


def rational_rank(M: Sequence[Sequence]) -> int:
    A = [[Fraction(x) for x in row] for row in M]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][c]
        for i in range(rank + 1, len(A)):
            if A[i][c]:
                f = A[i][c] / p
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


def rank_cyclotomic(M: Sequence[Sequence[CyclotomicNumber]]) -> int:
    """Exact rank over Q(zeta_N) of a matrix of cyclotomic numbers."""
    if not M or not M[0]:
        return 0
    N = 1
    for row in M:
        for x in row:
            N = N * x.order // math.gcd(N, x.order)
    rows = []
    for row in M:
        coords = [x.lift(N).coords for x in row]
        den = 1
        for c in coords:
            for q in c:
                den = den * q.denominator // math.gcd(den, q.denominator)
        rows.append([tuple(int(q * den) for q in c) for c in coords])
    return _rank_zeta(rows, N)


def rank_root_counts(rows: Sequence[Sequence[Sequence[int]]], N: int) -> int:
    """Exact rank over Q(zeta_N); entry (i, j) is sum_k rows[i][j][k] zeta_N^k."""
    if not rows or not rows[0]:
        return 0
    return _rank_zeta([[_reduce_int(e, N) for e in row] for row in rows], N)


def _reduce_int(coeffs: Sequence[int], N: int) -> tuple[int, ...]:
    """Integer polynomial modulo Phi_N (monic, so no denominators appear)."""
    phi = cyclotomic_polynomial(N)
    d = len(phi) - 1
    c = list(coeffs) + [0] * max(0, d - len(coeffs))
    for i in range(len(c) - 1, d - 1, -1):
        a = c[i]
        if a:
            for j in range(d):
                if phi[j]:
                    c[i - d + j] -= a * phi[j]
    return tuple(c[:d])


def _mulmod(a: Sequence[int], b: Sequence[int], N: int) -> tuple[int, ...]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    return _reduce_int(prod, N)


def _rank_zeta(A: list[list[tuple[int, ...]]], N: int) -> int:
    """Fraction-free elimination over Z[zeta_N].

    Row i becomes p * row_i - a * row_pivot, which only multiplies row_i by
    the nonzero field element p; afterwards the integer content of the row
    is divided out to keep entries small.
    """
    rows, cols = len(A), len(A[0])
    A = [list(r) for r in A]
    rank = 0
    for c in range(cols):
        best = None
        for i in range(rank, rows):
            if any(A[i][c]):
                size = sum(abs(x) for x in A[i][c])
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            continue
        piv = best[1]
        A[rank], A[piv] = A[piv], A[rank]
        prow = A[rank]
        p = prow[c]
        for i in range(rank + 1, rows):
            a = A[i][c]
            if not any(a):
                continue
            new = list(A[i])
            new[c] = (0,) * len(p)
            g = 0
            for j in range(c + 1, cols):
                u = _mulmod(p, A[i][j], N) if any(A[i][j]) else A[i][j]
                if any(prow[j]):
                    v = _mulmod(a, prow[j], N)
                    u = tuple(x - y for x, y in zip(u, v)) if any(u) else tuple(-y for y in v)
                new[j] = u
                for x in u:
                    g = math.gcd(g, x)
            if g > 1:
                new = [tuple(x // g for x in e) for e in new]
            A[i] = new
        rank += 1
        if rank == rows:
            break
    return rank


def mat_mul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def determinant(M) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return det


__all__ = [
    "smith_normal_form", "invariant_factors", "hermite_rows", "integer_kernel",
    "rational_rank", "rank_cyclotomic", "mat_mul", "determinant",
]
