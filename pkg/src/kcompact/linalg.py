"""Exact linear algebra: fraction-free elimination over integral domains,
Smith normal form over Z, and rational helpers for small polyhedral work."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence


class NotDivisible(ArithmeticError):
    pass


def bareiss_solve(A: Sequence[Sequence], B: Sequence[Sequence], divide: Callable, is_zero: Callable):
    """Fraction-free solve of ``A X = B`` over an integral domain.

    Returns ``(D, Y)`` with ``D = +-det(A)`` and ``A Y = D B``, so the
    solution over the fraction field is ``Y / D``.  ``divide(a, b)`` must
    return the exact quotient or ``None``; Bareiss' pivot divisions are
    exact by Sylvester's identity, and a failed division raises.
    """
    n = len(A)
    k_cols = len(B[0]) if B else 0
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    prev = None
    for k in range(n):
        p = next((i for i in range(k, n) if not is_zero(M[i][k])), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        if p != k:
            M[k], M[p] = M[p], M[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + k_cols):
                val = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                if prev is not None:
                    q = divide(val, prev)
                    if q is None:
                        raise NotDivisible("Bareiss step did not divide exactly")
                    val = q
                M[i][j] = val
            M[i][k] = M[i][k] * 0
        prev = M[k][k]
    D = M[n - 1][n - 1]
    Y = [[None] * k_cols for _ in range(n)]
    for c in range(k_cols):
        for i in range(n - 1, -1, -1):
            acc = D * M[i][n + c]
            for j in range(i + 1, n):
                acc = acc - M[i][j] * Y[j][c]
            q = divide(acc, M[i][i])
            if q is None:
                raise NotDivisible("fraction-free back substitution did not divide exactly")
            Y[i][c] = q
    return D, Y


def smith_normal_form(A: Sequence[Sequence[int]]):
    """Return ``(U, D, V)`` with ``U A V = D`` diagonal, ``U``, ``V`` unimodular.

    Diagonal entries are nonnegative and each divides the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [[int(x) for x in row] for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(a, b):
        D[a], D[b] = D[b], D[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in D:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    def add_row(src, dst, k):  # row dst += k * row src
        D[dst] = [x + k * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # divisibility: fold any entry not divisible by the pivot into row t
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]),
                    None,
                )
                if bad:
                    add_row(bad[0], t, 1)
                    done = False
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def det_int(A: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (Bareiss)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        p = next((i for i in range(k, n) if M[i][k]), None)
        if p is None:
            return 0
        if p != k:
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse_rational(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        M[k], M[p] = M[p], M[k]
        piv = M[k][k]
        M[k] = [x / piv for x in M[k]]
        for i in range(n):
            if i != k and M[i][k]:
                f = M[i][k]
                M[i] = [x - f * y for x, y in zip(M[i], M[k])]
    return [row[n:] for row in M]


def solve_rational(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve a square nonsingular system exactly."""
    inv = inverse_rational(A)
    return [sum(inv[i][j] * b[j] for j in range(len(b))) for i in range(len(inv))]


def rank_rational(rows: Sequence[Sequence]) -> int:
    M = [[Fraction(x) for x in row] for row in rows]
    if not M:
        return 0
    n = len(M[0])
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
    return r


def integer_kernel_primitive(rows: Sequence[Sequence[int]], n: int) -> tuple:
    """Primitive integer generator of a rank-one kernel ``{x : rows x = 0}``."""
    if not rows:
        if n != 1:
            raise ValueError("kernel is not one-dimensional")
        return (1,)
    U, D, V = smith_normal_form(rows)
    rank = sum(1 for i in range(min(len(D), n)) if D[i][i])
    if n - rank != 1:
        raise ValueError("kernel is not one-dimensional")
    # last column of V spans the kernel over Z
    return tuple(V[i][n - 1] for i in range(n))


def fm_feasible(ineqs: list[tuple[list[Fraction], Fraction]]) -> bool:
    """Fourier-Motzkin: is ``{x : a.x >= b for (a, b) in ineqs}`` nonempty?"""
    rows = [([Fraction(x) for x in a], Fraction(b)) for a, b in ineqs]
    if not rows:
        return True
    nvar = len(rows[0][0])
    for k in range(nvar):
        pos, neg, zero = [], [], []
        for a, b in rows:
            (pos if a[k] > 0 else neg if a[k] < 0 else zero).append((a, b))
        new = list(zero)
        for ap, bp in pos:
            for an, bn in neg:
                lp, ln = -an[k], ap[k]
                a = [lp * x + ln * y for x, y in zip(ap, an)]
                new.append((a, lp * bp + ln * bn))
        # drop duplicates to limit blow-up
        seen = {}
        for a, b in new:
            key = tuple(a)
            if key not in seen or seen[key] < b:
                seen[key] = b
        rows = [(list(a), b) for a, b in seen.items()]
    return all(b <= 0 for _, b in rows)
