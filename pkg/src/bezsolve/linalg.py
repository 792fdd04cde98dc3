"""Exact rational linear algebra on list-of-lists matrices.

Forward elimination is fraction-free (Bareiss, over row-scaled integers);
back substitution runs in Fractions.  Everything here is deterministic:
pivots are always the first usable row/column.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Matrix = list[list[Fraction]]
Vector = list[Fraction]


class SingularMatrixError(ValueError):
    """A linear solve hit a singular coefficient matrix."""


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def mat_copy(m: Matrix) -> Matrix:
    return [row[:] for row in m]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, m: Matrix) -> Matrix:
    c = Fraction(c)
    return [[c * x for x in row] for row in m]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [
        [sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt]
        for row in a
    ]


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def is_zero_matrix(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


def _integer_rows(m: Matrix) -> tuple[list[list[int]], list[int]]:
    """Scale each row by the lcm of its denominators; returns rows and scales."""
    rows: list[list[int]] = []
    scales: list[int] = []
    for row in m:
        mult = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        rows.append([int(x * mult) for x in row])
        scales.append(mult)
    return rows, scales


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free forward elimination.

    Returns (echelon rows, pivot column list, sign of the row permutation).
    Only the first len(pivots) rows of the result are meaningful.
    """
    r = len(rows)
    c = len(rows[0]) if rows else 0
    rows = [row[:] for row in rows]
    pivots: list[int] = []
    sign = 1
    prev = 1
    rank = 0
    for col in range(c):
        pivot_row = next((i for i in range(rank, r) if rows[i][col]), None)
        if pivot_row is None:
            continue
        if pivot_row != rank:
            rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
            sign = -sign
        p = rows[rank][col]
        for i in range(rank + 1, r):
            factor = rows[i][col]
            for j in range(col, c):
                rows[i][j] = (rows[i][j] * p - factor * rows[rank][j]) // prev
        prev = p
        pivots.append(col)
        rank += 1
        if rank == r:
            break
    return rows, pivots, sign


def right_kernel(m: Matrix) -> list[Vector]:
    """Basis of the right kernel {w : m @ w = 0}.

    Each basis vector is scaled to integer entries with content 1 and a
    positive first nonzero entry; vectors are ordered by their free column.
    Returns [] exactly when m has full column rank.
    """
    r = len(m)
    c = len(m[0]) if r else 0
    if c == 0:
        return []
    if r == 0:
        return [[Fraction(int(i == j)) for i in range(c)] for j in range(c)]
    irows, _ = _integer_rows(m)
    ech, pivots, _ = _bareiss_echelon(irows)
    pivot_set = set(pivots)
    free = [j for j in range(c) if j not in pivot_set]
    basis: list[Vector] = []
    for f in free:
        w = [Fraction(0)] * c
        w[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            acc = sum((Fraction(ech[i][j]) * w[j] for j in range(pc + 1, c) if w[j]), Fraction(0))
            w[pc] = -acc / ech[i][pc]
        basis.append(normalize_primitive(w))
    return basis


def normalize_primitive(v: Vector) -> Vector:
    """Scale to integer entries with content 1, first nonzero entry positive."""
    nonzero = [x for x in v if x]
    if not nonzero:
        return [Fraction(0) for _ in v]
    mult = lcm(*(x.denominator for x in nonzero))
    ints = [int(x * mult) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        g = 1
    first = next(x for x in ints if x)
    if first < 0:
        g = -g
    return [Fraction(x, g) for x in ints]


def det(m: Matrix) -> Fraction:
    """Exact determinant by fraction-free elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    irows, scales = _integer_rows(m)
    ech, pivots, sign = _bareiss_echelon(irows)
    if len(pivots) < n:
        return Fraction(0)
    d = Fraction(sign * ech[n - 1][pivots[n - 1]])
    for s in scales:
        d /= s
    return d


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Solve a @ x = b exactly for square invertible a; b holds many columns."""
    n = len(a)
    if n == 0:
        return []
    k = len(b[0]) if b else 0
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    irows, _ = _integer_rows(aug)
    ech, pivots, _ = _bareiss_echelon(irows)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise SingularMatrixError("coefficient matrix is singular")
    x = zeros(n, k)
    for i in range(n - 1, -1, -1):
        for col in range(k):
            acc = Fraction(ech[i][n + col])
            for j in range(i + 1, n):
                acc -= Fraction(ech[i][j]) * x[j][col]
            x[i][col] = acc / ech[i][i]
    return x


def solve_right(a: Matrix, b: Matrix) -> Matrix:
    """Solve x @ a = b exactly (never forming an inverse)."""
    xt = solve(transpose(a), transpose(b))
    return transpose(xt)


def charpoly(a: Matrix) -> list[Fraction]:
    """Monic characteristic polynomial det(tI - a) by the Faddeev-LeVerrier
    recurrence; returns coefficients c with c[i] the coefficient of t**i."""
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = zeros(n, n)
    for k in range(1, n + 1):
        mk = mat_mul(a, mk)
        for i in range(n):
            mk[i][i] += coeffs[n - k + 1]
        trace = sum(
            (a[i][j] * mk[j][i] for i in range(n) for j in range(n) if a[i][j]),
            Fraction(0),
        )
        coeffs[n - k] = -trace / k
    return coeffs
