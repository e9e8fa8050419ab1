"""Exact integer and rational matrix helpers.

Everything here works on tuples of tuples with Python integers or
``fractions.Fraction`` entries, so results are exact for arbitrarily
large values.  Matrices are small (desk scale, n <= 4 or so); clarity
wins over asymptotics.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from typing import Sequence

from .errors import SingularMatrix

IntMatrix = tuple[tuple[int, ...], ...]


def as_matrix(rows) -> IntMatrix:
    """Validate a square integer matrix given as nested sequences."""
    mat = tuple(tuple(operator.index(x) for x in row) for row in rows)
    n = len(mat)
    if n == 0 or any(len(row) != n for row in mat):
        raise ValueError("matrix must be square and non-empty")
    return mat


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a))


def mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def mat_vec(a, v):
    n = len(a)
    return tuple(sum(a[i][k] * v[k] for k in range(n)) for i in range(n))


def mat_pow(a: IntMatrix, k: int) -> IntMatrix:
    """a**k for k >= 0 by repeated squaring."""
    if k < 0:
        raise ValueError("negative power on integer matrix")
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def char_poly(a: IntMatrix) -> tuple[int, ...]:
    """Coefficients of det(x*I - a), ascending: (c0, c1, ..., 1).

    Faddeev-LeVerrier recursion; all divisions are exact.
    """
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = identity(n)
    for k in range(1, n + 1):
        am = mat_mul(a, m)
        tr = sum(am[i][i] for i in range(n))
        c = -tr // k
        assert c * k == -tr
        coeffs[n - k] = c
        m = tuple(
            tuple(am[i][j] + (c if i == j else 0) for j in range(n)) for i in range(n)
        )
    return tuple(coeffs)


def det(a: IntMatrix) -> int:
    n = len(a)
    c0 = char_poly(a)[0]
    return c0 if n % 2 == 0 else -c0


def solve(a, b: Sequence) -> tuple[Fraction, ...]:
    """Solve a x = b exactly over the rationals (Gaussian elimination)."""
    n = len(a)
    aug = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrix("singular system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(row[n] for row in aug)


def solve_integer(a: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """Integer solution of a x = b, or None if x is not integral."""
    x = solve(a, b)
    if all(xi.denominator == 1 for xi in x):
        return tuple(int(xi) for xi in x)
    return None


def solve_float(a, b):
    """Plain float Gaussian elimination for the inexact point path."""
    n = len(a)
    aug = [[float(a[i][j]) for j in range(n)] + [float(b[i])] for i in range(n)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(aug[r][col]))
        if aug[pivot][col] == 0.0:
            raise SingularMatrix("singular system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1.0 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0.0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(row[n] for row in aug)


def schur_stable(coeffs: Sequence[int]) -> tuple[bool, int]:
    """Exact test that every root of the polynomial lies in |z| < 1.

    ``coeffs`` ascending (a0, a1, ..., an), an != 0.  Returns
    (stable, stage) where stage is the first failing reduction step
    (== degree steps completed when stable).  The reduction
    q(z) -> (an*q(z) - a0*q*(z)) / z keeps all roots inside the disk
    iff an^2 - a0^2 > 0 at every step; coefficients stay integers.
    """
    cur = list(coeffs)
    while cur and cur[-1] == 0:
        cur.pop()
    if not cur:
        raise ValueError("zero polynomial")
    stage = 0
    while len(cur) > 1:
        a0, an = cur[0], cur[-1]
        delta = an * an - a0 * a0
        if delta <= 0:
            return False, stage
        m = len(cur) - 1
        cur = [an * cur[i + 1] - a0 * cur[m - 1 - i] for i in range(m)]
        stage += 1
    return True, stage
