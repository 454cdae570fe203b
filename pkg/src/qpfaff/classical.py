"""Brute-force classical det, per, Pf and Hf on plain integer/rational matrices.

Deliberately naive and independent of the symbolic engine: used as the
reference for the r = s = 1 specialization.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations


def _parity(p) -> int:
    """+1 or -1 from the cycle decomposition of a 0-based permutation."""
    seen = [False] * len(p)
    sign = 1
    for k in range(len(p)):
        if seen[k]:
            continue
        length = 0
        j = k
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det(M) -> Fraction:
    n = len(M)
    total = Fraction(0)
    for p in permutations(range(n)):
        t = Fraction(_parity(p))
        for i in range(n):
            t *= M[i][p[i]]
        total += t
    return total


def per(M) -> Fraction:
    """Ryser's inclusion-exclusion formula."""
    n = len(M)
    total = Fraction(0)
    for k in range(1, n + 1):
        for cols in combinations(range(n), k):
            prod = Fraction(1)
            for i in range(n):
                prod *= sum(M[i][j] for j in cols)
            total += (-1) ** k * prod
    return (-1) ** n * total


def pf(M) -> Fraction:
    """Pfaffian from the strict upper triangle, expanding along the first row."""
    return _pf(M, tuple(range(len(M))), signed=True)


def hf(M) -> Fraction:
    """Hafnian from the strict upper triangle: sum over perfect matchings."""
    return _pf(M, tuple(range(len(M))), signed=False)


def _pf(M, idx, signed):
    if not idx:
        return Fraction(1)
    if len(idx) % 2:
        return Fraction(0)
    first = idx[0]
    total = Fraction(0)
    for pos in range(1, len(idx)):
        rest = idx[1:pos] + idx[pos + 1 :]
        sign = (-1) ** (pos - 1) if signed else 1
        total += sign * M[first][idx[pos]] * _pf(M, rest, signed)
    return total


def matmul(A, B):
    return [
        [sum(Fraction(A[i][k]) * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def transpose(A):
    return [list(col) for col in zip(*A)]


def symplectic(n: int, v=1):
    """Block diagonal 2n x 2n matrix with blocks [[0, 1], [-v, 0]]."""
    J = [[0] * (2 * n) for _ in range(2 * n)]
    for m in range(n):
        J[2 * m][2 * m + 1] = 1
        J[2 * m + 1][2 * m] = -v
    return J
