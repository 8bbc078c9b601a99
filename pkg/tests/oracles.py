"""Slow, obviously-correct reference implementations used only by the tests."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import gcd


def perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(rows) -> int:
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        term = perm_sign(perm)
        for i in range(n):
            term *= rows[i][perm[i]]
            if not term:
                break
        total += term
    return total


def charpoly_by_interpolation(rows) -> list[int]:
    """Coefficients of det(sI - A), constant first, by Lagrange interpolation at s = 0..n."""
    n = len(rows)
    xs = list(range(n + 1))
    ys = [leibniz_det([[(x if i == j else 0) - rows[i][j] for j in range(n)] for i in range(n)]) for x in xs]
    coeffs = [Fraction(0)] * (n + 1)
    for k, xk in enumerate(xs):
        basis = [Fraction(1)]
        denom = 1
        for m, xm in enumerate(xs):
            if m == k:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xm * basis[d + 1]
            denom *= xk - xm
        for d in range(n + 1):
            coeffs[d] += Fraction(ys[k], denom) * basis[d]
    assert all(c.denominator == 1 for c in coeffs)
    return [int(c) for c in coeffs]


def minors_gcd(rows, k: int) -> int:
    """gcd of all k x k minors (the k-th determinantal divisor)."""
    from itertools import combinations

    m, n = len(rows), len(rows[0]) if rows else 0
    g = 0
    for r in combinations(range(m), k):
        for c in combinations(range(n), k):
            g = gcd(g, leibniz_det([[rows[i][j] for j in c] for i in r]))
    return g


def brute_force_count(a: int, b: int, p: int) -> int:
    """|E(F_p)| by testing every (x, y) pair."""
    return 1 + sum(1 for x in range(p) for y in range(p) if (y * y - x**3 - a * x - b) % p == 0)
