"""Independent reference computations used to freeze expected values.

Nothing here imports the code under test.
"""

from __future__ import annotations

import math
from fractions import Fraction


def newton_cotes_weights(points: int) -> list[Fraction]:
    """Closed Newton-Cotes weights on [0, 1] from the moment equations.

    Solves sum_i w_i x_i^j = 1/(j+1), j = 0..points-1, by Gauss-Jordan
    elimination over the rationals.
    """
    xs = [Fraction(i, points - 1) for i in range(points)]
    rows = [[x**j for x in xs] + [Fraction(1, j + 1)] for j in range(points)]
    n = points
    for col in range(n):
        pivot = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        p = rows[col][col]
        rows[col] = [v / p for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [v - f * u for v, u in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def interpolatory_rule(f, a: Fraction, b: Fraction) -> Fraction:
    w = newton_cotes_weights(5)
    return (b - a) * sum(wi * f(a + (b - a) * Fraction(i, 4)) for i, wi in enumerate(w))


def falling(k: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= k - i
    return out


def crossover_scan(bound_of_k, kmax: int = 200) -> int:
    """First k >= 6 with bound(k) < k(k-1)...(k-5)/1935360 (b = 1), brute force."""
    for k in range(6, kmax + 1):
        if bound_of_k(k) * 1935360 < falling(k, 6):
            return k
    raise LookupError


def kernel_sup_by_sampling(kernel_fn, a: Fraction, b: Fraction, n: int = 7200) -> Fraction:
    """Lower estimate of sup|K| on a fine rational grid, both one-sided values at nodes."""
    best = Fraction(0)
    for i in range(n + 1):
        t = a + (b - a) * Fraction(i, n)
        for v in kernel_fn(t):
            best = max(best, abs(v))
    return best


def simpson_reference(f, a: float, b: float, n: int = 20000) -> float:
    h = (b - a) / n
    s = f(a) + f(b)
    s += 4 * math.fsum(f(a + (2 * i - 1) * h) for i in range(1, n // 2 + 1))
    s += 2 * math.fsum(f(a + 2 * i * h) for i in range(1, n // 2))
    return s * h / 3
