"""Independent reference computations for the tests.

None of these touch the package's series or matrix code: they work on plain
dicts / lists of integers and enumerate objects directly.
"""
from __future__ import annotations

import itertools
import math


def partition_counts(N):
    """p(0..N) by the coin-change recurrence."""
    p = [1] + [0] * N
    for part in range(1, N + 1):
        for n in range(part, N + 1):
            p[n] += p[n - part]
    return p


def distinct_partition_counts(N):
    """Partitions into distinct parts, 0..N (0/1 knapsack)."""
    d = [1] + [0] * N
    for part in range(1, N + 1):
        for n in range(N, part - 1, -1):
            d[n] += d[n - part]
    return d


def expand_product(factors, N):
    """prod (1 + c q^e) over (c, e), e >= 1, as a coefficient list up to q^N."""
    poly = {0: 1}
    for c, e in factors:
        new = dict(poly)
        for k, v in poly.items():
            if k + e <= N:
                new[k + e] = new.get(k + e, 0) + c * v
        poly = new
    return [poly.get(n, 0) for n in range(N + 1)]


def generalized_pentagonals(N):
    out = {}
    m = 0
    while True:
        hit = False
        for mm in (m, -m):
            g = mm * (3 * mm - 1) // 2
            if g <= N:
                out[g] = (-1) ** (mm % 2)
                hit = True
        if not hit and m > 0:
            return out
        m += 1


def bilateral_theta(sign, m, N):
    """sum_n sign^n q^(n^2 + m n) over |n| <= N + ceil(m^2/4) + 1, as a dict."""
    window = N + (m * m + 3) // 4 + 1
    out = {}
    for n in range(-window, window + 1):
        e = n * n + m * n
        if e <= N:
            out[e] = out.get(e, 0) + sign ** (n % 2)
    return {e: c for e, c in out.items() if c}


def tuples_in_class(k, residue, modulus, top):
    values = range(residue, top + 1, modulus)
    return itertools.product(values, repeat=k)


def cyclic_count_naive(k, residue, n):
    count = 0
    for xs in tuples_in_class(k, residue, 4, n):
        if sum(xs[i] * xs[(i + 1) % k] for i in range(k)) == n:
            count += 1
    return count


def odd_squares_naive(k, n):
    top = math.isqrt(max(n, 0))
    return sum(1 for xs in tuples_in_class(k, 1, 2, top) if sum(x * x for x in xs) == n)


def all_signs_naive(k, n):
    top = math.isqrt(max(n, 0))
    rng = range(-top, top + 1)
    return sum(1 for xs in itertools.product(rng, repeat=k) if sum(x * x for x in xs) == n)
