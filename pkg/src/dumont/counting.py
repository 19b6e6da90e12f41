"""Brute-force representation counts.

Every count here is obtained by enumerating tuples directly (depth-first,
pruned by lower bounds on what the undetermined variables must still
contribute).  Nothing in this module uses series arithmetic, which keeps it
usable as an independent oracle for the generating-function side.

Tuples are ordered and all variables are strictly positive unless stated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CongruenceViolation, CountOverflow, OddRequired
from .report import Discrepancy, Stopwatch, VerificationReport, report

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class CyclicFormSpec:
    """k-tuples of positive integers = residue (mod modulus), counted by the
    cyclic form x1*x2 + x2*x3 + ... + xk*x1."""

    k: int
    residue: int
    modulus: int = 4

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.residue not in (1, 3) or self.modulus != 4:
            raise ValueError("only the classes 1 and 3 mod 4 are supported")


@dataclass(frozen=True)
class OddSquaresSpec:
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be positive")


def _checked(count: int) -> int:
    if count > INT64_MAX:
        raise CountOverflow(f"count {count} exceeds the 64-bit range")
    return count


def cyclic_form(xs: tuple[int, ...]) -> int:
    """x1*x2 + ... + xk*x1, read literally (k=1 gives x1^2, k=2 gives 2*x1*x2)."""
    k = len(xs)
    return sum(xs[i] * xs[(i + 1) % k] for i in range(k))


# ------------------------------------------------------------- odd squares

def _odd_squares_hist(k: int, n_max: int) -> list[int]:
    hist = [0] * (n_max + 1)

    def rec(left: int, total: int) -> None:
        # each remaining variable adds at least 1
        if left == 0:
            hist[total] += 1
            return
        x = 1
        while total + x * x + (left - 1) <= n_max:
            rec(left - 1, total + x * x)
            x += 2

    if n_max >= 0:
        rec(k, 0)
    return hist


def odd_squares_count(k: int, n: int) -> int:
    """r_k^{1(2)}(n): ordered k-tuples of positive odd x with sum x_i^2 = n."""
    if k < 1:
        raise ValueError("k must be positive")

    def rec(left: int, rest: int) -> int:
        if left == 1:
            x = math.isqrt(rest) if rest > 0 else 0
            return 1 if x * x == rest and x % 2 == 1 else 0
        count = 0
        x = 1
        while x * x + (left - 1) <= rest:
            count += rec(left - 1, rest - x * x)
            x += 2
        return count

    if n < k:
        return 0
    return _checked(rec(k, n))


def odd_squares_counts(k: int, n_max: int) -> list[int]:
    """[r_k^{1(2)}(n) for n in 0..n_max] from a single enumeration."""
    return [_checked(c) for c in _odd_squares_hist(k, n_max)]


# ---------------------------------------------------------------- cyclic form

def _cyclic_hist(k: int, r: int, n_max: int) -> list[int]:
    hist = [0] * (n_max + 1)
    if n_max < 0:
        return hist
    if k == 1:
        x = r
        while x * x <= n_max:
            hist[x * x] += 1
            x += 4
        return hist
    if k == 2:
        x = r
        while 2 * x * r <= n_max:
            y = r
            while 2 * x * y <= n_max:
                hist[2 * x * y] += 1
                y += 4
            x += 4
        return hist

    rr = r * r

    def rec(i: int, first: int, prev: int, partial: int) -> None:
        # i variables fixed, last one is `prev`
        if i == k - 1:
            # closing variable x: partial + x * (prev + first)
            s = prev + first
            x = r
            while partial + x * s <= n_max:
                hist[partial + x * s] += 1
                x += 4
            return
        # edges still open once x is fixed: x*next >= x*r, k-i-2 interior
        # ones >= r^2 each, and the closing one >= r*first
        rest = (k - i - 2) * rr + r * first
        x = r
        while partial + x * (prev + r) + rest <= n_max:
            rec(i + 1, first, x, partial + prev * x)
            x += 4

    x1 = r
    while 2 * x1 * r + (k - 2) * rr <= n_max:
        rec(1, x1, x1, 0)
        x1 += 4
    return hist


def cyclic_counts(spec: CyclicFormSpec, n_max: int) -> list[int]:
    """[c_k^{r(4)}(n) for n in 0..n_max] from a single enumeration."""
    return [_checked(c) for c in _cyclic_hist(spec.k, spec.residue, n_max)]


def cyclic_count(spec: CyclicFormSpec, n: int) -> int:
    """c_k^{1(4)}(n) or c_k^{3(4)}(n), depending on ``spec.residue``."""
    k, r = spec.k, spec.residue
    if n <= 0:
        return 0
    if k == 1:
        x = math.isqrt(n)
        return 1 if x * x == n and x % 4 == r else 0
    if k == 2:
        if n % 2:
            return 0
        half = n // 2
        return sum(1 for d in _divisors(half) if d % 4 == r and (half // d) % 4 == r)

    rr = r * r

    def rec(i: int, first: int, prev: int, partial: int) -> int:
        if i == k - 1:
            s = prev + first
            rest = n - partial
            if rest > 0 and rest % s == 0 and (rest // s) % 4 == r:
                return 1
            return 0
        rest = (k - i - 2) * rr + r * first
        count = 0
        x = r
        while partial + x * (prev + r) + rest <= n:
            count += rec(i + 1, first, x, partial + prev * x)
            x += 4
        return count

    total = 0
    x1 = r
    # x1 touches two edges, each at least x1*r; the other k-2 edges at least r^2
    while 2 * x1 * r + (k - 2) * rr <= n:
        total += rec(1, x1, x1, 0)
        x1 += 4
    return _checked(total)


# ------------------------------------------------------------------- Dumont

@dataclass(frozen=True)
class DumontCheck:
    k: int
    n: int
    r: int
    c1: int
    c3: int

    @property
    def holds(self) -> bool:
        return self.r == self.c1 - (-1) ** self.k * self.c3

    def as_row(self) -> tuple:
        return (self.k, self.n, self.r, self.c1, self.c3, self.holds)


def check_dumont(k: int, n: int) -> DumontCheck:
    """Evaluate r_k^{1(2)}(n) = c_k^{1(4)}(n) - (-1)^k c_k^{3(4)}(n) by brute force."""
    return DumontCheck(k, n, odd_squares_count(k, n),
                       cyclic_count(CyclicFormSpec(k, 1), n),
                       cyclic_count(CyclicFormSpec(k, 3), n))


def dumont_table(k_max: int, n_max: int) -> list[DumontCheck]:
    """All checks for 1 <= k <= k_max, 0 <= n <= n_max, one enumeration per count."""
    rows = []
    for k in range(1, k_max + 1):
        r = odd_squares_counts(k, n_max)
        c1 = cyclic_counts(CyclicFormSpec(k, 1), n_max)
        c3 = cyclic_counts(CyclicFormSpec(k, 3), n_max)
        rows.extend(DumontCheck(k, n, r[n], c1[n], c3[n]) for n in range(n_max + 1))
    return rows


# -------------------------------------------------------------- triangular

def triangular_count(k: int, m: int) -> int:
    """Ordered k-tuples of integers y >= 1 with sum C(y, 2) = m."""
    if m < 0:
        return 0

    def rec(left: int, rest: int) -> int:
        if left == 1:
            # C(y,2) = rest  <=>  (2y-1)^2 = 8 rest + 1
            s = math.isqrt(8 * rest + 1)
            return 1 if s * s == 8 * rest + 1 else 0
        count = 0
        y = 1
        while y * (y - 1) // 2 <= rest:
            count += rec(left - 1, rest - y * (y - 1) // 2)
            y += 1
        return count

    return _checked(rec(k, m))


# ---------------------------------------------------------------- divisors

def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def divisors(n: int) -> list[int]:
    """Positive divisors of n >= 1 in increasing order (trial division)."""
    if n < 1:
        raise ValueError("divisors are defined here for n >= 1")
    return _divisors(n)


def divisor_sum_alternating(n: int) -> int:
    """sum over d | n of (-1)^((d-1)/2), for odd n."""
    if n < 1 or n % 2 == 0:
        raise OddRequired(f"expected a positive odd integer, got {n}")
    return sum(1 if d % 4 == 1 else -1 for d in _divisors(n))


def divisor_sum_sigma(n: int) -> int:
    if n < 1:
        raise ValueError("sigma is defined for n >= 1")
    return sum(_divisors(n))


def kronecker_count(n: int) -> int:
    """|{(a, b, c) positive : n = 4ac - b^2, b < 2a, b < 2c}| for n = 3 (mod 8)."""
    if n < 1 or n % 8 != 3:
        raise CongruenceViolation(f"expected n = 3 (mod 8), got {n}")
    count = 0
    b = 1
    # a, c >= (b+1)/2 forces n + b^2 = 4ac >= (b+1)^2, i.e. 2b + 1 <= n
    while 2 * b + 1 <= n:
        prod4 = n + b * b
        if prod4 % 4 == 0:
            ac = prod4 // 4
            for a in _divisors(ac):
                if b < 2 * a and b < 2 * (ac // a):
                    count += 1
        b += 1
    return count


# ------------------------------------------------------- sums over integers

def all_signs_squares_count(k: int, n: int) -> int:
    """r_2(n) or r_4(n): integer k-tuples (any sign, zeros allowed)."""
    if k not in (2, 4):
        raise ValueError("k must be 2 or 4")
    if n < 0:
        return 0

    def rec(left: int, rest: int) -> int:
        if left == 1:
            x = math.isqrt(rest)
            if x * x != rest:
                return 0
            return 1 if x == 0 else 2
        count = 0
        x = 0
        while x * x <= rest:
            count += (1 if x == 0 else 2) * rec(left - 1, rest - x * x)
            x += 1
        return count

    return rec(k, n)


def all_signs_squares_counts(k: int, n_max: int) -> list[int]:
    """[r_k(n) for n in 0..n_max], k in {2, 4}, by enumerating pairs.

    r_4 is assembled from the enumerated pair counts, since a 4-tuple is two
    independent pairs.
    """
    if k not in (2, 4):
        raise ValueError("k must be 2 or 4")
    r2 = [0] * (n_max + 1)
    lim = math.isqrt(n_max)
    for x in range(-lim, lim + 1):
        for y in range(-lim, lim + 1):
            s = x * x + y * y
            if s <= n_max:
                r2[s] += 1
    if k == 2:
        return r2
    r4 = [0] * (n_max + 1)
    for s, a in enumerate(r2):
        if a:
            for t in range(n_max - s + 1):
                r4[s + t] += a * r2[t]
    return r4


def jacobi_two_squares(n: int) -> int:
    """4 * sum over odd d | n of (-1)^((d-1)/2)."""
    return 4 * sum(1 if d % 4 == 1 else -1 for d in _divisors(n) if d % 2)


def jacobi_four_squares(n: int) -> int:
    """8 * sum over d | n with 4 not dividing d of d."""
    return 8 * sum(d for d in _divisors(n) if d % 4)


# ----------------------------------------------------------------- classical

def _first_failure(name, pairs):
    """pairs: iterable of (n, lhs, rhs); returns the first Discrepancy or None."""
    for n, lhs, rhs in pairs:
        if lhs != rhs:
            return Discrepancy({"identity": name, "n": n}, n, lhs, rhs)
    return None


def verify_classical(range_max: int) -> VerificationReport:
    """Check the classical corollaries of the Dumont identity by brute force.

    Ranges: Gauss (three triangular numbers) for m <= range_max, the two
    odd-square divisor formulas for m <= range_max // 4, r_2 and r_4 for
    1 <= n <= range_max, Lagrange positivity for n <= 5 * range_max and the
    Kronecker count for n = 3 (mod 8), n <= range_max.
    """
    if range_max < 1:
        raise ValueError("range_max must be >= 1")
    watch = Stopwatch()
    m_odd = range_max // 4
    lagrange_max = 5 * range_max
    r2 = all_signs_squares_counts(2, range_max)
    r4 = all_signs_squares_counts(4, lagrange_max)

    checks = [
        ("gauss_eureka",
         ((m, int(triangular_count(3, m) > 0), 1) for m in range(range_max + 1))),
        ("gauss_eureka_witness",
         ((m, cyclic_form((1, 1, 4 * m + 1)), 8 * m + 3) for m in range(range_max + 1))),
        ("jacobi_two_odd_squares",
         ((m, odd_squares_count(2, 8 * m + 2), divisor_sum_alternating(4 * m + 1))
          for m in range(m_odd + 1))),
        ("jacobi_four_odd_squares",
         ((m, odd_squares_count(4, 8 * m + 4), divisor_sum_sigma(2 * m + 1))
          for m in range(m_odd + 1))),
        ("jacobi_r2", ((n, r2[n], jacobi_two_squares(n)) for n in range(1, range_max + 1))),
        ("jacobi_r4", ((n, r4[n], jacobi_four_squares(n)) for n in range(1, range_max + 1))),
        ("lagrange", ((n, int(r4[n] > 0), 1) for n in range(lagrange_max + 1))),
        ("kronecker",
         ((n, kronecker_count(n), odd_squares_count(3, n)) for n in range(3, range_max + 1, 8))),
    ]
    first = None
    for name, pairs in checks:
        first = _first_failure(name, pairs)
        if first is not None:
            break
    return report("verify_classical", {"range_max": range_max}, watch, first)
