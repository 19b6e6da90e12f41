"""Infinite matrices of q-series and the intertwining relation XB = AX.

A matrix is given intensionally: an entry generator plus a certified lower
bound on the valuation of every entry.  Two classes of matrices matter:

* admissible: for every n there is k with |i - j| > k  =>  val(m_ij) > n;
* admitted:   for every n there is k with max(i, j) > k  =>  val(m_ij) > n.

The function ``n -> k`` is stored on the matrix as its ``cutoff``.  Products
and traces only ever sum over index ranges derived from these certificates,
so every truncated result is exact up to the requested order.
"""
from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import InsufficientPrecision, NoFiniteCutoff
from .report import Discrepancy, Stopwatch, VerificationReport, report
from .series import Monomial, QSeries, invert_unit, pochhammer, theta_odd_squares

ADMISSIBLE = "admissible"
ADMITTED = "admitted"

Bound = float  # an integer valuation bound, or math.inf for a zero entry


@dataclass(eq=False)
class SymbolicMatrix:
    name: str
    generator: Callable[[int, int, int], QSeries]
    valuation_bound: Callable[[int, int], Bound]
    kind: str
    cutoff: Optional[Callable[[int], int]]
    min_valuation: int = 0
    _cache: dict = field(default_factory=dict, repr=False)

    def entry(self, i: int, j: int, N: int) -> QSeries:
        """Entry (i, j) known exactly up to q^N."""
        if i < 0 or j < 0:
            raise IndexError("matrix indices start at 0")
        if self.valuation_bound(i, j) > N:
            return QSeries.zero(N)
        key = (i, j, N)
        value = self._cache.get(key)
        if value is None:
            value = self.generator(i, j, N)
            self._cache[key] = value
        return value

    def support(self, n: int) -> int:
        """Index k such that entries outside the certified window exceed q^n."""
        if self.cutoff is None:
            raise NoFiniteCutoff(f"matrix {self.name} carries no cutoff certificate")
        return max(self.cutoff(n), 0)


def _geometric_over(num_exp: int, den_exp: int, sign: int, N: int) -> QSeries:
    """sign * q^num_exp / (1 - q^den_exp) up to q^N."""
    if num_exp > N:
        return QSeries.zero(N)
    den = QSeries.from_dict({0: 1, den_exp: -1})
    return invert_unit(den, N - num_exp).shift(num_exp).scale(sign)


# -------------------------------------------------------- concrete matrices

def matrix_a() -> SymbolicMatrix:
    def gen(i, j, N):
        return QSeries.monomial((4 * i + 1) * (4 * j + 1), 1, N)

    return SymbolicMatrix("A", gen, lambda i, j: (4 * i + 1) * (4 * j + 1), ADMITTED,
                          # max(i, j) = m > n // 4 gives (4m+1) > n
                          lambda n: n // 4)


def matrix_b() -> SymbolicMatrix:
    def gen(i, j, N):
        if i == 0 and j == 0:
            return theta_odd_squares(N)
        if i == 0 or j == 0:
            return QSeries.zero(N)
        return QSeries.monomial((4 * i - 1) * (4 * j - 1), -1, N)

    def bound(i, j):
        if i == 0 and j == 0:
            return 1
        if i == 0 or j == 0:
            return math.inf
        return (4 * i - 1) * (4 * j - 1)

    # max(i, j) = m > n // 4 gives (4m-1)*3 >= 4m-1 > n
    return SymbolicMatrix("B", gen, bound, ADMITTED, lambda n: n // 4)


def _x_column0(i: int, N: int) -> QSeries:
    """(q^8; q^16)_i / (q^16; q^16)_i * q^(4i)."""
    M = N - 4 * i
    if M < 0:
        return QSeries.zero(N)
    num = pochhammer(Monomial(1, 8), 16, i, M)
    den = pochhammer(Monomial(1, 16), 16, i, M)
    return (num * invert_unit(den, M)).shift(4 * i).truncate(N)


def matrix_x(fault: bool = False) -> SymbolicMatrix:
    """The admissible matrix X; ``fault`` replaces x_01 by 0 (mutation testing)."""

    def gen(i, j, N):
        if fault and (i, j) == (0, 1):
            return QSeries.zero(N)
        if j > i:
            d = j - i - 1
            return _geometric_over(12 * d + 4, 16 * d + 8, -1, N)
        if j >= 1:
            d = i - j
            return _geometric_over(4 * d, 16 * d + 8, 1, N)
        return _x_column0(i, N)

    def bound(i, j):
        if j > i:
            return 12 * (j - i - 1) + 4
        if j >= 1:
            return 4 * (i - j)
        return 4 * i

    # |i - j| = d > n // 4: 4d > n, and 12(d-1) + 4 >= 4d for d >= 1
    return SymbolicMatrix("X*" if fault else "X", gen, bound, ADMISSIBLE, lambda n: n // 4)


def identity_matrix() -> SymbolicMatrix:
    def gen(i, j, N):
        return QSeries.one(N)

    return SymbolicMatrix("I", gen, lambda i, j: 0 if i == j else math.inf,
                          ADMISSIBLE, lambda n: 0)


# ---------------------------------------------------------------- products

def _summation_limit(M1: SymbolicMatrix, M2: SymbolicMatrix, i: int, j: int, N: int) -> int:
    """Largest m that can contribute to (M1 M2)_ij below q^(N+1)."""
    candidates = []
    n1 = N - M2.min_valuation  # M1 entries above this vanish in the product
    n2 = N - M1.min_valuation
    for M, n, anchor in ((M1, n1, i), (M2, n2, j)):
        if M.cutoff is None:
            continue
        k = M.support(n)
        candidates.append(anchor + k)  # |anchor - m| > k
        if M.kind == ADMITTED:
            candidates.append(k)  # max(anchor, m) > k
    if not candidates:
        raise NoFiniteCutoff(f"no certified cutoff for {M1.name}*{M2.name}")
    return min(candidates)


def truncated_product_entry(M1: SymbolicMatrix, M2: SymbolicMatrix, i: int, j: int,
                            N: int, slack: int = 0) -> QSeries:
    """(M1 M2)_ij up to q^N; ``slack`` sums that many extra indices past the cutoff."""
    limit = _summation_limit(M1, M2, i, j, N) + slack
    n1 = N - M2.min_valuation
    n2 = N - M1.min_valuation
    total = QSeries.zero(N)
    for m in range(limit + 1):
        if M1.valuation_bound(i, m) + M2.valuation_bound(m, j) > N:
            continue
        term = M1.entry(i, m, n1) * M2.entry(m, j, n2)
        if term.truncation_order < N:
            raise InsufficientPrecision(
                f"term {m} of ({M1.name}{M2.name})[{i},{j}] known only to q^{term.truncation_order}")
        total = total + term
    return total


def matmul(M1: SymbolicMatrix, M2: SymbolicMatrix) -> SymbolicMatrix:
    """Symbolic product; admitted if either factor is."""
    kind = ADMITTED if ADMITTED in (M1.kind, M2.kind) else ADMISSIBLE
    floor = M1.min_valuation + M2.min_valuation
    cutoff = None
    if M1.cutoff is not None and M2.cutoff is not None:
        c1, c2 = M1.cutoff, M2.cutoff
        cutoff = lambda n: max(c1(n - M2.min_valuation), 0) + max(c2(n - M1.min_valuation), 0)
    return SymbolicMatrix(f"{M1.name}{M2.name}",
                          lambda i, j, N: truncated_product_entry(M1, M2, i, j, N),
                          lambda i, j: floor, kind, cutoff, floor)


def trace(M: SymbolicMatrix, N: int) -> QSeries:
    """tr[M] up to q^N for an admitted matrix."""
    if M.kind != ADMITTED:
        raise NoFiniteCutoff(f"trace of {M.name} needs an admitted matrix")
    total = QSeries.zero(N)
    for i in range(M.support(N) + 1):
        total = total + M.entry(i, i, N)
    return total


def _block(M: SymbolicMatrix, size: int, N: int) -> list[dict[int, QSeries]]:
    rows = []
    for i in range(size):
        row = {}
        for j in range(size):
            e = M.entry(i, j, N)
            if e.coefficients:
                row[j] = e
        rows.append(row)
    return rows


def _block_mul(P: list[dict], E: list[dict], N: int) -> list[dict[int, QSeries]]:
    out = []
    for prow in P:
        acc: dict[int, QSeries] = {}
        for l, p in prow.items():
            for j, e in E[l].items():
                term = p * e
                if term.valuation > N:
                    continue
                acc[j] = acc[j] + term if j in acc else term.truncate(N)
        out.append({j: s for j, s in acc.items() if s.coefficients})
    return out


def trace_powers(M: SymbolicMatrix, k_max: int, N: int, block_slack: int = 0) -> list[QSeries]:
    """[tr[M^k] for k = 1..k_max] up to q^N, on the certified finite block."""
    if M.kind != ADMITTED:
        raise NoFiniteCutoff(f"trace of powers of {M.name} needs an admitted matrix")
    if k_max < 1:
        raise ValueError("k must be >= 1")
    if M.min_valuation < 0:
        raise NoFiniteCutoff("block restriction assumes nonnegative valuations")
    # a closed walk through an index outside the block uses an entry > q^N
    size = M.support(N) + 1 + block_slack
    E = _block(M, size, N)
    P = E
    traces = []
    for k in range(1, k_max + 1):
        if k > 1:
            P = _block_mul(P, E, N)
        t = QSeries.zero(N)
        for i, row in enumerate(P):
            if i in row:
                t = t + row[i]
        traces.append(t)
    return traces


def trace_power(M: SymbolicMatrix, k: int, N: int, block_slack: int = 0) -> QSeries:
    return trace_powers(M, k, N, block_slack)[-1]


def intertwining_closed_form(i: int, j: int, N: int) -> QSeries:
    """(-1)^[i>j] q^(16ij+4j-4i+1) sum_{l=min(i,j)}^{max(i,j)-1} q^(8l)/(1-q^(16l+8))."""
    if j < 1 or i < 0:
        raise ValueError("closed form needs i >= 0 and j >= 1")
    lead = 16 * i * j + 4 * j - 4 * i + 1
    sign = -1 if i > j else 1
    total = QSeries.zero(N)
    for l in range(min(i, j), max(i, j)):
        total = total + _geometric_over(lead + 8 * l, 16 * l + 8, sign, N)
    return total


# ------------------------------------------------------------ verification

def _series_discrepancy(lhs: QSeries, rhs: QSeries, N: int, **location) -> Optional[Discrepancy]:
    mismatch = lhs.first_mismatch(rhs, N)
    if lhs.truncation_order < N or rhs.truncation_order < N:
        # a silent precision loss would shrink the compared range
        raise InsufficientPrecision(f"operands known only to q^{min(lhs.truncation_order, rhs.truncation_order)}")
    if mismatch is None:
        return None
    e, a, b = mismatch
    return Discrepancy(location, e, a, b)


def _intertwining_row(i: int, K: int, N: int, fault: bool, slack: int) -> list[tuple]:
    A, B, X = matrix_a(), matrix_b(), matrix_x(fault)
    out = []
    for j in range(K + 1):
        xb = truncated_product_entry(X, B, i, j, N, slack)
        ax = truncated_product_entry(A, X, i, j, N, slack)
        m = xb.first_mismatch(ax, N)
        if m is not None:
            out.append((j, *m))
    return out


def verify_intertwining(K: int, N: int, fault: bool = False, jobs: int = 1,
                        slack: int = 0) -> VerificationReport:
    """Compare (XB)_ij with (AX)_ij for 0 <= i, j <= K up to q^N."""
    if K < 0 or N < 0:
        raise ValueError("K and N must be nonnegative")
    watch = Stopwatch()
    args = [(i, K, N, fault, slack) for i in range(K + 1)]
    if jobs > 1 and K > 0:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_intertwining_row, *zip(*args)))
    else:
        rows = [_intertwining_row(*a) for a in args]
    first = None
    for i, bad in enumerate(rows):
        if bad:
            j, e, lhs, rhs = bad[0]
            first = Discrepancy({"i": i, "j": j}, e, lhs, rhs)
            break
    params = {"max_index": K, "degree": N}
    if fault:
        params["fault"] = "x01"
    return report("verify_intertwining", params, watch, first, entries=(K + 1) ** 2)


def intertwining_entries(K: int, N: int, slack: int = 0) -> dict[tuple[int, int], tuple[QSeries, QSeries]]:
    """{(i, j): ((XB)_ij, (AX)_ij)} for the K+1 by K+1 corner."""
    A, B, X = matrix_a(), matrix_b(), matrix_x()
    return {(i, j): (truncated_product_entry(X, B, i, j, N, slack),
                     truncated_product_entry(A, X, i, j, N, slack))
            for i in range(K + 1) for j in range(K + 1)}


def _sum_terms(terms, N: int) -> QSeries:
    total = QSeries.zero(N)
    for num, den, lead in terms:
        total = total + _geometric_over(num + lead, den, 1, N)
    return total


def proof_partial_sums(i: int, j: int, N: int) -> dict[str, QSeries]:
    """The four partial sums of the entry (i, j) of XB = AX, taken literally.

    tail_ax = sum_{n >= j}  q^(4(n-j))/(1-q^(16(n-j)+8)) q^((4n+1)(4i+1))
    tail_xb = sum_{m > i}   q^(12(m-i-1)+4)/(1-q^(16(m-i-1)+8)) q^((4m-1)(4j-1))
    head_xb = sum_{1<=m<=i} q^(4(i-m))/(1-q^(16(i-m)+8)) q^((4m-1)(4j-1))
    head_ax = sum_{n < j}   q^(12(j-n-1)+4)/(1-q^(16(j-n-1)+8)) q^((4n+1)(4i+1))
    """
    def tail(first, num, den, lead):
        terms, t = [], first
        while num(t) + lead(t) <= N:  # both exponents increase with t
            terms.append((num(t), den(t), lead(t)))
            t += 1
        return _sum_terms(terms, N)

    tail_ax = tail(j, lambda n: 4 * (n - j), lambda n: 16 * (n - j) + 8,
                   lambda n: (4 * n + 1) * (4 * i + 1))
    tail_xb = tail(i + 1, lambda m: 12 * (m - i - 1) + 4, lambda m: 16 * (m - i - 1) + 8,
                   lambda m: (4 * m - 1) * (4 * j - 1))
    head_xb = _sum_terms([(4 * (i - m), 16 * (i - m) + 8, (4 * m - 1) * (4 * j - 1))
                          for m in range(1, i + 1)], N)
    head_ax = _sum_terms([(12 * (j - n - 1) + 4, 16 * (j - n - 1) + 8, (4 * n + 1) * (4 * i + 1))
                          for n in range(j)], N)
    return {"tail_ax": tail_ax, "tail_xb": tail_xb, "head_xb": head_xb, "head_ax": head_ax}


def verify_proof_decomposition(i: int, j: int, N: int) -> VerificationReport:
    """Check the two rearranged partial-sum identities behind XB = AX at (i, j)."""
    watch = Stopwatch()
    closed = intertwining_closed_form(i, j, N)
    # the head identity carries the sign (-1)^[j>i] instead of (-1)^[i>j]
    closed_head = closed if i == j else -closed
    s = proof_partial_sums(i, j, N)
    first = (_series_discrepancy(s["tail_ax"] - s["tail_xb"], closed, N, part="tails")
             or _series_discrepancy(s["head_xb"] - s["head_ax"], closed_head, N, part="heads"))
    return report("verify_proof_decomposition", {"i": i, "j": j, "degree": N}, watch, first)


def verify_trace_equality(k_max: int, N: int) -> VerificationReport:
    """tr[A^k] = tr[B^k] up to q^N for 1 <= k <= k_max."""
    watch = Stopwatch()
    ta = trace_powers(matrix_a(), k_max, N)
    tb = trace_powers(matrix_b(), k_max, N)
    first = None
    for k, (a, b) in enumerate(zip(ta, tb), start=1):
        first = _series_discrepancy(a, b, N, k=k)
        if first:
            break
    return report("verify_trace_equality", {"k_max": k_max, "degree": N}, watch, first)


def verify_trace_cyclicity(N: int, fault: bool = False) -> VerificationReport:
    """tr[AX] = tr[XA] up to q^N through certified truncated products."""
    watch = Stopwatch()
    A, X = matrix_a(), matrix_x(fault)
    first = _series_discrepancy(trace(matmul(A, X), N), trace(matmul(X, A), N), N,
                                traces="AX vs XA")
    params = {"degree": N}
    if fault:
        params["fault"] = "x01"
    return report("verify_trace_cyclicity", params, watch, first)


def verify_matrix_suite(K: int, N: int, k_max: int, fault: bool = False,
                        jobs: int = 1) -> list[VerificationReport]:
    return [verify_intertwining(K, N, fault, jobs),
            verify_trace_equality(k_max, N),
            verify_trace_cyclicity(N, fault)]


def verify_valuation_soundness(samples: int, N: int, seed: int = 0, fault: bool = False,
                               index_range: int = 40) -> VerificationReport:
    """Sample entries of A, B and X and check val(entry) >= declared bound.

    Entries are produced by the raw generators, bypassing the shortcut that
    returns zero whenever the bound already exceeds N.
    """
    watch = Stopwatch()
    rng = random.Random(seed)
    first = None
    for M in (matrix_a(), matrix_b(), matrix_x(fault)):
        for _ in range(samples):
            i, j = rng.randrange(index_range), rng.randrange(index_range)
            e = M.generator(i, j, N)
            b = M.valuation_bound(i, j)
            if e.coefficients and e.valuation < b:
                first = Discrepancy({"matrix": M.name, "i": i, "j": j}, e.valuation,
                                    e.coefficients[0], 0)
                break
        if first:
            break
    return report("verify_valuation_soundness",
                  {"samples": samples, "degree": N, "seed": seed}, watch, first)
