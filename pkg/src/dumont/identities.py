"""Coefficientwise checks of the classical q-series identities.

Bivariate identities are checked under monomial specializations: each of the
variables a, t, z is replaced by ``+-q^e`` and both sides are expanded as
univariate truncated series by separate code paths (a sum on the left, an
infinite product on the right).
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Optional

from .errors import InvalidSpecialization
from .report import Discrepancy, Stopwatch, VerificationReport, combine, report
from .series import (Monomial, QSeries, invert_unit, laurent_product, pochhammer,
                     theta_jacobi)

DEFAULT_DEGREE = 200

Q_BINOMIAL_A_GRID: tuple[Optional[Monomial], ...] = (
    None, Monomial(1, 1), Monomial(-1, 1), Monomial(1, 2), Monomial(-1, 2))
Q_BINOMIAL_T_GRID = tuple(Monomial(s, e) for e in (1, 2, 3) for s in (1, -1))
EULER_T_GRID = tuple(Monomial(s, e) for e in (1, 2, 3, 4) for s in (1, -1))
TRIPLE_Z_GRID = tuple(Monomial(s, e) for e in (0, 1, 2) for s in (1, -1))


def _label(m: Optional[Monomial]) -> str:
    return "0" if m is None else str(m)


def _geometric(n: int, N: int) -> QSeries:
    """1 / (1 - q^n) up to q^N."""
    return invert_unit(QSeries.from_dict({0: 1, n: -1}), N)


def _ratio_sum(t: Monomial, N: int, numerator: Callable[[int], Optional[QSeries]],
               extra_exponent: Callable[[int], int]) -> QSeries:
    """sum_{n>=0} T_n with T_0 = 1 and T_n = T_{n-1} t q^extra(n) num(n) / (1 - q^n).

    The factors 1/(1-q^n) accumulate to 1/(q;q)_n.  Summation stops once the
    lowest possible exponent of T_n, n*e + sum of extras, exceeds N.
    """
    total = QSeries.one(N)
    term = QSeries.one(N)
    floor = 0
    n = 0
    while True:
        n += 1
        floor += t.exponent + extra_exponent(n)
        if floor > N:
            return total
        num = numerator(n)
        if num is not None:
            term = term * num
        term = (term * _geometric(n, N)).shift(t.exponent + extra_exponent(n))
        term = term.scale(t.sign).truncate(N)
        total = total + term


def q_binomial_sides(a: Optional[Monomial], t: Monomial, N: int) -> tuple[QSeries, QSeries]:
    """Both sides of sum (a;q)_n/(q;q)_n t^n = (at;q)_inf/(t;q)_inf.

    ``a = None`` stands for a = 0.
    """
    if t.exponent < 1:
        raise InvalidSpecialization("the q-binomial sum needs t = +-q^e with e >= 1")

    def numerator(n):
        if a is None:
            return None
        # (a;q)_n / (a;q)_{n-1} = 1 - a q^(n-1)
        return QSeries.from_dict({0: 1, a.exponent + n - 1: -a.sign}) \
            if a.exponent + n - 1 else QSeries.monomial(0, 1 - a.sign)

    lhs = _ratio_sum(t, N, numerator, lambda n: 0)
    den = invert_unit(pochhammer(t, 1, math.inf, N), N)
    if a is None:
        rhs = den
    else:
        at = Monomial(a.sign * t.sign, a.exponent + t.exponent)
        rhs = pochhammer(at, 1, math.inf, N) * den
    return lhs, rhs


def euler_first_sides(t: Monomial, N: int) -> tuple[QSeries, QSeries]:
    """Both sides of sum t^n/(q;q)_n = 1/(t;q)_inf."""
    if t.exponent < 1:
        raise InvalidSpecialization("the sum needs t = +-q^e with e >= 1")
    lhs = _ratio_sum(t, N, lambda n: None, lambda n: 0)
    rhs = invert_unit(pochhammer(t, 1, math.inf, N), N)
    return lhs, rhs


def euler_second_sides(t: Monomial, N: int) -> tuple[QSeries, QSeries]:
    """Both sides of sum t^n q^(n(n-1)/2)/(q;q)_n = (-t;q)_inf."""
    # q^(n(n-1)/2) / q^((n-1)(n-2)/2) = q^(n-1)
    lhs = _ratio_sum(t, N, lambda n: None, lambda n: n - 1)
    rhs = pochhammer(-t, 1, math.inf, N)
    return lhs, rhs


def triple_product_sides(z: Monomial, N: int) -> tuple[QSeries, QSeries, bool]:
    """Both sides of sum q^(n^2) z^n = (q^2;q^2)(-qz;q^2)(-q/z;q^2), z = s q^m.

    The factor (-q/z; q^2)_inf = prod_j (1 + s q^(2j+1-m)) has finitely many
    factors with exponent <= 0; their exact Laurent product is split off so
    the remaining products can be computed to a correspondingly higher order.
    The third return value flags a vanishing factor (1 - 1).
    """
    s, m = z.sign, z.exponent
    lhs = theta_jacobi(z, N)
    laurent = []
    j = 0
    while 2 * j + 1 - m <= 0:
        laurent.append((s, 2 * j + 1 - m))
        j += 1
    L = laurent_product(laurent)
    if L.is_exact_zero():
        return lhs, QSeries.zero(), True
    M = N - L.valuation
    rest = (pochhammer(Monomial(1, 2), 2, math.inf, M)
            * pochhammer(Monomial(-s, m + 1), 2, math.inf, M)
            * pochhammer(Monomial(-s, 2 * j + 1 - m), 2, math.inf, M))
    return lhs, (L * rest).truncate(N), False


def _compare(name: str, params: dict, lhs: QSeries, rhs: QSeries, N: int,
             watch: Stopwatch, **location) -> VerificationReport:
    mismatch = lhs.first_mismatch(rhs, N)
    d = None
    if mismatch is not None:
        e, a, b = mismatch
        d = Discrepancy(dict(location), e, a, b)
    return report(name, params, watch, d)


def verify_q_binomial(a: Optional[Monomial], t: Monomial, N: int) -> VerificationReport:
    watch = Stopwatch()
    lhs, rhs = q_binomial_sides(a, t, N)
    return _compare("verify_q_binomial", {"a": _label(a), "t": str(t), "degree": N},
                    lhs, rhs, N, watch)


def verify_euler_first(t: Monomial, N: int) -> VerificationReport:
    watch = Stopwatch()
    lhs, rhs = euler_first_sides(t, N)
    return _compare("verify_euler_first", {"t": str(t), "degree": N}, lhs, rhs, N, watch)


def verify_euler_second(t: Monomial, N: int) -> VerificationReport:
    watch = Stopwatch()
    lhs, rhs = euler_second_sides(t, N)
    return _compare("verify_euler_second", {"t": str(t), "degree": N}, lhs, rhs, N, watch)


def verify_triple_product(z: Monomial, N: int) -> VerificationReport:
    watch = Stopwatch()
    lhs, rhs, vanished = triple_product_sides(z, N)
    rep = _compare("verify_triple_product", {"z": str(z), "degree": N}, lhs, rhs, N, watch)
    if vanished:
        rep.details["vanishing_factor"] = True
    return rep


def gauss_sides(N: int) -> dict[str, tuple[QSeries, QSeries]]:
    """The two Gauss product formulas and the auxiliary (-q;q)(q;q^2) = 1."""
    inf = math.inf
    q_q = pochhammer(Monomial(1, 1), 1, inf, N)
    mq_q = pochhammer(Monomial(-1, 1), 1, inf, N)
    q2_q2 = pochhammer(Monomial(1, 2), 2, inf, N)
    q_q2 = pochhammer(Monomial(1, 1), 2, inf, N)

    alternating = theta_jacobi(Monomial(-1, 0), N)
    triangular = QSeries.from_dict({n * (n + 1) // 2: 1 for n in range(math.isqrt(2 * N) + 2)
                                    if n * (n + 1) // 2 <= N}, N)
    return {
        "alternating_squares": (alternating, q_q * invert_unit(mq_q, N)),
        "triangular_numbers": (triangular, q2_q2 * invert_unit(q_q2, N)),
        "euler_auxiliary": (mq_q * q_q2, QSeries.one(N)),
    }


def verify_gauss_corollaries(N: int) -> VerificationReport:
    watch = Stopwatch()
    parts = []
    for name, (lhs, rhs) in gauss_sides(N).items():
        parts.append(_compare(name, {}, lhs, rhs, N, Stopwatch()))
    return combine("verify_gauss_corollaries", {"degree": N}, parts, watch)


def _run(task: tuple) -> VerificationReport:
    kind, arg, N = task
    if kind == "q_binomial":
        return verify_q_binomial(arg[0], arg[1], N)
    if kind == "euler_first":
        return verify_euler_first(arg, N)
    if kind == "euler_second":
        return verify_euler_second(arg, N)
    if kind == "triple_product":
        return verify_triple_product(arg, N)
    return verify_gauss_corollaries(N)


def identity_tasks(N: int) -> list[tuple]:
    tasks: list[tuple] = [("q_binomial", (a, t), N)
                          for a in Q_BINOMIAL_A_GRID for t in Q_BINOMIAL_T_GRID]
    tasks += [("euler_first", t, N) for t in EULER_T_GRID]
    tasks += [("euler_second", t, N) for t in EULER_T_GRID]
    tasks += [("triple_product", z, N) for z in TRIPLE_Z_GRID]
    tasks.append(("gauss", None, N))
    return tasks


def verify_identities(N: int = DEFAULT_DEGREE, jobs: int = 1) -> list[VerificationReport]:
    """Every identity at every default grid point, in a fixed order."""
    tasks = identity_tasks(N)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run, tasks))
    return [_run(t) for t in tasks]
