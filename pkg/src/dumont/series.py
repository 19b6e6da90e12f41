"""Truncated Laurent series in q with exact integer coefficients.

A :class:`QSeries` stores the coefficients of q^v, q^(v+1), ... together with
a truncation order N: every coefficient of exponent <= N is known exactly,
nothing is known above N.  Polynomials that are known completely use
``truncation_order = EXACT`` (positive infinity).

All values are immutable; every operation returns a new series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .errors import DivergentProduct, InsufficientPrecision, NotAUnit

EXACT = math.inf

Order = Union[int, float]  # an integer, or EXACT


def _strip(valuation: int, coeffs: list[int]) -> tuple[int, tuple[int, ...]]:
    start = 0
    while start < len(coeffs) and coeffs[start] == 0:
        start += 1
    end = len(coeffs)
    while end > start and coeffs[end - 1] == 0:
        end -= 1
    return valuation + start, tuple(coeffs[start:end])


@dataclass(frozen=True, eq=False)
class QSeries:
    """Truncated Laurent series ``sum c_t q^(valuation + t)``.

    The constructor canonicalizes: coefficients above the truncation order
    are dropped and leading/trailing zeros are stripped, so a non-empty
    coefficient tuple always starts with a nonzero entry.  An empty tuple
    means the series vanishes on its whole known range; its valuation is
    then ``truncation_order + 1`` (or 0 for the exact zero).

    Equality is coefficientwise on the exponents both operands know, i.e.
    up to the smaller truncation order.  It is therefore not transitive and
    series are not hashable.
    """

    valuation: int
    coefficients: tuple[int, ...]
    truncation_order: Order = EXACT

    def __post_init__(self) -> None:
        coeffs = [int(c) for c in self.coefficients]
        N = self.truncation_order
        if N != EXACT:
            if N != int(N):
                raise ValueError(f"truncation order must be an integer, got {N!r}")
            N = int(N)
            object.__setattr__(self, "truncation_order", N)
            keep = N - self.valuation + 1
            coeffs = coeffs[: max(keep, 0)]
        val, tup = _strip(int(self.valuation), coeffs)
        if not tup:
            val = N + 1 if N != EXACT else 0
        object.__setattr__(self, "valuation", val)
        object.__setattr__(self, "coefficients", tup)

    # ----------------------------------------------------------------- builders

    @classmethod
    def from_dict(cls, terms: dict[int, int], truncation_order: Order = EXACT) -> QSeries:
        if not terms:
            return cls(0, (), truncation_order)
        lo, hi = min(terms), max(terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] += c
        return cls(lo, tuple(coeffs), truncation_order)

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1,
                 truncation_order: Order = EXACT) -> QSeries:
        return cls(exponent, (coefficient,), truncation_order)

    @classmethod
    def zero(cls, truncation_order: Order = EXACT) -> QSeries:
        return cls(0, (), truncation_order)

    @classmethod
    def one(cls, truncation_order: Order = EXACT) -> QSeries:
        return cls(0, (1,), truncation_order)

    # ---------------------------------------------------------------- accessors

    @property
    def is_exact(self) -> bool:
        return self.truncation_order == EXACT

    def is_zero(self) -> bool:
        """True if every known coefficient vanishes."""
        return not self.coefficients

    def is_exact_zero(self) -> bool:
        return self.is_exact and not self.coefficients

    @property
    def degree(self) -> Optional[int]:
        """Largest exponent with a stored nonzero coefficient."""
        if not self.coefficients:
            return None
        return self.valuation + len(self.coefficients) - 1

    def coefficient(self, exponent: int) -> int:
        if exponent > self.truncation_order:
            raise InsufficientPrecision(
                f"coefficient of q^{exponent} requested, series known only to q^{self.truncation_order}")
        t = exponent - self.valuation
        if 0 <= t < len(self.coefficients):
            return self.coefficients[t]
        return 0

    def __getitem__(self, exponent: int) -> int:
        return self.coefficient(exponent)

    def terms(self) -> Iterator[tuple[int, int]]:
        """Yield ``(exponent, coefficient)`` for every nonzero known term."""
        v = self.valuation
        for t, c in enumerate(self.coefficients):
            if c:
                yield v + t, c

    def nonzero_count(self) -> int:
        return sum(1 for c in self.coefficients if c)

    # -------------------------------------------------------------- arithmetic

    def truncate(self, N: Order) -> QSeries:
        """Forget everything above q^N (never raises the known order)."""
        return QSeries(self.valuation, self.coefficients, min(N, self.truncation_order))

    def shift(self, exponent: int) -> QSeries:
        """Multiply by q^exponent."""
        return QSeries(self.valuation + exponent, self.coefficients,
                       self.truncation_order + exponent)

    def scale(self, factor: int) -> QSeries:
        return QSeries(self.valuation, tuple(factor * c for c in self.coefficients),
                       self.truncation_order)

    def __neg__(self) -> QSeries:
        return self.scale(-1)

    def __add__(self, other: QSeries) -> QSeries:
        if isinstance(other, int):
            other = QSeries.monomial(0, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other: QSeries) -> QSeries:
        if isinstance(other, int):
            other = QSeries.monomial(0, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other: int) -> QSeries:
        return (-self) + other

    def __mul__(self, other: QSeries) -> QSeries:
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    # ----------------------------------------------------------------- compare

    def first_mismatch(self, other: QSeries, upto: Order = EXACT
                       ) -> Optional[tuple[int, int, int]]:
        """Smallest exponent where the known coefficients differ.

        Returns ``(exponent, self_coefficient, other_coefficient)`` or None.
        Only exponents <= min(upto, both truncation orders) are compared.
        """
        top = min(upto, self.truncation_order, other.truncation_order)
        exps = set(e for e, _ in self.terms()) | set(e for e, _ in other.terms())
        for e in sorted(exps):
            if e > top:
                break
            a, b = self.coefficient(e), other.coefficient(e)
            if a != b:
                return e, a, b
        return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QSeries.monomial(0, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.first_mismatch(other) is None

    __hash__ = None  # type: ignore[assignment]

    # ------------------------------------------------------------- rendering

    def format(self, max_terms: Optional[int] = None) -> str:
        parts: list[str] = []
        for count, (e, c) in enumerate(self.terms()):
            if max_terms is not None and count >= max_terms:
                parts.append("...")
                break
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        if not self.is_exact:
            parts.append(f"+ O(q^{self.truncation_order + 1})" if parts
                         else f"O(q^{self.truncation_order + 1})")
        return " ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"QSeries({self.format()})"

    # ----------------------------------------------------------- serialization

    def to_json(self) -> dict:
        return {
            "valuation": self.valuation,
            "truncation_order": None if self.is_exact else self.truncation_order,
            "coefficients": [str(c) for c in self.coefficients],
        }

    @classmethod
    def from_json(cls, data: dict) -> QSeries:
        N = data["truncation_order"]
        return cls(int(data["valuation"]), tuple(int(c) for c in data["coefficients"]),
                   EXACT if N is None else int(N))


@dataclass(frozen=True)
class Monomial:
    """The substitution value ``sign * q^exponent``."""

    sign: int
    exponent: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"monomial sign must be +1 or -1, got {self.sign}")
        if self.exponent < 0:
            raise ValueError(f"monomial exponent must be >= 0, got {self.exponent}")

    def __neg__(self) -> Monomial:
        return Monomial(-self.sign, self.exponent)

    def times_q(self, k: int) -> Monomial:
        return Monomial(self.sign, self.exponent + k)

    def as_series(self) -> QSeries:
        return QSeries.monomial(self.exponent, self.sign)

    def __str__(self) -> str:
        s = "" if self.sign > 0 else "-"
        return f"{s}q^{self.exponent}"

    @classmethod
    def parse(cls, text: str) -> Monomial:
        """Read ``q``, ``-q^3``, ``+q^0``, ``1`` or ``-1``."""
        t = text.strip().replace(" ", "")
        sign = 1
        if t[:1] in "+-":
            sign = -1 if t[0] == "-" else 1
            t = t[1:]
        if t == "1":
            return cls(sign, 0)
        if t == "q":
            return cls(sign, 1)
        if t.startswith("q^"):
            return cls(sign, int(t[2:]))
        raise ValueError(f"cannot parse monomial {text!r}")


# ---------------------------------------------------------------- operations

def add(f: QSeries, g: QSeries) -> QSeries:
    N = min(f.truncation_order, g.truncation_order)
    if not f.coefficients:
        return g.truncate(N)
    if not g.coefficients:
        return f.truncate(N)
    lo = min(f.valuation, g.valuation)
    hi = max(f.degree, g.degree)
    if N != EXACT:
        hi = min(hi, N)
    if hi < lo:
        return QSeries.zero(N)
    out = [0] * (hi - lo + 1)
    for src in (f, g):
        off = src.valuation - lo
        for t, c in enumerate(src.coefficients[: max(hi - src.valuation + 1, 0)]):
            out[off + t] += c
    return QSeries(lo, tuple(out), N)


def mul(f: QSeries, g: QSeries) -> QSeries:
    """Cauchy product.

    The unknown tail of each factor is shifted by the other's valuation, so
    the result is known up to ``min(f.N + g.val, g.N + f.val)``.
    """
    if f.is_exact_zero() or g.is_exact_zero():
        return QSeries.zero()
    N = min(f.truncation_order + g.valuation, g.truncation_order + f.valuation)
    if not f.coefficients or not g.coefficients:
        return QSeries.zero(N)
    if f.nonzero_count() > g.nonzero_count():
        f, g = g, f
    base = f.valuation + g.valuation
    length = len(f.coefficients) + len(g.coefficients) - 1
    if N != EXACT:
        length = min(length, N - base + 1)
    if length <= 0:
        return QSeries.zero(N)
    out = [0] * length
    gc = g.coefficients
    for s, c in enumerate(f.coefficients):
        if not c:
            continue
        lim = min(len(gc), length - s)
        if lim <= 0:
            break
        seg = out[s:s + lim]
        if c == 1:
            out[s:s + lim] = [a + b for a, b in zip(seg, gc)]
        elif c == -1:
            out[s:s + lim] = [a - b for a, b in zip(seg, gc)]
        else:
            out[s:s + lim] = [a + c * b for a, b in zip(seg, gc)]
    return QSeries(base, tuple(out), N)


def invert_unit(f: QSeries, N: int) -> QSeries:
    """Inverse of a unit ``+-q^v (1 + ...)``, known up to q^N.

    The result has valuation ``-v``.  Raises :class:`NotAUnit` if the lowest
    coefficient is not +-1 and :class:`InsufficientPrecision` if ``f`` is not
    known far enough to determine the inverse to order N.
    """
    if not f.coefficients:
        raise NotAUnit("cannot invert a series with no known nonzero coefficient")
    lead = f.coefficients[0]
    if lead not in (1, -1):
        raise NotAUnit(f"lowest coefficient {lead} is not a unit over the integers")
    v = f.valuation
    need = N + v  # last offset of the normalized inverse
    if need > f.truncation_order - v:
        raise InsufficientPrecision(
            f"inverse to q^{N} needs the input to q^{N + 2 * v}, "
            f"known only to q^{f.truncation_order}")
    if need < 0:
        return QSeries.zero(N)
    h = [(s, c) for s, c in enumerate(f.coefficients[: need + 1]) if c and s > 0]
    g = [0] * (need + 1)
    g[0] = lead
    for t in range(1, need + 1):
        acc = 0
        for s, c in h:
            if s > t:
                break
            acc += c * g[t - s]
        g[t] = -lead * acc
    return QSeries(-v, tuple(g), N)


def _mul_binomial_inplace(acc: list[int], c: int, e: int) -> None:
    """acc *= (1 + c q^e) for e >= 1, truncated to len(acc)."""
    for t in range(len(acc) - 1, e - 1, -1):
        acc[t] += c * acc[t - e]


def pochhammer(a: Monomial, qstep: int, n: Union[int, float], N: Order) -> QSeries:
    """``(a; q^qstep)_n`` truncated to q^N; ``n`` may be ``math.inf``.

    For n infinite the product stops as soon as the factors are 1 modulo
    q^(N+1).  ``(1; q)_inf`` is the zero series, since its first factor is 0.
    """
    if n < 0:
        raise ValueError("pochhammer length must be nonnegative")
    infinite = n == math.inf
    if infinite and qstep <= 0:
        raise DivergentProduct("infinite product needs a positive q-step")
    if infinite and N == EXACT:
        raise DivergentProduct("an infinite product cannot be computed exactly")
    if qstep < 0:
        raise ValueError("qstep must be nonnegative")
    if N == EXACT:
        length = a.exponent * n + qstep * n * (n - 1) // 2 + 1
    else:
        if N < 0:
            return QSeries.zero(N)
        length = N + 1
    acc = [0] * length
    acc[0] = 1
    m = 0
    while infinite or m < n:
        e = a.exponent + qstep * m
        if e >= length:
            break
        if e == 0:
            if a.sign == 1:
                return QSeries.zero(N)
            acc = [2 * x for x in acc]
        else:
            _mul_binomial_inplace(acc, -a.sign, e)
        m += 1
    return QSeries(0, tuple(acc), N)


def theta_odd_squares(N: int) -> QSeries:
    """``sum_{n >= 0} q^((2n+1)^2)`` truncated to q^N."""
    terms = {}
    odd = 1
    while odd * odd <= N:
        terms[odd * odd] = 1
        odd += 2
    return QSeries.from_dict(terms, N)


def theta_jacobi(z: Monomial, N: int) -> QSeries:
    """``sum_{n in Z} q^(n^2) z^n`` at ``z = +-q^m``, truncated to q^N.

    The exponents n^2 + m n are bounded below by -floor(m^2/4), so the result
    is a Laurent series with finitely many terms up to q^N.
    """
    m, s = z.exponent, z.sign
    terms: dict[int, int] = {}
    # n^2 + m n <= N  <=>  |2n + m| <= sqrt(4N + m^2)
    disc = 4 * N + m * m
    if disc < 0:
        return QSeries.zero(N)
    r = math.isqrt(disc)
    for n in range((-m - r) // 2 - 1, (-m + r) // 2 + 2):
        e = n * n + m * n
        if e <= N:
            terms[e] = terms.get(e, 0) + (s ** (n % 2))
    return QSeries.from_dict(terms, N)


def laurent_product(factors: list[tuple[int, int]]) -> QSeries:
    """Exact product of binomials ``(1 + c q^e)`` with arbitrary integer e."""
    out = QSeries.one()
    for c, e in factors:
        out = mul(out, QSeries.from_dict({0: 1, e: c} if e else {0: 1 + c}))
    return out
