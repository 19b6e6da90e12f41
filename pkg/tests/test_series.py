import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from dumont.errors import InsufficientPrecision, NotAUnit
from dumont.series import (EXACT, Monomial, QSeries, add, invert_unit, laurent_product, mul,
                           pochhammer, theta_jacobi, theta_odd_squares)

from oracles import bilateral_theta, expand_product, generalized_pentagonals

INF = math.inf


def S(terms, N=EXACT):
    return QSeries.from_dict(terms, N)


def dense(f, lo, hi):
    return [f.coefficient(e) for e in range(lo, hi + 1)]


class TestCanonicalForm:
    def test_leading_zeros_stripped(self):
        f = QSeries(-2, (0, 0, 3, 0, 1, 0), 10)
        assert f.valuation == 0
        assert f.coefficients == (3, 0, 1)

    def test_coefficients_above_order_dropped(self):
        f = QSeries(0, (1, 1, 1, 1), 2)
        assert f.coefficients == (1, 1, 1)
        assert f.degree == 2

    def test_empty_series_valuation(self):
        assert QSeries.zero(7).valuation == 8
        assert QSeries.zero().valuation == 0

    def test_unknown_coefficient_raises(self):
        with pytest.raises(InsufficientPrecision):
            S({0: 1}, 5).coefficient(6)

    def test_below_valuation_is_zero(self):
        assert S({3: 2}, 10)[1] == 0

    def test_equality_on_common_range(self):
        assert S({0: 1, 9: 5}, 10) == S({0: 1}, 8)
        assert S({0: 1, 9: 5}, 10) != S({0: 1}, 9)

    def test_format(self):
        assert str(S({0: 1, 1: -1, 2: -2, 5: 1}, 6)) == "1 - q - 2*q^2 + q^5 + O(q^7)"
        assert str(S({-1: 3})) == "3*q^-1"
        assert str(QSeries.zero()) == "0"


class TestAdd:
    def test_cancellation_updates_valuation(self):
        f = S({0: 1, 1: 1}) + S({0: -1, 1: 1})
        assert f.valuation == 1 and f.coefficients == (2,)

    def test_zero_is_identity(self):
        f = S({0: 1, 3: -2}, 9)
        assert add(f, QSeries.zero()) == f
        assert add(f, QSeries.zero()).truncation_order == 9

    def test_truncation_is_min(self):
        f = add(S({1: 1, 9: 1}, 10), S({25: 1}, 30))
        assert f.truncation_order == 10
        assert dict(f.terms()) == {1: 1, 9: 1}


class TestMul:
    def test_difference_of_squares(self):
        assert mul(S({0: 1, 1: 1}), S({0: 1, 1: -1})) == S({0: 1, 2: -1})
        assert mul(S({0: 1, 1: 1}), S({0: 1, 1: -1})).is_exact

    def test_laurent_shift(self):
        f = mul(S({-1: 1}), S({3: 1}))
        assert f.valuation == 2 and f.coefficients == (1,)

    def test_truncated_cauchy_product(self):
        # (1 + q + q^2)(1 + q) = 1 + 2q + 2q^2 + q^3, known to q^2
        f = mul(S({0: 1, 1: 1, 2: 1}, 2), S({0: 1, 1: 1}, 2))
        assert f.truncation_order == 2
        assert dense(f, 0, 2) == [1, 2, 2]

    def test_unknown_tail_shifted_by_valuation(self):
        f = mul(S({3: 1}, 10), S({0: 1}, 4))
        assert f.truncation_order == min(10 + 0, 4 + 3)

    def test_big_coefficients_exact(self):
        big = 10**40 + 7
        f = mul(S({0: big, 1: -big}), S({0: big}))
        assert f.coefficients == (big * big, -big * big)


class TestInvertUnit:
    def test_geometric(self):
        g = invert_unit(S({0: 1, 1: -1}), 4)
        assert g.truncation_order == 4
        assert dense(g, 0, 4) == [1, 1, 1, 1, 1]

    def test_one(self):
        assert invert_unit(QSeries.one(), 12) == QSeries.one()

    def test_geometric_in_q8(self):
        g = invert_unit(S({0: 1, 8: -1}), 20)
        assert dict(g.terms()) == {0: 1, 8: 1, 16: 1}

    def test_laurent_unit(self):
        f = S({-2: -1, 0: 1})
        g = invert_unit(f, 10)
        assert g.valuation == 2
        assert mul(f, g) == QSeries.one(8)

    def test_not_a_unit(self):
        with pytest.raises(NotAUnit):
            invert_unit(S({0: 2, 1: 1}), 5)
        with pytest.raises(NotAUnit):
            invert_unit(QSeries.zero(5), 5)

    def test_insufficient_precision(self):
        with pytest.raises(InsufficientPrecision):
            invert_unit(S({0: 1, 1: -1}, 3), 4)
        with pytest.raises(InsufficientPrecision):
            invert_unit(S({2: 1}, 5), 2)  # needs the input to q^6


class TestPochhammer:
    def test_euler_function_pentagonal(self):
        f = pochhammer(Monomial(1, 1), 1, INF, 15)
        assert dict(f.terms()) == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1, 15: -1}

    def test_empty_product(self):
        assert pochhammer(Monomial(-1, 3), 1, 0, 10) == QSeries.one(10)

    def test_q8_base_q16_length_two(self):
        f = pochhammer(Monomial(1, 8), 16, 2, 60)
        assert dict(f.terms()) == {0: 1, 8: -1, 24: -1, 32: 1}

    def test_finite_product_exact(self):
        f = pochhammer(Monomial(1, 8), 16, 2, EXACT)
        assert f.is_exact and f.degree == 32

    def test_one_base_is_zero(self):
        assert pochhammer(Monomial(1, 0), 1, INF, 20).is_zero()

    def test_minus_one_base_doubles(self):
        # (-1; q)_inf = 2 (-q; q)_inf
        assert pochhammer(Monomial(-1, 0), 1, INF, 30) == \
            pochhammer(Monomial(-1, 1), 1, INF, 30).scale(2)

    def test_against_direct_expansion(self):
        N = 60
        f = pochhammer(Monomial(-1, 3), 2, INF, N)
        oracle = expand_product([(1, 3 + 2 * m) for m in range(N)], N)
        assert dense(f, 0, N) == oracle

    def test_pentagonal_number_theorem_to_100(self):
        f = pochhammer(Monomial(1, 1), 1, INF, 100)
        oracle = expand_product([(-1, m) for m in range(1, 101)], 100)
        assert dense(f, 0, 100) == oracle
        pent = generalized_pentagonals(100)
        for n in range(101):
            assert f[n] in (-1, 0, 1)
            assert f[n] == pent.get(n, 0)


class TestTheta:
    def test_odd_squares(self):
        assert dict(theta_odd_squares(30).terms()) == {1: 1, 9: 1, 25: 1}
        assert theta_odd_squares(0).is_zero()
        assert dict(theta_odd_squares(100).terms()) == {1: 1, 9: 1, 25: 1, 49: 1, 81: 1}

    def test_alternating_squares(self):
        f = theta_jacobi(Monomial(-1, 0), 20)
        assert dict(f.terms()) == {0: 1, 1: -2, 4: 2, 9: -2, 16: 2}

    def test_z_equals_q(self):
        f = theta_jacobi(Monomial(1, 1), 12)
        assert dict(f.terms()) == {0: 2, 2: 2, 6: 2, 12: 2}

    def test_classical_theta(self):
        assert dict(theta_jacobi(Monomial(1, 0), 9).terms()) == {0: 1, 1: 2, 4: 2, 9: 2}

    @pytest.mark.parametrize("sign", [1, -1])
    @pytest.mark.parametrize("m", range(0, 7))
    def test_brute_bilateral_window(self, sign, m):
        N = 50
        f = theta_jacobi(Monomial(sign, m), N)
        assert dict(f.terms()) == bilateral_theta(sign, m, N)
        assert f.valuation >= -((m * m + 3) // 4)

    def test_laurent_product(self):
        # (1 + q^-1)(1 - q^-3)
        f = laurent_product([(1, -1), (-1, -3)])
        assert dict(f.terms()) == {0: 1, -1: 1, -3: -1, -4: -1}


class TestJson:
    def test_round_trip(self):
        f = S({-3: 10**50, 2: -7}, 40)
        data = json.loads(json.dumps(f.to_json()))
        assert data["coefficients"][0] == str(10**50)
        g = QSeries.from_json(data)
        assert g.valuation == f.valuation and g.coefficients == f.coefficients
        assert g.truncation_order == 40

    def test_exact_round_trip(self):
        f = S({0: 1, 5: 2})
        assert QSeries.from_json(f.to_json()).is_exact


class TestMonomial:
    def test_parse(self):
        assert Monomial.parse("-q^3") == Monomial(-1, 3)
        assert Monomial.parse("q") == Monomial(1, 1)
        assert Monomial.parse("-1") == Monomial(-1, 0)

    def test_invalid(self):
        with pytest.raises(ValueError):
            Monomial(0, 1)
        with pytest.raises(ValueError):
            Monomial(1, -1)


# ------------------------------------------------------------ properties

@st.composite
def series(draw, min_val=-4):
    val = draw(st.integers(min_val, 6))
    coeffs = draw(st.lists(st.integers(-40, 40), max_size=10))
    if draw(st.booleans()):
        N = EXACT
    else:
        N = val + len(coeffs) + draw(st.integers(-3, 6))
    return QSeries(val, tuple(coeffs), N)


def known_range(*fs):
    return min(f.truncation_order for f in fs)


@settings(max_examples=500, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(f, g, h):
    assert mul(f, g) == mul(g, f)
    assert add(f, g) == add(g, f)
    assert mul(mul(f, g), h) == mul(f, mul(g, h))
    assert add(add(f, g), h) == add(f, add(g, h))
    assert mul(f, add(g, h)) == add(mul(f, g), mul(f, h))


@settings(max_examples=300, deadline=None)
@given(series(), series(), st.integers(-2, 12))
def test_truncation_coherence(f, g, M):
    ft, gt = f.truncate(M), g.truncate(M)
    s = add(ft, gt)
    assert s.truncation_order == min(M, f.truncation_order, g.truncation_order)
    assert s == add(f, g).truncate(M)
    p = mul(ft, gt)
    assert p == mul(f, g).truncate(M)
    if p.truncation_order != EXACT and f.coefficients and g.coefficients:
        assert p.truncation_order == min(ft.truncation_order + gt.valuation,
                                         gt.truncation_order + ft.valuation)


@settings(max_examples=300, deadline=None)
@given(series(min_val=-3), st.integers(0, 15), st.sampled_from([1, -1]))
def test_invert_unit_is_inverse(f, N, lead):
    f = QSeries(f.valuation, (lead,) + f.coefficients, EXACT)
    g = invert_unit(f, N)
    if N >= -f.valuation:
        assert g.valuation == -f.valuation
    assert mul(f, g) == QSeries.one(N)
    if f.valuation >= 0:
        assert mul(f, g).truncation_order >= N


@settings(max_examples=200, deadline=None)
@given(series(), st.integers(-10, 10))
def test_shift_and_json(f, e):
    assert f.shift(e).shift(-e) == f
    g = QSeries.from_json(json.loads(json.dumps(f.to_json())))
    assert (g.valuation, g.coefficients, g.truncation_order) == \
        (f.valuation, f.coefficients, f.truncation_order)
