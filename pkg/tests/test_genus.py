from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fillcheck.errors import DomainError, ParameterError
from fillcheck.exactnum import TruncPoly
from fillcheck.genus import (
    a_b_chern,
    alpha,
    alpha_beta,
    evaluate,
    genus_in_chern,
    genus_in_pontryagin,
    partitions,
    pontryagin_in_chern,
    wu_cap_restriction,
    wu_series_coefficient,
)

F = Fraction


def top_coefficients(expr, var, k):
    """Coefficient of the last elementary class in each weight, from log of the series."""
    lg = sympy.series(sympy.log(expr), var, 0, k + 1).removeO()
    return [(-1) ** (j - 1) * j * lg.coeff(var, j) for j in range(1, k + 1)]


def as_fraction(r) -> Fraction:
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


def test_l1():
    assert genus_in_pontryagin("L", 1) == {(1,): F(1, 3)}


def test_l2():
    assert genus_in_pontryagin("L", 2) == {(2,): F(7, 45), (1, 1): F(-1, 45)}


def test_l4():
    d = 14175
    assert genus_in_pontryagin("L", 4) == {
        (4,): F(381, d),
        (3, 1): F(-71, d),
        (2, 2): F(-19, d),
        (2, 1, 1): F(22, d),
        (1, 1, 1, 1): F(-3, d),
    }


def test_ahat2():
    assert genus_in_pontryagin("Ahat", 2) == {(2,): F(-4, 5760), (1, 1): F(7, 5760)}


def test_unknown_series_rejected():
    with pytest.raises(ParameterError):
        genus_in_pontryagin("Todd", 2)


@pytest.mark.parametrize(
    "k, expect",
    [
        (1, {(1, 1): 1, (2,): -2}),
        (2, {(2, 2): 1, (3, 1): -2, (4,): 2}),
        (4, {(4, 4): 1, (5, 3): -2, (6, 2): 2, (7, 1): -2, (8,): 2}),
    ],
)
def test_pontryagin_in_chern(k, expect):
    assert pontryagin_in_chern(k) == {lam: F(c) for lam, c in expect.items()}


@pytest.mark.parametrize("m", [2, 4, 6, 8])
def test_alpha_beta_against_series(m):
    poly = genus_in_pontryagin("L", m)
    assert alpha_beta(m) == (poly[(m,)], poly[(m // 2, m // 2)])


def test_alpha_beta_values():
    assert alpha_beta(2) == (F(7, 45), F(-1, 45))
    assert alpha_beta(4) == (F(381, 14175), F(-19, 14175))


def test_alpha_against_log_series():
    y = sympy.symbols("y")
    oracle = top_coefficients(sympy.sqrt(y) / sympy.tanh(sympy.sqrt(y)), y, 8)
    assert [alpha(m) for m in range(1, 9)] == [as_fraction(c) for c in oracle]


def test_ahat_top_against_log_series():
    y = sympy.symbols("y")
    half = sympy.sqrt(y) / 2
    oracle = top_coefficients(half / sympy.sinh(half), y, 4)
    assert [genus_in_pontryagin("Ahat", m)[(m,)] for m in range(1, 5)] == [as_fraction(c) for c in oracle]


def test_alpha_beta_odd_rejected():
    with pytest.raises(DomainError):
        alpha_beta(3)


def test_chern_coefficients():
    assert a_b_chern(2) == (F(14, 45), F(1, 15))
    assert a_b_chern(4) == (F(762, 14175), F(305, 14175))


@pytest.mark.parametrize("m", [2, 4])
def test_chern_coefficients_against_rewriting(m):
    poly = genus_in_chern("L", m)
    assert a_b_chern(m) == (poly[(2 * m,)], poly[(m, m)])


@pytest.mark.parametrize("m", [1, 3])
def test_odd_chern_coefficients(m):
    poly = genus_in_chern("L", m)
    assert poly[(2 * m,)] == -2 * alpha(m)
    assert poly[(m, m)] == alpha(m)


def test_partitions_count():
    assert [len(partitions(n)) for n in range(1, 11)] == [int(sympy.partition(n)) for n in range(1, 11)]


@pytest.mark.parametrize("m", range(1, 6))
def test_vanishing_pontryagin_classes(m):
    assert evaluate(genus_in_pontryagin("L", m), {}) == 0
    assert evaluate(genus_in_pontryagin("Ahat", m), {}) == 0


small = st.fractions(min_value=-20, max_value=20, max_denominator=9)


def full_genus(series, values, upto):
    return [F(1)] + [evaluate(genus_in_pontryagin(series, j), values) for j in range(1, upto + 1)]


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3), st.sampled_from(["L", "Ahat"]))
def test_multiplicativity_weight_three(pe, pf, series):
    e = {i + 1: v for i, v in enumerate(pe)}
    f = {i + 1: v for i, v in enumerate(pf)}
    # total Pontryagin class of the Whitney sum
    pe0, pf0 = [F(1)] + pe, [F(1)] + pf
    s = {j: sum(pe0[a] * pf0[j - a] for a in range(j + 1)) for j in range(1, 4)}
    ge, gf, gs = full_genus(series, e, 3), full_genus(series, f, 3), full_genus(series, s, 3)
    for j in range(4):
        assert gs[j] == sum(ge[a] * gf[j - a] for a in range(j + 1))


@pytest.mark.parametrize("n", [4, 8])
def test_pontryagin_of_cap(n):
    c = (TruncPoly.one(2 * n + 2) * TruncPoly.from_coeffs([1, 1], 2 * n + 2) ** n * TruncPoly.from_coeffs([1, 2], 2 * n + 2)).coeffs
    cbar = [(-1) ** i * x for i, x in enumerate(c)]
    prod = [sum(c[a] * cbar[d - a] for a in range(d + 1)) for d in range(2 * n + 2)]
    values = {i: F(x) for i, x in enumerate(c) if i}
    for k in range(1, n // 2 + 1):
        assert evaluate(pontryagin_in_chern(k), values) == (-1) ** k * prod[2 * k]


def test_wu_top_coefficients():
    x = sympy.symbols("x")
    series = sum(x ** (2**j - 1) for j in range(5))
    oracle = [int(c) for c in top_coefficients(series, x, 8)]
    got = [wu_series_coefficient(n, (n // 2,)) for n in range(2, 17, 2)]
    assert got == oracle == [1, 1, 4, 5, 6, 10, 22, 29]


@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_wu_top_coefficient_one_mod_four_at_powers_of_two(n):
    assert wu_series_coefficient(n, (n // 2,)) % 4 == 1


def test_wu_weight_zero():
    assert wu_series_coefficient(0, ()) == 1


def test_wu_wrong_weight_is_zero():
    assert wu_series_coefficient(8, (3,)) == 0


@pytest.mark.parametrize("k", range(2, 6))
def test_wu_cap_restriction(k):
    half = 2 ** (k - 1)
    expect = [0] * (half + 1)
    expect[0], expect[1] = 1, 2
    expect[half] = (expect[half] + 2) % 4
    assert list(wu_cap_restriction(k).coeffs) == expect
