from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from fillcheck.bernoulli import (
    bernoulli,
    bernoulli_entry,
    bernoulli_signed_even,
    clausen_von_staudt_residual,
    cs_denominator,
    cs_primes,
    residue_lemma_check,
    worpitzky,
)
from fillcheck.errors import DomainError

N16 = 7709321041217
N32 = 106783830147866529886385444979142647942017
N64 = int(
    "2677547077425480828869544055852823947792914595925517406"
    "29978686063357792734863530145362663093519862048495908453718017"
)


@pytest.mark.parametrize(
    "n, expect", [(1, Fraction(1, 6)), (2, Fraction(1, 30)), (8, Fraction(3617, 510)), (9, Fraction(43867, 798))]
)
def test_listed_values(n, expect):
    assert bernoulli(n) == expect


@pytest.mark.parametrize("n", range(1, 13))
def test_worpitzky_oracle(n):
    assert bernoulli(n) == worpitzky(n)


@pytest.mark.parametrize("n", range(1, 41))
def test_matches_sympy(n):
    s = sympy.bernoulli(2 * n)
    assert bernoulli_signed_even(n) == Fraction(int(s.p), int(s.q))
    assert bernoulli(n) == abs(Fraction(int(s.p), int(s.q)))


def test_index_zero_rejected():
    with pytest.raises(DomainError):
        bernoulli(0)


@pytest.mark.parametrize("n, expect", [(1, 3), (4, 15), (8, 255), (9, 399), (18, 959595)])
def test_odd_denominator(n, expect):
    assert cs_denominator(n) == expect


def test_entry_n18():
    e = bernoulli_entry(18)
    assert e.odd_denominator == 959595
    assert e.numerator == 26315271553053477373


@pytest.mark.parametrize("n", range(1, 33))
def test_clausen_von_staudt(n):
    assert clausen_von_staudt_residual(n).denominator == 1
    # the same statement for the signed number B_{2n}
    signed = bernoulli_signed_even(n) + sum(Fraction(1, p) for p in cs_primes(n))
    assert signed.denominator == 1


@pytest.mark.parametrize("n", range(1, 33))
def test_entry_shape(n):
    e = bernoulli_entry(n)
    assert e.value == Fraction(e.numerator, 2 * e.odd_denominator)
    assert bernoulli(n).denominator == 2 * cs_denominator(n)
    assert e.numerator % 2 == 1 and e.odd_denominator % 2 == 1
    assert all(v == 1 for v in sympy.factorint(e.odd_denominator).values())


def test_listed_numerators():
    assert bernoulli_entry(16).numerator == N16
    assert bernoulli_entry(32).numerator == N32
    assert bernoulli_entry(64).numerator == N64


@pytest.mark.parametrize("k", [4, 5, 6])
def test_residue_lemma(k):
    assert residue_lemma_check(k) == (1, 63)


def test_residue_lemma_listed_numerators():
    assert N16 % 64 == N32 % 64 == N64 % 64 == 1


def test_residue_lemma_range():
    with pytest.raises(DomainError):
        residue_lemma_check(3)
