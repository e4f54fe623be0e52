"""Bernoulli numbers in the positive convention B_n = |B_{2n}|.

With this indexing ``x/tanh(x) = 1 + B_1 (2x)^2/2! - B_2 (2x)^4/4! + ...``, so
``B_1 = 1/6``, ``B_2 = 1/30``, ``B_8 = 3617/510``. In lowest terms
``B_n = N_n / (2 D_n)`` where ``D_n`` is the product of the odd primes ``p``
with ``(p - 1) | 2n``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Tuple

from .errors import DomainError, ConsistencyError
from .numtheory import is_prime

__all__ = [
    "BernoulliEntry",
    "bernoulli",
    "bernoulli_signed_even",
    "bernoulli_entry",
    "worpitzky",
    "cs_denominator",
    "cs_primes",
    "clausen_von_staudt_residual",
    "residue_lemma_check",
]

_lock = threading.Lock()
# _even[j] is the signed Bernoulli number B_{2j}
_even: List[Fraction] = [Fraction(1)]


def _extend(upto: int) -> None:
    """Fill the signed cache through B_{2*upto} with the binomial recurrence."""
    with _lock:
        for m in range(len(_even), upto + 1):
            n = 2 * m
            # sum_{j<=n} C(n+1, j) B_j = 0 with B_1 = -1/2 and odd B_j = 0 beyond
            s = Fraction(-(n + 1), 2)
            for j in range(m):
                s += comb(n + 1, 2 * j) * _even[j]
            _even.append(-s / (n + 1))


def bernoulli_signed_even(n: int) -> Fraction:
    """Standard signed B_{2n} (so B_2 = 1/6, B_4 = -1/30)."""
    if n < 0:
        raise DomainError("index must be nonnegative")
    if n >= len(_even):
        _extend(n)
    return _even[n]


def bernoulli(n: int) -> Fraction:
    """B_n = |B_{2n}| for n >= 1."""
    if n < 1:
        raise DomainError("Bernoulli indexing starts at 1")
    return abs(bernoulli_signed_even(n))


def worpitzky(n: int) -> Fraction:
    """Independent evaluation through Worpitzky's double sum (oracle use)."""
    if n < 1:
        raise DomainError("Bernoulli indexing starts at 1")
    e = 2 * n
    total = Fraction(0)
    for r in range(e + 1):
        inner = 0
        for s in range(r + 1):
            term = comb(r, s) * s**e
            inner += -term if s & 1 else term
        total += Fraction(inner, r + 1)
    return total if n % 2 == 1 else -total


def cs_primes(n: int) -> List[int]:
    """All primes p with (p - 1) | 2n, in increasing order."""
    e = 2 * n
    return [d + 1 for d in range(1, e + 1) if e % d == 0 and is_prime(d + 1)]


def cs_denominator(n: int) -> int:
    """D_n: product of the odd primes p with (p - 1) | 2n."""
    if n < 1:
        raise DomainError("index must be positive")
    out = 1
    for p in cs_primes(n):
        if p != 2:
            out *= p
    return out


def clausen_von_staudt_residual(n: int) -> Fraction:
    """``(-1)^n B_n - sum 1/p``; an integer by the Clausen-von Staudt theorem."""
    return (-1) ** n * bernoulli(n) - sum(Fraction(1, p) for p in cs_primes(n))


@dataclass(frozen=True)
class BernoulliEntry:
    index: int
    value: Fraction
    numerator: int
    odd_denominator: int


def bernoulli_entry(n: int) -> BernoulliEntry:
    """Value together with its N_n / (2 D_n) decomposition, cross-checked."""
    b = bernoulli(n)
    d = cs_denominator(n)
    if b.denominator != 2 * d:
        raise ConsistencyError(f"denominator of B_{n} is {b.denominator}, expected {2 * d}")
    return BernoulliEntry(n, b, b.numerator, d)


def residue_lemma_check(k: int) -> Tuple[int, int]:
    """(N_n mod 64, D_n mod 64) for n = 2^k; the lemma needs n > 8."""
    if k < 4:
        raise DomainError("the residue lemma needs 2^k > 8")
    e = bernoulli_entry(2**k)
    return e.numerator % 64, e.odd_denominator % 64
