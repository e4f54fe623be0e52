"""Digit, valuation and residue helpers for small primes and big integers."""

from __future__ import annotations

from math import comb, factorial, isqrt
from typing import List, Optional, Tuple

from .errors import DomainError, ConsistencyError, ParameterError

__all__ = [
    "is_prime",
    "base_digits",
    "binom_nonzero_mod_p",
    "factorial_valuation",
    "factorial_odd_part_mod",
    "central_binomial_mod",
    "valuation",
    "prime_power",
    "is_power_of",
    "prime_divisors",
]


def is_prime(p: int) -> bool:
    """Trial division; inputs here are small."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")


def base_digits(n: int, p: int) -> List[int]:
    """Base-p digits of n, least significant first (empty list for 0)."""
    if n < 0:
        raise DomainError("digits of a negative integer")
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out


def binom_nonzero_mod_p(n: int, i: int, p: int) -> bool:
    """True iff p does not divide binom(n, i), by comparing base-p digits (Lucas)."""
    _require_prime(p)
    if not 0 <= i <= n:
        raise DomainError("need 0 <= i <= n")
    dn = base_digits(n, p)
    di = base_digits(i, p)
    return all(a <= (dn[k] if k < len(dn) else 0) for k, a in enumerate(di))


def factorial_valuation(m: int, p: int) -> int:
    """Exponent of p in m!, as sum of a_i (p^i - 1)/(p - 1) over digits a_i of m."""
    _require_prime(p)
    if m < 0:
        raise DomainError("factorial of a negative integer")
    return sum(a * (p**i - 1) // (p - 1) for i, a in enumerate(base_digits(m, p)))


def factorial_odd_part_mod(m: int, modulus: int) -> int:
    """``(2m)! / 2^(2m-1)`` reduced mod ``modulus``, for m a power of 2."""
    if m < 1 or m & (m - 1):
        raise DomainError("m must be a power of 2")
    if modulus < 1 or modulus & (modulus - 1):
        raise DomainError("modulus must be a power of 2")
    num = factorial(2 * m)
    den = 1 << (2 * m - 1)
    q, r = divmod(num, den)
    if r:
        raise ConsistencyError(f"2^{2 * m - 1} does not divide ({2 * m})!")
    return q % modulus


def central_binomial_mod(m: int, modulus: int) -> int:
    if m < 1:
        raise DomainError("m must be positive")
    return comb(2 * m, m) % modulus


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise DomainError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def prime_power(n: int) -> Optional[Tuple[int, int]]:
    """Return (p, s) with n = p^s and s >= 1, or None."""
    if n < 2:
        return None
    for p in range(2, n + 1):
        if n % p == 0:
            s = valuation(n, p)
            return (p, s) if p**s == n else None
    return None


def is_power_of(n: int, p: int) -> bool:
    """True iff n = p^r for some r >= 0."""
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def prime_divisors(n: int) -> List[int]:
    out = []
    d = 2
    n = abs(n)
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
