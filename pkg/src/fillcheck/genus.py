"""Multiplicative sequences in Pontryagin and Chern classes.

Polynomials in characteristic classes are dictionaries from partitions
(weakly decreasing tuples of positive integers) to rationals; the partition
``(2, 1, 1)`` stands for ``p_2 p_1^2`` or ``c_2 c_1^2`` depending on context.

A multiplicative sequence is computed from its one-variable characteristic
series by taking the logarithm, summing over formal roots (power sums),
rewriting the power sums through Newton's identities in elementary symmetric
functions, and exponentiating.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Mapping, Tuple

from .bernoulli import bernoulli
from .errors import DomainError, ParameterError
from .exactnum import TruncPoly

__all__ = [
    "Partition",
    "PontryaginPolynomial",
    "ChernPolynomial",
    "partitions",
    "weight",
    "series_coefficients",
    "multiplicative_sequence",
    "genus_in_pontryagin",
    "genus_in_chern",
    "pontryagin_in_chern",
    "substitute",
    "evaluate",
    "alpha",
    "beta",
    "alpha_beta",
    "a_b_chern",
    "wu_series_coefficient",
    "wu_cap_restriction",
    "format_polynomial",
]

Partition = Tuple[int, ...]
PontryaginPolynomial = Dict[Partition, Fraction]
ChernPolynomial = Dict[Partition, Fraction]

SERIES_IDS = ("L", "Ahat", "wu")


def weight(lam: Partition) -> int:
    return sum(lam)


def _canon(parts: Iterable[int]) -> Partition:
    return tuple(sorted(parts, reverse=True))


def partitions(n: int, largest: int | None = None) -> List[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


# ---------------------------------------------------------------------------
# Graded polynomial arithmetic in elementary symmetric functions
# ---------------------------------------------------------------------------


def _clean(poly: Mapping[Partition, Fraction]) -> Dict[Partition, Fraction]:
    return {k: v for k, v in poly.items() if v != 0}


def _add_into(acc: Dict[Partition, Fraction], poly: Mapping[Partition, Fraction], scale=1) -> None:
    for k, v in poly.items():
        acc[k] = acc.get(k, 0) + scale * v


def _mul(a: Mapping[Partition, Fraction], b: Mapping[Partition, Fraction], max_weight: int | None = None):
    out: Dict[Partition, Fraction] = {}
    for ka, va in a.items():
        wa = sum(ka)
        for kb, vb in b.items():
            if max_weight is not None and wa + sum(kb) > max_weight:
                continue
            key = _canon(ka + kb)
            out[key] = out.get(key, 0) + va * vb
    return _clean(out)


@lru_cache(maxsize=None)
def _newton_power_sum(k: int) -> Tuple[Tuple[Partition, Fraction], ...]:
    """Power sum P_k written in elementary symmetric functions e_i."""
    acc: Dict[Partition, Fraction] = {(k,): Fraction((-1) ** (k - 1) * k)}
    for i in range(1, k):
        prev = dict(_newton_power_sum(k - i))
        _add_into(acc, _mul({(i,): Fraction(1)}, prev), (-1) ** (i - 1))
    return tuple(sorted(_clean(acc).items()))


def _series_log(q: List[Fraction]) -> List[Fraction]:
    """Coefficients of log(q) for a series with q[0] = 1."""
    if q[0] != 1:
        raise ParameterError("characteristic series must start with 1")
    r = [Fraction(0)] * len(q)
    for k in range(1, len(q)):
        s = sum(j * r[j] * q[k - j] for j in range(1, k))
        r[k] = q[k] - Fraction(s, 1) / k
    return r


def _series_div(num: List[Fraction], den: List[Fraction]) -> List[Fraction]:
    out = []
    for k in range(len(num)):
        s = num[k] - sum(out[j] * den[k - j] for j in range(k))
        out.append(s / den[0])
    return out


@lru_cache(maxsize=None)
def series_coefficients(series_id: str, order: int) -> Tuple[Fraction, ...]:
    """First ``order + 1`` coefficients of a characteristic series.

    ``L`` and ``Ahat`` are in the variable y = x^2 (Pontryagin roots); ``wu`` is in
    the Chern-root variable x. The L and Ahat series are built from the
    cosh/sinh Taylor coefficients, independently of the Bernoulli module.
    """
    n = order + 1
    if series_id == "L":
        cosh = [Fraction(1, factorial(2 * k)) for k in range(n)]
        sinh_over = [Fraction(1, factorial(2 * k + 1)) for k in range(n)]
        return tuple(_series_div(cosh, sinh_over))
    if series_id == "Ahat":
        sinh_half = [Fraction(1, factorial(2 * k + 1) * 4**k) for k in range(n)]
        one = [Fraction(1)] + [Fraction(0)] * (n - 1)
        return tuple(_series_div(one, sinh_half))
    if series_id == "wu":
        return tuple(Fraction(1 if (k + 1) & k == 0 else 0) for k in range(n))
    raise ParameterError(f"unknown series {series_id!r}; expected one of {SERIES_IDS}")


def multiplicative_sequence(coeffs: List[Fraction], m: int) -> Dict[Partition, Fraction]:
    """Weight-m term of the multiplicative sequence with the given series."""
    if m < 0:
        raise DomainError("weight must be nonnegative")
    if m == 0:
        return {(): Fraction(1)}
    q = list(coeffs[: m + 1])
    q += [Fraction(0)] * (m + 1 - len(q))
    logs = _series_log(q)
    # graded pieces of S = sum_k r_k P_k
    pieces: List[Dict[Partition, Fraction]] = [{} for _ in range(m + 1)]
    for k in range(1, m + 1):
        if logs[k]:
            pieces[k] = {lam: logs[k] * c for lam, c in _newton_power_sum(k)}
    # E = exp(S) by weight: w E_w = sum_j j S_j E_{w-j}
    exps: List[Dict[Partition, Fraction]] = [{(): Fraction(1)}]
    for w in range(1, m + 1):
        acc: Dict[Partition, Fraction] = {}
        for j in range(1, w + 1):
            if pieces[j] and exps[w - j]:
                _add_into(acc, _mul(pieces[j], exps[w - j]), Fraction(j, w))
        exps.append(_clean(acc))
    return exps[m]


@lru_cache(maxsize=None)
def _genus_cached(series_id: str, m: int) -> Tuple[Tuple[Partition, Fraction], ...]:
    poly = multiplicative_sequence(list(series_coefficients(series_id, m)), m)
    return tuple(sorted(poly.items(), reverse=True))


def genus_in_pontryagin(series_id: str, m: int) -> PontryaginPolynomial:
    """Degree-m term of the L or Ahat sequence as a polynomial in p_i."""
    if series_id not in ("L", "Ahat"):
        raise ParameterError("series_id must be 'L' or 'Ahat'")
    if m < 1:
        raise DomainError("m must be positive")
    return dict(_genus_cached(series_id, m))


@lru_cache(maxsize=None)
def _pontryagin_in_chern_cached(k: int) -> Tuple[Tuple[Partition, Fraction], ...]:
    # sum (-1)^i p_i = (sum c_i)(sum (-1)^i c_i); collect weight 2k
    acc: Dict[Partition, Fraction] = {}
    for i in range(0, 2 * k + 1):
        j = 2 * k - i
        key = _canon(x for x in (i, j) if x)
        acc[key] = acc.get(key, 0) + (-1) ** j
    sign = (-1) ** k
    return tuple(sorted(((lam, sign * Fraction(c)) for lam, c in _clean(acc).items()), reverse=True))


def pontryagin_in_chern(k: int) -> ChernPolynomial:
    """p_k of a complex bundle as a polynomial in its Chern classes."""
    if k < 1:
        raise DomainError("k must be positive")
    return dict(_pontryagin_in_chern_cached(k))


def substitute(poly: Mapping[Partition, Fraction], images: Mapping[int, Mapping[Partition, Fraction]]):
    """Replace each variable x_i by the polynomial ``images[i]``."""
    out: Dict[Partition, Fraction] = {}
    for lam, c in poly.items():
        term: Dict[Partition, Fraction] = {(): Fraction(c)}
        for part in lam:
            term = _mul(term, images[part])
        _add_into(out, term)
    return _clean(out)


def genus_in_chern(series_id: str, m: int) -> ChernPolynomial:
    """Degree-m term of L or Ahat rewritten in Chern classes."""
    poly = genus_in_pontryagin(series_id, m)
    return substitute(poly, {k: pontryagin_in_chern(k) for k in range(1, m + 1)})


def evaluate(poly: Mapping[Partition, Fraction], values: Mapping[int, Fraction]) -> Fraction:
    """Evaluate at numeric values of the variables (missing ones count as 0)."""
    total = Fraction(0)
    for lam, c in poly.items():
        term = Fraction(c)
        for part in lam:
            term *= values.get(part, 0)
        total += term
    return total


# ---------------------------------------------------------------------------
# Closed forms for the top coefficients
# ---------------------------------------------------------------------------


def alpha(m: int) -> Fraction:
    """Coefficient of p_m in L_m: 2^{2m}(2^{2m-1}-1)/(2m)! * B_m."""
    if m < 1:
        raise DomainError("m must be positive")
    return Fraction(2 ** (2 * m) * (2 ** (2 * m - 1) - 1), factorial(2 * m)) * bernoulli(m)


def beta(m: int) -> Fraction:
    """Coefficient of p_{m/2}^2 in L_m for even m."""
    if m < 2 or m % 2:
        raise DomainError("beta needs an even m")
    h = m // 2
    first = -Fraction(2 ** (2 * m - 1) * (2 ** (2 * m - 1) - 1), factorial(2 * m)) * bernoulli(m)
    second = Fraction(2 ** (2 * m - 1) * (2 ** (m - 1) - 1) ** 2, factorial(m) ** 2) * bernoulli(h) ** 2
    return first + second


def alpha_beta(m: int) -> Tuple[Fraction, Fraction]:
    if m % 2:
        raise DomainError("alpha_beta needs an even m")
    return alpha(m), beta(m)


def a_b_chern(m: int) -> Tuple[Fraction, Fraction]:
    """Coefficients of c_{2m} and c_m^2 in L_m (even m): (2 alpha, alpha + 4 beta)."""
    al, be = alpha_beta(m)
    return 2 * al, al + 4 * be


# ---------------------------------------------------------------------------
# Integral Wu classes
# ---------------------------------------------------------------------------


def wu_series_coefficient(n: int, target: Partition) -> int:
    """Coefficient of the Chern monomial ``target`` in the integral Wu class v_n.

    v_n is the weight n/2 part of the multiplicative sequence with series
    1 + x + x^3 + x^7 + ... in the Chern roots.
    """
    if n < 0 or n % 2:
        raise DomainError("n must be even and nonnegative")
    lam = _canon(target)
    if sum(lam) != n // 2:
        return 0
    poly = multiplicative_sequence(list(series_coefficients("wu", n // 2)), n // 2)
    c = poly.get(lam, Fraction(0))
    if c.denominator != 1:
        raise ParameterError("integral Wu coefficient is not an integer")
    return c.numerator


def wu_cap_restriction(k: int, modulus: int = 4) -> TruncPoly:
    """Total Wu class of the cap, f(u)^(2^k) f(2u), mod (modulus, u^(2^(k-1)+1))."""
    if k < 1:
        raise DomainError("k must be positive")
    order = 2 ** (k - 1) + 1
    f = series_coefficients("wu", order)
    fu = TruncPoly.from_coeffs([int(c) for c in f], order, modulus)
    f2u = TruncPoly.from_coeffs([int(c) * 2**i for i, c in enumerate(f)], order, modulus)
    return fu ** (2**k) * f2u


def format_polynomial(poly: Mapping[Partition, Fraction], var: str = "p") -> str:
    """Human readable form such as ``7/45 p2 - 1/45 p1^2``."""
    if not poly:
        return "0"
    parts = []
    for lam in sorted(poly, reverse=True):
        c = poly[lam]
        counts: Dict[int, int] = {}
        for x in lam:
            counts[x] = counts.get(x, 0) + 1
        mono = " ".join(
            f"{var}{i}" + (f"^{e}" if e > 1 else "") for i, e in sorted(counts.items(), reverse=True)
        )
        coef = str(abs(c))
        body = f"{coef} {mono}".strip() if mono else coef
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text

