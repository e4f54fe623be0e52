"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction`. On top of that this module provides
truncated one-variable polynomials (optionally with coefficients reduced modulo
an integer) and elements of cyclotomic fields in the power basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple, Union

from .errors import ParameterError, PoleError

__all__ = [
    "BigRational",
    "TruncPoly",
    "CycloNum",
    "poly_mul_trunc",
    "poly_pow_trunc",
    "cyclotomic_polynomial",
    "euler_phi",
    "cyclo_eval_ratio",
]

BigRational = Fraction

Coeff = Union[int, Fraction]


def _as_rational(x: Coeff) -> Coeff:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


# ---------------------------------------------------------------------------
# Truncated polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncPoly:
    """Polynomial in one generator truncated at ``trunc_order``.

    ``coeffs[i]`` is the coefficient of ``gen**i`` for ``0 <= i < trunc_order``.
    When ``modulus`` is set the coefficients are integers in ``[0, modulus)``.
    ``gen_degree`` records the cohomological degree of the generator and does
    not take part in arithmetic.
    """

    coeffs: Tuple[Coeff, ...]
    modulus: Optional[int] = None
    gen_degree: int = 2

    def __post_init__(self) -> None:
        if self.modulus is not None:
            if self.modulus <= 0:
                raise ParameterError("modulus must be positive")
            for c in self.coeffs:
                if isinstance(c, Fraction) and c.denominator != 1:
                    raise ParameterError("modular coefficients must be integers")
            object.__setattr__(
                self, "coeffs", tuple(int(c) % self.modulus for c in self.coeffs)
            )
        else:
            object.__setattr__(self, "coeffs", tuple(_as_rational(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(
        cls,
        coeffs: Iterable[Coeff],
        trunc_order: int,
        modulus: Optional[int] = None,
        gen_degree: int = 2,
    ) -> "TruncPoly":
        """Build from a (possibly short or long) coefficient list, padding or cutting."""
        if trunc_order < 1:
            raise ParameterError("trunc_order must be at least 1")
        cs = list(coeffs)[:trunc_order]
        cs += [0] * (trunc_order - len(cs))
        return cls(tuple(cs), modulus, gen_degree)

    @classmethod
    def one(cls, trunc_order: int, modulus: Optional[int] = None, gen_degree: int = 2) -> "TruncPoly":
        return cls.from_coeffs([1], trunc_order, modulus, gen_degree)

    @property
    def trunc_order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Coeff:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        raise IndexError(f"index {i} outside truncation order {len(self.coeffs)}")

    def _check_compatible(self, other: "TruncPoly") -> None:
        if (self.trunc_order, self.modulus, self.gen_degree) != (
            other.trunc_order,
            other.modulus,
            other.gen_degree,
        ):
            raise ParameterError(
                "mismatched ring parameters: "
                f"(N={self.trunc_order}, m={self.modulus}, deg={self.gen_degree}) vs "
                f"(N={other.trunc_order}, m={other.modulus}, deg={other.gen_degree})"
            )

    def __add__(self, other: "TruncPoly") -> "TruncPoly":
        self._check_compatible(other)
        return TruncPoly(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
            self.modulus,
            self.gen_degree,
        )

    def __neg__(self) -> "TruncPoly":
        return TruncPoly(tuple(-c for c in self.coeffs), self.modulus, self.gen_degree)

    def __sub__(self, other: "TruncPoly") -> "TruncPoly":
        return self + (-other)

    def __mul__(self, other: "TruncPoly") -> "TruncPoly":
        return poly_mul_trunc(self, other)

    def __pow__(self, e: int) -> "TruncPoly":
        return poly_pow_trunc(self, e)

    def reduce(self, modulus: int) -> "TruncPoly":
        """Reduce integer coefficients modulo ``modulus``."""
        return TruncPoly(self.coeffs, modulus, self.gen_degree)

    def truncate(self, trunc_order: int) -> "TruncPoly":
        return TruncPoly.from_coeffs(self.coeffs, trunc_order, self.modulus, self.gen_degree)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    def format(self, var: str = "u") -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{'' if c == 1 else c}{var}")
            else:
                terms.append(f"{'' if c == 1 else c}{var}^{i}")
        body = " + ".join(terms) if terms else "0"
        if self.modulus is None:
            return f"{body} mod {var}^{self.trunc_order}"
        return f"{body} mod ({self.modulus}, {var}^{self.trunc_order})"

    def __str__(self) -> str:
        return self.format("u" if self.gen_degree == 2 else "v")


def poly_mul_trunc(p: TruncPoly, q: TruncPoly) -> TruncPoly:
    """Exact product of two truncated polynomials over the same ring."""
    p._check_compatible(q)
    n = p.trunc_order
    out: list = [0] * n
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j in range(n - i):
            b = q.coeffs[j]
            if b:
                out[i + j] += a * b
    return TruncPoly(tuple(out), p.modulus, p.gen_degree)


def poly_pow_trunc(p: TruncPoly, e: int) -> TruncPoly:
    """``p**e`` by repeated squaring; ``e = 0`` gives the unit."""
    if e < 0:
        raise ParameterError("exponent must be nonnegative")
    result = TruncPoly.one(p.trunc_order, p.modulus, p.gen_degree)
    base = p
    while e:
        if e & 1:
            result = poly_mul_trunc(result, base)
        e >>= 1
        if e:
            base = poly_mul_trunc(base, base)
    return result


# ---------------------------------------------------------------------------
# Cyclotomic fields
# ---------------------------------------------------------------------------


def _int_poly_divmod(num: Sequence[int], den: Sequence[int]) -> Tuple[list, list]:
    """Division of integer polynomials (low degree first) by a monic divisor."""
    num = list(num)
    dlen = len(den)
    if den[-1] != 1:
        raise ParameterError("divisor must be monic")
    quot = [0] * max(len(num) - dlen + 1, 1)
    for i in range(len(num) - dlen, -1, -1):
        c = num[i + dlen - 1]
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return quot, num[: dlen - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ParameterError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _int_poly_divmod(poly, cyclotomic_polynomial(d))
            assert not any(rem)
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Row j holds x^j reduced modulo the n-th cyclotomic polynomial, 0 <= j < n."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce the overflow coefficient
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


class CycloNum:
    """Element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1)."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Iterable[Coeff]):
        deg = euler_phi(conductor)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            cs = self._reduce_long(conductor, cs)
        cs += [Fraction(0)] * (deg - len(cs))
        self.conductor = conductor
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @staticmethod
    def _reduce_long(n: int, cs: Sequence[Fraction]) -> list:
        table = _power_table(n)
        deg = len(table[0])
        out = [Fraction(0)] * deg
        for j, c in enumerate(cs):
            if c:
                row = table[j % n]
                for i in range(deg):
                    if row[i]:
                        out[i] += c * row[i]
        return out

    @classmethod
    def rational(cls, conductor: int, value: Coeff) -> "CycloNum":
        return cls(conductor, [value])

    @classmethod
    def zeta_power(cls, conductor: int, k: int) -> "CycloNum":
        return cls(conductor, _power_table(conductor)[k % conductor])

    @classmethod
    def from_exponents(cls, conductor: int, terms: dict) -> "CycloNum":
        """Sum of ``c * zeta**k`` over ``terms = {k: c}``."""
        cs = [Fraction(0)] * conductor
        for k, c in terms.items():
            cs[k % conductor] += Fraction(c)
        return cls(conductor, cs)

    def _coerce(self, other: Union["CycloNum", Coeff]) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.conductor != self.conductor:
                raise ParameterError("cyclotomic conductors differ")
            return other
        return CycloNum.rational(self.conductor, other)

    def __add__(self, other):
        o = self._coerce(other)
        return CycloNum(self.conductor, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "CycloNum":
        return CycloNum(self.conductor, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, CycloNum):
            c = Fraction(other)
            return CycloNum(self.conductor, [a * c for a in self.coeffs])
        o = self._coerce(other)
        prod = [Fraction(0)] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycloNum(self.conductor, prod)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycloNum":
        if e < 0:
            raise ParameterError("negative powers are not supported")
        result = CycloNum.rational(self.conductor, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloNum):
            return self.conductor == other.conductor and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.conductor, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ParameterError("cyclotomic element is not rational")
        return self.coeffs[0]

    def __repr__(self) -> str:
        return f"CycloNum({self.conductor}, {[str(c) for c in self.coeffs]})"


def cyclo_eval_ratio(N: int, k: int) -> CycloNum:
    """``(w + 1)/(w - 1)`` for ``w = zeta_N**k``.

    For ``w`` of exact order ``d > 1`` we use ``1/(w - 1) = (1/d) * sum_j j*w^j``
    over ``0 <= j < d``, so no field inversion is needed.
    """
    k %= N
    if k == 0:
        raise PoleError("zeta^k = 1 is a pole of (w+1)/(w-1)")
    d = N // gcd(N, k)
    if d == 2:
        return CycloNum.rational(N, 0)
    terms = {j * k: Fraction(2 * j, d) for j in range(1, d)}
    terms[0] = terms.get(0, Fraction(0)) + 1
    return CycloNum.from_exponents(N, terms)
