"""Exact unit quaternions with coordinates in Q(sqrt2, sqrt5).

A field element is stored as four integer numerators over one positive common
denominator on the basis 1, sqrt2, sqrt5, sqrt10. Integer storage keeps group
table construction fast while staying exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, sqrt
from typing import Iterable, Tuple

__all__ = ["Q25", "Quaternion"]

# basis products: e_a * e_b = coefficient * e_index, with e = (1, r2, r5, r10)
_TABLE = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (2, 0), (1, 2): (1, 3), (1, 3): (2, 2),
    (2, 0): (1, 2), (2, 1): (1, 3), (2, 2): (5, 0), (2, 3): (5, 1),
    (3, 0): (1, 3), (3, 1): (2, 2), (3, 2): (5, 1), (3, 3): (10, 0),
}


class Q25:
    """Element (a + b*sqrt2 + c*sqrt5 + d*sqrt10) / den of Q(sqrt2, sqrt5)."""

    __slots__ = ("num", "den")

    def __init__(self, num: Iterable[int], den: int = 1):
        num = tuple(int(x) for x in num)
        if len(num) != 4 or den == 0:
            raise ValueError("need four numerators and a nonzero denominator")
        if den < 0:
            num, den = tuple(-x for x in num), -den
        g = den
        for x in num:
            g = gcd(g, x)
        if g > 1:
            num, den = tuple(x // g for x in num), den // g
        self.num: Tuple[int, int, int, int] = num  # type: ignore[assignment]
        self.den = den

    @classmethod
    def from_fractions(cls, coords: Iterable[Fraction]) -> "Q25":
        fr = [Fraction(c) for c in coords]
        den = 1
        for f in fr:
            den = den * f.denominator // gcd(den, f.denominator)
        return cls([int(f * den) for f in fr], den)

    @classmethod
    def rational(cls, q) -> "Q25":
        return cls.from_fractions([Fraction(q), 0, 0, 0])

    def coords(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def __add__(self, other: "Q25") -> "Q25":
        d = self.den * other.den
        return Q25([a * other.den + b * self.den for a, b in zip(self.num, other.num)], d)

    def __neg__(self) -> "Q25":
        return Q25([-a for a in self.num], self.den)

    def __sub__(self, other: "Q25") -> "Q25":
        return self + (-other)

    def __mul__(self, other: "Q25") -> "Q25":
        out = [0, 0, 0, 0]
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(other.num):
                    if b:
                        c, k = _TABLE[(i, j)]
                        out[k] += c * a * b
        return Q25(out, self.den * other.den)

    def __eq__(self, other) -> bool:
        return isinstance(other, Q25) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return not any(self.num)

    def __float__(self) -> float:
        a, b, c, d = self.num
        return (a + b * sqrt(2) + c * sqrt(5) + d * sqrt(10)) / self.den

    def __repr__(self) -> str:
        return f"Q25({list(self.num)}, {self.den})"


_ZERO = Q25([0, 0, 0, 0])
_ONE = Q25([1, 0, 0, 0])


class Quaternion:
    """Quaternion w + x i + y j + z k over Q(sqrt2, sqrt5)."""

    __slots__ = ("w", "x", "y", "z", "_key")

    def __init__(self, w: Q25, x: Q25, y: Q25, z: Q25):
        self.w, self.x, self.y, self.z = w, x, y, z
        self._key = (w.num, w.den, x.num, x.den, y.num, y.den, z.num, z.den)

    @classmethod
    def from_fractions(cls, *rows: Iterable[Fraction]) -> "Quaternion":
        return cls(*(Q25.from_fractions(r) for r in rows))

    @classmethod
    def one(cls) -> "Quaternion":
        return cls(_ONE, _ZERO, _ZERO, _ZERO)

    def __mul__(self, o: "Quaternion") -> "Quaternion":
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = o.w, o.x, o.y, o.z
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> Q25:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __eq__(self, other) -> bool:
        return isinstance(other, Quaternion) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def key(self) -> tuple:
        """Exact encoding used for deterministic ordering."""
        return tuple(c for part in (self.w, self.x, self.y, self.z) for c in part.coords())

    def __repr__(self) -> str:
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"
