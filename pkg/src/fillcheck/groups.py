"""Finite unitary actions with isolated fixed point at the origin.

Supported families: cyclic groups acting diagonally with given weights, the
trivial group, and the binary dihedral, tetrahedral, octahedral and
icosahedral groups acting on C^2 by left quaternion multiplication, taken
``copies`` times diagonally on C^(2*copies).

Group tables are built once per group and cached; every query afterwards is a
read of frozen data.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import ConsistencyError, DomainError, NotIsolatedError, SpecParseError
from .quaternion import Q25, Quaternion

__all__ = [
    "ActionSpec",
    "EigenData",
    "ConjClass",
    "ReebFamily",
    "Group",
    "parse_spec",
    "format_spec",
    "group_of",
    "enumerate_elements",
    "conj_classes",
    "element_eigen",
    "element_age",
    "age",
    "is_isolated",
    "minimal_discrepancy",
    "is_terminal",
    "is_canonical",
    "hmi",
    "reeb_families",
]

QUATERNIONIC = ("bd", "2t", "2o", "2i")
FAMILIES = ("cyclic", "trivial") + QUATERNIONIC


# ---------------------------------------------------------------------------
# Specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ActionSpec:
    """A finite unitary action; ``m`` is the cyclic order or the dihedral parameter."""

    family: str
    m: int = 1
    weights: Tuple[int, ...] = ()
    copies: int = 1

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise SpecParseError(f"unknown family {self.family!r}")
        if self.family == "cyclic":
            if self.m < 2:
                raise SpecParseError("cyclic order must be at least 2 (use trivial:dim=n)")
            w = tuple(a % self.m for a in self.weights)
            if not w:
                raise SpecParseError("cyclic spec needs at least one weight")
            if any(a == 0 for a in w):
                raise SpecParseError("cyclic weights must be nonzero mod m")
            object.__setattr__(self, "weights", w)
        elif self.family == "trivial":
            if self.copies < 1:
                raise SpecParseError("dimension must be positive")
        else:
            if self.copies < 1:
                raise SpecParseError("copies must be positive")
            if self.family == "bd" and self.m < 2:
                raise SpecParseError("binary dihedral parameter must be at least 2")

    @property
    def complex_dim(self) -> int:
        if self.family == "cyclic":
            return len(self.weights)
        if self.family == "trivial":
            return self.copies
        return 2 * self.copies

    @property
    def is_quaternionic(self) -> bool:
        return self.family in QUATERNIONIC

    @property
    def group_order(self) -> int:
        return group_of(self).order

    def __str__(self) -> str:
        return format_spec(self)


def format_spec(spec: ActionSpec) -> str:
    if spec.family == "cyclic":
        return f"cyclic:m={spec.m};w=" + ",".join(str(a) for a in spec.weights)
    if spec.family == "trivial":
        return f"trivial:dim={spec.copies}"
    if spec.family == "bd":
        return f"bd:m={spec.m};copies={spec.copies}"
    return f"{spec.family}:copies={spec.copies}"


_INT = r"(0|[1-9][0-9]*)"
_PATTERNS = {
    "cyclic": re.compile(rf"cyclic:m={_INT};w=({_INT}(,{_INT})*)"),
    "bd": re.compile(rf"bd:m={_INT};copies={_INT}"),
    "poly": re.compile(rf"(2t|2o|2i):copies={_INT}"),
    "trivial": re.compile(rf"trivial:dim={_INT}"),
}


def parse_spec(text: str) -> ActionSpec:
    """Parse the action-spec grammar; raises SpecParseError on malformed input."""
    s = text.strip()
    if (mt := _PATTERNS["cyclic"].fullmatch(s)) is not None:
        m = int(mt.group(1))
        weights = tuple(int(x) for x in mt.group(2).split(","))
        if any(not 1 <= a < m for a in weights):
            raise SpecParseError("cyclic weights must satisfy 1 <= a < m")
        return ActionSpec("cyclic", m, weights)
    if (mt := _PATTERNS["bd"].fullmatch(s)) is not None:
        return ActionSpec("bd", int(mt.group(1)), (), int(mt.group(2)))
    if (mt := _PATTERNS["poly"].fullmatch(s)) is not None:
        return ActionSpec(mt.group(1), 1, (), int(mt.group(2)))
    if (mt := _PATTERNS["trivial"].fullmatch(s)) is not None:
        return ActionSpec("trivial", 1, (), int(mt.group(1)))
    raise SpecParseError(f"malformed action spec: {text!r}")


# ---------------------------------------------------------------------------
# Abstract group tables
# ---------------------------------------------------------------------------

GroupElement = Union[int, Tuple[int, int], Quaternion]


@dataclass(frozen=True)
class Group:
    name: str
    elements: Tuple[GroupElement, ...]
    table: Tuple[Tuple[int, ...], ...]
    inverse: Tuple[int, ...]
    identity: int
    # per element: (order, (a, d)) meaning eigenvalues exp(+-2 pi i a/d) on C^2,
    # or for cyclic groups just the order
    orders: Tuple[int, ...]
    class_of: Tuple[int, ...]
    classes: Tuple[Tuple[int, ...], ...]
    centralizers: Tuple[frozenset, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, g: int, h: int) -> int:
        """h g h^-1."""
        return self.table[self.table[h][g]][self.inverse[h]]


def _finish_group(name: str, elements: Sequence[GroupElement], table: List[List[int]]) -> Group:
    n = len(elements)
    ident = next(i for i in range(n) if all(table[i][j] == j for j in range(n)))
    inverse = []
    for a in range(n):
        inv = [b for b in range(n) if table[a][b] == ident]
        if len(inv) != 1:
            raise ConsistencyError(f"{name}: element {a} has no unique inverse")
        inverse.append(inv[0])
    orders = []
    for a in range(n):
        k, x = 1, a
        while x != ident:
            x = table[x][a]
            k += 1
            if k > n:
                raise ConsistencyError(f"{name}: element {a} has no finite order")
        orders.append(k)
    class_of = [-1] * n
    classes: List[Tuple[int, ...]] = []
    for g in range(n):
        if class_of[g] >= 0:
            continue
        members = sorted({table[table[h][g]][inverse[h]] for h in range(n)})
        for x in members:
            class_of[x] = len(classes)
        classes.append(tuple(members))
    centralizers = tuple(
        frozenset(h for h in range(n) if table[h][g] == table[g][h]) for g in range(n)
    )
    for members in classes:
        if len(members) * len(centralizers[members[0]]) != n:
            raise ConsistencyError(f"{name}: orbit-stabilizer fails")
    return Group(
        name,
        tuple(elements),
        tuple(tuple(r) for r in table),
        tuple(inverse),
        ident,
        tuple(orders),
        tuple(class_of),
        tuple(classes),
        centralizers,
    )


def _cyclic_group(m: int) -> Group:
    table = [[(i + j) % m for j in range(m)] for i in range(m)]
    return _finish_group(f"Z/{m}", list(range(m)), table)


def _binary_dihedral(m: int) -> Group:
    # a^i x^e with a of order 2m, x a x^-1 = a^-1, x^2 = a^m
    two_m = 2 * m
    elements = [(i, e) for e in (0, 1) for i in range(two_m)]
    index = {el: k for k, el in enumerate(elements)}

    def mul(p, q):
        (i, e), (j, f) = p, q
        k = i + (j if e == 0 else -j)
        if e and f:
            k += m
        return (k % two_m, (e + f) % 2)

    table = [[index[mul(p, q)] for q in elements] for p in elements]
    return _finish_group(f"2D_{two_m}", elements, table)


def _half(*vals) -> List[Fraction]:
    return [Fraction(v) / 2 for v in vals]


def _polyhedral_elements(kind: str) -> List[Quaternion]:
    zero = Q25.rational(0)
    half = Q25.rational(Fraction(1, 2))
    one = Q25.rational(1)
    units = []
    for pos in range(4):
        for s in (1, -1):
            c = [zero] * 4
            c[pos] = one if s == 1 else -one
            units.append(Quaternion(*c))
    hurwitz = [
        Quaternion(*(half if s == 1 else -half for s in signs))
        for signs in product((1, -1), repeat=4)
    ]
    elems = units + hurwitz  # binary tetrahedral group
    if kind == "2o":
        r = Q25([0, 1, 0, 0], 2)  # sqrt2 / 2
        for a in range(4):
            for b in range(a + 1, 4):
                for sa, sb in product((1, -1), repeat=2):
                    c = [zero] * 4
                    c[a] = r if sa == 1 else -r
                    c[b] = r if sb == 1 else -r
                    elems.append(Quaternion(*c))
    elif kind == "2i":
        phi_half = Q25([1, 0, 1, 0], 4)  # (1 + sqrt5)/4 = phi/2
        inv_half = Q25([-1, 0, 1, 0], 4)  # (sqrt5 - 1)/4 = 1/(2 phi)
        base = [zero, half, inv_half, phi_half]
        for perm in permutations(range(4)):
            # keep even permutations of the coordinate pattern (0, 1, 1/phi, phi)
            inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
            if inversions % 2:
                continue
            vals = [base[p] for p in perm]
            nonzero = [i for i, p in enumerate(perm) if p != 0]
            for signs in product((1, -1), repeat=3):
                c = list(vals)
                for idx, s in zip(nonzero, signs):
                    if s == -1:
                        c[idx] = -c[idx]
                elems.append(Quaternion(*c))
    return elems


def _polyhedral_group(kind: str) -> Group:
    elems = _polyhedral_elements(kind)
    one = Quaternion.one()
    for q in elems:
        if q.norm() != Q25.rational(1):
            raise ConsistencyError(f"{kind}: non-unit quaternion {q!r}")
    elems = sorted(set(elems), key=lambda q: (q != one, q.key()))
    index = {q: k for k, q in enumerate(elems)}
    table = []
    for p in elems:
        row = []
        for q in elems:
            k = index.get(p * q)
            if k is None:
                raise ConsistencyError(f"{kind}: element set is not closed under multiplication")
            row.append(k)
        table.append(row)
    names = {"2t": "2T", "2o": "2O", "2i": "2I"}
    return _finish_group(names[kind], elems, table)


@lru_cache(maxsize=None)
def _group_by_key(family: str, m: int) -> Group:
    if family == "cyclic":
        return _cyclic_group(m)
    if family == "trivial":
        return _cyclic_group(1)
    if family == "bd":
        return _binary_dihedral(m)
    return _polyhedral_group(family)


def group_of(spec: ActionSpec) -> Group:
    m = spec.m if spec.family in ("cyclic", "bd") else 1
    return _group_by_key(spec.family, m)


def enumerate_elements(spec: ActionSpec) -> List[GroupElement]:
    return list(group_of(spec).elements)


# ---------------------------------------------------------------------------
# Eigen data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EigenData:
    """Angles a/o in (0, 1], where 1 stands for eigenvalue 1."""

    angles: Tuple[Fraction, ...]
    order: int

    def has_eigenvalue_one(self) -> bool:
        return any(a == 1 for a in self.angles)


def _unit_angle(x: Fraction) -> Fraction:
    r = x - (x.numerator // x.denominator)
    return r if r else Fraction(1)


# 2 cos(2 pi / d) for the element orders occurring in 2T, 2O, 2I
_TWO_COS_GEN = {
    1: Q25.rational(2),
    2: Q25.rational(-2),
    3: Q25.rational(-1),
    4: Q25.rational(0),
    5: Q25([-1, 0, 1, 0], 2),
    6: Q25.rational(1),
    8: Q25([0, 1, 0, 0], 1),
    10: Q25([1, 0, 1, 0], 2),
}


@lru_cache(maxsize=None)
def two_cos_table(d: int) -> Tuple[Q25, ...]:
    """2 cos(2 pi a/d) for a = 0..d via the Chebyshev recurrence."""
    if d not in _TWO_COS_GEN:
        raise ConsistencyError(f"no exact cosine data for order {d}")
    c1 = _TWO_COS_GEN[d]
    vals = [Q25.rational(2), c1]
    for _ in range(2, d + 1):
        vals.append(c1 * vals[-1] - vals[-2])
    return tuple(vals[: d + 1])


def _quaternion_rotation(q: Quaternion, d: int) -> Fraction:
    """Return a/d in [0, 1/2] with Re(q) = cos(2 pi a/d), gcd(a, d) = 1."""
    target = q.w + q.w
    table = two_cos_table(d)
    hits = [a for a in range(0, d // 2 + 1) if gcd(a, d) == 1 and table[a] == target]
    if len(hits) != 1:
        raise ConsistencyError(f"cannot recover eigen-angle for element of order {d}")
    return Fraction(hits[0], d)


@lru_cache(maxsize=None)
def _eigen_table(spec: ActionSpec) -> Tuple[EigenData, ...]:
    grp = group_of(spec)
    out = []
    for idx, el in enumerate(grp.elements):
        d = grp.orders[idx]
        if spec.family == "cyclic":
            angles = [_unit_angle(Fraction(el * a, spec.m)) for a in spec.weights]
        elif spec.family == "trivial":
            angles = [Fraction(1)] * spec.copies
        else:
            if spec.family == "bd":
                i, e = el
                base = Fraction(1, 4) if e else Fraction(i, 2 * spec.m)
            else:
                base = _quaternion_rotation(el, d)
            pair = [_unit_angle(base), _unit_angle(-base)]
            angles = pair * spec.copies
        out.append(EigenData(tuple(sorted(angles)), d))
    return tuple(out)


def element_eigen(spec: ActionSpec, g: int) -> EigenData:
    return _eigen_table(spec)[g]


def _raw_age(eig: EigenData) -> Fraction:
    return sum((a for a in eig.angles if a != 1), Fraction(0))


def element_age(spec: ActionSpec, g: int) -> Fraction:
    grp = group_of(spec)
    eig = element_eigen(spec, g)
    if g != grp.identity and eig.has_eigenvalue_one():
        raise NotIsolatedError(f"element {g} of {spec} has eigenvalue 1")
    return _raw_age(eig)


# ---------------------------------------------------------------------------
# Conjugacy classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjClass:
    index: int
    representative: int
    members: Tuple[int, ...]
    size: int
    centralizer_order: int
    eigen: EigenData
    inverse_class: int
    is_identity: bool

    @property
    def raw_age(self) -> Fraction:
        """Sum of angles below 1; equals the age whenever the class is admissible."""
        return _raw_age(self.eigen)


@lru_cache(maxsize=None)
def _classes(spec: ActionSpec) -> Tuple[ConjClass, ...]:
    grp = group_of(spec)
    out = []
    for ci, members in enumerate(grp.classes):
        rep = members[0]
        out.append(
            ConjClass(
                index=ci,
                representative=rep,
                members=members,
                size=len(members),
                centralizer_order=len(grp.centralizers[rep]),
                eigen=element_eigen(spec, rep),
                inverse_class=grp.class_of[grp.inverse[rep]],
                is_identity=rep == grp.identity,
            )
        )
    return tuple(out)


def conj_classes(spec: ActionSpec) -> List[ConjClass]:
    """Conjugacy classes; the identity class comes first."""
    return list(_classes(spec))


def age(cls: ConjClass) -> Fraction:
    if cls.is_identity:
        return Fraction(0)
    if cls.eigen.has_eigenvalue_one():
        raise NotIsolatedError("nontrivial class with eigenvalue 1")
    return cls.raw_age


def is_isolated(spec: ActionSpec) -> bool:
    return all(c.is_identity or not c.eigen.has_eigenvalue_one() for c in _classes(spec))


def _require_isolated(spec: ActionSpec) -> None:
    if not is_isolated(spec):
        raise NotIsolatedError(f"{spec} does not have an isolated singularity")


def minimal_discrepancy(spec: ActionSpec) -> Fraction:
    """min age over nontrivial classes minus 1; n - 1 for the trivial group."""
    _require_isolated(spec)
    ages = [age(c) for c in _classes(spec) if not c.is_identity]
    if not ages:
        return Fraction(spec.complex_dim - 1)
    return min(ages) - 1


def is_terminal(spec: ActionSpec) -> bool:
    return minimal_discrepancy(spec) > 0


def is_canonical(spec: ActionSpec) -> bool:
    return minimal_discrepancy(spec) >= 0


def hmi(spec: ActionSpec) -> Fraction:
    """min over all classes (identity included) of 2n - 2 age - 2."""
    _require_isolated(spec)
    n = spec.complex_dim
    return min(2 * n - 2 * age(c) - 2 for c in _classes(spec))


# ---------------------------------------------------------------------------
# Reeb orbit families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReebFamily:
    """Morse-Bott family of Reeb orbits of the class at period ``2 pi * period``."""

    class_index: int
    period: Fraction
    dimV: int
    mu_cz: Fraction
    lsft: Fraction
    min_generator_cz: Fraction
    boundary_degree: Fraction


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def reeb_families(spec: ActionSpec, period_cutoff: Fraction) -> List[ReebFamily]:
    """All families with period at most ``2 pi * period_cutoff``."""
    cutoff = Fraction(period_cutoff)
    if cutoff <= 0:
        raise DomainError("period cutoff must be positive")
    _require_isolated(spec)
    n = spec.complex_dim
    out: List[ReebFamily] = []
    for c in _classes(spec):
        a = age(c)
        angles = c.eigen.angles
        periods = sorted(
            {t + j for t in set(angles) for j in range(0, _ceil(cutoff) + 1) if t + j <= cutoff}
        )
        for t in periods:
            dim = sum(1 for th in angles if (t - th).denominator == 1)
            below = sum(max(0, _ceil(t - th)) for th in angles)
            mu = n - 2 * a + 2 * below + dim
            lsft = mu + (n - 3) - (dim - 1)
            gen = n - 2 * a + 2 * below + 1
            out.append(ReebFamily(c.index, t, dim, Fraction(mu), Fraction(lsft), Fraction(gen), n - Fraction(gen)))
    return out


def minimal_period(spec: ActionSpec, cls: ConjClass) -> Fraction:
    return min(cls.eigen.angles)


def normalized_cyclic_weights(spec: ActionSpec) -> Optional[Tuple[int, ...]]:
    """Weights sorted ascending (the action only depends on the multiset)."""
    if spec.family != "cyclic":
        return None
    return tuple(sorted(spec.weights))
