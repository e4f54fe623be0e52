"""Chen-Ruan cohomology of C^n/G for isolated actions.

There is one generator per conjugacy class, placed in degree 2 * age. Classes
are referred to by their index in :func:`fillcheck.groups.conj_classes`, so a
:data:`CRClass` is a sparse map ``class index -> rational coefficient``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Dict, List, Tuple

from .groups import (
    ActionSpec,
    age,
    conj_classes,
    element_age,
    group_of,
    is_isolated,
    is_terminal,
    minimal_discrepancy,
)
from .errors import DomainError, NotIsolatedError

__all__ = [
    "CRClass",
    "cr_degrees",
    "basis",
    "cr_product",
    "cr_coproduct",
    "basis_product",
    "basis_coproduct",
    "pairing_nondegenerate",
    "cup_length_bound",
    "FillingPrediction",
    "predicted_filling_cohomology",
]

CRClass = Dict[int, Fraction]
CRTensor = Dict[Tuple[int, int], Fraction]


def _require_isolated(spec: ActionSpec) -> None:
    if not is_isolated(spec):
        raise NotIsolatedError(f"{spec} does not have an isolated singularity")


def cr_degrees(spec: ActionSpec) -> List[Fraction]:
    """2 * age for every conjugacy class, in class order."""
    _require_isolated(spec)
    return [2 * age(c) for c in conj_classes(spec)]


def basis(spec: ActionSpec, class_index: int) -> CRClass:
    return {class_index: Fraction(1)}


def _orbits(grp, acting: frozenset, points) -> List[int]:
    """Representatives of the conjugation orbits of ``acting`` on ``points``."""
    seen = set()
    reps = []
    for x in points:
        if x in seen:
            continue
        reps.append(x)
        for c in acting:
            seen.add(grp.conj(x, c))
    return reps


@lru_cache(maxsize=None)
def _product_table(spec: ActionSpec) -> Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]]:
    _require_isolated(spec)
    grp = group_of(spec)
    classes = conj_classes(spec)
    ages = [element_age(spec, g) for g in range(grp.order)]
    table = {}
    for c1 in classes:
        for c2 in classes:
            if c1.is_identity or c2.is_identity:
                other = c2 if c1.is_identity else c1
                table[(c1.index, c2.index)] = ((other.index, Fraction(1)),)
                continue
            g1 = c1.representative
            cent1 = grp.centralizers[g1]
            out: Dict[int, Fraction] = {}
            for h2 in _orbits(grp, cent1, c2.members):
                h = grp.mul(g1, h2)
                if ages[g1] + ages[h2] != ages[h]:
                    continue
                stab = len(cent1 & grp.centralizers[h2])
                k = grp.class_of[h]
                out[k] = out.get(k, Fraction(0)) + Fraction(len(grp.centralizers[h]), stab)
            table[(c1.index, c2.index)] = tuple(sorted(out.items()))
    return table


def basis_product(spec: ActionSpec, i: int, j: int) -> CRClass:
    return dict(_product_table(spec)[(i, j)])


def cr_product(spec: ActionSpec, x: CRClass, y: CRClass) -> CRClass:
    table = _product_table(spec)
    out: CRClass = {}
    for i, a in x.items():
        for j, b in y.items():
            for k, c in table[(i, j)]:
                out[k] = out.get(k, Fraction(0)) + a * b * c
    return {k: v for k, v in out.items() if v != 0}


@lru_cache(maxsize=None)
def _coproduct_table(spec: ActionSpec) -> Dict[int, Tuple[Tuple[Tuple[int, int], Fraction], ...]]:
    _require_isolated(spec)
    grp = group_of(spec)
    n = spec.complex_dim
    ages = [element_age(spec, g) for g in range(grp.order)]
    table = {}
    for c in conj_classes(spec):
        g = c.representative
        cent = grp.centralizers[g]
        out: Dict[Tuple[int, int], Fraction] = {}
        for h1 in _orbits(grp, cent, range(grp.order)):
            h2 = grp.mul(grp.inverse[h1], g)
            if ages[h1] + ages[h2] != ages[g] + n:
                continue
            c1, c2 = grp.centralizers[h1], grp.centralizers[h2]
            key = (grp.class_of[h1], grp.class_of[h2])
            out[key] = out.get(key, Fraction(0)) + Fraction(len(c1) * len(c2), len(c1 & c2))
        table[c.index] = tuple(sorted(out.items()))
    return table


def basis_coproduct(spec: ActionSpec, i: int) -> CRTensor:
    return dict(_coproduct_table(spec)[i])


def cr_coproduct(spec: ActionSpec, x: CRClass) -> CRTensor:
    table = _coproduct_table(spec)
    out: CRTensor = {}
    for i, a in x.items():
        for key, c in table[i]:
            out[key] = out.get(key, Fraction(0)) + a * c
    return {k: v for k, v in out.items() if v != 0}


def pairing_nondegenerate(spec: ActionSpec) -> bool:
    """The pairing read off from the coproduct of the unit is a weighted permutation."""
    classes = conj_classes(spec)
    delta = basis_coproduct(spec, 0)
    for c in classes:
        if c.is_identity:
            continue
        row = {j: v for (i, j), v in delta.items() if i == c.index}
        if set(row) != {c.inverse_class} or row[c.inverse_class] <= 0:
            return False
    return all(i != 0 and j != 0 for (i, j) in delta)


def cup_length_bound(spec: ActionSpec) -> int:
    """floor((n - 1 - md) / (1 + md)) for terminal actions."""
    md = minimal_discrepancy(spec)
    if md <= 0:
        raise DomainError("cup-length bound needs a terminal singularity")
    return floor((spec.complex_dim - 1 - md) / (1 + md))


@dataclass(frozen=True)
class FillingPrediction:
    """What any exact filling would have to look like, if one existed."""

    applicable: bool
    rank: int = 0
    degree_labels: Tuple[Fraction, ...] = ()
    odd_rank: int = 0
    cup_length_bound: int = 0
    notes: Tuple[str, ...] = field(default_factory=tuple)


def predicted_filling_cohomology(spec: ActionSpec) -> FillingPrediction:
    if not is_isolated(spec) or not is_terminal(spec):
        return FillingPrediction(False, notes=("requires an isolated terminal singularity",))
    labels = tuple(sorted(cr_degrees(spec)))
    return FillingPrediction(
        True,
        rank=len(labels),
        degree_labels=labels,
        odd_rank=0,
        cup_length_bound=cup_length_bound(spec),
    )
