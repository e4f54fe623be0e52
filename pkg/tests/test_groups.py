from __future__ import annotations

import cmath
import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fillcheck.errors import DomainError, NotIsolatedError, SpecParseError
from fillcheck.groups import (
    ActionSpec,
    age,
    conj_classes,
    element_age,
    element_eigen,
    enumerate_elements,
    format_spec,
    group_of,
    hmi,
    is_isolated,
    is_terminal,
    minimal_discrepancy,
    parse_spec,
    reeb_families,
)

F = Fraction

QUATERNIONIC = [
    *(ActionSpec("bd", m, (), c) for m in range(2, 7) for c in (1, 2)),
    *(ActionSpec(k, 1, (), c) for k in ("2t", "2o", "2i") for c in (1, 2)),
]
CYCLIC = [
    parse_spec(s)
    for s in (
        "cyclic:m=2;w=1,1,1",
        "cyclic:m=3;w=1,1,2",
        "cyclic:m=3;w=1,1,1,1,2,2,2,2",
        "cyclic:m=4;w=1,1,1,3",
        "cyclic:m=5;w=1,4,2",
        "cyclic:m=6;w=1,5,1,5",
        "cyclic:m=7;w=1,2,4",
        "cyclic:m=12;w=1,5,7,11",
    )
]
BUILTINS = CYCLIC + QUATERNIONIC


def ids(specs):
    return [format_spec(s) for s in specs]


# --- independent numeric model ------------------------------------------------


def quat_matrix(a, b, c, d):
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


def numeric_generators(spec):
    if spec.family == "bd":
        t = math.pi / spec.m
        return [quat_matrix(math.cos(t), math.sin(t), 0, 0), quat_matrix(0, 0, 1, 0)]
    s = quat_matrix(0.5, 0.5, 0.5, 0.5)
    if spec.family == "2t":
        return [s, quat_matrix(0, 1, 0, 0)]
    if spec.family == "2o":
        r = 1 / math.sqrt(2)
        return [s, quat_matrix(r, r, 0, 0)]
    phi = (1 + math.sqrt(5)) / 2
    return [s, quat_matrix(phi / 2, 1 / (2 * phi), 0.5, 0)]


def mkey(x):
    return tuple(np.round(x.flatten(), 8).tolist())


def numeric_group(spec):
    gens = numeric_generators(spec)
    elems = {mkey(np.eye(2)): np.eye(2, dtype=complex)}
    frontier = list(elems.values())
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                k = mkey(y)
                if k not in elems:
                    elems[k] = y
                    nxt.append(y)
        frontier = nxt
    return list(elems.values())


def numeric_angle(z: complex) -> Fraction:
    t = F(cmath.phase(z) / (2 * math.pi)).limit_denominator(240)
    t -= math.floor(t)
    return t if t else F(1)


def numeric_class_profile(spec):
    mats = numeric_group(spec)
    seen, profile = set(), Counter()
    for g in mats:
        if mkey(g) in seen:
            continue
        cls = {mkey(h @ g @ h.conj().T) for h in mats}
        seen |= cls
        angles = tuple(sorted(numeric_angle(z) for z in np.linalg.eigvals(g)) * spec.copies)
        profile[(len(cls), tuple(sorted(angles)))] += 1
    return len(mats), profile


def exact_class_profile(spec):
    return Counter((c.size, c.eigen.angles) for c in conj_classes(spec))


# --- enumeration and classes ---------------------------------------------------


@pytest.mark.parametrize("spec, order", [("cyclic:m=7;w=1,2,3", 7), ("bd:m=3;copies=1", 12), ("2i:copies=1", 120)])
def test_group_orders(spec, order):
    assert len(enumerate_elements(parse_spec(spec))) == order


@pytest.mark.parametrize(
    "spec, count",
    [("2t:copies=1", 7), ("2o:copies=1", 8), ("2i:copies=1", 9)]
    + [(f"bd:m={m};copies=1", m + 3) for m in range(2, 7)],
)
def test_class_counts(spec, count):
    assert len(conj_classes(parse_spec(spec))) == count


@pytest.mark.parametrize("spec", [s for s in QUATERNIONIC if s.copies == 1], ids=ids([s for s in QUATERNIONIC if s.copies == 1]))
def test_classes_match_numeric_model(spec):
    order, profile = numeric_class_profile(spec)
    assert order == group_of(spec).order
    assert profile == exact_class_profile(spec)


@pytest.mark.parametrize("spec", BUILTINS, ids=ids(BUILTINS))
def test_class_sizes_and_centralizers(spec):
    classes = conj_classes(spec)
    n = group_of(spec).order
    assert sum(c.size for c in classes) == n
    assert all(c.size * c.centralizer_order == n for c in classes)
    assert classes[0].is_identity


def test_cyclic_classes_are_singletons():
    spec = parse_spec("cyclic:m=9;w=1,2")
    assert [c.size for c in conj_classes(spec)] == [1] * 9


@pytest.mark.parametrize("spec", BUILTINS, ids=ids(BUILTINS))
def test_age_of_inverse(spec):
    grp = group_of(spec)
    for g in range(grp.order):
        if g != grp.identity:
            assert element_age(spec, g) + element_age(spec, grp.inverse[g]) == spec.complex_dim


@pytest.mark.parametrize("spec", CYCLIC, ids=ids(CYCLIC))
def test_cyclic_age_formula(spec):
    for g in range(1, spec.m):
        expect = sum(F((g * a) % spec.m, spec.m) for a in spec.weights)
        assert element_age(spec, g) == expect


@pytest.mark.parametrize("spec", QUATERNIONIC, ids=ids(QUATERNIONIC))
def test_quaternionic_age_is_copies(spec):
    assert all(age(c) == spec.copies for c in conj_classes(spec) if not c.is_identity)
    assert minimal_discrepancy(spec) == spec.copies - 1
    assert is_terminal(spec) == (spec.copies >= 2)


@pytest.mark.parametrize("kind", ["2t", "2o", "2i"])
def test_cosine_round_trip(kind):
    spec = ActionSpec(kind, 1, (), 1)
    grp = group_of(spec)
    for g, q in enumerate(grp.elements):
        theta = min(element_eigen(spec, g).angles)
        assert math.isclose(2 * math.cos(2 * math.pi * theta), float(q.w + q.w), abs_tol=1e-12)
        # angle recovered independently from the real part
        back = F(math.acos(max(-1.0, min(1.0, float(q.w)))) / (2 * math.pi)).limit_denominator(120)
        assert back in (theta, 1 - theta)


# --- isolatedness, discrepancy, indices ---------------------------------------


def test_minus_identity_age():
    spec = parse_spec("cyclic:m=2;w=1,1,1,1,1")
    assert age(conj_classes(spec)[1]) == F(5, 2)


def test_cyclic_three_age():
    spec = parse_spec("cyclic:m=3;w=1,1,2")
    assert age(conj_classes(spec)[1]) == F(4, 3)


def test_not_isolated():
    spec = parse_spec("cyclic:m=4;w=1,2")
    assert not is_isolated(spec)
    with pytest.raises(NotIsolatedError):
        minimal_discrepancy(spec)


@pytest.mark.parametrize("n", range(1, 7))
def test_z2_terminal_threshold(n):
    spec = ActionSpec("cyclic", 2, (1,) * n)
    assert is_terminal(spec) == (n >= 3)


@pytest.mark.parametrize("m, a", [(5, 2), (7, 3), (9, 4), (11, 5)])
def test_three_dim_terminal_family(m, a):
    assert is_terminal(ActionSpec("cyclic", m, (1, m - 1, a)))


def test_trivial_group():
    spec = parse_spec("trivial:dim=4")
    assert minimal_discrepancy(spec) == 3
    assert hmi(spec) == 6


def test_hmi_examples():
    assert hmi(parse_spec("cyclic:m=2;w=1,1,1,1")) == 2
    assert hmi(parse_spec("2o:copies=3")) == 4


@pytest.mark.parametrize("spec", BUILTINS + [parse_spec("cyclic:m=2;w=1,1")], ids=ids(BUILTINS) + ["z2-dim2"])
def test_hmi_against_discrepancy(spec):
    md = minimal_discrepancy(spec)
    if md >= 0:
        assert hmi(spec) == 2 * md
    assert is_terminal(spec) == (hmi(spec) > 0)


@pytest.mark.parametrize("spec", BUILTINS + [parse_spec("trivial:dim=3")], ids=ids(BUILTINS) + ["trivial"])
def test_reeb_minimum_is_hmi(spec):
    fams = reeb_families(spec, F(2))
    assert min(f.lsft for f in fams) == hmi(spec)
    for f in fams:
        cls = conj_classes(spec)[f.class_index]
        assert f.lsft >= 2 * spec.complex_dim - 2 * age(cls) - 2


@pytest.mark.parametrize("spec", BUILTINS, ids=ids(BUILTINS))
def test_reeb_periodicity(spec):
    n = spec.complex_dim
    fams = {(f.class_index, f.period): f for f in reeb_families(spec, F(3))}
    for (ci, t), f in fams.items():
        if (ci, t + 1) in fams:
            assert fams[(ci, t + 1)].mu_cz - f.mu_cz == 2 * n
            assert fams[(ci, t + 1)].dimV == f.dimV


def test_reeb_trivial_group():
    spec = parse_spec("trivial:dim=5")
    (fam,) = reeb_families(spec, F(1))
    assert (fam.period, fam.dimV, fam.mu_cz, fam.min_generator_cz) == (1, 5, 10, 6)


def test_reeb_minus_identity():
    n = 4
    spec = ActionSpec("cyclic", 2, (1,) * n)
    fam = next(f for f in reeb_families(spec, F(1, 2)) if f.class_index == 1)
    assert fam.period == F(1, 2)
    assert fam.mu_cz == n and fam.min_generator_cz == 1
    assert fam.boundary_degree == n - 1 == 2 * age(conj_classes(spec)[1]) - 1


def test_reeb_cutoff_positive():
    with pytest.raises(DomainError):
        reeb_families(parse_spec("cyclic:m=2;w=1,1,1"), F(0))


# --- spec grammar --------------------------------------------------------------


@pytest.mark.parametrize(
    "text",
    ["cyclic:m=5;w=1,4,2", "bd:m=3;copies=2", "2t:copies=1", "2o:copies=3", "2i:copies=2", "trivial:dim=4"],
)
def test_spec_round_trip(text):
    assert format_spec(parse_spec(text)) == text


@pytest.mark.parametrize(
    "text",
    ["cyclic:m=5;w=", "cyclic:m=5;w=0,1", "cyclic:m=5;w=6", "bd:m=1;copies=1", "2x:copies=1", "2t:copies=0", "cyclic:m=05;w=1"],
)
def test_spec_rejected(text):
    with pytest.raises(SpecParseError):
        parse_spec(text)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 30), st.data())
def test_cyclic_isolated_iff_coprime(m, data):
    w = data.draw(st.lists(st.integers(1, m - 1), min_size=1, max_size=5))
    spec = ActionSpec("cyclic", m, tuple(w))
    assert is_isolated(spec) == all(math.gcd(a, m) == 1 for a in w)
