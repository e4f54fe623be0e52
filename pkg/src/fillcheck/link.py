"""Chern classes of the contact link S^(2n-1)/G and the cohomology of BG."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, NotIsolatedError, ParameterError
from .exactnum import TruncPoly
from .groups import ActionSpec, group_of, is_isolated
from .numtheory import is_prime

__all__ = [
    "LinkChernClass",
    "total_chern",
    "chern_coefficient",
    "chern_nonzero_mod_p",
    "bg_cohomology_order",
    "UNKNOWN",
]

UNKNOWN = "unknown"


@dataclass(frozen=True)
class LinkChernClass:
    """Total Chern class in the generator u (degree 2) or v (degree 4)."""

    poly: TruncPoly

    @property
    def generator_degree(self) -> int:
        return self.poly.gen_degree

    @property
    def modulus(self) -> int:
        return self.poly.modulus  # type: ignore[return-value]

    def __str__(self) -> str:
        return str(self.poly)


def total_chern(spec: ActionSpec) -> LinkChernClass:
    """prod (1 + a_i u) mod (m, u^n) for cyclic actions, (1 - v)^n mod (|G|, v^n) otherwise."""
    if not is_isolated(spec):
        raise NotIsolatedError(f"{spec} does not have an isolated singularity")
    if spec.family == "trivial":
        # smooth point: the link is a sphere with trivial total Chern class
        return LinkChernClass(TruncPoly.from_coeffs([1], spec.complex_dim, None, 2))
    if spec.family == "cyclic":
        n, m = spec.complex_dim, spec.m
        out = TruncPoly.one(n, m, 2)
        for a in spec.weights:
            out = out * TruncPoly.from_coeffs([1, a], n, m, 2)
        return LinkChernClass(out)
    n = spec.copies
    order = group_of(spec).order
    base = TruncPoly.from_coeffs([1, -1], n, order, 4)
    return LinkChernClass(base**n)


def chern_coefficient(spec: ActionSpec, k: int) -> Optional[int]:
    """Residue of c_k in its cyclic cohomology group, or None when not determined."""
    total = total_chern(spec)
    if total.generator_degree == 4:
        if k % 2:
            return None
        idx = k // 2
    else:
        idx = k
    if not 0 <= idx < total.poly.trunc_order:
        raise DomainError(f"c_{k} lies outside the computed range")
    return int(total.poly[idx])


def chern_nonzero_mod_p(spec: ActionSpec, k: int, p: int) -> Optional[bool]:
    """Whether c_k is nonzero mod p; None (unknown) for odd k on quaternionic actions."""
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    order = group_of(spec).order
    if order % p:
        raise ParameterError(f"{p} does not divide |G| = {order}")
    c = chern_coefficient(spec, k)
    if c is None:
        return None
    return c % p != 0


def bg_cohomology_order(spec: ActionSpec, d: int) -> str:
    """Descriptor of H^d(BG; Z): 'Z', 'Z/k', '0' or 'unknown'."""
    if d < 0:
        raise DomainError("degree must be nonnegative")
    if d == 0:
        return "Z"
    order = group_of(spec).order
    if order == 1:
        return "0"
    if spec.family == "cyclic":
        return f"Z/{order}" if d % 2 == 0 else "0"
    if d % 4 == 0:
        return f"Z/{order}"
    return UNKNOWN
