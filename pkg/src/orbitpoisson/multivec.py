"""Sparse exterior algebra over a Chevalley basis, with the Schouten bracket.

A multivector of degree k is stored as a map from strictly increasing tuples
of basis indices to nonzero Gaussian-rational coefficients.  The Schouten
bracket follows the classical convention

    [[X_1^...^X_k, Y_1^...^Y_l]] =
        sum_{i,j} (-1)^{i+j} [X_i, Y_j] ^ X_(i-hat) ^ Y_(j-hat),

which restricts to the Lie bracket in degree one and is symmetric on a pair
of bivectors.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable

from .chevalley import ChevalleyBasis, Element
from .levi import LeviDatum
from .roots import negate
from .scalars import GaussianRational, as_scalar

Key = tuple[int, ...]


class Multivector:
    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict[Key, GaussianRational] | None = None):
        self.degree = degree
        self.terms: dict[Key, GaussianRational] = {}
        if terms:
            for key, coeff in terms.items():
                if len(key) != degree:
                    raise ValueError(f"term {key} has wrong degree (expected {degree})")
                if list(key) != sorted(set(key)):
                    raise ValueError(f"term {key} is not strictly increasing")
                c = as_scalar(coeff)
                if c:
                    self.terms[key] = c

    @staticmethod
    def zero(degree: int) -> "Multivector":
        return Multivector(degree)

    @staticmethod
    def basis_element(indices: Iterable[int], coeff=1) -> "Multivector":
        idx = tuple(indices)
        return Multivector(len(idx), {idx: as_scalar(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def _accumulate(self, key: Key, coeff: GaussianRational) -> None:
        cur = self.terms.get(key)
        cur = coeff if cur is None else cur + coeff
        if cur:
            self.terms[key] = cur
        else:
            self.terms.pop(key, None)

    def __add__(self, other: "Multivector") -> "Multivector":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in addition")
        out = Multivector(self.degree, dict(self.terms))
        for key, coeff in other.terms.items():
            out._accumulate(key, coeff)
        return out

    def __sub__(self, other: "Multivector") -> "Multivector":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in subtraction")
        out = Multivector(self.degree, dict(self.terms))
        for key, coeff in other.terms.items():
            out._accumulate(key, -coeff)
        return out

    def __neg__(self) -> "Multivector":
        return self.scale(-1)

    def scale(self, factor) -> "Multivector":
        f = as_scalar(factor)
        out = Multivector.zero(self.degree)
        if f:
            out.terms = {key: coeff * f for key, coeff in self.terms.items()}
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def coefficient(self, key: Key) -> GaussianRational:
        return self.terms.get(tuple(key), as_scalar(0))

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self):
        return f"Multivector(deg={self.degree}, {len(self.terms)} terms)"

    def pretty(self, basis: ChevalleyBasis) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            names = "^".join(basis.basis_name(i) for i in key)
            parts.append(f"({self.terms[key]})*{names}")
        return " + ".join(parts)


def _merge_sorted(a: Key, b: Key) -> tuple[int, Key] | None:
    """Merge two strictly increasing tuples, returning (sign, merged)."""
    i = j = 0
    inversions = 0
    out = []
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            inversions += len(a) - i
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return (-1 if inversions & 1 else 1, tuple(out))


def _insert_front(z: int, rest: Key) -> tuple[int, Key] | None:
    """Normalize z ^ rest, returning (sign, sorted tuple)."""
    pos = bisect_left(rest, z)
    if pos < len(rest) and rest[pos] == z:
        return None
    sign = -1 if pos & 1 else 1
    return sign, rest[:pos] + (z,) + rest[pos:]


def wedge(u: Multivector, v: Multivector) -> Multivector:
    out = Multivector.zero(u.degree + v.degree)
    for ka, ca in u.terms.items():
        for kb, cb in v.terms.items():
            merged = _merge_sorted(ka, kb)
            if merged is None:
                continue
            sign, key = merged
            out._accumulate(key, ca * cb * sign)
    return out


def schouten(basis: ChevalleyBasis, u: Multivector, v: Multivector) -> Multivector:
    """Schouten bracket of homogeneous multivectors; degree adds minus one."""
    if u.degree == 0 or v.degree == 0:
        return Multivector.zero(max(u.degree + v.degree - 1, 0))
    out = Multivector.zero(u.degree + v.degree - 1)
    for ka, ca in u.terms.items():
        for kb, cb in v.terms.items():
            cab = ca * cb
            for i, xi in enumerate(ka):
                rest_a = ka[:i] + ka[i + 1 :]
                for j, yj in enumerate(kb):
                    br = basis.bracket_index(xi, yj)
                    if not br:
                        continue
                    rest_b = kb[:j] + kb[j + 1 :]
                    merged = _merge_sorted(rest_a, rest_b)
                    if merged is None:
                        continue
                    msign, rest = merged
                    base = cab * (msign if (i + j) % 2 == 0 else -msign)
                    for z, f in br:
                        ins = _insert_front(z, rest)
                        if ins is None:
                            continue
                        isign, key = ins
                        out._accumulate(key, base * (f * isign))
    return out


def ad_action(basis: ChevalleyBasis, x: Element, u: Multivector) -> Multivector:
    """Extension of ad(x) to the exterior algebra as a derivation."""
    out = Multivector.zero(u.degree)
    for key, cu in u.terms.items():
        for p, idx in enumerate(key):
            rest = key[:p] + key[p + 1 :]
            psign = -1 if p & 1 else 1
            for a, ca in x.items():
                for z, f in basis.bracket_index(a, idx):
                    ins = _insert_front(z, rest)
                    if ins is None:
                        continue
                    isign, new_key = ins
                    out._accumulate(new_key, cu * ca * (f * (psign * isign)))
    return out


def gamma_indices(basis: ChevalleyBasis, levi: LeviDatum) -> frozenset[int]:
    """Basis indices spanning the stabilizer subalgebra: the whole Cartan
    subalgebra plus the root vectors of roots inside the Levi subset."""
    banned = set(range(basis.rank))
    for mu in levi.omega_gamma:
        banned.add(basis.index_of_root[mu])
    return frozenset(banned)


def project_to_m(
    u: Multivector, basis: ChevalleyBasis, levi: LeviDatum
) -> Multivector:
    """Drop every term containing a stabilizer-subalgebra factor."""
    banned = gamma_indices(basis, levi)
    out = Multivector.zero(u.degree)
    for key, coeff in u.terms.items():
        if banned.isdisjoint(key):
            out.terms[key] = coeff
    return out


def r_matrix(basis: ChevalleyBasis, levi: LeviDatum | None = None) -> Multivector:
    """Sum of E_alpha ^ E_{-alpha} over positive roots; with a Levi datum the
    sum is truncated to positive roots outside the Levi subset."""
    out = Multivector.zero(2)
    for alpha in basis.rs.positive_roots:
        if levi is not None and alpha in levi.omega_gamma:
            continue
        i = basis.index_of_root[alpha]
        j = basis.index_of_root[negate(alpha)]
        # j < i in the global order, so E_alpha ^ E_{-alpha} = -(e_j ^ e_i)
        out._accumulate((j, i), as_scalar(-1))
    return out


def phi(basis: ChevalleyBasis) -> Multivector:
    """The invariant trivector: the r-matrix bracketed with itself."""
    if basis._phi_cache is None:
        r = r_matrix(basis)
        basis._phi_cache = schouten(basis, r, r)
    return basis._phi_cache
