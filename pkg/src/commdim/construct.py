"""Constructors for the extremal algebras and their companions.

The central objects are the two-step nilpotent algebras attached to a form
tuple on V = GF(p)^n with values in U = GF(p)^t: basis e_1..e_n spans V,
f_1..f_t spans U, the product of V-vectors is the form-weighted combination
of the f's, and everything touching U multiplies to zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import StructureConstantAlgebra, is_abelian_subspace
from .forms import FormTuple
from .gf import MatrixGF, PrimeField, Subspace

MATRIX_ALGEBRA_CAP = 12


@dataclass(frozen=True)
class ExtremalParams:
    """Parameters (n, t, k) realizing abelian-dimension target s."""

    s: int
    n: int
    t: int
    k: int

    def to_json(self) -> dict:
        return {"s": self.s, "n": self.n, "t": self.t, "k": self.k}

    @classmethod
    def from_json(cls, obj: dict) -> "ExtremalParams":
        return cls(int(obj["s"]), int(obj["n"]), int(obj["t"]), int(obj["k"]))


def extremal_params(s: int) -> ExtremalParams:
    """Pick (n, t, k) for a target maximal abelian dimension s >= 2.

    Even s: t = s/2 + 1, k = s/2, n = floor((s^2 - 5) / 8); odd s:
    t = k = (s+1)/2, n = floor((s^2 - 2) / 8).  n is clamped at 0 (the
    floor goes negative only for s = 2, where V is just empty).
    """
    if s < 2:
        raise ValueError(f"target dimension must be at least 2, got {s}")
    if s % 2 == 0:
        t = s // 2 + 1
        k = s // 2
        n = max(0, (s * s - 5) // 8)
    else:
        t = k = (s + 1) // 2
        n = max(0, (s * s - 2) // 8)
    return ExtremalParams(s, n, t, k)


def build_lie_from_forms(forms: FormTuple) -> StructureConstantAlgebra:
    """The class-2 nilpotent Lie algebra of an alternating tuple, dim n + t."""
    if forms.kind != "alternating":
        raise ValueError(f"Lie construction needs alternating forms, got {forms.kind!r}")
    n, t, p = forms.n, forms.t, forms.p
    d = n + t
    mats = forms.stack()
    sc = {}
    for i in range(n):
        for j in range(i + 1, n):
            coeffs = mats[:, i, j]
            if coeffs.any():
                v = np.zeros(d, dtype=np.int64)
                v[n:] = coeffs
                sc[(i, j)] = v
    labels = [f"e{i + 1}" for i in range(n)] + [f"f{m + 1}" for m in range(t)]
    return StructureConstantAlgebra("lie", forms.field, d, sc, labels=labels)


def build_assoc_from_forms(forms: FormTuple) -> StructureConstantAlgebra:
    """The class-2 nilpotent associative algebra of an arbitrary tuple."""
    n, t, p = forms.n, forms.t, forms.p
    d = n + t
    mats = forms.stack()
    sc = {}
    for i in range(n):
        for j in range(n):
            coeffs = mats[:, i, j]
            if coeffs.any():
                v = np.zeros(d, dtype=np.int64)
                v[n:] = coeffs
                sc[(i, j)] = v
    labels = [f"e{i + 1}" for i in range(n)] + [f"f{m + 1}" for m in range(t)]
    return StructureConstantAlgebra("assoc", forms.field, d, sc, labels=labels)


def unitalize(a: StructureConstantAlgebra) -> StructureConstantAlgebra:
    """Adjoin a two-sided identity as the last basis vector."""
    if a.kind != "assoc":
        raise ValueError("unitalization applies to associative algebras only")
    d = a.dim
    nd = d + 1
    sc = {}
    for (i, j), v in a.sc.items():
        w = np.zeros(nd, dtype=np.int64)
        w[:d] = v
        sc[(i, j)] = w
    for i in range(nd):
        unit = np.zeros(nd, dtype=np.int64)
        unit[i] = 1
        sc[(i, d)] = unit
        sc[(d, i)] = unit
    labels = None
    if a.labels is not None:
        labels = list(a.labels) + ["1"]
    return StructureConstantAlgebra("assoc", a.field, nd, sc, labels=labels)


def matrix_algebra(r: int, field: PrimeField) -> StructureConstantAlgebra:
    """The full matrix algebra M_r(GF(p)) on the basis of matrix units."""
    if r < 1:
        raise ValueError("matrix size must be at least 1")
    if r > MATRIX_ALGEBRA_CAP:
        raise ValueError(f"matrix size capped at {MATRIX_ALGEBRA_CAP}, got {r}")
    d = r * r
    sc = {}
    for a_ in range(r):
        for b in range(r):
            for c in range(r):
                # E_ab E_bc = E_ac
                v = np.zeros(d, dtype=np.int64)
                v[a_ * r + c] = 1
                sc[(a_ * r + b, b * r + c)] = v
    labels = [f"E{a_ + 1}_{b + 1}" for a_ in range(r) for b in range(r)]
    return StructureConstantAlgebra("assoc", field, d, sc, labels=labels)


def matrix_commutative_subalgebra(
    r: int, field: PrimeField, construction: str
) -> tuple[StructureConstantAlgebra, Subspace]:
    """M_r(GF(p)) together with a commutative subalgebra of it.

    "diagonal" gives the diagonal matrices (dim r).  "corner" gives the
    upper-right block of size k x k for r = 2k, or k x (k+1) for r = 2k+1,
    whose pairwise products all vanish; for r = 1 it is the whole algebra.
    """
    if construction not in ("diagonal", "corner"):
        raise ValueError(f"unknown construction {construction!r}")
    ambient = matrix_algebra(r, field)
    d = r * r
    p = field.p
    if construction == "diagonal":
        positions = [a_ * r + a_ for a_ in range(r)]
    elif r == 1:
        positions = [0]
    else:
        k = r // 2
        width = r - k
        positions = [a_ * r + b for a_ in range(k) for b in range(k, r)]
        assert len(positions) == k * width
    basis = np.zeros((len(positions), d), dtype=np.int64)
    basis[np.arange(len(positions)), positions] = 1
    sub = Subspace(d, MatrixGF(p, basis), _canonical=True)
    if not is_abelian_subspace(ambient, sub):
        raise RuntimeError("constructed subalgebra failed its commutativity check")
    return ambient, sub
