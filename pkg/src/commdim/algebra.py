"""Structure-constant algebras (Lie or associative) over GF(p).

An algebra of dimension d on basis e_0..e_{d-1} is given by the sparse map
(i, j) -> coordinate vector of e_i e_j.  Pairs that are absent multiply to
zero, except that for the Lie kind a missing (j, i) is derived from a stored
(i, j) by negation, so well-formed Lie algebras only store keys with i < j.
Explicitly stored keys always win, which is what lets the axiom checker
represent and detect broken input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotASubalgebra
from .gf import (
    MatrixGF,
    PrimeField,
    Subspace,
    as_gf_array,
    nullspace_array,
    reduce_against_rref,
    rref_array,
)

KIND_LIE = "lie"
KIND_ASSOC = "assoc"
_KIND_ALIASES = {"lie": KIND_LIE, "assoc": KIND_ASSOC, "associative": KIND_ASSOC}


def _mulmod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact matrix product mod p via float64 BLAS.

    Entries are < p <= 8191 and the contraction length stays far below
    2**53 / p**2, so the float product is exact.
    """
    c = a.astype(np.float64) @ b.astype(np.float64)
    return np.mod(np.rint(c).astype(np.int64), p)


class StructureConstantAlgebra:
    """A finite-dimensional algebra over GF(p) given by structure constants."""

    __slots__ = ("kind", "field", "dim", "sc", "labels", "_table", "_comm")

    def __init__(self, kind: str, field: PrimeField, dim: int, sc: dict, labels=None):
        if kind not in _KIND_ALIASES:
            raise ValueError(f"unknown algebra kind {kind!r}")
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.kind = _KIND_ALIASES[kind]
        self.field = field
        self.dim = dim
        p = field.p
        table: dict[tuple[int, int], np.ndarray] = {}
        for key, vec in sc.items():
            i, j = int(key[0]), int(key[1])
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"structure constant key {(i, j)} out of range")
            v = as_gf_array(vec, p)
            if v.shape != (dim,):
                raise ValueError(f"structure constant vector for {(i, j)} has wrong length")
            v.flags.writeable = False
            table[(i, j)] = v
        self.sc = table
        if labels is not None:
            labels = [str(x) for x in labels]
            if len(labels) != dim:
                raise ValueError("label count must equal dim")
        self.labels = labels
        self._table = None
        self._comm = None

    @property
    def p(self) -> int:
        return self.field.p

    def table(self) -> np.ndarray:
        """Dense (d, d, d) product tensor T with T[i, j] = e_i e_j."""
        if self._table is None:
            d, p = self.dim, self.p
            t = np.zeros((d, d, d), dtype=np.int64)
            for (i, j), v in self.sc.items():
                t[i, j] = v
            if self.kind == KIND_LIE:
                for (i, j), v in self.sc.items():
                    if i != j and (j, i) not in self.sc:
                        t[j, i] = (-v) % p
            t.flags.writeable = False
            self._table = t
        return self._table

    def commutator_table(self) -> np.ndarray:
        """Bracket tensor: the table itself for Lie kind, xy - yx otherwise."""
        if self._comm is None:
            t = self.table()
            if self.kind == KIND_LIE:
                self._comm = t
            else:
                c = (t - t.transpose(1, 0, 2)) % self.p
                c.flags.writeable = False
                self._comm = c
        return self._comm

    def product(self, x, y) -> np.ndarray:
        """Product (bracket for Lie kind) of two coordinate vectors."""
        x = as_gf_array(x, self.p)
        y = as_gf_array(y, self.p)
        return np.einsum("a,b,abk->k", x, y, self.table()) % self.p

    def to_json(self) -> dict:
        kind = "lie" if self.kind == KIND_LIE else "assoc"
        entries = [
            {"i": i, "j": j, "v": [int(x) for x in v]}
            for (i, j), v in sorted(self.sc.items())
        ]
        obj = {"kind": kind, "p": self.p, "dim": self.dim, "sc": entries}
        if self.labels is not None:
            obj["labels"] = list(self.labels)
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "StructureConstantAlgebra":
        sc = {(int(e["i"]), int(e["j"])): e["v"] for e in obj["sc"]}
        return cls(
            obj["kind"],
            PrimeField(int(obj["p"])),
            int(obj["dim"]),
            sc,
            labels=obj.get("labels"),
        )

    def __repr__(self) -> str:
        return f"StructureConstantAlgebra(kind={self.kind!r}, p={self.p}, dim={self.dim})"


@dataclass
class AxiomReport:
    """Outcome of the kind-specific axiom check."""

    kind: str
    checks: dict[str, bool]
    first_violation: tuple | None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "checks": dict(self.checks),
            "first_violation": list(self.first_violation) if self.first_violation else None,
            "passed": self.passed,
        }


def _first_assoc_violation(t: np.ndarray, p: int) -> tuple | None:
    # (e_i e_j) e_k == e_i (e_j e_k), checked per i to keep memory at O(d^3)
    d = t.shape[0]
    tr = t.reshape(d * d, d).astype(np.float64)
    tf = t.astype(np.float64)
    for i in range(d):
        lhs = np.mod(np.rint(tf[i] @ tr.reshape(d, d * d)).astype(np.int64), p)
        rhs = np.mod(np.rint(tr @ tf[i]).astype(np.int64), p)
        # lhs[j,(k,l)] = sum_m T[i,j,m] T[m,k,l]; rhs[(j,k),l] = sum_m T[j,k,m] T[i,m,l]
        diff = (lhs.reshape(d, d, d) - rhs.reshape(d, d, d)) % p
        bad = np.argwhere(diff.any(axis=2))
        if bad.size:
            j, k = int(bad[0][0]), int(bad[0][1])
            return (i, j, k)
    return None


def _first_jacobi_violation(t: np.ndarray, p: int) -> tuple | None:
    d = t.shape[0]
    if d == 0:
        return None
    term1 = _mulmod(t.reshape(d * d, d), t.reshape(d, d * d), p).reshape(d, d, d, d)
    total = (term1 + term1.transpose(1, 2, 0, 3) + term1.transpose(2, 0, 1, 3)) % p
    bad = np.argwhere(total.any(axis=3))
    if bad.size:
        return tuple(int(x) for x in bad[0])
    return None


def verify_axioms(a: StructureConstantAlgebra) -> AxiomReport:
    """Exhaustively check the kind's axioms over all basis pairs/triples."""
    t = a.table()
    p = a.p
    d = a.dim
    if a.kind == KIND_ASSOC:
        v = _first_assoc_violation(t, p)
        return AxiomReport("assoc", {"associative": v is None}, v)
    # Alternating: zero diagonal and T[i,j] = -T[j,i], scanned over j <= i so
    # a tampered reversed key (i, j) with i > j is the one reported.
    alt_violation = None
    for i in range(d):
        for j in range(i + 1):
            if j == i:
                if t[i, i].any():
                    alt_violation = (i, i)
            elif ((t[i, j] + t[j, i]) % p).any():
                alt_violation = (i, j)
            if alt_violation:
                break
        if alt_violation:
            break
    jac_violation = _first_jacobi_violation(t, p)
    checks = {"alternating": alt_violation is None, "jacobi": jac_violation is None}
    return AxiomReport("lie", checks, alt_violation or jac_violation)


def center(a: StructureConstantAlgebra) -> Subspace:
    """Solution space of [x, e_j] = 0 for all j (commutator for assoc kind)."""
    d = a.dim
    c = a.commutator_table()
    system = c.transpose(1, 2, 0).reshape(d * d, d)
    return Subspace(d, MatrixGF(a.p, nullspace_array(system, a.p)), _canonical=True)


def _centralizer_system(a: StructureConstantAlgebra, gens: np.ndarray) -> np.ndarray:
    """Equation rows for {x : [x, g] = 0 for all rows g}."""
    d = a.dim
    c = a.commutator_table()
    if gens.shape[0] == 0:
        return np.zeros((0, d), dtype=np.int64)
    # block for g: rows (k), cols (i): sum_j C[i,j,k] g_j
    blocks = np.tensordot(gens, c, axes=([1], [1]))  # (g, i, k)
    return blocks.transpose(0, 2, 1).reshape(-1, d) % a.p


def centralizer(a: StructureConstantAlgebra, gens) -> Subspace:
    """Solution space of [x, g] = 0 for every generator g."""
    d = a.dim
    g = np.asarray(list(gens), dtype=np.int64).reshape(-1, d) % a.p
    system = _centralizer_system(a, g)
    return Subspace(d, MatrixGF(a.p, nullspace_array(system, a.p)), _canonical=True)


def _product_span(a: StructureConstantAlgebra, term: np.ndarray) -> np.ndarray:
    """RREF basis of span{e_i * b : i < d, b row of term} (true product, not commutator)."""
    d, p = a.dim, a.p
    if term.shape[0] == 0:
        return term
    prods = np.tensordot(term, a.table(), axes=([1], [1]))  # (rows, i, k)
    flat = prods.reshape(-1, d) % p
    rank, red, _ = rref_array(flat, p)
    return red[:rank]


def nilpotency_class(a: StructureConstantAlgebra) -> int | None:
    """Length of the lower central series (power series for assoc kind).

    Returns the smallest c with term c+1 = 0, or None when the descending
    series stabilizes at a nonzero subspace.
    """
    d = a.dim
    cur = np.eye(d, dtype=np.int64)
    m = 1
    if cur.shape[0] == 0:
        return 0
    while True:
        if a.kind == KIND_LIE:
            nxt = _bracket_span(a, cur)
        else:
            nxt = _product_span(a, cur)
        if nxt.shape[0] == 0:
            return m
        if nxt.shape[0] == cur.shape[0]:
            return None
        cur = nxt
        m += 1


def _bracket_span(a: StructureConstantAlgebra, term: np.ndarray) -> np.ndarray:
    d, p = a.dim, a.p
    if term.shape[0] == 0:
        return term
    prods = np.tensordot(term, a.commutator_table(), axes=([1], [1]))
    flat = prods.reshape(-1, d) % p
    rank, red, _ = rref_array(flat, p)
    return red[:rank]


def pairwise_products(a: StructureConstantAlgebra, basis: np.ndarray) -> np.ndarray:
    """(k, k, d) tensor of products of all ordered basis-row pairs."""
    return np.einsum("ia,jb,abl->ijl", basis, basis, a.table()) % a.p


def is_abelian_subspace(a: StructureConstantAlgebra, s: Subspace) -> bool:
    """True iff all pairwise brackets (commutators) of basis vectors vanish.

    The subspace must be a subalgebra: the product of any two basis vectors
    has to lie in it, otherwise NotASubalgebra is raised with the offending
    pair of indices.
    """
    if s.ambient_dim != a.dim:
        raise ValueError("subspace ambient dimension does not match the algebra")
    b = s.basis.a
    prods = pairwise_products(a, b)
    resid = reduce_against_rref(prods, b, s.pivots, a.p)
    outside = np.argwhere(resid.any(axis=2))
    if outside.size:
        i, j = (int(x) for x in outside[0])
        raise NotASubalgebra(
            f"product of basis vectors {i} and {j} falls outside the subspace",
            pair=(i, j),
        )
    if a.kind == KIND_LIE:
        return not prods.any()
    comm = (prods - prods.transpose(1, 0, 2)) % a.p
    return not comm.any()


def _membership_reduction_matrix(sub: Subspace) -> np.ndarray:
    """Matrix M with v @ M = residual of v after reduction against sub's RREF."""
    n, p = sub.ambient_dim, sub.p
    m = np.eye(n, dtype=np.int64)
    for ri, pc in enumerate(sub.pivots):
        m[pc] = (m[pc] - sub.basis.a[ri]) % p
    return m


def maximal_abelian_ideal(a: StructureConstantAlgebra) -> Subspace:
    """Greedily extend the center to an inclusion-maximal abelian ideal.

    Repeats the extension step: while some x outside the current ideal i has
    [x, g] inside i and [x, i] = 0, adjoin the first basis vector of the
    solution space that is independent of i.  Requires a nilpotent Lie
    algebra; the loop then terminates with an abelian ideal admitting no
    one-element extension.
    """
    if a.kind != KIND_LIE:
        raise ValueError("maximal_abelian_ideal requires a Lie algebra")
    if nilpotency_class(a) is None:
        raise ValueError("maximal_abelian_ideal requires a nilpotent Lie algebra")
    d, p = a.dim, a.p
    t = a.table()
    ideal = center(a)
    while True:
        red = _membership_reduction_matrix(ideal)
        # [x, e_j] in ideal for all j: rows ((j, l), i) of T[i,j,:] @ red
        cond_ideal = np.einsum("ijl,lm->jmi", t, red).reshape(d * d, d) % p
        cond_comm = _centralizer_system(a, ideal.basis.a)
        sol = nullspace_array(np.concatenate([cond_ideal, cond_comm], axis=0), p)
        new_vec = None
        for row in sol:
            if not ideal.contains_vector(row):
                new_vec = row
                break
        if new_vec is None:
            return ideal
        ideal = ideal.sum(Subspace.span(p, [new_vec]))
