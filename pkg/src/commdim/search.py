"""Maximal abelian (commutative) subalgebra dimensions.

Three routes:

* :func:`max_abelian_exact` -- depth-first search over canonical subspaces
  whose basis vectors pairwise commute, pruned by centralizer dimension.
  A subspace on which all commutators vanish of maximal dimension is
  automatically closed under the product (its generated subalgebra is again
  commuting, so it cannot be larger), which makes the commuting-subspace
  maximum equal to the commutative-subalgebra maximum for both kinds.
* :func:`max_abelian_class2_exact` -- for two-step algebras the question
  reduces to the largest common isotropic subspace of the induced forms.
* :func:`greedy_abelian_class2` -- the constructive procedure that solves a
  growing linear system; its output size s certifies dim <= s^2/4 + s.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import (
    StructureConstantAlgebra,
    _centralizer_system,
    center,
    nilpotency_class,
    pairwise_products,
)
from .forms import FormTuple, find_common_isotropic
from .gf import (
    DEFAULT_ENUM_BUDGET,
    MatrixGF,
    Subspace,
    nullspace_array,
    rref_array,
    solve_affine,
)

DEFAULT_SEARCH_BUDGET = 5_000_000  # DFS node visits


@dataclass
class SearchResult:
    """A subalgebra-dimension answer; exact=False means lower bound only."""

    mode: str
    dim: int
    witness: Subspace | None
    exact: bool

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "dim": self.dim,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "exact": self.exact,
        }


def _canonical_key(rows: np.ndarray, pivots: tuple[int, ...]) -> tuple:
    ps = set(pivots)
    free_vals = tuple(
        int(rows[r, c])
        for r, pc in enumerate(pivots)
        for c in range(pc + 1, rows.shape[1])
        if c not in ps
    )
    return (pivots, free_vals)


def _subalgebra_closure(a: StructureConstantAlgebra, sub: Subspace) -> Subspace:
    """Smallest product-closed subspace containing sub."""
    cur = sub
    while True:
        prods = pairwise_products(a, cur.basis.a).reshape(-1, a.dim)
        bigger = cur.sum(Subspace.span(a.p, prods, a.dim))
        if bigger.dim == cur.dim:
            return cur
        cur = bigger


def max_abelian_exact(
    a: StructureConstantAlgebra, budget: int = DEFAULT_SEARCH_BUDGET
) -> SearchResult:
    """Exact maximum dimension of a commutative subalgebra, with witness.

    Depth-first search over canonical RREF bases: a subspace is reached by
    peeling off its top basis row, so each commuting subspace is visited
    exactly once.  A branch is cut when the commuting extension space cannot
    lift the current dimension to the best one found.  The witness is the
    canonically first subspace of maximal dimension.  If the node budget is
    exhausted the result is flagged as a lower bound.
    """
    d, p = a.dim, a.p
    comm = a.commutator_table()
    if d == 0 or not comm.any():
        witness = Subspace.full(p, d)
        return SearchResult("exact", d, witness, True)

    best = {"dim": 0, "key": ((), ()), "rows": np.zeros((0, d), dtype=np.int64)}
    nodes = 0
    aborted = False

    def visit(rows: np.ndarray, pivots: tuple[int, ...]):
        nonlocal nodes, aborted
        if aborted:
            return
        nodes += 1
        if nodes > budget:
            aborted = True
            return
        k = len(pivots)
        if k > best["dim"]:
            best.update(dim=k, key=_canonical_key(rows, pivots), rows=rows)
        elif k == best["dim"] and k > 0:
            key = _canonical_key(rows, pivots)
            if key < best["key"]:
                best.update(key=key, rows=rows)
        min_pivot = pivots[0] if k else d
        if min_pivot == 0:
            return
        comm_rows = _centralizer_system(a, rows)
        # every further extension vector lies in N = {x : commutes with rows,
        # zero at current pivots}; its new pivots sit left of min_pivot, so
        # the reachable extra dimension is the rank of N's left block
        fix = np.zeros((k, d), dtype=np.int64)
        if k:
            fix[np.arange(k), list(pivots)] = 1
        n_basis = nullspace_array(np.concatenate([comm_rows, fix], axis=0), p)
        extra = rref_array(n_basis[:, :min_pivot], p)[0]
        if k + extra < best["dim"]:
            return
        pivot_set = set(pivots)
        for pnew in range(min_pivot):
            if rows.size and np.any(rows[:, pnew]):
                continue  # the extended matrix would not be in RREF
            q_cols = [q for q in range(pnew + 1, d) if q not in pivot_set]
            sol = solve_affine(comm_rows[:, q_cols], (-comm_rows[:, pnew]) % p, p)
            if sol is None:
                continue
            x0, hom = sol
            for combo in itertools.product(range(p), repeat=hom.shape[0]):
                x = x0
                if combo:
                    x = (x0 + np.asarray(combo, dtype=np.int64) @ hom) % p
                v = np.zeros(d, dtype=np.int64)
                v[pnew] = 1
                if q_cols:
                    v[q_cols] = x
                visit(np.vstack([v[None, :], rows]), (pnew,) + pivots)
                if aborted:
                    return

    visit(np.zeros((0, d), dtype=np.int64), ())
    witness = Subspace(d, MatrixGF(p, best["rows"]), _canonical=True)
    if a.kind == "assoc":
        witness = _subalgebra_closure(a, witness)
    return SearchResult("exact", witness.dim, witness, not aborted)


def max_abelian_class2_exact(
    forms: FormTuple, budget: int = DEFAULT_ENUM_BUDGET, jobs: int = 1
) -> int:
    """t plus the largest k admitting a common isotropic k-dim subspace."""
    if forms.kind != "alternating":
        raise ValueError("class-2 reduction needs alternating forms")
    for k in range(forms.n, -1, -1):
        if find_common_isotropic(forms, k, budget=budget, jobs=jobs) is not None:
            return forms.t + k
    raise AssertionError("k = 0 always matches")


def class2_form_tuple(
    a: StructureConstantAlgebra,
) -> tuple[FormTuple, Subspace, list[int]]:
    """Split a class-<=2 algebra into (induced forms, center, complement coords).

    The complement of the center is spanned by the unit vectors at the
    non-pivot coordinates of the center's canonical basis; commutators of
    those unit vectors land in the center and their coefficients along the
    center basis are the induced alternating forms.
    """
    cls = nilpotency_class(a)
    if cls is None or cls > 2:
        raise ValueError("algebra must be nilpotent of class at most 2")
    z = center(a)
    d, p = a.dim, a.p
    comp = [c for c in range(d) if c not in set(z.pivots)]
    comm = a.commutator_table()
    sub = comm[np.ix_(comp, comp, list(z.pivots))]  # (m, m, t)
    mats = [MatrixGF(p, sub[:, :, m]) for m in range(z.dim)]
    forms = FormTuple(len(comp), z.dim, "alternating", a.field, mats)
    return forms, z, comp


def class2_exact_result(
    a: StructureConstantAlgebra, budget: int = DEFAULT_ENUM_BUDGET, jobs: int = 1
) -> SearchResult:
    """Exact maximum via the isotropic reduction, with an embedded witness."""
    if a.dim == 0:
        return SearchResult("class2", 0, Subspace.zero(a.p, 0), True)
    forms, z, comp = class2_form_tuple(a)
    witness_small = None
    k_found = 0
    for k in range(forms.n, -1, -1):
        witness_small = find_common_isotropic(forms, k, budget=budget, jobs=jobs)
        if witness_small is not None:
            k_found = k
            break
    emb = np.zeros((witness_small.dim, a.dim), dtype=np.int64)
    if comp:
        emb[:, comp] = witness_small.basis.a
    stacked = np.concatenate([emb, z.basis.a], axis=0)
    witness = Subspace.span(a.p, stacked, a.dim)
    return SearchResult("class2", z.dim + k_found, witness, True)


def greedy_abelian_class2(a: StructureConstantAlgebra) -> SearchResult:
    """Grow a commuting set in a complement of the center by linear solves.

    Each step takes the first basis vector of the accumulated solution space
    that is independent of the previous picks; the loop stops when the
    solution space adds nothing new.  The returned dimension s (picks plus
    center) always satisfies dim <= floor(s^2/4) + s.
    """
    cls = nilpotency_class(a)
    if cls is None or cls > 2:
        raise ValueError("algebra must be nilpotent of class at most 2")
    d, p = a.dim, a.p
    if d == 0:
        return SearchResult("greedy", 0, Subspace.zero(p, 0), False)
    z = center(a)
    fix = np.zeros((z.dim, d), dtype=np.int64)
    if z.dim:
        fix[np.arange(z.dim), list(z.pivots)] = 1
    picks: list[np.ndarray] = []
    span = Subspace.zero(p, d)
    while True:
        gens = np.asarray(picks, dtype=np.int64).reshape(len(picks), d)
        system = np.concatenate([fix, _centralizer_system(a, gens)], axis=0)
        sol = nullspace_array(system, p)
        new = next((row for row in sol if not span.contains_vector(row)), None)
        if new is None:
            break
        picks.append(new)
        span = span.sum(Subspace.span(p, [new]))
    s = len(picks) + z.dim
    witness = span.sum(z)
    assert a.dim <= (s * s) // 4 + s
    return SearchResult("greedy", s, witness, False)
