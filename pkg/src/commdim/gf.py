"""Exact linear algebra over prime fields GF(p).

Matrices are numpy int64 arrays with entries reduced mod p.  Everything is
deterministic: row reduction yields the unique reduced row echelon form,
subspaces are held in a canonical basis (so equal subspaces compare equal
bit for bit), and the subspace stream of :func:`enumerate_subspaces` is
emitted in a fixed order -- lexicographic on pivot columns, then odometer
order on the free entries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import EnumerationTooLarge

MAX_PRIME = 8191
DEFAULT_ENUM_BUDGET = 10**8


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (n is capped at 8191)."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field GF(p) with 2 <= p <= 8191."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise ValueError(f"field order must be an int, got {self.p!r}")
        if not 2 <= self.p <= MAX_PRIME:
            raise ValueError(f"field order must lie in [2, {MAX_PRIME}], got {self.p}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)


def _inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


def as_gf_array(entries, p: int, shape=None) -> np.ndarray:
    """Coerce to a reduced int64 array over GF(p)."""
    a = np.asarray(entries, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    return np.mod(a, p)


class MatrixGF:
    """A rows x cols matrix over GF(p); entries stored reduced, row-major."""

    __slots__ = ("p", "a")

    def __init__(self, p: int, entries, shape=None):
        self.p = PrimeField(p).p
        a = as_gf_array(entries, self.p, shape)
        if a.ndim != 2:
            raise ValueError(f"matrix must be 2-dimensional, got shape {a.shape}")
        a.flags.writeable = False
        self.a = a

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "MatrixGF":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "MatrixGF":
        return cls(p, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self.p, self.a.T)

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        if self.p != other.p:
            raise ValueError("field mismatch")
        return MatrixGF(self.p, (self.a @ other.a) % self.p)

    def __add__(self, other: "MatrixGF") -> "MatrixGF":
        if self.p != other.p:
            raise ValueError("field mismatch")
        return MatrixGF(self.p, (self.a + other.a) % self.p)

    def __neg__(self) -> "MatrixGF":
        return MatrixGF(self.p, (-self.a) % self.p)

    def __sub__(self, other: "MatrixGF") -> "MatrixGF":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixGF)
            and self.p == other.p
            and self.a.shape == other.a.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self) -> int:
        return hash((self.p, self.a.shape, self.a.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixGF(p={self.p}, {self.a.tolist()!r})"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [int(x) for x in self.a.reshape(-1)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MatrixGF":
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match rows*cols")
        return cls(int(obj["p"]), entries, shape=(rows, cols))


def rref_array(a: np.ndarray, p: int) -> tuple[int, np.ndarray, list[int]]:
    """Reduced row echelon form of a raw array; returns (rank, rref, pivot cols).

    The output keeps the input shape, zero rows collected at the bottom.
    """
    m = np.mod(np.asarray(a, dtype=np.int64), p).copy()
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        if m[r, c] != 1:
            m[r] = (m[r] * _inv_mod(m[r, c], p)) % p
        other = np.nonzero(m[:, c])[0]
        other = other[other != r]
        if other.size:
            m[other] = (m[other] - np.outer(m[other, c], m[r])) % p
        pivots.append(c)
        r += 1
    return r, m, pivots


def rref(m: MatrixGF) -> tuple[int, MatrixGF]:
    """Canonical row reduction: (rank, echelon with zero rows dropped)."""
    rank, red, _ = rref_array(m.a, m.p)
    return rank, MatrixGF(m.p, red[:rank])


def nullspace_array(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical (RREF) row basis of {x : a @ x = 0} over GF(p)."""
    a = np.asarray(a, dtype=np.int64)
    ncols = a.shape[1]
    rank, red, pivots = rref_array(a, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for ri, pc in enumerate(pivots):
            basis[bi, pc] = (-red[ri, fc]) % p
    _, basis, _ = rref_array(basis, p)
    return basis[: len(free)]


def solve_affine(a: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray] | None:
    """Solve a @ x = b over GF(p).

    Returns (particular solution, RREF row basis of the homogeneous solution
    space), or None if the system is inconsistent.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    ncols = a.shape[1]
    aug = np.concatenate([a % p, b[:, None] % p], axis=1)
    rank, red, pivots = rref_array(aug, p)
    if pivots and pivots[-1] == ncols:
        return None
    x0 = np.zeros(ncols, dtype=np.int64)
    for ri, pc in enumerate(pivots):
        x0[pc] = red[ri, ncols]
    hom = nullspace_array(a % p, p)
    return x0, hom


def reduce_against_rref(v: np.ndarray, basis: np.ndarray, pivots: Iterable[int], p: int) -> np.ndarray:
    """Residual of v after eliminating the pivots of an RREF basis."""
    r = np.mod(np.asarray(v, dtype=np.int64), p).copy()
    for ri, pc in enumerate(pivots):
        coef = r[..., pc].copy()
        if np.any(coef):
            r = (r - coef[..., None] * basis[ri]) % p
    return r


class Subspace:
    """A subspace of GF(p)^n held by its canonical RREF basis (no zero rows)."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: MatrixGF, _canonical: bool = False):
        if basis.cols != ambient_dim:
            raise ValueError(f"basis has {basis.cols} columns, ambient dim is {ambient_dim}")
        if not _canonical:
            _, basis = rref(basis)
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = tuple(int(np.argmax(row != 0)) for row in basis.a)

    @classmethod
    def span(cls, p: int, rows, ambient_dim: int | None = None) -> "Subspace":
        a = np.asarray(list(rows), dtype=np.int64)
        if a.ndim == 1:
            a = a.reshape(1, -1)
        if a.size == 0 and ambient_dim is not None:
            a = a.reshape(0, ambient_dim)
        n = a.shape[1] if ambient_dim is None else ambient_dim
        return cls(n, MatrixGF(p, a.reshape(-1, n)))

    @classmethod
    def zero(cls, p: int, n: int) -> "Subspace":
        return cls(n, MatrixGF.zeros(p, 0, n), _canonical=True)

    @classmethod
    def full(cls, p: int, n: int) -> "Subspace":
        return cls(n, MatrixGF.identity(p, n), _canonical=True)

    @property
    def p(self) -> int:
        return self.basis.p

    @property
    def dim(self) -> int:
        return self.basis.rows

    def contains_vector(self, v) -> bool:
        res = reduce_against_rref(as_gf_array(v, self.p), self.basis.a, self.pivots, self.p)
        return not np.any(res)

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(row) for row in other.basis.a)

    def sum(self, other: "Subspace") -> "Subspace":
        stacked = np.concatenate([self.basis.a, other.basis.a], axis=0)
        return Subspace(self.ambient_dim, MatrixGF(self.p, stacked))

    def annihilator(self) -> "Subspace":
        """The subspace {w : B @ w = 0} for the basis matrix B."""
        ns = nullspace_array(self.basis.a, self.p)
        return Subspace(self.ambient_dim, MatrixGF(self.p, ns), _canonical=True)

    def intersection(self, other: "Subspace") -> "Subspace":
        # (U^perp + W^perp)^perp; the standard pairing is nondegenerate.
        return self.annihilator().sum(other.annihilator()).annihilator()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": self.basis.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "Subspace":
        return cls(int(obj["ambient_dim"]), MatrixGF.from_json(obj["basis"]))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n, exact big integer."""
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def _free_positions(pivots: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    ps = set(pivots)
    return [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in ps]


def rref_arrays_for_pivots(pivots: tuple[int, ...], n: int, p: int) -> Iterator[np.ndarray]:
    """All RREF matrices with the given pivot columns, free entries in odometer order."""
    k = len(pivots)
    base = np.zeros((k, n), dtype=np.int64)
    base[np.arange(k), list(pivots)] = 1
    free = _free_positions(pivots, n)
    if not free:
        yield base.copy()
        return
    rows = np.array([f[0] for f in free])
    cols = np.array([f[1] for f in free])
    for vals in itertools.product(range(p), repeat=len(free)):
        m = base.copy()
        m[rows, cols] = vals
        yield m


def iter_rref_arrays(n: int, k: int, p: int) -> Iterator[np.ndarray]:
    """Raw canonical bases of all k-dim subspaces of GF(p)^n, in canonical order."""
    if k == 0:
        yield np.zeros((0, n), dtype=np.int64)
        return
    for pivots in itertools.combinations(range(n), k):
        yield from rref_arrays_for_pivots(pivots, n, p)


def enumerate_subspaces(
    n: int, k: int, field: PrimeField, budget: int = DEFAULT_ENUM_BUDGET
) -> Iterator[Subspace]:
    """Stream every k-dim subspace of GF(p)^n exactly once, canonically ordered."""
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    total = gaussian_binomial(n, k, field.p)
    if total > budget:
        raise EnumerationTooLarge(
            f"enumeration of {total} subspaces (n={n}, k={k}, p={field.p}) "
            f"exceeds budget {budget}",
            count=total,
        )
    p = field.p
    for a in iter_rref_arrays(n, k, p):
        yield Subspace(n, MatrixGF(p, a), _canonical=True)
