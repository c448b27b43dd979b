"""Tuples of bilinear forms and the sample-and-certify genericity check.

A certificate records a seeded tuple of forms together with the exhaustive
count of k-dimensional subspaces scanned, so that anyone can regenerate the
tuple from the seed and replay the scan.  Sampling replaces a counting
argument: under 2n < t(k-1) good tuples exist, so bounded retrying over
consecutive seeds is sound, and failure to certify never claims that good
tuples do not exist.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import CertificationFailed, EnumerationTooLarge
from .gf import (
    DEFAULT_ENUM_BUDGET,
    MatrixGF,
    PrimeField,
    Subspace,
    gaussian_binomial,
    rref_arrays_for_pivots,
)

FORM_KINDS = ("alternating", "symmetric", "general")
MODE_ISOTROPIC = "isotropic"
MODE_SYMMETRIC = "symmetric-restriction"
_MODES = (MODE_ISOTROPIC, MODE_SYMMETRIC)


class FormTuple:
    """A tuple of t bilinear forms on GF(p)^n, given by n x n matrices."""

    __slots__ = ("n", "t", "kind", "p", "mats", "seed", "_stack")

    def __init__(self, n: int, t: int, kind: str, field: PrimeField, mats, seed: int | None = None):
        if kind not in FORM_KINDS:
            raise ValueError(f"unknown form kind {kind!r}")
        if n < 0 or t < 1:
            raise ValueError("need n >= 0 and t >= 1")
        mats = list(mats)
        if len(mats) != t:
            raise ValueError(f"expected {t} matrices, got {len(mats)}")
        p = field.p
        checked = []
        for m in mats:
            if not isinstance(m, MatrixGF):
                m = MatrixGF(p, m)
            if m.p != p or m.a.shape != (n, n):
                raise ValueError("every form must be an n x n matrix over GF(p)")
            checked.append(m)
        self.n, self.t, self.kind, self.p = n, t, kind, p
        self.mats = checked
        self.seed = seed
        self._stack = None
        if kind == "alternating":
            for m in checked:
                if np.any(np.diagonal(m.a)) or np.any((m.a + m.a.T) % p):
                    raise ValueError("alternating form needs zero diagonal and M^T = -M")
        elif kind == "symmetric":
            for m in checked:
                if np.any((m.a - m.a.T) % p):
                    raise ValueError("symmetric form needs M^T = M")

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    def stack(self) -> np.ndarray:
        """(t, n, n) tensor of the form matrices."""
        if self._stack is None:
            s = np.stack([m.a for m in self.mats])
            s.flags.writeable = False
            self._stack = s
        return self._stack

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FormTuple)
            and (self.n, self.t, self.kind, self.p) == (other.n, other.t, other.kind, other.p)
            and all(a == b for a, b in zip(self.mats, other.mats))
        )

    def __repr__(self) -> str:
        return f"FormTuple(n={self.n}, t={self.t}, kind={self.kind!r}, p={self.p}, seed={self.seed})"

    def to_json(self) -> dict:
        obj = {
            "n": self.n,
            "t": self.t,
            "kind": self.kind,
            "p": self.p,
            "mats": [m.to_json() for m in self.mats],
        }
        if self.seed is not None:
            obj["seed"] = self.seed
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "FormTuple":
        return cls(
            int(obj["n"]),
            int(obj["t"]),
            obj["kind"],
            PrimeField(int(obj["p"])),
            [MatrixGF.from_json(m) for m in obj["mats"]],
            seed=obj.get("seed"),
        )


def sample_form_tuple(n: int, t: int, kind: str, field: PrimeField, seed: int) -> FormTuple:
    """Uniformly random tuple of the given kind from a seeded deterministic RNG.

    Free entries (strict upper triangle for alternating, upper triangle plus
    diagonal for symmetric, everything for general) are drawn row-major from
    a single Mersenne-Twister stream, so the same seed reproduces the tuple
    bit for bit.
    """
    if kind not in FORM_KINDS:
        raise ValueError(f"unknown form kind {kind!r}")
    p = field.p
    rng = random.Random(seed)
    mats = []
    for _ in range(t):
        m = np.zeros((n, n), dtype=np.int64)
        if kind == "alternating":
            for i in range(n):
                for j in range(i + 1, n):
                    v = rng.randrange(p)
                    m[i, j] = v
                    m[j, i] = (-v) % p
        elif kind == "symmetric":
            for i in range(n):
                for j in range(i, n):
                    v = rng.randrange(p)
                    m[i, j] = v
                    m[j, i] = v
        else:
            for i in range(n):
                for j in range(n):
                    m[i, j] = rng.randrange(p)
        mats.append(MatrixGF(p, m))
    return FormTuple(n, t, kind, field, mats, seed=seed)


def _restrictions(mats: np.ndarray, basis: np.ndarray, p: int) -> np.ndarray:
    """(t, k, k) tensor of the form restrictions to the rows of basis."""
    return np.einsum("ka,mab,lb->mkl", basis, mats, basis) % p


def _basis_matches(mats: np.ndarray, basis: np.ndarray, mode: str, p: int) -> bool:
    r = _restrictions(mats, basis, p)
    if mode == MODE_ISOTROPIC:
        return not r.any()
    return not ((r - r.transpose(0, 2, 1)) % p).any()


def is_common_isotropic(forms: FormTuple, sub: Subspace, mode: str = MODE_ISOTROPIC) -> bool:
    """Check one subspace: all restrictions zero (or all symmetric)."""
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if sub.ambient_dim != forms.n or sub.p != forms.p:
        raise ValueError("subspace does not live on the forms' space")
    return _basis_matches(forms.stack(), sub.basis.a, mode, forms.p)


def _scan_pivot_block(args) -> tuple[int, int, list] | None:
    """Scan a block of pivot patterns; return the first hit as global indices."""
    p, n, k, mats, mode, block = args
    for ci, pivots in block:
        for si, basis in enumerate(rref_arrays_for_pivots(pivots, n, p)):
            if _basis_matches(mats, basis, mode, p):
                return (ci, si, basis.tolist())
    return None


def find_common_isotropic(
    forms: FormTuple,
    k: int,
    mode: str = MODE_ISOTROPIC,
    budget: int = DEFAULT_ENUM_BUDGET,
    jobs: int = 1,
) -> Subspace | None:
    """Exhaustively scan canonical k-dim subspaces for the first match.

    Returns the first subspace (in canonical enumeration order) on which all
    forms restrict to zero (mode "isotropic") or to symmetric matrices (mode
    "symmetric-restriction"), or None when no subspace qualifies.  With
    jobs > 1 the pivot patterns are partitioned across processes; the hit
    with the least global index wins, so the result is jobs-independent.
    """
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    n, p = forms.n, forms.p
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    total = gaussian_binomial(n, k, p)
    if total * forms.t > budget:
        raise EnumerationTooLarge(
            f"scanning {total} subspaces against {forms.t} forms exceeds budget {budget}",
            count=total,
        )
    mats = forms.stack()
    combos = list(enumerate(itertools.combinations(range(n), k)))
    if jobs > 1 and len(combos) > 1:
        hit = _parallel_scan(p, n, k, mats, mode, combos, jobs)
    else:
        hit = _scan_pivot_block((p, n, k, mats, mode, combos))
    if hit is None:
        return None
    basis = np.asarray(hit[2], dtype=np.int64).reshape(k, n)
    return Subspace(n, MatrixGF(p, basis), _canonical=True)


def _parallel_scan(p, n, k, mats, mode, combos, jobs) -> tuple | None:
    from concurrent.futures import ProcessPoolExecutor
    import multiprocessing as mp

    jobs = min(jobs, len(combos))
    chunks = [combos[i::jobs] for i in range(jobs)]
    ctx = mp.get_context("spawn")
    with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
        hits = [h for h in pool.map(_scan_pivot_block, [(p, n, k, mats, mode, c) for c in chunks]) if h]
    if not hits:
        return None
    return min(hits, key=lambda h: (h[0], h[1]))


@dataclass
class GenericityCertificate:
    """Replayable record that a sampled tuple admits no k-dim common isotropic subspace."""

    forms: FormTuple
    k: int
    subspaces_checked: int
    vacuous: bool = False
    mode: str = MODE_ISOTROPIC
    verdict: str = dc_field(default="certified")

    @property
    def n(self) -> int:
        return self.forms.n

    @property
    def t(self) -> int:
        return self.forms.t

    @property
    def p(self) -> int:
        return self.forms.p

    @property
    def seed(self) -> int | None:
        return self.forms.seed

    def to_json(self) -> dict:
        obj = self.forms.to_json()
        obj.update(
            {
                "k": self.k,
                "subspaces_checked": str(self.subspaces_checked),
                "verdict": self.verdict,
                "vacuous": self.vacuous,
                "mode": self.mode,
            }
        )
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "GenericityCertificate":
        return cls(
            forms=FormTuple.from_json(obj),
            k=int(obj["k"]),
            subspaces_checked=int(obj["subspaces_checked"]),
            vacuous=bool(obj.get("vacuous", False)),
            mode=obj.get("mode", MODE_ISOTROPIC),
            verdict=obj.get("verdict", "certified"),
        )


def certify_no_isotropic(
    n: int,
    t: int,
    k: int,
    field: PrimeField,
    seed: int,
    max_attempts: int = 256,
    kind: str = "alternating",
    mode: str = MODE_ISOTROPIC,
    budget: int = DEFAULT_ENUM_BUDGET,
    jobs: int = 1,
) -> GenericityCertificate:
    """Sample tuples at seeds seed, seed+1, ... until one scans clean.

    The successful seed and the exhaustive subspace count go into the
    certificate.  When k exceeds n the claim is vacuously true and the
    certificate is issued immediately with zero subspaces checked.
    """
    if seed is None:
        raise ValueError("certification requires an explicit seed")
    if t < 1 or n < 0 or k < 0:
        raise ValueError("need n >= 0, t >= 1, k >= 0")
    if not 2 * n < t * (k - 1):
        warnings.warn(
            f"2n < t(k-1) fails for n={n}, t={t}, k={k}: "
            "a clean tuple is not guaranteed to exist",
            stacklevel=2,
        )
    if n < k:
        forms = sample_form_tuple(n, t, kind, field, seed)
        return GenericityCertificate(forms, k, 0, vacuous=True, mode=mode)
    last_witness = None
    for attempt in range(max_attempts):
        forms = sample_form_tuple(n, t, kind, field, seed + attempt)
        witness = find_common_isotropic(forms, k, mode=mode, budget=budget, jobs=jobs)
        if witness is None:
            checked = gaussian_binomial(n, k, field.p)
            return GenericityCertificate(forms, k, checked, vacuous=False, mode=mode)
        last_witness = witness
    raise CertificationFailed(
        f"all {max_attempts} sampled tuples admitted a common subspace "
        f"(n={n}, t={t}, k={k}, p={field.p}, seeds {seed}..{seed + max_attempts - 1})",
        witness=last_witness,
    )


def reverify_certificate(cert: GenericityCertificate, budget: int = DEFAULT_ENUM_BUDGET, jobs: int = 1) -> bool:
    """Regenerate the tuple from the recorded seed and replay the scan."""
    if cert.verdict != "certified":
        return False
    if cert.seed is None:
        return False
    try:
        regen = sample_form_tuple(cert.n, cert.t, cert.forms.kind, cert.forms.field, cert.seed)
    except ValueError:
        return False
    if regen != cert.forms:
        return False
    if cert.vacuous:
        return cert.n < cert.k and cert.subspaces_checked == 0
    if cert.k > cert.n:
        return False
    try:
        witness = find_common_isotropic(regen, cert.k, mode=cert.mode, budget=budget, jobs=jobs)
    except EnumerationTooLarge:
        return False
    if witness is not None:
        return False
    return cert.subspaces_checked == gaussian_binomial(cert.n, cert.k, cert.p)
