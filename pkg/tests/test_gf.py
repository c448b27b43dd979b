import random

import numpy as np
import pytest

from commdim import (
    EnumerationTooLarge,
    MatrixGF,
    PrimeField,
    Subspace,
    enumerate_subspaces,
    gaussian_binomial,
    is_prime,
    rref,
)
from commdim.gf import nullspace_array, rref_array, solve_affine

from oracles import random_invertible


def test_prime_field_accepts_primes():
    for p in (2, 3, 5, 7, 8191):
        assert PrimeField(p).p == p


@pytest.mark.parametrize("bad", [0, 1, 4, 9, 8190, 8192, 10007])
def test_prime_field_rejects(bad):
    with pytest.raises(ValueError):
        PrimeField(bad)


def test_is_prime_small():
    primes = [n for n in range(60) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]


def test_field_inverse():
    f = PrimeField(13)
    for a in range(1, 13):
        assert (a * f.inv(a)) % 13 == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_rref_identity():
    m = MatrixGF.identity(5, 3)
    rank, ech = rref(m)
    assert rank == 3
    assert ech == m


def test_rref_zero():
    rank, ech = rref(MatrixGF.zeros(2, 2, 4))
    assert rank == 0
    assert ech.rows == 0 and ech.cols == 4


def test_rref_dependent_rows():
    rank, ech = rref(MatrixGF(2, [[1, 1], [1, 1]]))
    assert rank == 1
    assert ech.a.tolist() == [[1, 1]]


def test_rref_idempotent():
    rng = random.Random(7)
    for p in (2, 3, 5):
        for _ in range(25):
            rows, cols = rng.randrange(1, 5), rng.randrange(1, 6)
            m = MatrixGF(p, [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)])
            _, ech = rref(m)
            _, again = rref(ech)
            assert again == ech


def test_rref_canonical_under_row_operations():
    rng = random.Random(11)
    for p in (2, 3, 5):
        for _ in range(20):
            k, n = rng.randrange(1, 4), rng.randrange(2, 6)
            a = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(k)], dtype=np.int64)
            e = random_invertible(p, k, rng)
            _, ech1 = rref(MatrixGF(p, a))
            _, ech2 = rref(MatrixGF(p, (e @ a) % p))
            assert ech1 == ech2


def test_gaussian_binomial_values():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(7, 4, 2) == 11811
    for n in range(6):
        assert gaussian_binomial(n, n, 3) == 1
        assert gaussian_binomial(n, 0, 5) == 1


def test_gaussian_binomial_symmetry():
    for n in range(8):
        for k in range(n + 1):
            assert gaussian_binomial(n, k, 3) == gaussian_binomial(n, n - k, 3)


def test_gaussian_binomial_domain_error():
    with pytest.raises(ValueError):
        gaussian_binomial(3, 4, 2)
    with pytest.raises(ValueError):
        gaussian_binomial(3, -1, 2)


def test_enumerate_line_in_plane():
    subs = list(enumerate_subspaces(2, 1, PrimeField(2)))
    found = {tuple(s.basis.a.reshape(-1)) for s in subs}
    assert found == {(1, 0), (0, 1), (1, 1)}


def test_enumerate_order_is_canonical():
    # pivot columns lexicographic, then free entries odometer-style
    got = [s.basis.a.tolist() for s in enumerate_subspaces(2, 1, PrimeField(2))]
    assert got == [[[1, 0]], [[1, 1]], [[0, 1]]]
    got3 = [s.basis.a.tolist() for s in enumerate_subspaces(2, 1, PrimeField(3))]
    assert got3 == [[[1, 0]], [[1, 1]], [[1, 2]], [[0, 1]]]
    pivots = [s.pivots for s in enumerate_subspaces(4, 2, PrimeField(2))]
    assert pivots == sorted(pivots)


def test_enumerate_full_space():
    subs = list(enumerate_subspaces(3, 3, PrimeField(3)))
    assert len(subs) == 1
    assert subs[0] == Subspace.full(3, 3)


def test_enumerate_planes_in_four_space():
    subs = list(enumerate_subspaces(4, 2, PrimeField(2)))
    assert len(subs) == 35
    assert len(set(subs)) == 35


@pytest.mark.parametrize("p", [2, 3])
def test_enumeration_complete_and_canonical(p):
    field = PrimeField(p)
    for n in range(6):
        for k in range(n + 1):
            seen = set()
            for sub in enumerate_subspaces(n, k, field):
                _, ech = rref(sub.basis)
                assert ech == sub.basis  # already canonical
                seen.add(sub)
            assert len(seen) == gaussian_binomial(n, k, p)


def test_enumeration_budget():
    with pytest.raises(EnumerationTooLarge) as exc:
        list(enumerate_subspaces(30, 15, PrimeField(2), budget=10**6))
    assert exc.value.count == gaussian_binomial(30, 15, 2)
    assert str(exc.value.count) in str(exc.value)


def test_matrix_json_round_trip():
    m = MatrixGF(7, [[1, 2, 3], [4, 5, 6]])
    obj = m.to_json()
    assert obj == {"p": 7, "rows": 2, "cols": 3, "entries": [1, 2, 3, 4, 5, 6]}
    assert MatrixGF.from_json(obj) == m


def test_matrix_ops():
    a = MatrixGF(5, [[1, 2], [3, 4]])
    b = MatrixGF(5, [[0, 1], [1, 0]])
    assert (a @ b).a.tolist() == [[2, 1], [4, 3]]
    assert (a + (-a)).a.tolist() == [[0, 0], [0, 0]]
    assert a.transpose().a.tolist() == [[1, 3], [2, 4]]


def test_subspace_canonical_equality():
    s1 = Subspace.span(3, [[1, 1, 0], [0, 1, 1]])
    s2 = Subspace.span(3, [[2, 2, 0], [1, 2, 1]])  # same row space
    assert s1 == s2
    assert hash(s1) == hash(s2)
    assert s1.dim == 2


def test_subspace_membership_and_lattice():
    s = Subspace.span(2, [[1, 0, 1], [0, 1, 1]])
    assert s.contains_vector([1, 1, 0])
    assert not s.contains_vector([1, 1, 1])
    t = Subspace.span(2, [[1, 0, 1]])
    assert s.contains(t)
    assert s.sum(t) == s
    assert s.intersection(t) == t
    assert t.intersection(Subspace.span(2, [[0, 1, 1]])).dim == 0


def test_subspace_json_round_trip():
    s = Subspace.span(3, [[1, 2, 0], [0, 0, 1]])
    assert Subspace.from_json(s.to_json()) == s


def test_nullspace_solves():
    rng = random.Random(3)
    for p in (2, 5):
        for _ in range(20):
            rows, cols = rng.randrange(1, 5), rng.randrange(1, 6)
            a = np.array([[rng.randrange(p) for _ in range(cols)] for _ in range(rows)], dtype=np.int64)
            ns = nullspace_array(a, p)
            assert not ((a @ ns.T) % p).any()
            rank = rref_array(a, p)[0]
            assert ns.shape[0] == cols - rank


def test_solve_affine():
    p = 5
    a = np.array([[1, 2], [2, 4]], dtype=np.int64)
    b = np.array([3, 6], dtype=np.int64)
    x0, hom = solve_affine(a, b, p)
    assert ((a @ x0) % p).tolist() == [3, 1]  # 6 mod 5
    assert hom.shape[0] == 1
    assert solve_affine(a, np.array([1, 0]), p) is None
