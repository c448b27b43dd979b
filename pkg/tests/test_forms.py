import json
import pathlib
import random

import numpy as np
import pytest

from commdim import (
    CertificationFailed,
    EnumerationTooLarge,
    FormTuple,
    GenericityCertificate,
    PrimeField,
    Subspace,
    certify_no_isotropic,
    enumerate_subspaces,
    find_common_isotropic,
    gaussian_binomial,
    is_common_isotropic,
    reverify_certificate,
    sample_form_tuple,
)

from oracles import brute_force_max_isotropic, random_invertible

F2 = PrimeField(2)
F3 = PrimeField(3)

GOLDEN = pathlib.Path(__file__).parent / "golden"


def symplectic_gf2_4():
    # standard symplectic form on GF(2)^4, block antidiagonal
    j = np.zeros((4, 4), dtype=np.int64)
    j[0, 2] = j[1, 3] = j[2, 0] = j[3, 1] = 1
    return FormTuple(4, 1, "alternating", F2, [j])


# ---------------------------------------------------------------- sampling


def test_sample_empty_space():
    ft = sample_form_tuple(0, 2, "alternating", F2, 7)
    assert ft.n == 0 and ft.t == 2
    assert all(m.a.shape == (0, 0) for m in ft.mats)


def test_sample_alternating_invariants():
    for seed in range(5):
        for p in (2, 3, 5):
            ft = sample_form_tuple(4, 2, "alternating", PrimeField(p), seed)
            for m in ft.mats:
                assert not np.diagonal(m.a).any()
                assert not ((m.a + m.a.T) % p).any()


def test_sample_symmetric_invariants():
    ft = sample_form_tuple(3, 2, "symmetric", F3, 11)
    for m in ft.mats:
        assert np.array_equal(m.a, m.a.T)


def test_sample_deterministic():
    a = sample_form_tuple(5, 3, "general", F3, 2024)
    b = sample_form_tuple(5, 3, "general", F3, 2024)
    c = sample_form_tuple(5, 3, "general", F3, 2025)
    assert a == b
    assert a != c


def test_sample_matches_golden_file():
    with open(GOLDEN / "form_n2_t1_p3_seed20240811.json") as fh:
        expected = json.load(fh)
    ft = sample_form_tuple(2, 1, "alternating", F3, 20240811)
    assert ft.to_json() == expected


def test_form_tuple_validation():
    with pytest.raises(ValueError):
        FormTuple(2, 1, "alternating", F3, [[[0, 1], [1, 0]]])  # not skew
    with pytest.raises(ValueError):
        FormTuple(2, 1, "symmetric", F3, [[[0, 1], [2, 0]]])
    with pytest.raises(ValueError):
        FormTuple(2, 2, "general", F3, [[[0, 1], [2, 0]]])  # wrong count


def test_form_tuple_json_round_trip():
    ft = sample_form_tuple(3, 2, "general", F3, 5)
    assert FormTuple.from_json(ft.to_json()) == ft


# ---------------------------------------------------------------- scanning


def test_symplectic_plane_witness():
    ft = symplectic_gf2_4()
    w = find_common_isotropic(ft, 2)
    assert w is not None and w.dim == 2
    assert is_common_isotropic(ft, w)
    # the witness is the first canonical isotropic plane among all 35
    for sub in enumerate_subspaces(4, 2, F2):
        if is_common_isotropic(ft, sub):
            assert sub == w
            break


def test_symplectic_no_lagrangian_3():
    assert find_common_isotropic(symplectic_gf2_4(), 3) is None


def test_all_zero_tuple_returns_first_subspace():
    z = FormTuple(3, 2, "alternating", F2, [np.zeros((3, 3), int)] * 2)
    for k in range(4):
        w = find_common_isotropic(z, k)
        assert w is not None
        first = next(iter(enumerate_subspaces(3, k, F2)))
        assert w == first


def test_every_line_isotropic_for_alternating():
    for seed in range(5):
        ft = sample_form_tuple(4, 3, "alternating", F3, seed)
        assert find_common_isotropic(ft, 1) is not None


def test_isotropy_is_basis_independent():
    rng = random.Random(17)
    ft = sample_form_tuple(4, 2, "alternating", F3, 99)
    for sub in enumerate_subspaces(4, 2, F3):
        status = is_common_isotropic(ft, sub)
        e = random_invertible(3, sub.dim, rng)
        scrambled = Subspace.span(3, (e @ sub.basis.a) % 3)
        assert scrambled == sub
        assert is_common_isotropic(ft, scrambled) == status


def test_monotonicity_in_k():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randrange(2, 5)
        t = rng.randrange(1, 4)
        ft = sample_form_tuple(n, t, "alternating", F2, rng.randrange(10**6))
        kmax = brute_force_max_isotropic(ft)
        for k in range(n + 1):
            found = find_common_isotropic(ft, k) is not None
            assert found == (k <= kmax)


def test_symmetric_restriction_mode():
    # phi = [[0,1],[0,0]]: span(e1) symmetric-restricts, the full plane does not
    ft = FormTuple(2, 1, "general", F2, [[[0, 1], [0, 0]]])
    w = find_common_isotropic(ft, 1, mode="symmetric-restriction")
    assert w is not None
    assert find_common_isotropic(ft, 2, mode="symmetric-restriction") is None
    sym = FormTuple(2, 1, "general", F2, [[[1, 1], [1, 0]]])
    assert find_common_isotropic(sym, 2, mode="symmetric-restriction") is not None


def test_scan_budget():
    ft = sample_form_tuple(10, 2, "alternating", F2, 0)
    with pytest.raises(EnumerationTooLarge):
        find_common_isotropic(ft, 5, budget=1000)


def test_scan_k_out_of_range():
    ft = sample_form_tuple(2, 1, "alternating", F2, 0)
    with pytest.raises(ValueError):
        find_common_isotropic(ft, 3)


# ---------------------------------------------------------------- certification


def test_vacuous_certificate():
    cert = certify_no_isotropic(1, 3, 2, F2, seed=4)
    assert cert.vacuous
    assert cert.subspaces_checked == 0
    assert reverify_certificate(cert)


def test_certificate_small_plane():
    with pytest.warns(UserWarning):  # 2n < t(k-1) fails here; warn-only
        cert = certify_no_isotropic(2, 3, 2, F2, seed=0, max_attempts=256)
    assert cert.subspaces_checked == 1  # only the full plane
    assert not cert.vacuous
    assert reverify_certificate(cert)


def test_certificate_main_instance():
    cert = certify_no_isotropic(7, 5, 4, F2, seed=1000, max_attempts=1000)
    assert cert.subspaces_checked == gaussian_binomial(7, 4, 2) == 11811
    assert reverify_certificate(cert)


def test_certification_failure_carries_witness():
    # k = 1 can never be certified for alternating forms: lines are isotropic
    with pytest.warns(UserWarning):
        with pytest.raises(CertificationFailed) as exc:
            certify_no_isotropic(2, 1, 1, F2, seed=0, max_attempts=4)
    assert exc.value.witness is not None
    assert exc.value.witness.dim == 1


def test_certify_warns_when_inequality_fails():
    # 2n < t(k-1) fails but a nonzero form on the plane still certifies
    with pytest.warns(UserWarning, match="not guaranteed"):
        cert = certify_no_isotropic(2, 1, 2, F2, seed=3, max_attempts=64)
    assert cert.subspaces_checked == 1


def test_certificates_deterministic():
    a = certify_no_isotropic(3, 4, 3, F2, seed=7, max_attempts=64)
    b = certify_no_isotropic(3, 4, 3, F2, seed=7, max_attempts=64)
    assert a.to_json() == b.to_json()


def test_certificate_json_round_trip():
    with pytest.warns(UserWarning):
        cert = certify_no_isotropic(2, 3, 2, F2, seed=0)
    obj = cert.to_json()
    assert obj["verdict"] == "certified"
    assert obj["subspaces_checked"] == "1"
    back = GenericityCertificate.from_json(obj)
    assert back.to_json() == obj
    assert reverify_certificate(back)


def test_reverify_detects_tampered_matrix():
    with pytest.warns(UserWarning):
        cert = certify_no_isotropic(2, 3, 2, F2, seed=0)
    obj = cert.to_json()
    obj["mats"][0]["entries"][1] ^= 1
    obj["mats"][0]["entries"][2] ^= 1  # keep it alternating so parsing succeeds
    tampered = GenericityCertificate.from_json(obj)
    assert not reverify_certificate(tampered)


def test_reverify_detects_wrong_count():
    with pytest.warns(UserWarning):
        cert = certify_no_isotropic(2, 3, 2, F2, seed=0)
    obj = cert.to_json()
    obj["subspaces_checked"] = str(cert.subspaces_checked - 1)
    assert not reverify_certificate(GenericityCertificate.from_json(obj))


def test_reverify_detects_wrong_k():
    cert = certify_no_isotropic(3, 4, 3, F2, seed=7, max_attempts=64)
    obj = cert.to_json()
    obj["k"] = cert.k - 1
    assert not reverify_certificate(GenericityCertificate.from_json(obj))


# ---------------------------------------------------------------- parallel scan


def test_parallel_scan_matches_sequential():
    ft = sample_form_tuple(5, 2, "alternating", F2, 31)
    for k in (2, 3):
        seq = find_common_isotropic(ft, k, jobs=1)
        par = find_common_isotropic(ft, k, jobs=2)
        assert seq == par


def test_parallel_certificate_identical():
    a = certify_no_isotropic(6, 5, 4, F2, seed=11, max_attempts=64, jobs=1)
    b = certify_no_isotropic(6, 5, 4, F2, seed=11, max_attempts=64, jobs=2)
    assert a.to_json() == b.to_json()
