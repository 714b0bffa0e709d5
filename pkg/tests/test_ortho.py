import itertools

import pytest
from hypothesis import given, strategies as st

from orthomorph.numth import rank
from orthomorph.ortho import (
    OrthoCertificate,
    OrthoKind,
    Permutation,
    check_certificate,
    combined_map,
    is_orthomorphism,
    read_certificates,
    verify_certificate,
)

ADD, MUL, EXP = OrthoKind.ADDITIVE, OrthoKind.MULTIPLICATIVE, OrthoKind.EXPONENTIAL


def test_combined_map_examples():
    assert combined_map((1, 2, 3, 4), ADD) == (2, 4, 1, 3)
    sigma = (2, 1, 4, 5, 3)
    direct = tuple(pow(x, s, 6) for x, s in zip(range(1, 6), sigma))
    assert combined_map(sigma, EXP) == direct == (1, 2, 3, 4, 5)
    assert combined_map((1,), MUL) == (1,)


def test_exponents_are_not_reduced():
    assert combined_map(Permutation(7, (6, 5, 4, 3, 2, 1)), EXP)[2] == pow(3, 4, 7)


def test_is_orthomorphism_examples():
    assert is_orthomorphism(Permutation.identity(5), ADD)
    assert not is_orthomorphism((2, 1), ADD)
    assert is_orthomorphism((2, 1, 3), EXP)


def test_non_bijective_sigma_is_rejected():
    # image (2, 4, 1, 3) would be fine, but sigma repeats a value
    assert not is_orthomorphism((1, 1, 3, 4), ADD)


def test_length_mismatch_raises():
    with pytest.raises(ValueError):
        is_orthomorphism((1, 2), ADD, n=5)


def test_kind_parsing():
    assert OrthoKind.parse("Exponential") is EXP
    with pytest.raises(ValueError):
        OrthoKind.parse("division")


def test_certificate_roundtrip_and_verify():
    cert = OrthoCertificate.from_sigma((2, 1, 4, 5, 3), EXP)
    assert verify_certificate(cert)
    rec = cert.to_record()
    assert rec == {"n": 6, "kind": "exponential", "sigma": [2, 1, 4, 5, 3], "image": [1, 2, 3, 4, 5]}
    assert OrthoCertificate.from_json(cert.to_json()) == cert
    assert list(read_certificates([cert.to_json(), "", cert.to_json()])) == [cert, cert]


def test_tampered_certificate_reports_index():
    cert = OrthoCertificate.from_sigma((2, 1, 4, 5, 3), EXP)
    bad = OrthoCertificate(6, EXP, cert.sigma, (1, 2, 3, 5, 5))
    problem = check_certificate(bad)
    assert not verify_certificate(bad)
    assert problem.index == 4


def test_structural_problems():
    assert check_certificate(OrthoCertificate(6, EXP, (1, 2), (1, 2))).index is None
    assert check_certificate(OrthoCertificate(4, ADD, (1, 1, 2), (2, 3, 1))).index == 2
    # identity mod 4 sends 2 to 2 + 2 = 0
    problem = check_certificate(OrthoCertificate.from_sigma((1, 2, 3), ADD))
    assert problem is not None and "combined" in problem.reason


def test_multiplicative_n2():
    assert verify_certificate(OrthoCertificate.from_sigma((1,), MUL))


def _all_orthomorphisms(n, kind):
    for perm in itertools.permutations(range(1, n)):
        if is_orthomorphism(perm, kind, n):
            yield perm


@pytest.mark.parametrize("n", range(2, 9))
def test_rank_is_preserved(n):
    for sigma in _all_orthomorphisms(n, EXP):
        image = combined_map(sigma, EXP)
        assert all(rank(y, n) == rank(x, n) for x, y in zip(range(1, n), image))
    for sigma in _all_orthomorphisms(n, MUL):
        image = combined_map(sigma, MUL)
        for x, s, y in zip(range(1, n), sigma, image):
            assert rank(y, n) == rank(x, n) == rank(s, n)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_prime_exponential_sends_one_to_minus_one(n):
    for sigma in _all_orthomorphisms(n, EXP):
        assert sigma[0] == n - 1


@given(st.integers(2, 12).flatmap(lambda n: st.permutations(range(1, n))), st.sampled_from(list(OrthoKind)))
def test_predicate_is_pure(perm, kind):
    perm = tuple(perm)
    first = is_orthomorphism(perm, kind)
    assert is_orthomorphism(list(perm), kind) == first
    assert is_orthomorphism(Permutation(len(perm) + 1, perm), kind) == first
    if first:
        assert verify_certificate(OrthoCertificate.from_sigma(perm, kind))
