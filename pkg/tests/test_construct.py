import math
from fractions import Fraction

import pytest

from orthomorph import construct
from orthomorph.construct import (
    WalkChoice,
    build_poset,
    enumerate_walks,
    generate_all,
    lift,
    prime_reduction,
    realize_sigma,
    reformulate,
    run_walk,
    theorem3_bound,
    theorem3_product_form,
    theorem3_terms,
)
from orthomorph.errors import ConsistencyError
from orthomorph.numth import totient
from orthomorph.ortho import OrthoKind, is_orthomorphism, verify_certificate
from orthomorph.search import Mode, SearchSpec, search

EXP = OrthoKind.EXPONENTIAL


@pytest.fixture(scope="module")
def all14():
    res = search(SearchSpec(14, EXP, Mode.ENUMERATE_ALL))
    assert res.exhausted
    return {c.sigma for c in res.certificates}


def test_initial_poset_n14():
    P = build_poset(14)
    assert P.labels == {1: [1, 5, 7, 11, 13], 2: [2, 4, 8, 10], 3: [3, 9], 6: [6, 12]}
    assert [len(P.labels[d]) for d in (1, 2, 3, 6)] == [2 * totient(6) + 1, 2 * totient(3), 2 * totient(2), 2 * totient(1)]


def test_initial_poset_n6():
    assert build_poset(6).labels == {1: [1, 3, 5], 2: [2, 4]}


@pytest.mark.parametrize("n", [10, 26, 9, 8, 16])
def test_inadmissible_n_rejected(n):
    with pytest.raises(ValueError):
        build_poset(n)


def test_lattice_shape():
    P = build_poset(2 * 31)  # 30 = 2 * 3 * 5
    assert len(P.poset.nodes) == 2 ** (P.poset.k + 1) == 8
    assert len(P.poset.chains()) == math.factorial(3)
    assert P.poset.covers(1) == [2, 3, 5] and P.poset.covers(30) == []


def test_figure_walk():
    final = run_walk(build_poset(14), WalkChoice((1, 2, 6), (7, 10, 12)))
    assert {d: sorted(v) for d, v in final.labels.items()} == {1: [1, 5, 11, 13], 2: [2, 4, 7, 8], 3: [3, 9], 6: [6, 10]}
    assert final.leftover == 12


def test_eligible_at_bottom():
    assert build_poset(14).eligible(1) == [1, 7, 13]


def test_walk_n6():
    final = run_walk(build_poset(6), WalkChoice((1, 2), (1, 2)))
    assert {d: sorted(v) for d, v in final.labels.items()} == {1: [3, 5], 2: [1, 4]}
    assert final.leftover == 2


def test_run_walk_rejects_bad_picks():
    with pytest.raises(ValueError):
        run_walk(build_poset(14), WalkChoice((1, 2, 6), (5, 10, 12)))
    with pytest.raises(ValueError):
        run_walk(build_poset(14), WalkChoice((1, 6), (7, 12)))


def test_run_walk_does_not_mutate_input():
    P = build_poset(14)
    before = P.configuration()
    run_walk(P, WalkChoice((1, 2, 6), (7, 10, 12)))
    assert P.configuration() == before


@pytest.mark.parametrize("n, walks", [(14, 54), (22, 54)])
def test_walk_counts(n, walks):
    assert len(enumerate_walks(n)) == walks
    counts = construct.walk_counts(n)
    assert counts["enumerated"] == counts["proof_form"] == counts["theorem_form"] == walks


def test_walk_count_forms_disagree_for_k0():
    counts = construct.walk_counts(6)
    assert counts["enumerated"] == counts["proof_form"] == 9
    assert counts["theorem_form"] == 6


def test_walk_count_forms_disagree_for_k2():
    counts = construct.walk_counts(62)
    assert counts["enumerated"] == counts["proof_form"] == 3**4 * 6
    assert counts["theorem_form"] == math.factorial(4) * 27


@pytest.mark.parametrize("n", [6, 14, 22])
def test_walk_invariants(n):
    initial = build_poset(n)
    poset = initial.poset
    total = sum(len(v) for v in initial.labels.values())
    for walk in enumerate_walks(n, initial):
        final = run_walk(initial, walk)
        assert sum(len(v) for v in final.labels.values()) == total - 1
        for d in poset.nodes:
            e = poset.top // d
            assert len(final.labels[d]) == 2 * totient(e)
            assert all(math.gcd(x, e) == 1 for x in final.labels[d])


def test_realize_n6_by_hand():
    final = run_walk(build_poset(6), WalkChoice((1, 2), (1, 2)))
    elements = construct.classify_elements(6)
    assert sorted(el.x for side in elements[2].values() for el in side) == [1, 4]
    splits = {d: construct.node_splits(final, d)[0] for d in final.poset.nodes}
    cert = realize_sigma(final, splits)
    assert verify_certificate(cert)
    assert pow(1, 1, 6) == 1 and pow(4, 4, 6) == 4


def test_realize_sigma_special_element():
    final = run_walk(build_poset(14), WalkChoice((1, 2, 6), (7, 10, 12)))
    splits = {d: construct.node_splits(final, d)[0] for d in final.poset.nodes}
    cert = realize_sigma(final, splits)
    assert cert.sigma[7 - 1] == 12 and pow(7, 12, 14) == 7
    assert verify_certificate(cert) and cert.kind is EXP


def test_realize_sigma_catches_bad_assignment():
    final = run_walk(build_poset(14), WalkChoice((1, 2, 6), (7, 10, 12)))
    splits = {d: construct.node_splits(final, d)[0] for d in final.poset.nodes}
    elements = construct.classify_elements(14)
    evens = [el.x for el in elements[1]["E"]]
    reused = splits[1].right[0]  # an odd-side label, so sigma repeats a value
    with pytest.raises(ConsistencyError):
        realize_sigma(final, splits, {(1, "E"): {x: reused for x in evens}})


@pytest.mark.parametrize("n", [6, 14])
def test_generate_all_contained_in_search(n):
    certs = generate_all(n)
    exhaustive = {c.sigma for c in search(SearchSpec(n, EXP, Mode.ENUMERATE_ALL)).certificates}
    assert certs and all(verify_certificate(c) for c in certs)
    assert {c.sigma for c in certs} <= exhaustive
    assert len(certs) >= theorem3_bound(n)


def test_generate_all_n6_finds_every_orthomorphism():
    assert len(generate_all(6)) == search(SearchSpec(6, EXP)).count == 36


def test_theorem3_bound_n14():
    assert theorem3_terms(14) == (math.factorial(3) * 3**2 * 2**13, 4 * 12**3) == (442368, 6912)
    assert theorem3_bound(14) == 64
    assert theorem3_product_form(14) == theorem3_bound(14)


def test_theorem3_bound_n22():
    expected = Fraction(math.factorial(3) * 9 * 2**21, 4 * 20**3)
    assert theorem3_bound(22) == expected
    assert float(theorem3_bound(22)) == pytest.approx(3538.944)
    assert theorem3_product_form(22) == expected


@pytest.mark.parametrize("n", [6, 14, 22, 62, 142])
def test_product_form_equals_closed_form(n):
    assert theorem3_product_form(n) == theorem3_bound(n)


def test_theorem3_bound_k0_is_irrational():
    b = theorem3_bound(6)
    assert not b.is_rational
    assert float(b) == pytest.approx(math.factorial(2) * 3 * 2**5.5 / (4 * 4**1.5))


def test_prime_reduction_n3():
    report = prime_reduction(3)
    assert report["exponential_count"] == report["multiplicative_count"] == 1
    assert report["forward_ok"] and report["backward_ok"]
    assert report["pairs"] == [((2, 1), (1,))]


@pytest.mark.parametrize("n", [5, 7])
def test_prime_reduction_empty(n):
    report = prime_reduction(n)
    assert report["exponential_count"] == report["multiplicative_count"] == 0
    assert report["exhausted"]


def test_value_multiset():
    S = construct.value_multiset(7)
    assert sum(S.values()) == 13
    assert S == {1: 3, 2: 2, 3: 2, 4: 2, 5: 2, 6: 2}


def test_reformulation_of_valid_certificates(all14):
    for sigma in list(all14)[:200]:
        ref = reformulate(14, sigma)
        assert ref.is_valid()
        again = lift(ref)
        assert reformulate(14, again) == ref
        assert is_orthomorphism(again, EXP, 14)


def test_reformulation_rejects_invalid():
    sigma = tuple(range(1, 14))
    assert not is_orthomorphism(sigma, EXP, 14)
    assert not reformulate(14, sigma).is_valid()


def test_positional_form_matches_display():
    sigma = search(SearchSpec(14, EXP, Mode.EXISTS)).certificates[0].sigma
    a, b, c = reformulate(14, sigma).positional()

    def res(v):
        return (v - 1) % 6 + 1

    assert a == tuple(res(sigma[x - 1]) for x in (1, 3, 5, 9, 11, 13))
    assert b == tuple(res(sigma[x - 1]) for x in (2, 4, 6, 8, 10, 12))
    assert c == res(sigma[7 - 1])


@pytest.mark.parametrize("n", [6, 14])
def test_reformulation_count_matches_search(n):
    assert construct.count_via_reformulation(n) == search(SearchSpec(n, EXP)).count
