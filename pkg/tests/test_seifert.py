import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sbverify.lattice import is_primitive
from sbverify.seifert import (
    SIZE_LIMIT,
    InvariantError,
    SeifertCurve,
    SizeError,
    admissible_a1,
    check_prime,
    chern_coefficients,
    chern_coefficients_closed_form,
    construction_curves,
    construction_data,
    construction_w2,
    seifert_homology,
    seifert_report,
    spin_class,
    surjectivity_check,
    sw_contradiction_check,
)

primes = st.sampled_from([2, 3, 5, 7, 11])
coeffs = st.lists(st.integers(-20, 20), min_size=12, max_size=12)


def test_check_prime():
    assert check_prime(7) == 7
    with pytest.raises(InvariantError):
        check_prime(9)
    with pytest.raises(SizeError):
        check_prime(SIZE_LIMIT + 13)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_homology_of_construction(p):
    h = seifert_homology(11, construction_curves(p))
    assert h.free_rank == 11
    assert list(h.torsion) == [(p**i, 2) for i in range(1, 12)] + [(p**12, 6)]


def test_homology_validation():
    with pytest.raises(InvariantError):
        seifert_homology(3, construction_curves(2))
    with pytest.raises(InvariantError):
        seifert_homology(-1, construction_curves(2))
    # rational curves and trivial multiplicities contribute no torsion
    curves = [SeifertCurve(0, 5, -1), SeifertCurve(2, 1, 1)]
    assert seifert_homology(1, curves).torsion == ()


def test_orbit_invariants_must_be_coprime():
    with pytest.raises(InvariantError):
        construction_data(2, (0,) * 12, (2,) + (1,) * 11)
    with pytest.raises(InvariantError):
        construction_data(2, (0,) * 11)


def test_surjectivity():
    assert surjectivity_check([[1, 2], [0, 4]], [3, 4]) == [True, False]
    with pytest.raises(InvariantError):
        surjectivity_check([[1, 2, 3]], [2, 2])


@given(primes, coeffs)
def test_closed_form_matches_general_formula(p, a):
    data = construction_data(p, a)
    assert list(chern_coefficients(data).coords) == chern_coefficients_closed_form(p, a)


@given(primes, st.integers(-50, 50), st.integers(-50, 50))
def test_coprime_pair_gives_primitive_class(p, a1, a2):
    a = (a1, a2) + (0,) * 10
    if math.gcd(p * a1 + 1, p * p * a2 + 1) == 1:
        assert is_primitive(chern_coefficients(construction_data(p, a)))


@given(primes, st.integers(0, 3000), st.integers(-10**6, 10**6))
def test_forbidden_residues_agree_with_gcd(p, a2, a1):
    res = admissible_a1(p, a2)
    assert res.is_forbidden(a1) == (math.gcd(p * a1 + 1, p * p * a2 + 1) > 1)


@given(primes, st.integers(0, 300))
def test_residue_counts(p, a2):
    res = admissible_a1(p, a2)
    allowed = res.allowed_residues()
    assert len(allowed) == res.allowed_count
    assert res.excluded_count == res.modulus - len(allowed)
    assert res.density == Fraction(len(allowed), res.modulus)


def test_residue_classes_stable_under_translates():
    # every residue class behaves the same under 50 translates by the modulus
    for p in (2, 3, 5):
        for a2 in (1, 2, 7):
            res = admissible_a1(p, a2)
            for x in range(res.modulus):
                states = {math.gcd(p * (x + t * res.modulus) + 1, p * p * a2 + 1) > 1 for t in range(50)}
                assert states == {res.is_forbidden(x)}


def test_value_size_limit():
    with pytest.raises(SizeError):
        admissible_a1(3, 2**63)


def test_prime_two_residue():
    # Bezout: 1 + 3 a1 = 0 mod 2 forces a1 odd to be forbidden
    res = admissible_a1(3, 0, include_two=True)
    assert 2 in res.primes
    assert res.is_forbidden(1) and not res.is_forbidden(0)
    with pytest.raises(InvariantError):
        admissible_a1(2, 0, include_two=True)


def test_p2_always_spin():
    for a in [(0,) * 12, (1,) * 12, tuple(range(12))]:
        assert spin_class(construction_data(2, a), construction_w2()).spin


@given(st.sampled_from([3, 5, 7]), coeffs)
def test_odd_p_spin_iff_all_even(p, a):
    sp = spin_class(construction_data(p, a), construction_w2())
    assert sp.spin == all(x % 2 == 0 for x in a)


def test_spin_cases():
    w2 = construction_w2()
    assert not spin_class(construction_data(3, (0, 1) + (0,) * 10), w2).spin
    augmented = admissible_a1(3, 0, include_two=True)
    a1 = next(x for x in range(10) if not augmented.is_forbidden(x))
    assert spin_class(construction_data(3, (a1,) + (0,) * 11), w2).spin


def test_literal_zero_residue_for_two_gives_non_spin():
    # taking the residue mod 2 as 0 instead of the congruence value forbids even a1
    literal = admissible_a1(3, 0, include_two=True, alpha_two=0)
    allowed = [x for x in range(20) if not literal.is_forbidden(x)]
    assert allowed and all(x % 2 == 1 for x in allowed)
    w2 = construction_w2()
    assert not any(spin_class(construction_data(3, (x,) + (0,) * 11), w2).spin for x in allowed)


def test_spin_w2_length_checked():
    with pytest.raises(InvariantError):
        spin_class(construction_data(3, (0,) * 12), (1,) * 11)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_seifert_report(p):
    rep = seifert_report(p, (0,) * 12)
    assert rep.passed
    assert rep.witness("h1_zero") is True
    # all a_i = 0 are even, so every prime gives a spin manifold
    assert rep.witness("spin") is True


def test_seifert_report_detects_non_primitive_class():
    # every 2^i a_i + 1 divisible by 3 makes the whole class divisible by 3
    a = tuple((-pow(2, -i, 3)) % 3 for i in range(1, 13))
    rep = seifert_report(2, a)
    assert rep.find("seifert.chern_primitive").witness("gcd") % 3 == 0
    assert not rep.find("seifert.chern_primitive").passed
    assert rep.find("seifert.a1_admissible").passed
    assert not rep.passed


def test_sw_contradiction():
    rep = sw_contradiction_check()
    assert rep.passed
    assert rep.witness("noether_ksq") == 22
    assert rep.witness("basic_class_sq") == [-2]
