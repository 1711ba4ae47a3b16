import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sbverify.divisor import (
    Curve,
    DomainError,
    InconsistencyError,
    ObstructionInstance,
    ScanConfig,
    SurfaceInvariants,
    bound_rhs,
    canonical_from_curves,
    case1_inequality_chain,
    case1_scan,
    case2_check,
    clifford_bound,
    curve_h0,
    noether_check,
    noether_ksq,
    obstruction_report,
    reverse_reconstruction_check,
    riemann_roch_chi,
    max_b_bound,
)
from sbverify.lattice import blowup_basis, canonical_class, construction_classes
from sbverify.report import Status


@pytest.fixture(scope="module")
def blowup_surface():
    X = blowup_basis(11)
    cls = construction_classes(X)
    curves = [Curve(cls[f"c{k}"], 1, f"c{k}") for k in range(1, 12)] + [Curve(cls["d"], 3, "d")]
    return SurfaceInvariants(0, 12, 0, 0, 14, canonical_class(X), curves)


def test_bound_rhs_small_genus_values():
    # 4g - 2 - 1 + (2g - 3)^2
    assert bound_rhs(3, 1) == 18
    assert bound_rhs(2, 1) == 6
    assert math.floor(bound_rhs(3, 1) / 2) == 9 == max_b_bound(3)
    assert math.floor(bound_rhs(2, 1) / 2) == 3 == max_b_bound(2)


def test_bound_rhs_domain():
    with pytest.raises(DomainError):
        bound_rhs(1, 1)
    with pytest.raises(DomainError):
        bound_rhs(3, 0)


def test_theorem_bound_values():
    assert [max_b_bound(g) for g in (1, 2, 3, 4)] == [1, 3, 9, 19]
    with pytest.raises(DomainError):
        max_b_bound(0)


@given(st.integers(2, 40), st.integers(1, 500))
def test_bound_rhs_closed_form_and_monotone(g, m1):
    assert bound_rhs(g, m1) == 2 + Fraction((2 * g - 2) ** 2, m1)
    assert bound_rhs(g, m1 + 1) < bound_rhs(g, m1)


def test_noether_on_blowup(blowup_surface):
    check = noether_check(blowup_surface)
    assert check.passed and check.rhs == 1
    assert noether_ksq(1, 14) == -2


def test_riemann_roch_on_construction_classes(blowup_surface):
    X = blowup_surface.K.basis
    cls = construction_classes(X)
    # chi(c_k) = 1 + (-1 - 1)/2 = 0 and chi(d) = 1 + (1 - 3)/2 = 0
    assert riemann_roch_chi(blowup_surface, cls["c1"]) == 0
    assert riemann_roch_chi(blowup_surface, cls["d"]) == 0
    assert riemann_roch_chi(blowup_surface, X["h"]) == 3


def test_surface_inconsistency_detected():
    X = blowup_basis(11)
    with pytest.raises(InconsistencyError):
        SurfaceInvariants(0, 12, 0, 0, 13, canonical_class(X))
    d = construction_classes(X)["d"]
    with pytest.raises(InconsistencyError):
        SurfaceInvariants(0, 12, 0, 0, 14, canonical_class(X), [Curve(d, 2)])


def test_curve_h0_and_clifford_ranges():
    assert curve_h0(-1, 1) == 0
    assert curve_h0(1, 1) == 1
    assert curve_h0(5, 3) == 3
    with pytest.raises(DomainError):
        curve_h0(0, 1)
    assert [clifford_bound(d, 3) for d in range(5)] == [1, 1, 2, 2, 3]
    with pytest.raises(DomainError):
        clifford_bound(5, 3)
    with pytest.raises(DomainError):
        clifford_bound(-1, 3)


def test_canonical_coefficients():
    inst = ObstructionInstance(3, (1,) * 12)
    assert canonical_from_curves(inst) == [3] + [-1] * 11
    inst = ObstructionInstance(3, (2, 1, 3), (0, 1))
    assert canonical_from_curves(inst) == [Fraction(2, 2), Fraction(-1), Fraction(-1)]


def test_instance_validation():
    with pytest.raises(DomainError):
        ObstructionInstance(3, (0, 1))
    with pytest.raises(DomainError):
        ObstructionInstance(3, (1, 1), (1, 1))
    with pytest.raises(DomainError):
        ObstructionInstance(0, (1, 1))


def test_chain_for_all_ones():
    rep = case1_inequality_chain(ObstructionInstance(3, (1,) * 12))
    assert rep.passed
    assert rep.witness("two_b_upper_bound") == 18
    assert rep.witness("admissible") is False
    assert {c.claim_id for c in rep.children} >= {"chain.halve_and_floor", "chain.substitute_ksq"}


def test_short_configuration_is_admissible_and_unflagged():
    inst = ObstructionInstance(3, (1,) * 4)
    rep = case1_inequality_chain(inst)
    assert rep.witness("admissible") is True and rep.witness("flagged") is False and rep.passed


def _brute_admissible(g, m, alpha):
    """Admissibility from raw coordinates, with no aggregated closed forms."""
    b = len(m)
    squares = [m[0]] + [-x for x in m[1:]]
    K = [Fraction(2 * g - 2 - m[0], m[0])] + [Fraction(-1)] * (b - 1)
    F = [K[0] + 1] + [K[i] - alpha[i - 1] for i in range(1, b)]
    free_sq = sum(f * f * s for f, s in zip(F, squares))
    r = sum(1 for a in alpha if a)
    lower = 2 * (b - 1) - sum(m[1:]) - r
    return free_sq >= lower and free_sq >= 0


@pytest.mark.parametrize("g,b,m_max,alpha_max", [(3, 4, 4, 2), (2, 3, 5, 3), (4, 3, 6, 1)])
def test_scan_matches_brute_force(g, b, m_max, alpha_max):
    cfg = ScanConfig(g, b, m_max, alpha_max, use_noether=False)
    rep = case1_scan(cfg)
    rows = {row["m1"]: row for row in rep.witness("per_m1")}
    for m1 in range(1, m_max + 1):
        count = adm = 0
        for rest in product(range(1, m_max + 1), repeat=b - 1):
            for alpha in product(range(alpha_max + 1), repeat=b - 1):
                count += 1
                adm += _brute_admissible(g, (m1,) + rest, alpha)
        assert rows[m1]["instances"] == count
        assert rows[m1]["admissible"] == adm
        assert rows[m1]["step_failures"] == 0


def test_scan_with_noether_pin_matches_brute_force():
    g, b, m_max, amax = 3, 4, 9, 1
    cfg = ScanConfig(g, b, m_max, amax)
    rep = case1_scan(cfg)
    rows = {row["m1"]: row for row in rep.witness("per_m1")}
    for m1 in range(1, m_max + 1):
        target = Fraction((2 * g - 2 - m1) ** 2, m1) - (10 - b)
        count = adm = 0
        for rest in product(range(1, m_max + 1), repeat=b - 1):
            if sum(rest) != target:
                continue
            for alpha in product(range(amax + 1), repeat=b - 1):
                count += 1
                adm += _brute_admissible(g, (m1,) + rest, alpha)
        assert rows[m1]["instances"] == count
        assert rows[m1]["admissible"] == adm


def test_default_scan():
    rep = case1_scan(ScanConfig())
    assert rep.passed
    assert rep.witness("instances") == 2 * 4**11
    assert rep.witness("admissible") == 0
    assert {row["m1"] for row in rep.witness("per_m1") if row["instances"]} == {1, 16}


def test_scan_parallel_equals_serial():
    cfg = ScanConfig()
    assert case1_scan(cfg, workers=2).to_json() == case1_scan(cfg, workers=1).to_json()


def test_case2():
    assert case2_check(1).status is Status.SKIP
    rep = case2_check(2)
    assert rep.passed and rep.note == "b2 <= 1 violated => configuration impossible"
    with pytest.raises(DomainError):
        case2_check(0)


def test_reverse_reconstruction():
    rep = reverse_reconstruction_check()
    assert rep.passed
    assert rep.witness("h0_3D1") == 11 and rep.witness("clifford_ceiling") == 6
    assert "h0(K_S)=0" in dict(rep.metadata)["axioms"]


def test_obstruction_report_routes():
    assert obstruction_report(3, 9).status is Status.SKIP
    rep = obstruction_report(3, 12)
    assert rep.passed
    ids = {c.claim_id for c in rep.children}
    assert ids == {"obstruction.case1_scan", "obstruction.case1_chain", "obstruction.reverse_reconstruction"}
    assert obstruction_report(1, 2).passed


@settings(max_examples=60)
@given(st.integers(2, 6), st.lists(st.integers(1, 8), min_size=2, max_size=6), st.data())
def test_chain_steps_hold_for_random_instances(g, m, data):
    alpha = data.draw(st.lists(st.integers(0, 3), min_size=len(m) - 1, max_size=len(m) - 1))
    rep = case1_inequality_chain(ObstructionInstance(g, tuple(m), tuple(alpha)))
    assert all(c.passed for c in rep.children)
    assert rep.witness("admissible") == _brute_admissible(g, m, alpha)
