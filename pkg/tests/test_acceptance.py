"""The ten acceptance criteria, one test each.

Each test records a one-line PASS/FAIL summary that is printed after the run
(``pytest tests/test_acceptance.py``) or directly with
``python3 tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest
import sympy

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE_LINES  # noqa: E402

from sbverify.config_model import ModelParams, assemble_G, certify_bounds, certify_pair, pair_list  # noqa: E402
from sbverify.config_model.certify import (  # noqa: E402
    ROOT_TOL,
    ball_radius,
    check_symplectic_graph,
    disc_grid,
    outside_balls,
)
from sbverify.config_model.sections import SectionFamily  # noqa: E402
from sbverify.divisor import (  # noqa: E402
    ScanConfig,
    bound_rhs,
    case1_scan,
    reverse_reconstruction_check,
    max_b_bound,
)
from sbverify.lattice import (  # noqa: E402
    blowup_basis,
    construction_classes,
    gram_matrix,
    pair,
    plane_curve_genus,
    smith_normal_form,
    determinant,
    is_primitive,
    matmul,
    verify_basis,
)
from sbverify.seifert import (  # noqa: E402
    admissible_a1,
    chern_coefficients,
    construction_curves,
    construction_data,
    construction_w2,
    seifert_homology,
    spin_class,
    sw_contradiction_check,
)


def _record(n: int, ok: bool, detail: str, seconds: float):
    ACCEPTANCE_LINES[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({seconds:.3f} s)  {detail}"


def _timed(fn, repeat: int = 1):
    """Result and best wall time over ``repeat`` runs (deterministic work, so the minimum is the cost)."""
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


# ---------------------------------------------------------------------------


def criterion_1():
    def run():
        X = blowup_basis(11)
        cls = construction_classes(X)
        fam = [cls[f"c{k}"] for k in range(1, 12)] + [cls["d"]]
        return gram_matrix(fam), verify_basis(fam)

    (gram, check), dt = _timed(run, repeat=20)
    want = [[(-1 if i < 11 else 1) if i == j else 0 for j in range(12)] for i in range(12)]
    ok = gram == want and check.is_basis and abs(check.det) == 1 and dt < 1e-3
    return ok, f"Gram = diag(-1^11, +1): {gram == want}; det = {check.det}", dt


def criterion_2():
    rep, dt = _timed(reverse_reconstruction_check, repeat=20)
    w = {c.claim_id: c for c in rep.children}
    ok = (
        dt < 1e-3
        and rep.passed
        and w["reverse.contradiction"].witness("h0_3D1") == 11
        and w["reverse.contradiction"].witness("ceiling") == 6
        and w["reverse.chi_H"].witness("chi_H") == 3
        and w["reverse.chi_E"].witness("chi_E") == 1
        and w["reverse.ksq_lattice"].witness("ksq") == -2
        and w["reverse.noether_ksq"].witness("ksq") == -2
        and w["reverse.pairings"].passed
        and w["reverse.gram_H_E"].passed
    )
    return ok, "h0(3 D1) = 11 > 6 = Clifford ceiling; chi(H) = 3, chi(E_j) = 1, K^2 = -2", dt


def criterion_3():
    rep, dt = _timed(lambda: case1_scan(ScanConfig(g=3, b=12, m_max=16, alpha_max=3), workers=1))
    bound = max_b_bound(3)
    adm = rep.witness("admissible")
    n = rep.witness("instances")
    ok = bound == 9 and rep.passed and adm == 0 and n == 2 * 4**11 and dt < 10
    return ok, f"bound(3) = {bound}; {n} instances scanned, {adm} admissible", dt


def criterion_4(workers: int = 1):
    params = ModelParams()
    cert = certify_bounds(params)
    lam = min(0.25, cert.lambda_max / 2)

    def run():
        return {(a, b): certify_pair(params, lam, a, b) for a, b in pair_list()}

    reports, dt = _timed(run)
    kinds = {"ss": [], "st": [], "tt": []}
    for (a, b), rep in reports.items():
        key = ("s" if a[0] == "sigma" else "t") + ("s" if b[0] == "sigma" else "t")
        kinds[key].append(rep)
    counts = {k: sorted({r.witness("located") for r in v if r.passed}) for k, v in kinds.items()}
    ok = (
        all(r.passed for r in reports.values())
        and len(kinds["ss"]) == math.comb(11, 2) and counts["ss"] == [9]
        and len(kinds["st"]) == 33 and counts["st"] == [10]
        and len(kinds["tt"]) == 3 and counts["tt"] == [11]
        and all(max(r.witness("residuals")) < ROOT_TOL for r in reports.values() if r.passed)
        and all(r.witness("located") == r.witness("boundary_winding") + r.witness("poles_inside")
                for r in reports.values() if r.passed)
        and all(set(r.witness("multiplicities")) == {1} for r in reports.values() if r.passed)
        and dt < 60
    )
    bad = [r.claim_id for r in reports.values() if not r.passed]
    return ok, (f"{len(kinds['ss'])} sigma pairs x 9, {len(kinds['st'])} sigma-tau x 10, "
                f"{len(kinds['tt'])} tau pairs x 11 simple roots; failing: {bad or 'none'}"), dt


def criterion_5():
    def run():
        params = ModelParams()
        cert = certify_bounds(params)
        fam = SectionFamily(params, min(0.25, cert.lambda_max / 2))
        r = 0.5 + 0.5 * (np.arange(100) + 0.5) / 100
        th = 2 * np.pi * (np.arange(100) + 0.5) / 100
        zz = (r[:, None] * np.exp(1j * th)[None, :]).ravel()
        worst = max(float(np.max(np.abs(fam.sigma(j, zz, "V") - zz**-9 * fam.sigma(j, zz, "D"))
                                 / np.abs(fam.sigma(j, zz, "V")))) for j in range(1, 11))
        G = assemble_G(fam, params)
        pts = disc_grid()
        rq = ball_radius(fam)
        dens = min(check_symplectic_graph(s, outside_balls(fam, pts, rq) if s.poles else pts, G.eps).min_density
                   for s in fam.sections())
        return zz.size, worst, dens, G.eps

    (npts, worst, dens, eps), dt = _timed(run)
    ok = npts == 10**4 and worst < 1e-12 and dens > 0 and dt < 30
    return ok, f"{npts} points, max relative error {worst:.2e}; min density {dens:.6f} at eps = {eps:.3g}", dt


def criterion_6():
    def run():
        params = ModelParams()
        cert = certify_bounds(params)
        fam = SectionFamily(params, min(0.25, cert.lambda_max / 2))
        return assemble_G(fam, params), plane_curve_genus(10, [3] * 11)

    (G, adj), dt = _timed(run)
    ok = G.euler == -4 and G.genus == 3 and adj == 3 and isinstance(adj, Fraction) and adj == Fraction(9 * 8, 2) - 33
    return ok, f"chi(G) = {G.euler}, genus {G.genus}; adjunction 36 - 33 = {adj}", dt


def _brute_forbidden(p, a1, a2):
    return math.gcd(p * a1 + 1, p * p * a2 + 1) > 1


def criterion_7():
    def run():
        homology_ok = True
        for p in (2, 3, 5):
            h = seifert_homology(11, construction_curves(p))
            want = [(p**i, 2) for i in range(1, 12)] + [(p**12, 6)]
            homology_ok &= h.free_rank == 11 and list(h.torsion) == want
        primitive = all(is_primitive(chern_coefficients(construction_data(p, (0,) * 12))) for p in (2, 3, 5))
        property_ok = True
        checked = 0
        for p in (2, 3, 5):
            for a2 in range(0, 12):
                res = admissible_a1(p, a2)
                for x in range(res.modulus):
                    for t in range(50):
                        a1 = x + t * res.modulus
                        property_ok &= res.is_forbidden(a1) == _brute_forbidden(p, a1, a2)
                        checked += 1
                property_ok &= len(res.allowed_residues()) == res.allowed_count
        return homology_ok, primitive, property_ok, checked

    (hom, prim, prop, checked), dt = _timed(run)
    ok = hom and prim and prop and dt < 1
    return ok, f"H2 matches for p = 2, 3, 5: {hom}; primitive: {prim}; {checked} residue translates agree: {prop}", dt


def criterion_8():
    def run():
        w2 = construction_w2()
        p2 = spin_class(construction_data(2, (0,) * 12), w2).spin
        odd_a2 = (0, 1) + (0,) * 10
        p3_nonspin = not spin_class(construction_data(3, odd_a2), w2).spin
        # the augmented set (prime 2 with its congruence residue) forbids odd a1
        res = admissible_a1(3, 0, include_two=True)
        a1 = next(x for x in range(100) if not res.is_forbidden(x))
        a = (a1, 0) + (0,) * 10
        p3_spin = a1 % 2 == 0 and spin_class(construction_data(3, a), w2).spin
        return p2, p3_nonspin, p3_spin

    (p2, ns, s), dt = _timed(run)
    return p2 and ns and s, f"p = 2 spin: {p2}; p = 3, a2 odd non-spin: {ns}; p = 3 augmented set spin: {s}", dt


def criterion_9():
    rep, dt = _timed(sw_contradiction_check)
    kids = {c.claim_id: c for c in rep.children}
    ok = (
        rep.passed
        and kids["sw.kappa_squares"].witness("patterns") == 32
        and rep.witness("basic_class_sq") == [-2]
        and rep.witness("noether_ksq") == 22
        and kids["sw.signature"].witness("b2_plus") == 5
        and kids["sw.signature"].witness("b2_minus") == 31
    )
    return ok, "32 patterns with kappa^2 = -2 against K^2 = 22; b2+ = 5, b2- = 31", dt


def _determinantal_invariants(m):
    """Invariant factors from gcds of k x k minors."""
    rows, cols = len(m), len(m[0])
    M = sympy.Matrix(m)
    d = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for r in combinations(range(rows), k):
            for c in combinations(range(cols), k):
                g = math.gcd(g, int(M.extract(list(r), list(c)).det()))
        if g == 0:
            break
        d.append(g)
    return [d[i] // d[i - 1] for i in range(1, len(d))]


def criterion_10(seed: int = 0):
    def run():
        rng = random.Random(seed)
        snf_ok = True
        for _ in range(200):
            m = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
            s = smith_normal_form(m)
            diag = [[s.diagonal[i] if i == j else 0 for j in range(4)] for i in range(4)]
            snf_ok &= matmul(matmul(s.left, m), s.right) == diag
            snf_ok &= abs(determinant(s.left)) == 1 and abs(determinant(s.right)) == 1
            snf_ok &= s.factors == _determinantal_invariants(m)
            snf_ok &= all(s.factors[i + 1] % s.factors[i] == 0 for i in range(len(s.factors) - 1))
        X = blowup_basis(11)
        pair_ok = True
        for _ in range(500):
            a, b, c = (X.vector([rng.randint(-20, 20) for _ in range(12)]) for _ in range(3))
            n = rng.randint(-5, 5)
            pair_ok &= pair(a, b) == pair(b, a)
            pair_ok &= pair(a + c, b) == pair(a, b) + pair(c, b)
            pair_ok &= pair(n * a, b) == n * pair(a, b)
        mono = all(bound_rhs(3, m1 + 1) <= bound_rhs(3, m1) for m1 in range(1, 100))
        return snf_ok, pair_ok, mono

    (snf, pr, mono), dt = _timed(run)
    ok = snf and pr and mono and dt < 5
    return ok, f"SNF vs minors on 200 matrices: {snf}; 500 pairing samples: {pr}; bound_rhs monotone: {mono}", dt


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, detail, dt = CRITERIA[n]()
    _record(n, ok, detail, dt)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        ok, detail, dt = CRITERIA[n]()
        _record(n, ok, detail, dt)
        print(ACCEPTANCE_LINES[n], flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
