"""Bounds, regime selection and the consolidated certification of the curve configuration."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import numpy as np

from ..lattice import plane_curve_genus
from ..report import CertReport, Provenance, approx, combine, exact, leaf
from .params import ModelParams
from .roots import (
    MODEL_BOX,
    BoundaryHitError,
    PolishError,
    TangencyError,
    UndetectedRootError,
    check_transversality,
    find_coincidences,
    wirtinger,
)
from .sections import SIGMA_PLATEAU, TAU_PLATEAU, SectionFamily, bump

DISC_MARGIN = 1e-6
POSITIVITY_MARGIN = 1e-8
ROOT_TOL = 1e-10


class ResolutionError(RuntimeError):
    """The sampling grid is too coarse to certify the requested bound."""


class RegimeError(ValueError):
    pass


class SymplecticityError(ArithmeticError):
    def __init__(self, message: str, witness: complex, density: float):
        super().__init__(message)
        self.witness = witness
        self.density = density


# ---------------------------------------------------------------------------
# bounds for the correction terms


@dataclass(frozen=True)
class BoundCertificate:
    M0: float  # grid sup of |f_j| plus margin, uniform in lambda
    M: float  # same for |g_k|
    lambda_max: float
    M0_grid: float
    M_grid: float
    M0_margin: float
    M_margin: float
    M0_triangle: float  # analytic upper bound at lambda = 1/4
    M_triangle: float
    limits: tuple[tuple[str, float], ...] = ()

    def to_json(self) -> dict:
        return {
            "M0": self.M0, "M": self.M, "lambda_max": self.lambda_max,
            "M0_grid": self.M0_grid, "M_grid": self.M_grid,
            "M0_margin": self.M0_margin, "M_margin": self.M_margin,
            "M0_triangle": self.M0_triangle, "M_triangle": self.M_triangle,
            "limits": dict(self.limits),
        }


def _annulus_grid(n_r: int, n_theta: int, r0: float = 0.5, r1: float = 1.0) -> np.ndarray:
    r = np.linspace(r0, r1, n_r)
    th = np.linspace(0, 2 * np.pi, n_theta, endpoint=False)
    return r[:, None] * np.exp(1j * th)[None, :]


def _sup_with_margin(values: np.ndarray) -> tuple[float, float]:
    """Max over a (section, lambda, r, theta) grid and the largest jump between grid neighbours."""
    a = np.abs(values)
    jumps = [np.max(np.abs(np.diff(values, axis=ax))) for ax in range(1, values.ndim)]
    wrap = np.max(np.abs(values[..., 0] - values[..., -1]))
    return float(a.max()), float(max(jumps + [wrap]))


def triangle_bounds(params: ModelParams, lam: float = 0.25, r: float = 0.5) -> tuple[float, float]:
    """Analytic bounds for |f_j| and |g_k| on |z| >= r, from |prod(1+a_i) - 1| <= prod(1+|a_i|) - 1."""
    z = np.abs(np.array(params.z[:10]))
    w = np.abs(np.array(params.w))
    best_f = 0.0
    for j in range(10):
        a = lam * np.delete(z, j) / r
        best_f = max(best_f, (np.prod(1 + a) - 1) / lam)
    p = np.prod(1 + lam * z / r) - 1
    best_g = max((p + lam * wk / r) / (1 - lam * wk / r) / lam for wk in w)
    return float(best_f), float(best_g)


def certify_bounds(params: ModelParams, n_lambda: int = 24, n_r: int = 17, n_theta: int = 256,
                   max_margin_frac: float = 0.1) -> BoundCertificate:
    """Sup of |f_j|, |g_k| over 1/2 <= |z| <= 1 and lambda in (0, 1/4], and the largest safe lambda."""
    fam = SectionFamily(params, 0.25)
    zz = _annulus_grid(n_r, n_theta)
    lams = np.concatenate([[1e-6], 0.25 * np.arange(1, n_lambda + 1) / n_lambda])
    fvals = np.stack([np.stack([fam.f(j, zz, lam) for lam in lams]) for j in range(1, 11)])
    gvals = np.stack([np.stack([fam.g(k, zz, lam) for lam in lams]) for k in range(1, 4)])
    m0_grid, m0_margin = _sup_with_margin(fvals)
    m_grid, m_margin = _sup_with_margin(gvals)
    for name, sup, margin in (("M0", m0_grid, m0_margin), ("M", m_grid, m_margin)):
        if margin > max_margin_frac * sup:
            raise ResolutionError(f"{name}: neighbour jump {margin:.3g} exceeds {max_margin_frac:.0%} of the sup "
                                  f"{sup:.3g}; refine to at least {2 * n_theta} angles and {2 * n_lambda} lambda steps")
    M0, M = m0_grid + m0_margin, m_grid + m_margin
    t0, t1 = triangle_bounds(params)
    if m0_grid > t0 * (1 + 1e-12) or m_grid > t1 * (1 + 1e-12):
        raise ResolutionError("grid sup exceeds the analytic bound; evaluator inconsistent")
    limits = _lambda_limits(params, M0, M)
    lam_max = min([0.25] + [v for _, v in limits])
    return BoundCertificate(M0, M, lam_max, m0_grid, m_grid, m0_margin, m_margin, t0, t1, tuple(limits))


def _lambda_limits(params: ModelParams, M0: float, M: float) -> list[tuple[str, float]]:
    z = params.z[:10]
    w = params.w
    out = []
    zz = min((abs(a - b) - DISC_MARGIN) / (M0 * (abs(a) + abs(b))) for a, b in combinations(z, 2))
    out.append(("sigma_sigma", zz))
    out.append(("sigma_origin", min((abs(a) - DISC_MARGIN) / (M0 * abs(a)) for a in z)))
    zw = min((abs(a - b) - DISC_MARGIN) / (M0 * abs(a) + M * abs(b)) for a in z for b in w)
    out.append(("sigma_tau", zw))
    out.append(("tau_tau", min((abs(a - b) - DISC_MARGIN) / (M * (abs(a) + abs(b))) for a, b in combinations(w, 2))))
    out.append(("tau_origin", min((abs(b) - DISC_MARGIN) / (M * abs(b)) for b in w)))
    return out


def disc_overlaps(params: ModelParams, cert: BoundCertificate, lam: float) -> list[tuple[str, str, float]]:
    """Disc pairs closer than the margin at this lambda; empty exactly when lambda <= lambda_max."""
    discs = [(f"z{j}", params.z[j - 1], cert.M0 * abs(params.z[j - 1]) * lam) for j in range(1, 11)]
    discs += [(f"w{k}", params.w[k - 1], cert.M * abs(params.w[k - 1]) * lam) for k in range(1, 4)]
    bad = []
    for (na, ca, ra), (nb, cb, rb) in combinations(discs, 2):
        gap = abs(ca - cb) - ra - rb
        if gap < DISC_MARGIN:
            bad.append((na, nb, gap))
    for name, centre, radius in discs:
        gap = abs(centre) - radius
        if gap < DISC_MARGIN:
            bad.append((name, "origin", gap))
    if lam > 0.25:
        bad.append(("lambda", "1/4", 0.25 - lam))
    return bad


def envelope(fam: SectionFamily, n_r: int = 17, n_theta: int = 256) -> tuple[float, float]:
    """Per-lambda sups of |f_j| and |g_k| at the family's own lambda."""
    zz = _annulus_grid(n_r, n_theta)
    m0 = max(float(np.max(np.abs(fam.f(j, zz)))) for j in range(1, 11))
    m = max(float(np.max(np.abs(fam.g(k, zz)))) for k in range(1, 4))
    return m0, m


# ---------------------------------------------------------------------------
# symplectic density of graphs


@dataclass(frozen=True)
class SymplecticResult:
    min_density: float
    witness: complex
    points: int


def graph_density(s: Callable, pts: np.ndarray, eps: float, rel_step: float = 1e-6, floor: float = 1e-3) -> np.ndarray:
    """Area density 1 + eps^2 (|ds/dz|^2 - |ds/dzbar|^2) of z -> (z, eps s(z)) under dx^dy + du^dv."""
    pts = np.asarray(pts, dtype=complex).ravel()
    step = rel_step * np.maximum(np.abs(pts), floor)
    dz, dzbar = wirtinger(s, pts, step)
    return 1 + eps**2 * (np.abs(dz) ** 2 - np.abs(dzbar) ** 2)


def check_symplectic_graph(s: Callable, pts: np.ndarray, eps: float, margin: float = POSITIVITY_MARGIN,
                           **kwargs) -> SymplecticResult:
    dens = graph_density(s, pts, eps, **kwargs)
    flat = np.asarray(pts, dtype=complex).ravel()
    i = int(np.argmin(dens))
    res = SymplecticResult(float(dens[i]), complex(flat[i]), flat.size)
    if not res.min_density > margin:
        raise SymplecticityError(f"graph density {res.min_density:.6g} at {res.witness}", res.witness, res.min_density)
    return res


def disc_grid(n_r: int = 48, n_theta: int = 96, r1: float = 1.0) -> np.ndarray:
    r = (np.arange(n_r) + 0.5) / n_r * r1
    th = np.linspace(0, 2 * np.pi, n_theta, endpoint=False) + 0.5 / n_theta
    return (r[:, None] * np.exp(1j * th)[None, :]).ravel()


def cap_section(eps: float, c: float) -> Callable:
    """u(v) = eps rho(|v|/c) / v on the plumbing side."""

    def u(v):
        v = np.asarray(v, dtype=complex)
        return eps * bump(np.abs(v) / c, *TAU_PLATEAU) / v

    return u


def cap_grid(eps: float, c: float, n_r: int = 64, n_theta: int = 64) -> np.ndarray:
    r = np.geomspace(eps / c, c, n_r)
    th = np.linspace(0, 2 * np.pi, n_theta, endpoint=False) + 0.5 / n_theta
    return (r[:, None] * np.exp(1j * th)[None, :]).ravel()


# ---------------------------------------------------------------------------
# assembly of the genus 3 surface


def ball_radius(fam: SectionFamily) -> float:
    """Radius of the balls B(Q_k): a quarter of the distance from lambda w_k to every other marked point."""
    marks = list(fam.lz) + [0j] + list(fam.lw)
    best = math.inf
    for k, q in enumerate(fam.lw):
        for m in marks:
            if m is q or m == q:
                continue
            best = min(best, abs(q - m))
    return 0.25 * best


def outside_balls(fam: SectionFamily, pts: np.ndarray, radius: float) -> np.ndarray:
    keep = np.ones(pts.shape, dtype=bool)
    for q in fam.lw:
        keep &= np.abs(pts - q) > radius
    return pts[keep]


def section_sup(fam: SectionFamily, pts: np.ndarray | None = None) -> tuple[float, float]:
    """Grid sups of |sigma_j| over the unit disc and of |tau_k| outside the balls B(Q_k)."""
    pts = disc_grid() if pts is None else pts
    rq = ball_radius(fam)
    sig = max(float(np.max(np.abs(fam.glued("sigma", j, pts)))) for j in range(1, 11))
    outer = outside_balls(fam, pts, rq)
    ring = np.concatenate([outer] + [q + rq * np.exp(1j * np.linspace(0, 2 * np.pi, 64, endpoint=False)) for q in fam.lw])
    tau = max(float(np.max(np.abs(fam.glued("tau", k, outside_balls(fam, ring, rq * (1 - 1e-12)))))) for k in range(1, 4))
    return sig, tau


def _largest_power_of_two_below(x: float, strict: bool) -> float:
    e = math.floor(math.log2(x))
    if strict and 2.0**e >= x:
        e -= 1
    return 2.0**e


@dataclass(frozen=True)
class GAssembly:
    euler: int
    genus: int
    pieces: tuple[tuple[str, int, int], ...]  # (piece, count, euler characteristic each)
    boundary_circles: int
    no_new_intersections: bool
    N: float
    c: float
    eps: float
    ball_radius: float
    cap_min_density: float
    cap_min_modulus: float
    gates: tuple[tuple[str, bool], ...] = ()
    halvings: int = 0

    def to_json(self) -> dict:
        return {
            "euler": self.euler, "genus": self.genus,
            "pieces": [list(p) for p in self.pieces], "boundary_circles": self.boundary_circles,
            "no_new_intersections": self.no_new_intersections, "N": self.N, "c": self.c, "eps": self.eps,
            "ball_radius": self.ball_radius, "cap_min_density": self.cap_min_density,
            "cap_min_modulus": self.cap_min_modulus, "gates": dict(self.gates), "halvings": self.halvings,
        }


def _graph_densities_ok(fam: SectionFamily, eps: float, pts: np.ndarray) -> float:
    rq = ball_radius(fam)
    worst = math.inf
    for sec in fam.sections():
        grid = outside_balls(fam, pts, rq) if sec.poles else pts
        worst = min(worst, float(np.min(graph_density(sec, grid, eps))))
    return worst


def _gates(fam: SectionFamily, eps: float, N: float, c: float, pts: np.ndarray) -> tuple[list[tuple[str, bool]], float, float]:
    gates = [("eps_N_below_c", eps * N < c), ("eps_over_c_at_most_half_c", eps / c <= c / 2)]
    cap_density, cap_mod = -math.inf, 0.0
    if all(ok for _, ok in gates):
        vg = cap_grid(eps, c)
        cap_density = float(np.min(graph_density(cap_section(eps, c), vg, 1.0, floor=0.0)))
        cap_mod = float(np.min(np.abs(vg)))
        gates.append(("cap_density_positive", cap_density > POSITIVITY_MARGIN))
        gates.append(("graph_density_positive", _graph_densities_ok(fam, eps, pts) > POSITIVITY_MARGIN))
    return gates, cap_density, cap_mod


def assemble_G(fam: SectionFamily, params: ModelParams, max_halvings: int = 200) -> GAssembly:
    """Choose c and eps, check every regime gate, and count the topology of G."""
    pts = disc_grid()
    sig, tau = section_sup(fam, pts)
    N = 1.1 * max(sig, tau)
    c = min(params.c, 0.9 / N)
    halvings = 0
    if params.eps is not None:
        eps = params.eps
        if eps * N >= c:
            raise RegimeError(f"eps N = {eps * N:.3g} is not below c = {c:.3g}")
        if eps / c > c / 2:
            raise RegimeError(f"eps / c = {eps / c:.3g} exceeds c / 2 = {c / 2:.3g}")
        gates, cap_density, cap_mod = _gates(fam, eps, N, c, pts)
    else:
        eps = min(_largest_power_of_two_below(c / N, strict=True), _largest_power_of_two_below(c * c / 2, strict=False))
        while True:
            gates, cap_density, cap_mod = _gates(fam, eps, N, c, pts)
            if all(ok for _, ok in gates):
                break
            if halvings >= max_halvings:
                raise RegimeError("no power of two passes every gate")
            eps /= 2
            halvings += 1
    pieces = (("punctured_torus", 3, -1), ("cap_annulus", 3, 0), ("thrice_punctured_sphere", 1, -1))
    euler = sum(n * e for _, n, e in pieces)
    circles = 3 * 1 + 3 * 2 + 3
    genus = (2 - euler) // 2 if (2 - euler) % 2 == 0 else -1
    no_new = cap_mod >= eps / c * (1 - 1e-12) and eps * N < eps / c
    return GAssembly(euler, genus, pieces, circles, no_new, N, c, eps, ball_radius(fam), cap_density, cap_mod,
                     tuple(gates), halvings)


# ---------------------------------------------------------------------------
# pairs and predicted coincidences


def pair_list() -> list[tuple[tuple[str, int], tuple[str, int]]]:
    sig = [("sigma", j) for j in range(1, 12)]
    tau = [("tau", k) for k in range(1, 4)]
    return list(combinations(sig, 2)) + [(s, t) for s in sig for t in tau] + list(combinations(tau, 2))


def predicted_roots(fam: SectionFamily, a: tuple[str, int], b: tuple[str, int]) -> list[complex]:
    """Coincidence points expected from the construction."""
    lz = [complex(x) for x in fam.lz]
    kinds = {a[0], b[0]}
    if kinds == {"sigma"}:
        (_, j), (_, k) = a, b
        if k == 11:
            return [lz[i] for i in range(10) if i != j - 1]
        return [lz[i] for i in range(10) if i not in (j - 1, k - 1)] + [0j]
    if kinds == {"sigma", "tau"}:
        j = a[1] if a[0] == "sigma" else b[1]
        if j == 11:
            return lz[:]
        return [lz[i] for i in range(10) if i != j - 1] + [0j]
    return lz[:] + [0j]


def _pair_label(a, b) -> str:
    return f"pair.{a[0]}{a[1]:02d}-{b[0]}{b[1]:02d}"


def certify_pair(params: ModelParams, lam: float, a: tuple[str, int], b: tuple[str, int],
                 eps: float = 1.0) -> CertReport:
    """Locate every coincidence of sections a and b, compare with the prediction and check transversality."""
    fam = SectionFamily(params, lam)
    fa, fb = fam.section(*a), fam.section(*b)
    if eps != 1.0:
        fa, fb = fa.scaled(eps), fb.scaled(eps)
    label = _pair_label(a, b)
    try:
        res = find_coincidences(fa, fb, MODEL_BOX, tol=ROOT_TOL)
    except (UndetectedRootError, PolishError, BoundaryHitError) as exc:
        return leaf(label, False, note=f"{type(exc).__name__}: {exc}")
    pred = predicted_roots(fam, a, b)
    match_tol = 1e-9 * lam
    unmatched = [p for p in pred if not any(abs(r.z - p) <= match_tol for r in res.roots)]
    gaps, positive, tangency = [], True, None
    for r in res.roots:
        try:
            t = check_transversality(fa, fb, r.z)
            gaps.append(t.normalized_gap)
            positive &= t.positive
        except TangencyError as exc:
            tangency = str(exc)
    simple = all(r.multiplicity == 1 for r in res.roots)
    ok = (not unmatched and len(res.roots) == len(pred) and simple and res.located == res.expected
          and tangency is None and positive and all(r.residual < ROOT_TOL for r in res.roots))
    return leaf(
        label,
        ok,
        [
            exact("expected_count", len(pred), Provenance.REFERENCE),
            exact("located", res.located),
            exact("boundary_winding", res.boundary_winding),
            exact("poles_inside", res.poles_inside),
            approx("roots", [r.z for r in res.roots], match_tol),
            approx("residuals", [r.residual for r in res.roots], ROOT_TOL),
            exact("multiplicities", [r.multiplicity for r in res.roots]),
            approx("min_normalized_gap", min(gaps) if gaps else 0.0, 1e-6),
            exact("positive", positive),
        ],
        note=tangency or ("" if not unmatched else f"{len(unmatched)} predicted roots not located"),
    )


def _pair_task(args):
    return certify_pair(*args)


# ---------------------------------------------------------------------------
# further checks


def chart_consistency(fam: SectionFamily, n: int = 100, tol: float = 1e-12) -> CertReport:
    """sigma_j in chart V against z^-9 sigma_j in chart D on an n x n grid of 1/2 < |z| < 1."""
    r = 0.5 + 0.5 * (np.arange(n) + 0.5) / n
    th = 2 * np.pi * (np.arange(n) + 0.5) / n
    zz = (r[:, None] * np.exp(1j * th)[None, :]).ravel()
    worst = 0.0
    for j in range(1, 11):
        v = fam.sigma(j, zz, "V")
        d = zz**-9 * fam.sigma(j, zz, "D")
        worst = max(worst, float(np.max(np.abs(v - d) / np.abs(v))))
    return leaf("config.chart_consistency", worst < tol,
                [exact("points", zz.size, Provenance.TRIVIAL), approx("max_relative_error", worst, tol)])


def seam_continuity(fam: SectionFamily, step: float = 1e-5, n_theta: int = 128) -> CertReport:
    """Values and one-sided radial derivatives of the glued sections agree across |z| = 1/2, 2/3, 3/4."""
    th = 2 * np.pi * (np.arange(n_theta) + 0.25) / n_theta
    u = np.exp(1j * th)
    worst_val, worst_der = 0.0, 0.0
    for sec in fam.sections():
        for r0 in (0.5, SIGMA_PLATEAU[0], 0.75):
            s_m, s_0, s_p = (sec((r0 + d) * u) for d in (-step, 0.0, step))
            left, right = (s_0 - s_m) / step, (s_p - s_0) / step
            # natural size of a first difference at this radius
            scale = np.maximum(np.maximum(np.abs(left), np.abs(right)), np.abs(s_0) / r0)
            if not np.any(scale > 0):
                continue  # identically zero section
            scale = np.where(scale > 0, scale, 1.0)
            worst_val = max(worst_val, float(np.max(np.abs(s_p - s_m) / (2 * step * scale))))
            worst_der = max(worst_der, float(np.max(np.abs(right - left) / scale)))
    # a jump gives a value ratio near 1/step and a kink a derivative mismatch near 1
    tol_val, tol_der = 10.0, 1e3 * step
    return leaf("config.seam_continuity", worst_val < tol_val and worst_der < tol_der,
                [approx("value_jump_over_derivative", worst_val, tol_val),
                 approx("derivative_mismatch", worst_der, tol_der)])


def incidence_check(fam: SectionFamily, eps: float) -> CertReport:
    """C_i contains P_j for j != i and misses P_i; every branch of G contains all eleven points."""
    pts = [(complex(fam.lz[j]), 0j) for j in range(10)] + [(0j, complex(eps))]
    table, ok = [], True
    for sec in fam.sections():
        row = []
        for j, (x, y) in enumerate(pts, 1):
            val = eps * complex(sec(np.array([x]))[0])
            row.append(abs(val - y) <= 1e-10 * eps)
        if sec.name.startswith("sigma"):
            i = int(sec.name[5:])
            want = [j != i for j in range(1, 12)]
        else:
            want = [True] * 11
        ok &= row == want
        table.append(row)
    return leaf("config.incidence", ok, [exact("contains", table)], note="P11 = (0, eps)")


def symplectic_report(fam: SectionFamily, eps: float, workers: int = 1) -> CertReport:
    pts = disc_grid()
    rq = ball_radius(fam)
    kids = []
    for sec in fam.sections():
        grid = outside_balls(fam, pts, rq) if sec.poles else pts
        try:
            res = check_symplectic_graph(sec, grid, eps)
            kids.append(leaf(f"symplectic.{sec.name}", True,
                             [approx("min_density", res.min_density, POSITIVITY_MARGIN),
                              exact("points", res.points, Provenance.TRIVIAL)]))
        except SymplecticityError as exc:
            kids.append(leaf(f"symplectic.{sec.name}", False,
                             [approx("min_density", exc.density, POSITIVITY_MARGIN),
                              approx("witness", exc.witness, 0.0)], note=str(exc)))
    return combine("config.symplectic", kids)


def full_configuration_report(params: ModelParams | None = None, workers: int = 1) -> CertReport:
    """Bounds, regime, all 91 section pairs, charts, seams, incidences, symplecticity and the genus of G."""
    params = params or ModelParams()
    meta = {
        "rho_profile": params.rho_profile,
        "rho_sigma_plateau": list(SIGMA_PLATEAU),
        "rho_tau_plateau": list(TAU_PLATEAU),
        "constant_term_convention": "glued sigma_j equals lambda^-9 A z_j for |z| >= 3/4",
        "distinct_section_pairs": "C(11,2) = 55 sigma pairs, 33 sigma-tau pairs, 3 tau pairs",
        "region": "box [-0.8, 0.8]^2 in chart D, glued sections continued by z^9 times the chart V value",
    }
    try:
        cert = certify_bounds(params)
    except ResolutionError as exc:
        return combine("config", [leaf("config.bounds", False, note=str(exc))], **meta)
    lam = params.lam if params.lam is not None else min(0.25, cert.lambda_max / 2)
    overlaps = disc_overlaps(params, cert, lam) if lam > 0 else [("lambda", "0", lam)]
    bounds = leaf("config.bounds", cert.lambda_max > 0 and not overlaps,
                  [approx("certificate", [cert.M0, cert.M, cert.lambda_max], 0.0), approx("lambda", lam, 0.0),
                   exact("overlaps", [list(o[:2]) for o in overlaps])],
                  note="" if not overlaps else "disc disjointness fails at this lambda")
    if not bounds.passed:
        return combine("config", [bounds], note="bounds not certified; nothing else attempted", **meta)
    fam = SectionFamily(params, lam)
    m0_here, m_here = envelope(fam)
    meta["M0_uniform"], meta["M_uniform"] = cert.M0, cert.M
    meta["M0_at_lambda"], meta["M_at_lambda"] = m0_here, m_here
    meta["M0_triangle"], meta["M_triangle"] = cert.M0_triangle, cert.M_triangle
    try:
        G = assemble_G(fam, params)
    except RegimeError as exc:
        return combine("config", [bounds, leaf("config.assemble_G", False, note=str(exc))], **meta)
    adjunction = plane_curve_genus(10, [3] * 11)
    g_report = leaf("config.assemble_G", G.genus == 3 and G.euler == -4 and G.no_new_intersections
                    and all(ok for _, ok in G.gates) and adjunction == 3,
                    [exact("euler", G.euler), exact("genus", G.genus, Provenance.REFERENCE),
                     exact("adjunction_genus", adjunction, Provenance.REFERENCE),
                     exact("gates", dict(G.gates)), approx("eps", G.eps, 0.0), approx("c", G.c, 0.0),
                     approx("N", G.N, 0.0), approx("cap_min_density", G.cap_min_density, POSITIVITY_MARGIN)])

    tasks = [(params, lam, a, b) for a, b in pair_list()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pair_reports = list(pool.map(_pair_task, tasks, chunksize=4))
    else:
        pair_reports = [_pair_task(t) for t in tasks]
    pairs = combine("config.pairs", pair_reports,
                    [exact("pairs", len(pair_reports), Provenance.TRIVIAL)])
    children = [
        bounds,
        g_report,
        pairs,
        chart_consistency(fam),
        seam_continuity(fam),
        incidence_check(fam, G.eps),
        symplectic_report(fam, G.eps),
    ]
    return combine("config", children,
                   [approx("lambda", lam, 0.0), approx("eps", G.eps, 0.0), approx("c", G.c, 0.0)], **meta)
