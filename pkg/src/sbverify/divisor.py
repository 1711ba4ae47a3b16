"""Divisor arithmetic on a surface with disjoint curves spanning H_2.

Cohomology dimensions are never computed from sheaves here.  Where a count
such as h^0 enters, it is assembled from short-exact-sequence bookkeeping
over quantities that are either curve-level facts (Riemann-Roch on a curve of
known genus and degree) or vanishing statements taken as axioms of the
instance; those axioms are listed in the report metadata.

All rational quantities are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .lattice import (
    HomologyClass,
    class_sum,
    diagonal_basis,
    gram_matrix,
    pair,
    pairing_matrix,
    verify_basis,
)
from .report import CertReport, Provenance, Status, combine, exact, leaf


class InconsistencyError(ValueError):
    """Input data violates an identity it must satisfy (parity, adjunction)."""


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class Curve:
    cls: HomologyClass
    genus: int
    label: str = ""


@dataclass(frozen=True)
class SurfaceInvariants:
    b1: int
    b2: int
    q: int
    p_g: int
    c2: int
    K: HomologyClass
    curves: tuple[Curve, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        if self.c2 != 2 - 2 * self.b1 + self.b2:
            raise InconsistencyError(f"c2={self.c2} but 2 - 2 b1 + b2 = {2 - 2 * self.b1 + self.b2}")
        for c in self.curves:
            if adjunction_degree(self.K, c.cls) != 2 * c.genus - 2:
                raise InconsistencyError(f"curve {c.label or c.cls} violates adjunction for genus {c.genus}")

    @property
    def chi(self) -> int:
        """Holomorphic Euler characteristic 1 - q + p_g."""
        return 1 - self.q + self.p_g


def adjunction_degree(K: HomologyClass, D: HomologyClass) -> int:
    """K.D + D^2, which equals 2g - 2 for a smooth curve of genus g."""
    return pair(K, D) + pair(D, D)


def riemann_roch_chi(S: SurfaceInvariants, D: HomologyClass) -> int:
    twice = pair(D, D) - pair(S.K, D)
    if twice % 2:
        raise InconsistencyError("D^2 - K.D is odd")
    return S.chi + twice // 2


class NoetherCheck(NamedTuple):
    lhs: Fraction
    rhs: int
    passed: bool


def noether_check(S: SurfaceInvariants) -> NoetherCheck:
    lhs = Fraction(pair(S.K, S.K) + S.c2, 12)
    return NoetherCheck(lhs, S.chi, lhs == S.chi)


def noether_ksq(chi: int, c2: int) -> int:
    """K^2 forced by 12 chi = K^2 + c2."""
    return 12 * chi - c2


def curve_h0(degree: int, genus: int) -> int:
    """h^0 of a line bundle on a curve where Riemann-Roch alone decides it.

    Valid for negative degree (0) and degree > 2g - 2 (d + 1 - g); anything
    in between depends on the bundle and is rejected.
    """
    if degree < 0:
        return 0
    if degree > 2 * genus - 2:
        return degree + 1 - genus
    raise DomainError(f"h^0 of a degree {degree} bundle on a genus {genus} curve is not determined")


def clifford_bound(d: int, g: int) -> int:
    """Upper bound floor(d/2) + 1 for h^0 of a degree-d divisor, 0 <= d <= 2g-2."""
    if g < 1:
        raise DomainError("genus must be >= 1")
    if not 0 <= d <= 2 * g - 2:
        raise DomainError(f"degree {d} outside [0, {2 * g - 2}]")
    return d // 2 + 1


# ---------------------------------------------------------------------------
# the Case 1 / Case 2 obstruction


@dataclass(frozen=True)
class ObstructionInstance:
    """Curves D_1..D_b: D_1 of genus g with D_1^2 = m[0] > 0, the rest elliptic with D_i^2 = -m[i-1].

    ``alpha`` holds the fixed-part multiplicities of D_2..D_b.
    """

    g: int
    m: tuple[int, ...]
    alpha: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        alpha = tuple(int(x) for x in self.alpha) or (0,) * (len(self.m) - 1)
        object.__setattr__(self, "alpha", alpha)
        if self.g < 1:
            raise DomainError("genus must be >= 1")
        if not self.m or any(x < 1 for x in self.m):
            raise DomainError("all m_i must be positive integers")
        if len(alpha) != len(self.m) - 1 or any(a < 0 for a in alpha):
            raise DomainError("alpha must list one non-negative integer per D_2..D_b")

    @property
    def b(self) -> int:
        return len(self.m)

    @property
    def m1(self) -> int:
        return self.m[0]

    @property
    def r(self) -> int:
        return sum(1 for a in self.alpha if a > 0)

    def self_intersections(self) -> list[int]:
        return [self.m[0]] + [-x for x in self.m[1:]]


def canonical_from_curves(inst: ObstructionInstance, b: int | None = None) -> list[Fraction]:
    """Coefficients of K in the rational basis D_1..D_b: lambda_i = K.D_i / D_i^2."""
    b = inst.b if b is None else b
    if b != inst.b:
        raise DomainError(f"instance has {inst.b} curves, asked for {b}")
    squares = inst.self_intersections()
    if any(s == 0 for s in squares):
        raise DomainError("zero self-intersection")
    k_dot = [2 * inst.g - 2 - inst.m1] + list(inst.m[1:])
    return [Fraction(kd, s) for kd, s in zip(k_dot, squares)]


def ksq_from_config(inst: ObstructionInstance) -> Fraction:
    return Fraction((2 * inst.g - 2 - inst.m1) ** 2, inst.m1) - sum(inst.m[1:])


def bound_rhs(g: int, m1: int) -> Fraction:
    """4g - 2 - m1 + (2g - 2 - m1)^2 / m1, an upper bound for 2 b_2."""
    if g < 2:
        raise DomainError("bound applies for g >= 2; use the elliptic case for g = 1")
    if m1 < 1:
        raise DomainError("m1 must be >= 1")
    return 4 * g - 2 - m1 + Fraction((2 * g - 2 - m1) ** 2, m1)


def max_b_bound(g: int) -> int:
    """Largest b_2 allowed: 2g^2 - 4g + 3 for g >= 2, and 1 for g = 1."""
    if g <= 0:
        raise DomainError("genus must be >= 1")
    if g == 1:
        return 1
    return 2 * g * g - 4 * g + 3


def _qpair(u: Sequence[Fraction], v: Sequence[Fraction], diag: Sequence[int]) -> Fraction:
    return sum((a * b * d for a, b, d in zip(u, v, diag)), Fraction(0))


class ChainValues(NamedTuple):
    ksq: Fraction
    free_sq: Fraction  # (K + D1 - Z)^2
    lower: int  # 2(b-1) - sum m_i - r
    r1: Fraction
    r2: Fraction
    r3: Fraction


def _chain_from_aggregates(g: int, b: int, m1: int, sum_m: int, r: int, t: int) -> ChainValues:
    """Closed forms in terms of sum m_i, r and t = 2 sum alpha_i m_i + sum alpha_i^2 m_i."""
    ksq = Fraction((2 * g - 2 - m1) ** 2, m1) - sum_m
    free_sq = ksq + 4 * g - 4 - m1 - t
    lower = 2 * (b - 1) - sum_m - r
    r1 = 4 * g - 2 - m1 + ksq + sum_m + r - t
    r2 = 4 * g - 2 - m1 + ksq + sum_m + r - 3 * r
    r3 = 4 * g - 2 - m1 + ksq + sum_m
    return ChainValues(ksq, free_sq, lower, r1, r2, r3)


def _step(name: str, lhs, rel: str, rhs, holds: bool, provenance=Provenance.DERIVED) -> CertReport:
    return leaf(
        f"chain.{name}",
        holds,
        [exact("lhs", lhs, provenance), exact("rhs", rhs, provenance)],
        note=rel,
    )


def case1_inequality_chain(inst: ObstructionInstance, b: int | None = None) -> CertReport:
    """Evaluate every line of the Case 1 inequality chain for one instance.

    The report passes when each algebraic step holds; the instance is
    *admissible* when the fixed-point lower bound on (K + D1 - Z)^2 holds, and
    an admissible instance with b above the final bound is flagged.
    """
    b = inst.b if b is None else b
    if b != inst.b:
        raise DomainError(f"instance has {inst.b} curves, asked for {b}")
    g, m1 = inst.g, inst.m1
    if g < 2:
        raise DomainError("Case 1 needs g >= 2")
    squares = inst.self_intersections()
    lam = canonical_from_curves(inst)
    K = lam
    D1 = [Fraction(1)] + [Fraction(0)] * (b - 1)
    Z = [Fraction(0)] + [Fraction(a) for a in inst.alpha]
    F = [k + d - z for k, d, z in zip(K, D1, Z)]

    # independent route: pair rational vectors in the diagonal form
    ksq_vec = _qpair(K, K, squares)
    free_vec = _qpair(F, F, squares)
    sum_m = sum(inst.m[1:])
    s1 = sum(a * m for a, m in zip(inst.alpha, inst.m[1:]))
    s2 = sum(a * a * m for a, m in zip(inst.alpha, inst.m[1:]))
    v = _chain_from_aggregates(g, b, m1, sum_m, inst.r, 2 * s1 + s2)

    admissible = v.free_sq >= v.lower and v.free_sq >= 0
    top = bound_rhs(g, 1)
    steps = [
        _step("ksq_from_curves", ksq_vec, "==", ksq_from_config(inst), ksq_vec == ksq_from_config(inst)),
        _step("k_plus_d1_sq", _qpair([k + d for k, d in zip(K, D1)], [k + d for k, d in zip(K, D1)], squares),
              "==", v.ksq + 4 * g - 4 - m1,
              _qpair([k + d for k, d in zip(K, D1)], [k + d for k, d in zip(K, D1)], squares) == v.ksq + 4 * g - 4 - m1),
        _step("free_part_sq", free_vec, "==", v.free_sq, free_vec == v.free_sq),
        _step("rearranged_fixed_point_bound", (v.free_sq >= v.lower), "<=>", (2 * b <= v.r1),
              (v.free_sq >= v.lower) == (2 * b <= v.r1)),
        _step("alpha_terms", v.r1, "<=", v.r2, v.r1 <= v.r2),
        _step("drop_r", v.r2, "<=", v.r3, v.r2 <= v.r3),
        _step("substitute_ksq", v.r3, "==", bound_rhs(g, m1), v.r3 == bound_rhs(g, m1)),
        _step("monotone_in_m1", bound_rhs(g, m1), "<=", top, bound_rhs(g, m1) <= top),
        _step("halve_and_floor", math.floor(top / 2), "==", max_b_bound(g),
              math.floor(top / 2) == max_b_bound(g), Provenance.REFERENCE),
    ]
    flagged = admissible and b > max_b_bound(g)
    return combine(
        "obstruction.case1_chain",
        steps,
        witnesses=[
            exact("g", g, Provenance.TRIVIAL),
            exact("b", b, Provenance.TRIVIAL),
            exact("m", list(inst.m), Provenance.TRIVIAL),
            exact("alpha", list(inst.alpha), Provenance.TRIVIAL),
            exact("r", inst.r),
            exact("fixed_point_lower_bound", v.lower),
            exact("free_part_sq", v.free_sq),
            exact("two_b_upper_bound", v.r1),
            exact("admissible", admissible),
            exact("flagged", flagged),
        ],
        own_ok=not flagged,
    )


@dataclass(frozen=True)
class ScanConfig:
    g: int = 3
    b: int = 12
    m_max: int = 16
    alpha_max: int = 3
    use_noether: bool = True  # pin sum m_i through K^2 = 10 - b
    sum_m_max: int | None = None  # cap for sum m_i when not pinned


def _required_sum_m(cfg: ScanConfig, m1: int) -> Fraction:
    return Fraction((2 * cfg.g - 2 - m1) ** 2, m1) - (10 - cfg.b)


def _scan_one_m1(cfg: ScanConfig, m1: int) -> dict:
    """DP over D_2..D_b on the aggregates (sum m, r, t); counts ordered instances."""
    n = cfg.b - 1
    if cfg.use_noether:
        target = _required_sum_m(cfg, m1)
        if target.denominator != 1 or not n <= target <= n * cfg.m_max:
            return {"m1": m1, "sum_m": str(target), "instances": 0, "admissible": 0, "flagged": 0,
                    "step_failures": 0, "max_two_b_bound": None}
        lo = hi = int(target)
    else:
        lo, hi = n, min(n * cfg.m_max, cfg.sum_m_max or n * cfg.m_max)

    choices = [(m, int(a > 0), m * a * (2 + a)) for m in range(1, cfg.m_max + 1) for a in range(cfg.alpha_max + 1)]
    states: dict[tuple[int, int, int], int] = {(0, 0, 0): 1}
    for k in range(n):
        remaining = n - k - 1
        nxt: dict[tuple[int, int, int], int] = defaultdict(int)
        for (sm, r, t), count in states.items():
            for m, dr, dt in choices:
                s = sm + m
                if s + remaining > hi:
                    continue
                nxt[(s, r + dr, t + dt)] += count
        states = nxt

    top = bound_rhs(cfg.g, 1)
    bound = max_b_bound(cfg.g)
    instances = admissible = flagged = failures = 0
    best = None
    for (sm, r, t), count in sorted(states.items()):
        if not lo <= sm <= hi:
            continue
        v = _chain_from_aggregates(cfg.g, cfg.b, m1, sm, r, t)
        ok = (
            ((v.free_sq >= v.lower) == (2 * cfg.b <= v.r1))
            and v.r1 <= v.r2 <= v.r3
            and v.r3 == bound_rhs(cfg.g, m1) <= top
        )
        adm = v.free_sq >= v.lower and v.free_sq >= 0
        instances += count
        admissible += count if adm else 0
        flagged += count if adm and cfg.b > bound else 0
        failures += 0 if ok else count
        best = v.r1 if best is None else max(best, v.r1)
    return {"m1": m1, "sum_m": f"{lo}..{hi}" if lo != hi else str(lo), "instances": instances,
            "admissible": admissible, "flagged": flagged, "step_failures": failures,
            "max_two_b_bound": None if best is None else str(best)}


def _scan_task(args):
    return _scan_one_m1(*args)


def case1_scan(cfg: ScanConfig = ScanConfig(), workers: int = 1) -> CertReport:
    """Exhaustive Case 1 scan over m_1 in [1, m_max], m_i in [1, m_max], alpha_i in [0, alpha_max].

    Instances are ordered tuples; they are aggregated exactly through the
    quantities the chain depends on, so every tuple is accounted for.
    """
    if cfg.g < 2:
        raise DomainError("Case 1 needs g >= 2")
    tasks = [(cfg, m1) for m1 in range(1, cfg.m_max + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_scan_task, tasks))
    else:
        rows = [_scan_task(t) for t in tasks]
    rows.sort(key=lambda row: row["m1"])
    total = sum(r["instances"] for r in rows)
    adm = sum(r["admissible"] for r in rows)
    flagged = sum(r["flagged"] for r in rows)
    failures = sum(r["step_failures"] for r in rows)
    ok = adm == 0 and flagged == 0 and failures == 0
    return leaf(
        "obstruction.case1_scan",
        ok,
        [
            exact("g", cfg.g, Provenance.TRIVIAL),
            exact("b", cfg.b, Provenance.TRIVIAL),
            exact("m_range", [1, cfg.m_max], Provenance.TRIVIAL),
            exact("alpha_range", [0, cfg.alpha_max], Provenance.TRIVIAL),
            exact("noether_pinned_sum_m", cfg.use_noether, Provenance.TRIVIAL),
            exact("instances", total),
            exact("admissible", adm),
            exact("flagged", flagged),
            exact("step_failures", failures),
            exact("per_m1", rows),
        ],
        note="no admissible instance" if ok else "admissible instance or chain failure found",
    )


def case2_check(b: int) -> CertReport:
    """g = 1: K = -sum D_i, so K + D_1 = -(D_2 + ... + D_b) would be effective."""
    if b < 1:
        raise DomainError("b must be >= 1")
    inst = ObstructionInstance(1, (1,) * b)
    lam = canonical_from_curves(inst)
    basis = diagonal_basis(f"elliptic-{b}", [f"D{i}" for i in range(1, b + 1)], inst.self_intersections())
    K = class_sum([basis[i] * -1 for i in range(b)])
    KD1 = K + basis[0]
    nonzero = not KD1.is_zero()
    anti_effective = all(c <= 0 for c in KD1.coords) and nonzero
    witnesses = [
        exact("canonical_coefficients", lam),
        exact("k_plus_d1", list(KD1.coords)),
        exact("h0_k_plus_d1", 1, Provenance.REFERENCE),
        exact("bound", max_b_bound(1), Provenance.REFERENCE),
    ]
    if b <= max_b_bound(1):
        return CertReport("obstruction.case2", Status.SKIP, tuple(witnesses),
                          note="b2 <= 1: the elliptic obstruction does not apply")
    return leaf(
        "obstruction.case2",
        anti_effective and all(x == -1 for x in lam),
        witnesses,
        note="b2 <= 1 violated => configuration impossible",
        axioms=["h0(K_S)=0", "h1(K_S)=0"],
    )


def reverse_reconstruction_check(b: int = 12, g: int = 3) -> CertReport:
    """The b = 12, g = 3 contradiction h^0(3 D_1) = 11 > 6 with every intermediate identity."""
    checks: list[CertReport] = []

    def add(name, ok, *witnesses, note=""):
        checks.append(leaf(f"reverse.{name}", ok, list(witnesses), note=note))

    # Noether with chi = 1, c2 = 2 + b
    ksq = noether_ksq(1, 2 + b)
    add("noether_ksq", ksq == 10 - b, exact("ksq", ksq, Provenance.REFERENCE))

    # (4 - m1)^2 >= 9 m1 <=> (m1 - 16)(m1 - 1) >= 0; the identity is quadratic, three points decide it
    poly_ok = all((2 * g - 2 - m) ** 2 - (ksq + b - 1) * m == (m - 16) * (m - 1) for m in (0, 1, 2))
    slope = b - 1 + ksq
    surviving = [m for m in range(1, 65) if (2 * g - 2 - m) ** 2 >= slope * m]
    add("m1_quadratic", poly_ok and surviving == [1] + list(range(16, 65)),
        exact("surviving_m1_upto_64", [surviving[0], surviving[1], surviving[-1]]))
    large_excluded = 16 >= 2 * g + 1 and b > 2 * g + 3
    add("m1_large_excluded", large_excluded,
        exact("self_intersection_threshold", 2 * g + 1), exact("external_bound", 2 * g + 3, Provenance.REFERENCE),
        note="m1 >= 2g+1 forces b <= 2g+3")
    m1 = 1

    # K^2 = 9 - sum m_i with sum over b - 1 positive integers
    sum_m = Fraction((2 * g - 2 - m1) ** 2, m1) - ksq
    all_ones = sum_m == b - 1
    add("all_m_one", all_ones, exact("sum_m", sum_m), exact("count", b - 1, Provenance.TRIVIAL))
    inst = ObstructionInstance(g, (1,) * b)
    lam = canonical_from_curves(inst)
    add("canonical_coefficients", lam == [3] + [-1] * (b - 1), exact("lambda", lam, Provenance.REFERENCE))

    S_basis = diagonal_basis("S", [f"D{i}" for i in range(1, b + 1)], inst.self_intersections())
    D = [S_basis[i] for i in range(b)]
    K = S_basis.vector([int(x) for x in lam])
    add("ksq_lattice", pair(K, K) == ksq, exact("ksq", pair(K, K)))
    add("adjunction", adjunction_degree(K, D[0]) == 2 * g - 2 and all(adjunction_degree(K, d) == 0 for d in D[1:]),
        exact("K.D1+D1^2", adjunction_degree(K, D[0])))

    sumD = class_sum(D[1:])
    H = 10 * D[0] - 3 * sumD
    shared = 3 * D[0] - sumD
    E = {j: shared + D[j - 1] for j in range(2, b + 1)}
    sumE = class_sum(list(E.values()))
    cubic_part = 3 * H - sumE
    forward = D[0] == 10 * H - 3 * sumE and all(D[j - 1] == cubic_part + E[j] for j in range(2, b + 1))
    add("forward_relations", forward, exact("H", list(H.coords)))
    add("canonical_in_H_E", K == -3 * H + sumE, exact("K", list(K.coords)))

    new = [H] + [E[j] for j in range(2, b + 1)]
    gram = gram_matrix(new)
    expected = [[0] * b for _ in range(b)]
    for i in range(b):
        expected[i][i] = 1 if i == 0 else -1
    unimodular = verify_basis(new)
    add("gram_H_E", gram == expected and unimodular.is_basis,
        exact("diagonal", [gram[i][i] for i in range(b)]), exact("det", unimodular.det))
    off_diagonal_ones = [[1] * (b - 1) for _ in range(b - 1)]
    for i in range(b - 1):
        off_diagonal_ones[i][i] = 0
    add("pairings",
        pair(K, H) == -3
        and all(pair(K, E[j]) == -1 for j in E)
        and pairing_matrix(D[1:], list(E.values())) == off_diagonal_ones,
        exact("K.H", pair(K, H), Provenance.REFERENCE), exact("K.E2", pair(K, E[2]), Provenance.REFERENCE),
        exact("D2.E3", pair(D[1], E[3]), Provenance.REFERENCE))

    S = SurfaceInvariants(0, b, 0, 0, 2 + b, K, tuple(Curve(d, g if i == 0 else 1, f"D{i + 1}") for i, d in enumerate(D)))
    chi_H = riemann_roch_chi(S, H)
    chi_E = [riemann_roch_chi(S, E[j]) for j in E]
    add("chi_H", chi_H == 3, exact("chi_H", chi_H, Provenance.REFERENCE))
    add("chi_E", chi_E == [1] * (b - 1), exact("chi_E", chi_E[0], Provenance.REFERENCE))
    noether = noether_check(S)
    add("noether", noether.passed, exact("lhs", noether.lhs))
    add("k_minus_e_and_k_plus_d",
        all(K - E[j] == -D[j - 1] and K + D[j - 1] == E[j] for j in E),
        exact("identities", b - 1))

    # h^0 bookkeeping on the elliptic curves
    h0_normal = [curve_h0(pair(d, d), 1) for d in D[1:]]
    h1_normal = [h - pair(d, d) for h, d in zip(h0_normal, D[1:])]  # h0 - h1 = deg on genus 1
    h0_sum = 1 + sum(h0_normal)
    h1_sum = sum(h1_normal)
    add("h0_sum_elliptic", h0_sum == 1 and h1_sum == b - 1,
        exact("h0", h0_sum, Provenance.REFERENCE), exact("h1", h1_sum, Provenance.REFERENCE))

    Eb = E[b]
    add("three_d1_relation", 3 * D[0] == class_sum(D[1:b - 1]) + Eb, exact("terms", b - 1, Provenance.TRIVIAL))
    h0_Eb = g_elliptic = 1  # h^0(K_{D_b}) on an elliptic curve
    h2_Eb = 0  # h^0(K - E_b) = h^0(-D_b)
    h1_Eb = h0_Eb + h2_Eb - riemann_roch_chi(S, Eb)
    restrictions = [curve_h0(pair(D[j], Eb), 1) for j in range(1, b - 1)]
    h0_3d1 = h0_Eb + sum(restrictions)
    add("h0_three_d1", h1_Eb == 0 and h0_3d1 == b - 1 and g_elliptic == 1,
        exact("h1_Eb", h1_Eb), exact("h0_3D1", h0_3d1, Provenance.REFERENCE))

    clifford = [clifford_bound(k * pair(D[0], D[0]), g) for k in (1, 2, 3)]
    ceiling = 1 + sum(clifford)
    add("clifford_ceiling", clifford == [1, 2, 2] and ceiling == 6,
        exact("terms", clifford, Provenance.REFERENCE), exact("ceiling", ceiling, Provenance.REFERENCE))
    contradiction = h0_3d1 > ceiling
    add("contradiction", contradiction, exact("h0_3D1", h0_3d1), exact("ceiling", ceiling),
        note=f"{h0_3d1} > {ceiling}")
    return combine(
        "obstruction.reverse_reconstruction",
        checks,
        witnesses=[exact("h0_3D1", h0_3d1, Provenance.REFERENCE), exact("clifford_ceiling", ceiling, Provenance.REFERENCE)],
        note=f"contradiction certified: {h0_3d1} > {ceiling}" if contradiction else "no contradiction",
        axioms=["h0(K_S)=0", "h1(K_S)=0", "h1(O_S)=h2(O_S)=0", "D1^2 >= 2g+1 implies b <= 2g+3"],
    )


def obstruction_report(g: int, b: int, m_max: int = 16, alpha_max: int = 3, workers: int = 1) -> CertReport:
    """Certify that b disjoint curves (one of genus g, the rest elliptic) cannot span H_2."""
    bound = max_b_bound(g)
    head = [exact("g", g, Provenance.TRIVIAL), exact("b", b, Provenance.TRIVIAL), exact("bound", bound)]
    if b <= bound:
        return CertReport("obstruction", Status.SKIP, tuple(head),
                          note=f"b2 = {b} <= {bound}: the bound does not exclude this configuration")
    if g == 1:
        return combine("obstruction", [case2_check(b)], head, note="configuration impossible")
    children = [
        case1_scan(ScanConfig(g, b, m_max, alpha_max), workers),
        case1_inequality_chain(ObstructionInstance(g, (1,) * b)),
    ]
    if (g, b) == (3, 12):
        children.append(reverse_reconstruction_check(b, g))
    return combine("obstruction", children, head, note="configuration impossible",
                   axioms=["h0(K_S)=0 since p_g=0", "h1(K_S)=0 since q=0"])
