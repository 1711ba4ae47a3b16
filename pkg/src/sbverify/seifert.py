"""Invariants of a Seifert circle bundle over a 4-orbifold with ramification along disjoint curves.

Curves are indexed 1..n; curve i carries isotropy of order m_i.  Cohomology
classes on the base are written in the curve basis, which is integral and
unimodular for the construction used throughout (eleven elliptic curves of
square -1 and one genus 3 curve of square +1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Sequence

from sympy import factorint, isprime

from .lattice import HomologyClass, LatticeBasis, diagonal_basis, is_primitive, pair
from .report import CertReport, Provenance, combine, exact, leaf

SIZE_LIMIT = 2**64


class SizeError(ValueError):
    """Integer too large for the desk-scale arithmetic."""


class InvariantError(ValueError):
    pass


def check_prime(p: int) -> int:
    if abs(p) >= SIZE_LIMIT:
        raise SizeError(f"{p} exceeds the 64-bit range")
    if not isprime(p):
        raise InvariantError(f"{p} is not prime")
    return p


@dataclass(frozen=True)
class SeifertCurve:
    genus: int
    multiplicity: int
    selfint: int


@dataclass(frozen=True)
class SeifertData:
    p: int
    curves: tuple[SeifertCurve, ...]
    b: tuple[int, ...]
    a: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "curves", tuple(self.curves))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        n = len(self.curves)
        if n == 0:
            raise InvariantError("no curves")
        if len(self.b) != n or len(self.a) != n:
            raise InvariantError(f"need {n} orbit invariants and {n} coefficients")
        for i, (c, bi) in enumerate(zip(self.curves, self.b), 1):
            if c.multiplicity < 1:
                raise InvariantError(f"curve {i}: multiplicity must be positive")
            if math.gcd(bi, c.multiplicity) != 1:
                raise InvariantError(f"curve {i}: gcd(b_i, m_i) = {math.gcd(bi, c.multiplicity)}")

    @property
    def mu(self) -> int:
        return math.lcm(*(c.multiplicity for c in self.curves))

    @property
    def multiplicities(self) -> list[int]:
        return [c.multiplicity for c in self.curves]

    def basis(self) -> LatticeBasis:
        return diagonal_basis("curves", [f"C{i}" for i in range(1, len(self.curves) + 1)],
                              [c.selfint for c in self.curves])


def construction_curves(p: int) -> tuple[SeifertCurve, ...]:
    """Proper transforms C~_1..C~_11 (elliptic, square -1) and G~ (genus 3, square 1), m_i = p^i."""
    return tuple(SeifertCurve(1, p**i, -1) for i in range(1, 12)) + (SeifertCurve(3, p**12, 1),)


def construction_data(p: int, a: Sequence[int], b: Sequence[int] | None = None) -> SeifertData:
    return SeifertData(p, construction_curves(p), tuple(b) if b is not None else (1,) * 12, tuple(a))


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class SeifertHomology:
    free_rank: int
    torsion: tuple[tuple[int, int], ...]  # (modulus, number of copies)
    h1_conditions: tuple[tuple[str, bool], ...] = ()

    @property
    def h1_zero(self) -> bool:
        return all(ok for _, ok in self.h1_conditions)

    def to_json(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "torsion": [list(t) for t in self.torsion],
            "h1_conditions": dict(self.h1_conditions),
        }


def seifert_homology(k: int, curves: Sequence[SeifertCurve], h1_base_zero: bool = True,
                     surjective: Sequence[bool] | None = None, chern_primitive: bool | None = None) -> SeifertHomology:
    """H_2 = Z^k + sum (Z/m_i)^(2 g_i) for k + 1 disjoint curves spanning rational homology."""
    if k < 0:
        raise InvariantError("k must be >= 0")
    if not curves:
        raise InvariantError("no curves")
    if len(curves) != k + 1:
        raise InvariantError(f"expected k + 1 = {k + 1} curves, got {len(curves)}")
    torsion = tuple((c.multiplicity, 2 * c.genus) for c in curves if c.multiplicity > 1 and c.genus > 0)
    conditions = [("base_h1_zero", bool(h1_base_zero))]
    if surjective is not None:
        conditions.append(("restriction_surjective", all(surjective)))
    if chern_primitive is not None:
        conditions.append(("chern_class_primitive", bool(chern_primitive)))
    return SeifertHomology(k, torsion, tuple(conditions))


def surjectivity_check(pairings: Sequence[Sequence[int]], m: Sequence[int]) -> list[bool]:
    """Column i lists pair(xi, D_i) over an integral basis xi of H^2; onto Z/m_i iff the gcd is coprime to m_i."""
    cols = len(m)
    for row in pairings:
        if len(row) != cols:
            raise InvariantError("pairing matrix width does not match the number of curves")
        if any(not isinstance(x, int) for x in row):
            raise InvariantError("pairing values must be integers")
    out = []
    for i, mi in enumerate(m):
        g = 0
        for row in pairings:
            g = math.gcd(g, row[i])
        out.append(math.gcd(g, mi) == 1)
    return out


def chern_coefficients(data: SeifertData) -> HomologyClass:
    """Integral class mu c_1(B) + sum b_i (mu / m_i) [C_i] in the curve basis."""
    mu = data.mu
    coords = [mu * ai + bi * (mu // c.multiplicity) for ai, bi, c in zip(data.a, data.b, data.curves)]
    return data.basis().vector(coords)


def chern_coefficients_closed_form(p: int, a: Sequence[int]) -> list[int]:
    """b_i = 1, m_i = p^i, i = 1..n: coefficient i is p^(n-i) (p^i a_i + 1)."""
    n = len(a)
    return [p ** (n - i) * (p**i * ai + 1) for i, ai in enumerate(a, 1)]


# ---------------------------------------------------------------------------
# admissible a_1


@dataclass(frozen=True)
class ResidueSet:
    """Residues of a_1 that make p a_1 + 1 share a prime with p^2 a_2 + 1."""

    p: int
    value: int  # p^2 a_2 + 1
    factors: tuple[tuple[int, int], ...]
    residues: tuple[int, ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.factors)

    @property
    def modulus(self) -> int:
        return math.prod(self.primes)

    @property
    def allowed_count(self) -> int:
        return math.prod(q - 1 for q in self.primes)

    @property
    def excluded_count(self) -> int:
        return self.modulus - self.allowed_count

    @property
    def density(self) -> Fraction:
        return Fraction(self.allowed_count, self.modulus)

    def is_forbidden(self, a1: int) -> bool:
        return any(a1 % q == r for q, r in zip(self.primes, self.residues))

    def allowed_residues(self) -> list[int]:
        return [x for x in range(self.modulus) if not self.is_forbidden(x)]

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "factors": [list(f) for f in self.factors],
            "residues": list(self.residues),
            "modulus": self.modulus,
            "allowed_count": self.allowed_count,
        }


def _bezout_residue(p: int, q: int) -> int:
    """alpha mod q with 1 + alpha p = 0 (mod q)."""
    return (-pow(p, -1, q)) % q


def admissible_a1(p: int, a2: int, include_two: bool = False, alpha_two: int | None = None) -> ResidueSet:
    """Forbidden residues for a_1 given a_2.

    ``include_two`` adds the prime 2 (used to force a_1 even for odd p);
    its residue comes from the same congruence unless ``alpha_two`` overrides it.
    """
    check_prime(p)
    value = p * p * a2 + 1
    if abs(value) >= SIZE_LIMIT:
        raise SizeError(f"p^2 a_2 + 1 = {value} exceeds the 64-bit range")
    fac = {q: e for q, e in factorint(abs(value)).items()} if abs(value) > 1 else {}
    if include_two and 2 not in fac:
        if p == 2:
            raise InvariantError("prime 2 is not coprime to p = 2")
        fac[2] = 0
    factors = tuple(sorted(fac.items()))
    residues = []
    for q, _ in factors:
        if q == 2 and alpha_two is not None:
            residues.append(alpha_two % 2)
        else:
            residues.append(_bezout_residue(p, q))
    return ResidueSet(p, value, factors, tuple(residues))


# ---------------------------------------------------------------------------
# spin


class SpinResult(NamedTuple):
    spin: bool
    kernel_dim: int


def construction_w2(n: int = 12) -> tuple[int, ...]:
    """w_2 of the base in the curve basis: every curve class appears once."""
    return (1,) * n


def spin_class(data: SeifertData, w2X: Sequence[int]) -> SpinResult:
    n = len(data.curves)
    w2 = tuple(x % 2 for x in w2X)
    if len(w2) != n:
        raise InvariantError("w2 must have one entry per curve")
    if data.p == 2:
        return SpinResult(True, n)
    v = tuple((ai + bi) % 2 for ai, bi in zip(data.a, data.b))
    kernel_dim = 1 if any(v) else 0
    spin = not any(w2) or (kernel_dim == 1 and w2 == v)
    return SpinResult(spin, kernel_dim)


# ---------------------------------------------------------------------------
# reports


def seifert_report(p: int, a: Sequence[int], b: Sequence[int] | None = None) -> CertReport:
    """H_1 = 0 conditions, H_2, residue structure and spin type for the standard construction."""
    data = construction_data(p, a, b)
    basis = data.basis()
    gram = [[pair(basis[i], basis[j]) for j in range(basis.rank)] for i in range(basis.rank)]
    surj = surjectivity_check(gram, data.multiplicities)
    c1 = chern_coefficients(data)
    primitive = is_primitive(c1)
    homology = seifert_homology(len(data.curves) - 1, data.curves, True, surj, primitive)
    children = [
        leaf("seifert.restriction_surjective", all(surj), [exact("per_curve", surj)]),
        leaf("seifert.chern_primitive", primitive,
             [exact("coefficients", list(c1.coords)), exact("gcd", math.gcd(*c1.coords))]),
    ]
    if data.b == (1,) * 12:
        closed = chern_coefficients_closed_form(p, data.a)
        coprime = math.gcd(p * data.a[0] + 1, p * p * data.a[1] + 1) == 1
        children.append(leaf("seifert.chern_closed_form", closed == list(c1.coords),
                             [exact("closed_form", closed)]))
        children.append(leaf("seifert.gcd_sufficiency", (not coprime) or primitive,
                             [exact("gcd_pa1_p2a2", math.gcd(p * data.a[0] + 1, p * p * data.a[1] + 1))],
                             note="gcd(p a1 + 1, p^2 a2 + 1) = 1 implies primitivity"))
    res = admissible_a1(p, data.a[1])
    direct = math.gcd(p * data.a[0] + 1, p * p * data.a[1] + 1) == 1
    children.append(leaf("seifert.a1_admissible", res.is_forbidden(data.a[0]) != direct,
                         [exact("residues", res.to_json()), exact("a1_forbidden", res.is_forbidden(data.a[0])),
                          exact("allowed_density", res.density)]))
    sp = spin_class(data, construction_w2())
    expected_torsion = [(p**i, 2) for i in range(1, 12)] + [(p**12, 6)]
    children.append(leaf("seifert.h2", list(homology.torsion) == expected_torsion and homology.free_rank == 11,
                         [exact("h2", homology.to_json())]))
    return combine(
        "seifert",
        children,
        witnesses=[exact("p", p, Provenance.TRIVIAL), exact("a", list(data.a), Provenance.TRIVIAL),
                   exact("mu", data.mu), exact("h2", homology.to_json()), exact("h1_zero", homology.h1_zero),
                   exact("spin", sp.spin), exact("kernel_dim", sp.kernel_dim)],
        note=("spin" if sp.spin else "non-spin") + (", H1 = 0" if homology.h1_zero else ", H1 != 0"),
    )


def sw_contradiction_check() -> CertReport:
    """Basic classes +-T12 +-T13 +-T14 +-E1 +-E2 all square to -2; Noether forces K^2 = 22."""
    basis = diagonal_basis("sw", ["T12", "T13", "T14", "E1", "E2"], [0, 0, 0, -1, -1])
    gens = [basis[i] for i in range(5)]
    squares = []
    for signs in product((1, -1), repeat=5):
        kappa = basis.zero()
        for s, g in zip(signs, gens):
            kappa = kappa + s * g
        squares.append(pair(kappa, kappa))
    p_g, h11, q, c2, b2 = 4, 28, 0, 38, 36
    chi = 1 - q + p_g
    ksq = 12 * chi - c2
    b_plus = 1 + p_g
    b_minus = h11 + p_g - 1
    checks = [
        leaf("sw.kappa_squares", len(squares) == 32 and set(squares) == {-2},
             [exact("patterns", len(squares), Provenance.TRIVIAL), exact("kappa_sq", -2, Provenance.REFERENCE)]),
        leaf("sw.noether", Fraction(ksq + c2, 12) == chi and ksq == 22,
             [exact("chi", chi, Provenance.REFERENCE), exact("ksq", ksq, Provenance.REFERENCE)]),
        leaf("sw.signature", b_plus == 5 and b_minus == 31 and b_plus + b_minus == b2 and c2 == 2 + b2,
             [exact("b2_plus", b_plus, Provenance.REFERENCE), exact("b2_minus", b_minus, Provenance.REFERENCE)]),
    ]
    contradiction = ksq not in set(squares)
    return combine("sw_contradiction", checks,
                   witnesses=[exact("noether_ksq", ksq), exact("basic_class_sq", sorted(set(squares)))],
                   note=f"{ksq} != -2: no complex structure" if contradiction else "no contradiction",
                   own_ok=contradiction)
