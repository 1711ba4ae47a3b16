"""Integer lattices with a symmetric pairing: H_2 of blow-ups of CP^2.

Everything here is exact integer arithmetic: Python ints, or numpy int64 only
where a Hadamard-type bound rules out overflow.  A :class:`LatticeBasis`
carries a Gram matrix; a :class:`HomologyClass` is an integer coordinate
vector tied to one basis object.  Classes from different basis objects never
pair, even if their Gram matrices agree.
"""

from __future__ import annotations

import math
from operator import add, mul, neg, sub
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .report import CertReport, Provenance, combine, exact, leaf

Matrix = list[list[int]]


class BasisMismatchError(ValueError):
    """Two classes live in different lattices."""


class DimensionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LatticeBasis:
    name: str
    labels: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        gram = tuple(tuple(map(int, row)) for row in self.gram)
        if len(gram) != n or any(len(row) != n for row in gram):
            raise DimensionError(f"gram must be {n}x{n}")
        if tuple(zip(*gram)) != gram:
            raise ValueError("gram matrix is not symmetric")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "labels", tuple(self.labels))
        diagonal = all(row.count(0) - (row[i] == 0) == n - 1 for i, row in enumerate(gram))
        object.__setattr__(self, "_diag", tuple(gram[i][i] for i in range(n)) if diagonal else None)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def basis_vector(self, label_or_index) -> "HomologyClass":
        i = self.labels.index(label_or_index) if isinstance(label_or_index, str) else label_or_index
        coords = [0] * self.rank
        coords[i] = 1
        return HomologyClass._trusted(tuple(coords), self)

    def __getitem__(self, label) -> "HomologyClass":
        return self.basis_vector(label)

    def vector(self, coords: Sequence[int]) -> "HomologyClass":
        return HomologyClass(tuple(int(c) for c in coords), self)

    def zero(self) -> "HomologyClass":
        return HomologyClass((0,) * self.rank, self)

    def __repr__(self):
        return f"LatticeBasis({self.name!r}, rank={self.rank})"


def diagonal_basis(name: str, labels: Sequence[str], diagonal: Sequence[int]) -> LatticeBasis:
    n = len(labels)
    gram = []
    for i in range(n):
        row = [0] * n
        row[i] = diagonal[i]
        gram.append(row)
    return LatticeBasis(name, tuple(labels), tuple(gram))


def blowup_basis(k: int = 11, name: str | None = None) -> LatticeBasis:
    """{h, e_1..e_k} with Gram diag(1, -1, ..., -1)."""
    labels = ["h"] + [f"e{i}" for i in range(1, k + 1)]
    return diagonal_basis(name or f"CP2#{k}", labels, [1] + [-1] * k)


@dataclass(frozen=True)
class HomologyClass:
    coords: tuple[int, ...]
    basis: LatticeBasis = field(compare=False)

    def __post_init__(self):
        if len(self.coords) != self.basis.rank:
            raise DimensionError(f"expected {self.basis.rank} coordinates, got {len(self.coords)}")

    def __eq__(self, other):
        if not isinstance(other, HomologyClass):
            return NotImplemented
        return self.basis is other.basis and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.basis), self.coords))

    def _check(self, other: "HomologyClass"):
        if not isinstance(other, HomologyClass) or self.basis is not other.basis:
            raise BasisMismatchError(f"classes in {self.basis.name!r} and {other.basis.name!r} are incomparable")

    @classmethod
    def _trusted(cls, coords: tuple[int, ...], basis: LatticeBasis) -> "HomologyClass":
        # results of arithmetic on validated classes skip re-validation
        obj = object.__new__(cls)
        d = obj.__dict__
        d["coords"] = coords
        d["basis"] = basis
        return obj

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        if other.__class__ is not HomologyClass or other.basis is not self.basis:
            self._check(other)
        return HomologyClass._trusted(tuple(map(add, self.coords, other.coords)), self.basis)

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        if other.__class__ is not HomologyClass or other.basis is not self.basis:
            self._check(other)
        return HomologyClass._trusted(tuple(map(sub, self.coords, other.coords)), self.basis)

    def __neg__(self) -> "HomologyClass":
        return HomologyClass._trusted(tuple(map(neg, self.coords)), self.basis)

    def __mul__(self, n: int) -> "HomologyClass":
        if not isinstance(n, int):
            return NotImplemented
        return HomologyClass._trusted(tuple(map(n.__mul__, self.coords)), self.basis)

    __rmul__ = __mul__

    def __matmul__(self, other: "HomologyClass") -> int:
        return pair(self, other)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def square(self) -> int:
        return pair(self, self)

    def to_json(self) -> dict:
        return {"basis": self.basis.name, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, doc: dict, basis: LatticeBasis) -> "HomologyClass":
        if doc.get("basis") != basis.name:
            raise BasisMismatchError(f"class tagged {doc.get('basis')!r}, expected {basis.name!r}")
        return cls(tuple(int(c) for c in doc["coords"]), basis)

    def __repr__(self):
        terms = [f"{c}*{l}" for c, l in zip(self.coords, self.basis.labels) if c]
        return "HomologyClass(" + (" + ".join(terms) or "0") + ")"


def class_sum(classes: Sequence[HomologyClass], basis: LatticeBasis | None = None) -> HomologyClass:
    if not classes:
        if basis is None:
            raise ValueError("empty sum needs a basis")
        return basis.zero()
    first = classes[0]
    for c in classes:
        first._check(c)
    if len(classes) == 1:
        return first
    return HomologyClass._trusted(tuple(map(sum, zip(*(c.coords for c in classes)))), first.basis)


def pair(a: HomologyClass, b: HomologyClass) -> int:
    """Intersection number a^T G b."""
    if a.basis is not b.basis:
        a._check(b)
    diag = a.basis._diag
    if diag is not None:
        return sum(map(mul, map(mul, a.coords, b.coords), diag))
    g = a.basis.gram
    total = 0
    for i, ai in enumerate(a.coords):
        if ai:
            row = g[i]
            total += ai * sum(row[j] * bj for j, bj in enumerate(b.coords) if bj)
    return total


def _same_basis(classes: Sequence[HomologyClass]) -> LatticeBasis:
    first = classes[0]
    for c in classes:
        first._check(c)
    return first.basis


def gram_matrix(classes: Sequence[HomologyClass]) -> Matrix:
    n = len(classes)
    out = [[0] * n for _ in range(n)]
    if not n:
        return out
    diag = _same_basis(classes)._diag
    if diag is None:
        for i in range(n):
            for j in range(i, n):
                out[i][j] = out[j][i] = pair(classes[i], classes[j])
        return out
    coords = [c.coords for c in classes]
    if n >= _NUMPY_MIN_SIZE:
        biggest = max(max(map(abs, c)) for c in coords) or 1
        if len(diag) * biggest * biggest * (max(map(abs, diag)) or 1) < _INT64_SAFE:
            mat = np.array(coords, dtype=np.int64)
            return ((mat * np.array(diag, dtype=np.int64)) @ mat.T).tolist()
    for i in range(n):
        wi = tuple(map(mul, coords[i], diag))
        for j in range(i, n):
            out[i][j] = out[j][i] = sum(map(mul, wi, coords[j]))
    return out


def pairing_matrix(rows: Sequence[HomologyClass], cols: Sequence[HomologyClass]) -> Matrix:
    """``[[r . c for c in cols] for r in rows]``, cheap when the rows are sparse."""
    if not rows or not cols:
        return [[] for _ in rows]
    diag = _same_basis(list(rows) + list(cols))._diag
    if diag is None:
        return [[pair(r, c) for c in cols] for r in rows]
    out = []
    for r in rows:
        terms = [(i, x * d) for i, (x, d) in enumerate(zip(r.coords, diag)) if x]
        if len(terms) == 1:
            (i, w), = terms
            out.append([w * c.coords[i] for c in cols])
        else:
            wr = tuple(map(mul, r.coords, diag))
            out.append([sum(map(mul, wr, c.coords)) for c in cols])
    return out


# ---------------------------------------------------------------------------
# exact linear algebra


# int64 is used only when every intermediate provably stays below this
_INT64_SAFE = 2**62
_NUMPY_MIN_SIZE = 8  # below this the Python loop is faster


def _bareiss_int64(a: np.ndarray) -> int:
    n = a.shape[0]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k, k] == 0:
            nz = np.flatnonzero(a[k + 1:, k])
            if nz.size == 0:
                return 0
            s = k + 1 + int(nz[0])
            a[[k, s]] = a[[s, k]]
            sign = -sign
        pivot = a[k, k]
        a[k + 1:, k + 1:] = (a[k + 1:, k + 1:] * pivot - np.outer(a[k + 1:, k], a[k, k + 1:])) // prev
        prev = pivot
    return sign * int(a[n - 1, n - 1])


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise DimensionError("determinant needs a square matrix")
    if n == 0:
        return 1
    if n >= _NUMPY_MIN_SIZE:
        # Bareiss intermediates are minors, bounded by the product of row norms (Hadamard);
        # each update forms two such products, so bound^2 < 2^62 keeps int64 exact
        bound_sq = math.prod(max(1, sum(x * x for x in row)) for row in a)
        if bound_sq < _INT64_SAFE:
            return _bareiss_int64(np.array(a, dtype=np.int64))
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot_row = a[k]
        pivot = pivot_row[k]
        tail = pivot_row[k + 1:]
        for i in range(k + 1, n):
            row = a[i]
            lead = row[k]
            row[k + 1:] = [(x * pivot - lead * y) // prev for x, y in zip(row[k + 1:], tail)]
        prev = pivot
    return sign * a[n - 1][n - 1]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


class BasisCheck(NamedTuple):
    is_basis: bool
    det: int


def verify_basis(classes: Sequence[HomologyClass]) -> BasisCheck:
    """Unimodularity of the coordinate matrix of ``classes``."""
    if not classes:
        raise DimensionError("empty family")
    basis = classes[0].basis
    for c in classes:
        classes[0]._check(c)
    if len(classes) != basis.rank:
        raise DimensionError(f"need {basis.rank} classes, got {len(classes)}")
    det = determinant([list(c.coords) for c in classes])
    return BasisCheck(abs(det) == 1, det)


class SmithForm(NamedTuple):
    """``left @ M @ right == diag(diagonal)`` with unimodular ``left``/``right``."""

    diagonal: list[int]
    left: Matrix
    right: Matrix

    @property
    def factors(self) -> list[int]:
        return [d for d in self.diagonal if d != 0]

    @property
    def rank(self) -> int:
        return len(self.factors)


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form by row/column gcd elimination.

    The pivot is always a smallest nonzero entry of the remaining block; once a
    row and column are cleared, any entry not divisible by the pivot is folded
    into the pivot row and the step repeats.
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(r) != cols for r in a):
        raise DimensionError("ragged matrix")
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    for t in range(min(rows, cols)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // p)
                    dirty |= a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
                    dirty |= a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    diagonal = [a[i][i] for i in range(min(rows, cols))]
    return SmithForm(diagonal, u, v)


def abelianize(num_generators: int, relators: Sequence[Sequence[tuple[int, int]]]) -> tuple[int, list[int]]:
    """Abelian invariants of <x_0..x_{n-1} | relators>.

    A relator is a word given as ``(generator index, exponent)`` pairs.
    Returns ``(free_rank, torsion)`` with torsion the invariant factors > 1.
    """
    matrix = []
    for word in relators:
        row = [0] * num_generators
        for g, e in word:
            row[g] += e
        matrix.append(row)
    if not matrix:
        return num_generators, []
    snf = smith_normal_form(matrix)
    torsion = [d for d in snf.factors if d > 1]
    return num_generators - snf.rank, torsion


def commutator(x: int, y: int) -> list[tuple[int, int]]:
    return [(x, 1), (y, 1), (x, -1), (y, -1)]


def is_primitive(a: HomologyClass | Sequence[int]) -> bool:
    coords = a.coords if isinstance(a, HomologyClass) else tuple(int(c) for c in a)
    if not any(coords):
        raise ValueError("the zero class is not primitive or non-primitive")
    return math.gcd(*coords) == 1


def proper_transform(
    cls: HomologyClass, mults: Sequence[int], target: LatticeBasis
) -> HomologyClass:
    """Proper transform of a plane class ``n h`` through points of given multiplicities."""
    if cls.basis.rank != 1:
        raise DimensionError("proper_transform expects a class in the rank-1 plane lattice")
    if len(mults) != target.rank - 1:
        raise DimensionError(f"need {target.rank - 1} multiplicities, got {len(mults)}")
    if any(m < 0 for m in mults):
        raise ValueError("multiplicities must be non-negative")
    return target.vector([cls.coords[0], *(-int(m) for m in mults)])


def plane_basis() -> LatticeBasis:
    return diagonal_basis("CP2", ["h"], [1])


def mod2_characteristic(basis: LatticeBasis) -> tuple[int, ...]:
    """Solve G w = diag(G) mod 2 (a Wu class) for a unimodular Gram matrix."""
    n = basis.rank
    rows = [[basis.gram[i][j] % 2 for j in range(n)] + [basis.gram[i][i] % 2] for i in range(n)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, n) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                rows[i] = [(x + y) % 2 for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if r < n:
        raise ValueError("Gram matrix is singular mod 2")
    w = [0] * n
    for i, c in enumerate(pivots):
        w[c] = rows[i][n]
    return tuple(w)


# ---------------------------------------------------------------------------
# the specific lattice of CP^2 # 11 (-CP^2)


def construction_classes(basis: LatticeBasis) -> dict[str, HomologyClass]:
    """c_k = 3h - sum_{i != k} e_i and d = 10h - 3 sum e_i."""
    k = basis.rank - 1
    h = basis["h"]
    es = [basis[f"e{i}"] for i in range(1, k + 1)]
    out = {}
    for j in range(1, k + 1):
        out[f"c{j}"] = 3 * h - class_sum([e for i, e in enumerate(es, 1) if i != j])
    out["d"] = 10 * h - 3 * class_sum(es)
    return out


def canonical_class(basis: LatticeBasis) -> HomologyClass:
    """K = -3h + sum e_i for a blow-up of the plane."""
    k = basis.rank - 1
    return -3 * basis["h"] + class_sum([basis[f"e{i}"] for i in range(1, k + 1)])


def genus_from_adjunction(K: HomologyClass, D: HomologyClass) -> int:
    twice = pair(K, D) + pair(D, D) + 2
    if twice % 2:
        raise ValueError("K.D + D^2 is odd")
    return twice // 2


def plane_curve_genus(degree: int, singular_multiplicities: Sequence[int] = ()):
    """(d-1)(d-2)/2 minus m(m-1)/2 per ordinary singular point."""

    value = Fraction((degree - 1) * (degree - 2), 2)
    for m in singular_multiplicities:
        value -= Fraction(m * (m - 1), 2)
    return value


def blowup_lattice_report(seed: int = 0, samples: int = 200) -> CertReport:
    """Exact checks on the basis {c_1..c_11, d} of H_2(CP^2 # 11 (-CP^2))."""
    X = blowup_basis(11)
    cls = construction_classes(X)
    family = [cls[f"c{k}"] for k in range(1, 12)] + [cls["d"]]
    gram = gram_matrix(family)
    expected = [[(-1 if i < 11 else 1) if i == j else 0 for j in range(12)] for i in range(12)]
    check = verify_basis(family)
    det_form = determinant(gram)
    children = [
        leaf(
            "lattice.basis_gram",
            gram == expected,
            [exact("diagonal", [gram[i][i] for i in range(12)], Provenance.REFERENCE),
             exact("off_diagonal_nonzero", sum(1 for i in range(12) for j in range(12) if i != j and gram[i][j]))],
        ),
        leaf(
            "lattice.basis_unimodular",
            check.is_basis and det_form == -1,
            [exact("coordinate_det", check.det), exact("form_det", det_form, Provenance.REFERENCE)],
        ),
        leaf(
            "lattice.basis_snf",
            smith_normal_form([list(c.coords) for c in family]).diagonal == [1] * 12,
            [exact("invariant_factors", smith_normal_form([list(c.coords) for c in family]).diagonal)],
        ),
    ]

    plane = plane_basis()
    d_pt = proper_transform(plane.vector([10]), [3] * 11, X)
    c_pts = [proper_transform(plane.vector([3]), [0 if i == k else 1 for i in range(1, 12)], X) for k in range(1, 12)]
    children.append(
        leaf(
            "lattice.proper_transforms",
            d_pt == cls["d"] and all(c_pts[k - 1] == cls[f"c{k}"] for k in range(1, 12)),
            [exact("d_coords", list(d_pt.coords), Provenance.REFERENCE)],
        )
    )

    K = canonical_class(X)
    genera = [genus_from_adjunction(K, c) for c in family]
    plucker = plane_curve_genus(10, [3] * 11)
    children.append(
        leaf(
            "lattice.adjunction_genera",
            genera == [1] * 11 + [3] and plucker == 3,
            [exact("genera", genera, Provenance.REFERENCE), exact("plane_curve_genus_deg10_11_triple", plucker, Provenance.REFERENCE)],
        )
    )

    # w2 in the basis {c_k, d}: the form is diagonal odd, so every coordinate is 1
    curve_basis = diagonal_basis("curves", [f"c{k}" for k in range(1, 12)] + ["d"], [-1] * 11 + [1])
    w2 = mod2_characteristic(curve_basis)
    w2_sum = class_sum(family)
    children.append(
        leaf(
            "lattice.w2_curve_basis",
            w2 == (1,) * 12 and all(x % 2 == 1 for x in w2_sum.coords),
            [exact("w2_mod2", list(w2), Provenance.REFERENCE),
             exact("sum_of_curves_in_h_e", list(w2_sum.coords))],
        )
    )

    rng = random.Random(seed)
    bilinear_ok = True
    for _ in range(samples):
        a = X.vector([rng.randint(-9, 9) for _ in range(12)])
        b = X.vector([rng.randint(-9, 9) for _ in range(12)])
        c = X.vector([rng.randint(-9, 9) for _ in range(12)])
        n = rng.randint(-5, 5)
        bilinear_ok &= pair(a, b) == pair(b, a)
        bilinear_ok &= pair(a + n * c, b) == pair(a, b) + n * pair(c, b)
    children.append(
        leaf("lattice.pairing_bilinear", bilinear_ok, [exact("samples", samples, Provenance.TRIVIAL), exact("seed", seed, Provenance.TRIVIAL)])
    )
    children.append(boundary_presentation_report())
    return combine("lattice", children)


def boundary_presentation_report() -> CertReport:
    """H_1 of the circle bundles bounding tubular neighbourhoods of the curves.

    Y_i (genus 1, Euler number -1): <a, b, g | [a,b] g, [g,a], [g,b]>.
    Y_12 (genus 3, Euler number +1): <a1..b3, g | prod [a_j,b_j] g^-1, g central>.
    """
    elliptic = [commutator(0, 1) + [(2, 1)], commutator(2, 0), commutator(2, 1)]
    free_e, tors_e = abelianize(3, elliptic)
    gens = 7
    genus3 = [commutator(0, 1) + commutator(2, 3) + commutator(4, 5) + [(6, -1)]]
    genus3 += [commutator(6, i) for i in range(6)]
    free_g, tors_g = abelianize(gens, genus3)
    return combine(
        "lattice.boundary_abelianization",
        [
            leaf("lattice.boundary_abelianization.genus1", free_e == 2 and tors_e == [],
                 [exact("free_rank", free_e), exact("torsion", tors_e)]),
            leaf("lattice.boundary_abelianization.genus3", free_g == 6 and tors_g == [],
                 [exact("free_rank", free_g), exact("torsion", tors_g)]),
        ],
        note="fibre loop dies in H_1 because the Euler number is a unit",
    )
