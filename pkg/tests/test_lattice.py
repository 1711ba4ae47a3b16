import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from sbverify.lattice import (
    BasisMismatchError,
    DimensionError,
    HomologyClass,
    abelianize,
    blowup_basis,
    blowup_lattice_report,
    boundary_presentation_report,
    canonical_class,
    class_sum,
    commutator,
    construction_classes,
    determinant,
    diagonal_basis,
    genus_from_adjunction,
    gram_matrix,
    is_primitive,
    matmul,
    mod2_characteristic,
    pairing_matrix,
    pair,
    plane_basis,
    plane_curve_genus,
    proper_transform,
    smith_normal_form,
    verify_basis,
)

X = blowup_basis(11)
CLS = construction_classes(X)
K = canonical_class(X)

small_ints = st.integers(-9, 9)


def test_construction_classes_pairings():
    cs = [CLS[f"c{k}"] for k in range(1, 12)]
    for i, a in enumerate(cs):
        assert a @ a == -1
        assert a @ CLS["d"] == 0
        for b in cs[i + 1:]:
            assert a @ b == 0
    assert CLS["d"] @ CLS["d"] == 1


def test_basis_change_is_unimodular():
    fam = [CLS[f"c{k}"] for k in range(1, 12)] + [CLS["d"]]
    check = verify_basis(fam)
    assert check.is_basis and abs(check.det) == 1
    assert not verify_basis([2 * c for c in fam]).is_basis


def test_genera_by_adjunction():
    assert all(genus_from_adjunction(K, CLS[f"c{k}"]) == 1 for k in range(1, 12))
    assert genus_from_adjunction(K, CLS["d"]) == 3
    assert plane_curve_genus(10, [3] * 11) == 3
    assert plane_curve_genus(3, [1] * 10) == 1


def test_proper_transform_matches_construction():
    P = plane_basis()
    assert proper_transform(10 * P["h"], [3] * 11, X) == CLS["d"]
    assert proper_transform(3 * P["h"], [0] + [1] * 10, X) == CLS["c1"]
    with pytest.raises(DimensionError):
        proper_transform(3 * P["h"], [1] * 3, X)


def test_wu_class_is_all_ones():
    assert mod2_characteristic(X) == (1,) * 12
    fam = [CLS[f"c{k}"] for k in range(1, 12)] + [CLS["d"]]
    curve_basis = diagonal_basis("curves", [f"C{i}" for i in range(12)], [-1] * 11 + [1])
    assert mod2_characteristic(curve_basis) == (1,) * 12
    # the characteristic property in the original basis: w.x = x.x mod 2
    w = X.vector(mod2_characteristic(X))
    assert all((w @ c - c @ c) % 2 == 0 for c in fam)


def test_mixed_bases_rejected():
    other = blowup_basis(11, name="copy")
    with pytest.raises(BasisMismatchError):
        X["h"] + other["h"]
    with pytest.raises(BasisMismatchError):
        pair(X["h"], other["h"])
    with pytest.raises(DimensionError):
        HomologyClass((1, 2), X)


def test_class_sum_and_primitive():
    with pytest.raises(ValueError):
        class_sum([])
    assert class_sum([], X).is_zero()
    assert is_primitive(CLS["d"])
    assert not is_primitive([2, 4, 6])
    with pytest.raises(ValueError):
        is_primitive(X.zero())


def test_json_roundtrip():
    doc = CLS["d"].to_json()
    assert HomologyClass.from_json(doc, X) == CLS["d"]
    with pytest.raises(BasisMismatchError):
        HomologyClass.from_json(doc, blowup_basis(11, name="other"))


def vectors(n=12, lo=-30, hi=30):
    return st.lists(st.integers(lo, hi), min_size=n, max_size=n).map(X.vector)


@given(vectors(), vectors(), vectors(), st.integers(-7, 7))
def test_pairing_bilinear_symmetric(a, b, c, n):
    assert pair(a, b) == pair(b, a)
    assert pair(a + c, b) == pair(a, b) + pair(c, b)
    assert pair(n * a, b) == n * pair(a, b)
    assert pair(a - a, b) == 0


def _check_snf(m):
    s = smith_normal_form(m)
    rows, cols = len(m), len(m[0])
    diag = [[s.diagonal[i] if i == j else 0 for j in range(cols)] for i in range(rows)]
    assert matmul(matmul(s.left, m), s.right) == diag
    assert abs(determinant(s.left)) == 1 and abs(determinant(s.right)) == 1
    nz = s.factors
    assert all(d > 0 for d in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    return s


@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r))))
def test_snf_against_sympy(m):
    s = _check_snf(m)
    ref = sympy_snf(sympy.Matrix(m), domain=sympy.ZZ)
    ref_diag = sorted(abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i] != 0)
    assert sorted(s.factors) == ref_diag


def test_snf_handles_zero_and_ragged():
    assert smith_normal_form([[0, 0], [0, 0]]).factors == []
    with pytest.raises(DimensionError):
        smith_normal_form([[1, 2], [3]])


@given(st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=4, max_size=4))
def test_determinant_against_sympy(m):
    assert determinant(m) == int(sympy.Matrix(m).det())


def test_abelianize_presentations():
    assert abelianize(2, [commutator(0, 1)]) == (2, [])
    assert abelianize(1, [[(0, 6)]]) == (0, [6])
    assert abelianize(2, [[(0, 2)], [(1, 4)]]) == (0, [2, 4])
    assert abelianize(3, []) == (3, [])
    rep = boundary_presentation_report()
    assert rep.passed
    assert rep.find("lattice.boundary_abelianization.genus3").witness("free_rank") == 6
    assert rep.find("lattice.boundary_abelianization.genus1").witness("free_rank") == 2


def test_lattice_report_is_seeded():
    a = blowup_lattice_report(seed=3)
    b = blowup_lattice_report(seed=3)
    assert a.passed and a.to_json() == b.to_json()


def test_gram_matrix_symmetry_random():
    rng = random.Random(1)
    fam = [X.vector([rng.randint(-5, 5) for _ in range(12)]) for _ in range(6)]
    g = gram_matrix(fam)
    assert all(g[i][j] == g[j][i] == pair(fam[i], fam[j]) for i in range(6) for j in range(6))


@given(st.integers(8, 12).flatmap(lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_large_determinant_int64_path_against_sympy(m):
    assert determinant(m) == int(sympy.Matrix(m).det())


def test_determinant_falls_back_to_python_ints_for_big_entries():
    rng = random.Random(7)
    m = [[rng.randint(-10**12, 10**12) for _ in range(9)] for _ in range(9)]
    assert determinant(m) == int(sympy.Matrix(m).det())
    singular = [row[:] for row in m]
    singular[4] = [2 * x for x in singular[1]]
    assert determinant(singular) == 0


def test_gram_matrix_large_family_matches_pairwise():
    rng = random.Random(3)
    fam = [X.vector([rng.randint(-40, 40) for _ in range(12)]) for _ in range(10)]
    big = [X.vector([rng.randint(-10**10, 10**10) for _ in range(12)]) for _ in range(9)]
    for family in (fam, big):
        g = gram_matrix(family)
        assert g == [[pair(a, b) for b in family] for a in family]


def test_pairing_matrix_sparse_and_dense_rows():
    rng = random.Random(5)
    rows = [X["h"], X["e3"], X.vector([rng.randint(-5, 5) for _ in range(12)])]
    cols = [X.vector([rng.randint(-5, 5) for _ in range(12)]) for _ in range(4)]
    assert pairing_matrix(rows, cols) == [[pair(r, c) for c in cols] for r in rows]
    with pytest.raises(BasisMismatchError):
        pairing_matrix(rows, [blowup_basis(11, name="other")["h"]])
