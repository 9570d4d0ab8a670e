"""Second cohomology, central extensions and orbit normalization."""

from fractions import Fraction

import pytest

from nilalg import cohomology as coh
from nilalg.algebra import Algebra, annihilator, check_bicommutative, power_series
from nilalg.errors import NotACocycleError
from nilalg.forms import BilinearForm, VectorCocycle
from nilalg.linalg import Subspace, identity
from nilalg.scalars import var

D = BilinearForm.delta


def span(forms, n):
    return Subspace([f.vector() for f in forms], n * n)


def test_cocycle_space_examples(catalog):
    assert len(coh.cocycle_space(catalog.get("N2"))) == 4
    Z = span(coh.cocycle_space(catalog.get("B3s_01")), 3)
    want = [D(1, 1, 3), D(1, 2, 3), D(1, 3, 3), D(2, 1, 3), D(3, 1, 3), D(3, 3, 3)]
    assert Z == span(want, 3)
    alpha = var("alpha")
    Z = span(coh.cocycle_space(catalog.get("B3_02")), 3)
    assert Z.dim == 4
    assert Z.contains((alpha * D(2, 2, 3) + D(1, 3, 3) + alpha * D(3, 1, 3)).vector())


def test_coboundary_space_examples(catalog):
    assert span(coh.coboundary_space(catalog.get("B3s_02")), 3) == span([D(1, 1, 3) + D(2, 2, 3)], 3)
    assert coh.coboundary_space(catalog.get("N3")) == []
    alpha = var("alpha")
    B = span(coh.coboundary_space(catalog.get("B3_02")), 3)
    assert B == span([D(1, 1, 3), D(1, 2, 3) + alpha * D(2, 1, 3)], 3)


def test_h2_examples(catalog):
    assert coh.h2(catalog.get("B3s_01")).dims == (6, 1, 5)
    data = coh.h2(catalog.get("N1"))
    assert data.dims == (1, 0, 1) and data.z2_basis == [D(1, 1, 1)]
    data = coh.h2(catalog.get("B3_01"))
    assert data.h2_reps == [D(1, 2, 3), D(3, 1, 3)]


def test_h2_representatives_complement_b2(catalog):
    for id_ in ("B3s_01", "B3s_02", "B3s_03", "B3s_04", "B3s_04_0", "B3_01", "B3_02"):
        A = catalog.get(id_)
        data = coh.h2(A)
        n = A.dim
        B = span(data.b2_basis, n)
        assert span(data.z2_basis, n) == B + span(data.h2_reps, n)
        assert (B + span(data.h2_reps, n)).dim == B.dim + len(data.h2_reps)


def test_coboundaries_are_cocycles(catalog):
    A = catalog.get("B4_24")
    f = [Fraction(2), Fraction(-1), Fraction(3), Fraction(5)]
    delta = coh.coboundary(A, f)
    assert coh.is_cocycle(A, delta)
    # delta f (x, y) = f(xy)
    assert delta.matrix[0][0] == f[1] and delta.matrix[0][2] == f[3]


def test_cocycle_annihilator_examples(catalog):
    N2 = catalog.get("N2")
    assert coh.cocycle_annihilator(N2, VectorCocycle.of(D(1, 1, 2))) == Subspace([[0, 1]], 2)
    B = catalog.get("B3_01")
    assert coh.cocycle_annihilator(B, VectorCocycle.of(D(1, 2, 3) + D(3, 1, 3))).dim == 0
    assert coh.cocycle_annihilator(B, VectorCocycle.of(BilinearForm.zero(3))).dim == 3


def test_central_extension_examples(catalog):
    ext = coh.central_extension(catalog.get("N1"), VectorCocycle.of(D(1, 1, 1)))
    assert ext.same_structure(catalog.get("B2s_01"))
    ext = coh.central_extension(catalog.get("B3_01"), VectorCocycle.of(D(1, 2, 3) + D(3, 1, 3)))
    assert ext.same_structure(catalog.get("B4_20"))
    B = catalog.get("B3_01")
    split = coh.central_extension(B, VectorCocycle.of(BilinearForm.zero(3)))
    assert split.dim == 4 and annihilator(split).dim == annihilator(B).dim + 1


def test_central_extension_rejects_non_cocycle(catalog):
    with pytest.raises(NotACocycleError) as info:
        coh.central_extension(catalog.get("B2s_01"), VectorCocycle.of(D(2, 2, 2)))
    assert info.value.equation == "theta(xy,z)=theta(xz,y)"
    assert info.value.triple == (1, 1, 2)
    assert "(e1, e1, e2)" in str(info.value)


def test_ts_membership_examples(catalog):
    B = catalog.get("B3_01")
    rep = coh.check_ts_membership(B, VectorCocycle.of(D(1, 2, 3) + D(3, 1, 3)))
    assert rep.annihilator_ok and rep.classes_independent and rep.non_split
    rep = coh.check_ts_membership(B, VectorCocycle.of(BilinearForm.zero(3)))
    assert not rep.classes_independent
    rep = coh.check_ts_membership(catalog.get("N2"), VectorCocycle.of(D(1, 1, 2)))
    assert not rep.annihilator_ok


def _generic(fam):
    a = [var(x) for x in fam.coefficients]
    theta = a[0] * fam.nablas[0]
    for ai, n in zip(a[1:], fam.nablas[1:]):
        theta = theta + ai * n
    return theta


def _family(catalog, name):
    return next(f for f in catalog.normalization_families() if f.name == name)


def test_transform_cocycle_examples(catalog):
    theta = D(1, 2, 3) + 2 * D(3, 1, 3)
    assert coh.transform_cocycle(theta, identity(3)) == theta
    fam = _family(catalog, "B3s_04_0")
    A = catalog.get("B3s_04_0")
    moved = coh.transform_cocycle(_generic(fam), fam.automorphism)
    coords = coh.h2_coordinates(moved, fam.nablas, coh.coboundary_space(A))
    x, y = var("x"), var("y")
    assert coords[1] == x**2 * y * var("a2")
    fam = _family(catalog, "B3_02")
    moved = coh.transform_cocycle(_generic(fam), fam.automorphism)
    coords = coh.h2_coordinates(moved, fam.nablas, coh.coboundary_space(catalog.get("B3_02")))
    assert coords[1] == x**4 * var("a2")


@pytest.mark.parametrize("case_id", ["B3s_04_0/2", "B3_01/1", "B3_02/2"])
def test_normalization_examples(catalog, case_id):
    case = catalog.normalization_case(case_id)
    res = coh.verify_normalization_case(case, catalog.get(case.base))
    assert res.ok, res.reason


def test_normalization_examples_representatives(catalog):
    assert catalog.normalization_case("B3s_04_0/2").representative == [0, 1, 0, 0, 1]
    assert catalog.normalization_case("B3_01/1").representative == [1, 1]
    assert catalog.normalization_case("B3_02/2").representative == [0, 1]


def test_normalization_detects_wrong_representative(catalog):
    import dataclasses

    case = catalog.normalization_case("B3_01/1")
    wrong = dataclasses.replace(case, representative=[Fraction(1), Fraction(0)])
    res = coh.verify_normalization_case(wrong, catalog.get(case.base))
    assert not res.ok
    assert res.residual


def test_normalization_detects_bad_automorphism(catalog):
    import dataclasses

    case = catalog.normalization_case("B3_01/1")
    rows = [list(r) for r in case.automorphism]
    rows[0][1] = var("y")
    res = coh.verify_normalization_case(dataclasses.replace(case, automorphism=rows), catalog.get(case.base))
    assert not res.ok


def test_case_coverage_complete(catalog):
    for fam in catalog.normalization_families():
        assert coh.check_case_coverage(fam) == []


def test_case_coverage_detects_gap(catalog):
    import dataclasses

    fam = _family(catalog, "B3_01")
    holed = dataclasses.replace(fam, cases=fam.cases[:1])
    assert coh.check_case_coverage(holed)


def test_extensions_are_bicommutative_and_nilpotent(catalog):
    for id_ in catalog.list("algebras", table="A"):
        prov = catalog.provenance(id_)
        parent = catalog.get(prov.parent, prov.bindings)
        ext = coh.central_extension(parent, prov.cocycle)
        assert check_bicommutative(ext) == []
        assert power_series(ext)[1] is not None
