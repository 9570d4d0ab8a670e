"""Structure-constant algebras: identities, powers, annihilators, derivations, bases."""

import random
from fractions import Fraction

import pytest

from nilalg.algebra import (
    Algebra,
    adapted_basis,
    annihilator,
    change_basis,
    check_bicommutative,
    commutator,
    decompose_central_extension,
    derivations,
    fingerprint,
    is_automorphism,
    is_derivation,
    is_ideal,
    power_series,
    product,
    quotient,
    as_matrix,
)
from nilalg.cohomology import central_extension
from nilalg.errors import DimensionMismatchError, NotAnIdealError, SingularMatrixError
from nilalg.forms import BilinearForm, VectorCocycle
from nilalg.linalg import Subspace, det, identity, inverse, transpose
from nilalg.scalars import var


def e(k, n):
    return [Fraction(int(i == k - 1)) for i in range(n)]


def _brute_identity_failures(A):
    # independent of the library: expand both sides on every basis triple
    n = A.dim
    T = A.table

    def mul(u, v):
        out = [Fraction(0)] * n
        for i in range(n):
            if u[i] == 0:
                continue
            for j in range(n):
                if v[j] == 0:
                    continue
                for k in range(n):
                    out[k] += u[i] * v[j] * T[i][j][k]
        return out

    bad = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                x, y, z = e(i + 1, n), e(j + 1, n), e(k + 1, n)
                if mul(mul(x, y), z) != mul(mul(x, z), y):
                    bad.append(("right", i + 1, j + 1, k + 1))
                if mul(x, mul(y, z)) != mul(y, mul(x, z)):
                    bad.append(("left", i + 1, j + 1, k + 1))
    return bad


def test_product_examples(catalog):
    A = catalog.get("B4_10")
    assert product(A, e(1, 4), e(2, 4)) == e(3, 4)
    assert product(A, [0] * 4, [1, 2, 3, 4]) == [0] * 4
    B = catalog.get("B3_02")
    alpha = var("alpha")
    assert product(B, e(2, 3), e(1, 3)) == [0, 0, alpha]
    with pytest.raises(DimensionMismatchError):
        product(A, [1, 0], [1, 0, 0, 0])


def test_bicommutative_examples(catalog):
    assert check_bicommutative(catalog.get("B4_10")) == []
    assert check_bicommutative(catalog.get("N4")) == []
    A = catalog.get("B4_10")
    bad = Algebra.from_products("bad", 4, {**A.products(), (2, 3): {4: 1}})
    found = check_bicommutative(bad)
    assert found
    assert any(ident == "x(yz)=y(xz)" for ident, *_ in found)
    assert len(found) == len(_brute_identity_failures(bad))


def test_identity_checker_matches_brute_force(catalog):
    for id_ in catalog.ids():
        A = catalog.get(id_)
        if A.params:
            A = catalog.get(id_, catalog.sample_values(id_)[0])
        assert (check_bicommutative(A) == []) == (_brute_identity_failures(A) == [])


def test_power_series_examples(catalog):
    chain, index = power_series(catalog.get("B4_24"))
    assert [s.dim for s in chain] == [4, 3, 2, 1, 0]
    assert index == 5
    chain, index = power_series(catalog.get("N4"))
    assert [s.dim for s in chain] == [4, 0]
    assert index == 2
    assert power_series(catalog.get("B4_10"))[0][1].dim == 2


def test_power_series_not_nilpotent():
    A = Algebra.from_products("idem", 1, {(1, 1): {1: 1}})
    assert power_series(A)[1] is None


def test_annihilator_examples(catalog):
    assert annihilator(catalog.get("B2s_01")) == Subspace([e(2, 2)], 2)
    assert annihilator(catalog.get("N3")).dim == 3
    assert annihilator(catalog.get("B4_20")) == Subspace([e(4, 4)], 4)


def test_derivation_examples(catalog):
    assert derivations(catalog.get("B4_17")).dim == 5
    assert derivations(catalog.get("N4")).dim == 16
    assert derivations(catalog.get("B4_10")).dim == 2


def test_derivations_closed_under_commutator(catalog):
    for id_ in catalog.list("algebras", table="A"):
        A = catalog.get(id_)
        if A.params:
            A = catalog.get(id_, catalog.sample_values(id_)[0])
        basis = [as_matrix(v, A.dim) for v in derivations(A).basis]
        for D in basis:
            assert is_derivation(A, D)
        for D1 in basis[:3]:
            for D2 in basis[:3]:
                assert is_derivation(A, commutator(D1, D2))


def test_is_automorphism_examples(catalog):
    x, y, z = var("x"), var("y"), var("z")
    A = catalog.get("B3_01")
    phi = [[x, 0, 0], [y, x**2, 0], [z, x * y, x**3]]
    assert is_automorphism(A, phi)
    assert is_automorphism(A, identity(3))
    assert not is_automorphism(A, transpose(phi))


def test_change_basis_examples(catalog):
    A = catalog.get("B2s_01")
    c = Fraction(3)
    assert change_basis(A, [[c, 0], [0, c * c]]).same_structure(A)
    B = catalog.get("B4_24", {"alpha": Fraction(2)})
    assert change_basis(B, identity(4)).same_structure(B)
    P = [[1, 2, 0, 0], [0, 1, 3, 0], [1, 0, 1, 0], [0, 0, 1, 1]]
    back = change_basis(change_basis(B, P), inverse(P))
    assert back.same_structure(B)
    with pytest.raises(SingularMatrixError):
        change_basis(B, [[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def test_quotient_examples(catalog):
    A = catalog.get("B4_20")
    Q = quotient(A, annihilator(A))
    assert Q.same_structure(catalog.get("B3_01"))
    assert quotient(A, Subspace.zero(4)).same_structure(A)
    assert quotient(catalog.get("N2"), Subspace([e(2, 2)], 2)).same_structure(catalog.get("N1"))
    with pytest.raises(NotAnIdealError):
        quotient(A, Subspace([e(1, 4)], 4))


def test_annihilator_is_ideal(catalog):
    for id_ in catalog.ids():
        A = catalog.get(id_)
        assert is_ideal(A, annihilator(A))


def test_decompose_examples(catalog):
    Aq, theta = decompose_central_extension(catalog.get("B4_20"))
    assert Aq.same_structure(catalog.get("B3_01"))
    assert theta.components == [BilinearForm.delta(1, 2, 3) + BilinearForm.delta(3, 1, 3)]
    Aq, theta = decompose_central_extension(catalog.get("B2s_01"))
    assert Aq.dim == 1 and theta.components == [BilinearForm.delta(1, 1, 1)]
    Aq, theta = decompose_central_extension(catalog.get("N2"))
    assert Aq.dim == 1 and all(c.is_zero() for c in theta.components)


def test_decompose_round_trip(catalog):
    for id_ in catalog.list("algebras", table="A"):
        A = catalog.get(id_)
        Aq, theta = decompose_central_extension(A)
        rebuilt = central_extension(Aq, theta)
        assert rebuilt.same_structure(change_basis(A, adapted_basis(A)))


def test_fingerprint_examples(catalog):
    f = fingerprint(catalog.get("B4_10"))
    assert f.dim_der == 2 and f.dim_powers == (2, 1, 0) and f.dim_ann == 1
    f = fingerprint(catalog.get("N4"))
    assert f.dim_der == 16 and f.dim_powers == (0,) and f.dim_ann == 4
    assert fingerprint(catalog.get("B4_24", {"alpha": Fraction(2)})).dim_der == 3


def test_fingerprint_invariant_under_basis_change(catalog):
    rng = random.Random(11)
    for id_ in ("B4_10", "B4_20", "B3_02"):
        A = catalog.get(id_)
        if A.params:
            A = catalog.get(id_, {"alpha": Fraction(3)})
        f = fingerprint(A)
        for _ in range(5):
            while True:
                P = [[Fraction(rng.randint(-2, 2)) for _ in range(A.dim)] for _ in range(A.dim)]
                if det(P) != 0:
                    break
            assert fingerprint(change_basis(A, P)) == f
