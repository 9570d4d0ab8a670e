"""Degeneration certificates and the component checks."""

from fractions import Fraction

import pytest

from nilalg.algebra import check_bicommutative
from nilalg.degeneration import (
    SAMPLES,
    apply_certificate,
    certificate_from_text,
    check_necessary_conditions,
    f_basis,
    sample_bindings,
    verify_component_theorem,
    verify_proof_degenerations,
    verify_table_b,
)
from nilalg.errors import ConstraintViolationError, DimensionMismatchError
from nilalg.scalars import var

IDENTITY = "E1 = e1\nE2 = e2\nE3 = e3\nE4 = e4\n"


def _cert(catalog, src, tgt, body):
    text = f"degeneration demo\nsource {src}\ntarget {tgt}\n{body}"
    return certificate_from_text(text, catalog.get(src), catalog.get(tgt))


def test_table_b_row_example(catalog):
    cert = _cert(catalog, "B4_10", "B4_13", "E1 = t*e1\nE2 = e2\nE3 = t*e3\nE4 = t*e4\n")
    res = apply_certificate(cert, catalog.get("B4_10"), catalog.get("B4_13"))
    assert res.ok, res.summary()


def test_identity_certificate(catalog):
    A = catalog.get("B4_20")
    res = apply_certificate(_cert(catalog, "B4_20", "B4_20", IDENTITY), A, A)
    assert res.ok


def test_reversed_certificate_names_residual(catalog):
    res = apply_certificate(
        _cert(catalog, "B4_13", "B4_10", IDENTITY), catalog.get("B4_13"), catalog.get("B4_10")
    )
    assert not res.ok
    assert (1, 3, 4) in [(m.i, m.j, m.k) for m in res.mismatches]


def test_pole_reported(catalog):
    cert = _cert(catalog, "B4_10", "B4_13", "E1 = e1/t\nE2 = e2\nE3 = e3\nE4 = e4\n")
    res = apply_certificate(cert, catalog.get("B4_10"), catalog.get("B4_13"))
    assert not res.ok
    assert res.pole is not None


def test_singular_basis_reported(catalog):
    cert = _cert(catalog, "B4_10", "B4_13", "E1 = e1\nE2 = e1\nE3 = e3\nE4 = e4\n")
    res = apply_certificate(cert, catalog.get("B4_10"), catalog.get("B4_13"))
    assert not res.ok
    assert res.det == 0


def test_dimension_mismatch(catalog):
    cert = _cert(catalog, "B4_10", "B4_13", "E1 = t*e1\nE2 = e2\nE3 = t*e3\nE4 = t*e4\n")
    with pytest.raises(DimensionMismatchError):
        apply_certificate(cert, catalog.get("B4_10"), catalog.get("B3_01"))


def test_constraint_violation(catalog):
    entry = catalog.certificate("tableB/B10_to_N2")
    cert = entry.certificate
    with pytest.raises(ConstraintViolationError):
        apply_certificate(cert, catalog.get("B4_10"), catalog.get("N2_family"), {"alpha": Fraction(1)})


def test_index_rows(catalog):
    for id_ in ("tableB/B24_to_B20", "tableB/B24_to_B22", "tableB/B24_to_B23"):
        cert = catalog.certificate(id_).certificate
        assert cert.index is not None
        res = apply_certificate(cert, catalog.get(cert.source), catalog.get(cert.target))
        assert res.ok, res.summary()


def test_t_power_row(catalog):
    cert = catalog.certificate("tableB/B14_to_B16").certificate
    t = var("t")
    assert cert.basis[0][0] == 1 / t
    assert apply_certificate(cert, catalog.get("B4_14"), catalog.get("B4_16")).ok


def test_verify_table_b_all_rows(catalog):
    rows = verify_table_b(catalog)
    assert len(rows) == 23
    assert all(r.ok for r in rows), [r.id for r in rows if not r.ok]


def test_certificate_endpoints_are_consistent(catalog):
    for entry in catalog.certificates("tableB"):
        cert = entry.certificate
        b = sample_bindings(set(catalog.get(cert.source).params) | set(catalog.get(cert.target).params))
        b = b[0] if b else {}
        src = catalog.get(cert.source, {k: v for k, v in b.items() if k in catalog.get(cert.source).params})
        tgt = catalog.get(cert.target, {k: v for k, v in b.items() if k in catalog.get(cert.target).params})
        assert check_bicommutative(src) == [] and check_bicommutative(tgt) == []


def test_necessary_condition_examples(catalog):
    r = check_necessary_conditions(catalog.get("B4_10"), catalog.get("B4_02", {"alpha": Fraction(1)}))
    assert (r.der_source, r.der_target) == (2, 6)
    # the square of B4_02 is <e2, e3>
    assert (r.square_source, r.square_target) == (2, 2)
    assert r.der_ok and r.sq_ok
    r = check_necessary_conditions(catalog.get("B4_10"), catalog.get("B4_24", {"alpha": Fraction(2)}))
    assert (r.square_source, r.square_target) == (2, 3)
    assert not r.sq_ok
    A = catalog.get("B4_20")
    assert not check_necessary_conditions(A, A).der_ok


def test_sample_bindings_respect_exclusions():
    got = sample_bindings({"alpha"}, {"alpha": (Fraction(2),)}, [1 - var("alpha")])
    values = [b["alpha"] for b in got]
    assert Fraction(2) not in values
    assert len(values) == len(SAMPLES) - 1


def test_f_basis_presentation(catalog):
    alpha = var("alpha")
    from nilalg.scalars import sqrt_of

    r = sqrt_of(alpha**2 + 1)
    f = f_basis(alpha, r)
    assert len(f) == 4
    N3f = catalog.get("N3f")
    assert N3f.table[0][2][3] == 1 + alpha**2


def test_proof_degenerations(catalog):
    items = verify_proof_degenerations(catalog)
    graded = [it for it in items if not it.flagged]
    assert all(it.ok for it in graded), [(it.subject, it.check) for it in graded if not it.ok]
    flagged = [it for it in items if it.flagged]
    assert len(flagged) == 1 and not flagged[0].ok
    assert "residual" in flagged[0].details or "differs" in flagged[0].details


def test_component_theorem(catalog):
    items = verify_component_theorem(catalog)
    assert all(it.ok for it in items), [(it.subject, it.check, it.details) for it in items if not it.ok]
