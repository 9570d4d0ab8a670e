"""Text formats: algebras, cocycles, certificates, normalization cases."""

from fractions import Fraction

import pytest

from nilalg.errors import ParseError
from nilalg.formats import (
    format_algebra,
    format_cocycle,
    format_reference,
    parse_algebra,
    parse_certificate_file,
    parse_cocycle_file,
    parse_expected,
    parse_normalization_file,
    parse_reference,
    parse_scalar,
)
from nilalg.forms import BilinearForm, VectorCocycle
from nilalg.scalars import I, sqrt_of, var


def test_parse_algebra_basic():
    A = parse_algebra("algebra X\ndim 3\nparam alpha exclude 0\ne1*e1 = e2  # comment\ne2*e1 = alpha^2*e3\n")
    assert A.name == "X" and A.dim == 3
    assert A.params == {"alpha": (Fraction(0),)}
    assert A.products() == {(1, 1): {2: 1}, (2, 1): {3: var("alpha") ** 2}}


def test_unicode_alpha_alias():
    A = parse_algebra("algebra X\ndim 2\nparam alpha\ne1*e1 = α*e2\n")
    assert A.table[0][0][1] == var("alpha")


@pytest.mark.parametrize("name", ["B4_24", "B3_02", "N3f", "B4_05"])
def test_algebra_round_trip(catalog, name):
    A = catalog.get(name)
    B = parse_algebra(format_algebra(A, ["regenerated"]))
    assert B.same_structure(A) and B.params == A.params and B.name == A.name


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        ("algebra X\ndim 2\ne1*e1 = e2 +\n", 3, 9, "invalid expression"),
        ("algebra X\ndim 2\ne1*e3 = e2\n", 3, 1, "out of range"),
        ("algebra X\ndim 2\ne1*e1 = beta*e2\n", 3, 9, "unknown name 'beta'"),
        ("algebra X\ndim 2\nparam a\ne1*e1 = a^(1/2)*e2\n", 4, 12, "integer"),
        ("algebra X\ndim 2\nparam a\ne1*e1 = sqrt(a)*e2\n", 4, 9, "radical"),
        ("algebra X\ndim 2\ne1*e1 = e2\ne1*e1 = e2\n", 4, 1, "twice"),
        ("algebra X\ndim 2\nhello\n", 3, 1, "unknown directive"),
    ],
)
def test_parse_errors_carry_position(text, line, column, fragment):
    with pytest.raises(ParseError) as info:
        parse_algebra(text, "f.alg")
    err = info.value
    assert (err.line, err.column) == (line, column)
    assert fragment in str(err)
    assert str(err).startswith(f"f.alg:{line}:{column}:")


def test_missing_dim():
    with pytest.raises(ParseError, match="dim"):
        parse_algebra("algebra X\ne1*e1 = e2\n")


def test_parse_scalar_grammar():
    params = {"alpha": ()}
    assert parse_scalar("3/4") == Fraction(3, 4)
    assert parse_scalar("(1+2*i)^2") == (1 + 2 * I) ** 2
    assert parse_scalar("alpha/(1-alpha)", params) == var("alpha") / (1 - var("alpha"))
    r = parse_scalar("i*sqrt(alpha^2+1)", params, var("alpha") ** 2 + 1)
    assert r == I * sqrt_of(var("alpha") ** 2 + 1)
    with pytest.raises(ParseError):
        parse_scalar("sqrt(alpha)", params, var("alpha") ** 2 + 1)
    with pytest.raises(ParseError):
        parse_scalar("e1")


def test_reference_round_trip():
    assert parse_reference("B3_02(alpha=0)") == ("B3_02", {"alpha": Fraction(0)})
    assert parse_reference("B4_10") == ("B4_10", {})
    assert format_reference("B3_02", {"alpha": Fraction(1, 2)}) == "B3_02(alpha=1/2)"


def test_cocycle_file_round_trip():
    theta = VectorCocycle([BilinearForm.delta(1, 2, 3) + 2 * BilinearForm.delta(3, 1, 3)])
    text = format_cocycle("X", "B3_01", theta)
    cf = parse_cocycle_file(text)
    assert cf.name == "X" and cf.over == "B3_01"
    assert cf.cocycle(3, set()).components == theta.components


def test_cocycle_file_two_components():
    cf = parse_cocycle_file("cocycle Y over B2s_01\ncomponent: D(2,1)\ncomponent: D(1,2)\n")
    theta = cf.cocycle(2, set())
    assert theta.s == 2


def test_certificate_file():
    cf = parse_certificate_file(
        "degeneration demo\nsource B4_24 index 1/t\ntarget B4_20\nconstraint alpha != 0\n"
        "E1 = t*e1\nE2 = t^2*e2\nE3 = t^3*e3\nE4 = t^4*e4\n"
    )
    assert cf.source == "B4_24" and cf.target == "B4_20"
    assert cf.index is not None
    assert len(cf.basis) == 4


def test_certificate_file_errors(catalog):
    from nilalg.degeneration import certificate_from_file
    from nilalg.errors import DimensionMismatchError

    src, tgt = catalog.get("B4_10"), catalog.get("B4_13")
    head = "degeneration demo\nsource B4_10\ntarget B4_13\n"
    cf = parse_certificate_file(head + "E1 = t*e1 +\nE2 = e2\nE3 = e3\nE4 = e4\n", "c.deg")
    with pytest.raises(ParseError) as info:
        certificate_from_file(cf, src, tgt)
    assert (info.value.line, info.value.column) == (4, 6)
    cf = parse_certificate_file(head + "E1 = t*e1\n", "c.deg")
    with pytest.raises(DimensionMismatchError):
        certificate_from_file(cf, src, tgt)


def test_expected_file():
    raw = parse_expected("z2=4\n# note\nb2=2\n")
    assert raw == {"z2": "4", "b2": "2"}
    with pytest.raises(ParseError):
        parse_expected("z2 4\n")


def test_normalization_file():
    text = (
        "normalization demo\nbase B3_01\ncoefficients a1 a2\nnabla D(1,2)\nnabla D(3,1)\n"
        "vars x y z\nrow x, 0, 0\nrow y, x^2, 0\nrow z, x*y, x^3\n\n"
        "case 1\nnonzero a1, a2\nset x = a1/a2\nrepresentative 1, 1\n"
    )
    nf = parse_normalization_file(text)
    assert nf.name == "demo" and nf.base == "B3_01"
    assert list(nf.coefficients) == ["a1", "a2"]
    assert [c.label for c in nf.cases] == ["1"]
