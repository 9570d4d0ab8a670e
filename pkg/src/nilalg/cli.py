"""``nilalg`` command line.

Exit codes: 0 when every check passes, 1 when a verification fails, 2 on
input errors (parse errors, unknown ids, excluded parameters, bad cocycles).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import cohomology as coh
from . import report as R
from .algebra import derivations, fingerprint
from .catalog import Catalog, CertificateEntry
from .degeneration import apply_certificate, certificate_from_file, check_certificate
from .errors import (
    ConstraintViolationError,
    DimensionMismatchError,
    ExcludedParameterError,
    NilalgError,
    NotACocycleError,
    ParseError,
    UnknownIdError,
)
from .formats import format_algebra, parse_algebra, parse_certificate_file, parse_cocycle_file, parse_scalar

INPUT_ERRORS = (
    ParseError,
    UnknownIdError,
    ExcludedParameterError,
    ConstraintViolationError,
    DimensionMismatchError,
    NotACocycleError,
    FileNotFoundError,
    KeyError,
)


class _InputError(click.ClickException):
    exit_code = 2


def _catalog(ctx):
    obj = ctx.find_root().obj
    if "catalog" not in obj:
        try:
            obj["catalog"] = Catalog(obj.get("fixtures"))
        except (NilalgError, FileNotFoundError) as exc:
            raise _InputError(str(exc)) from None
    return obj["catalog"]


def _bindings(params):
    out = {}
    for item in params:
        name, eq, value = item.partition("=")
        if not eq:
            raise _InputError(f"--param expects name=value, got {item!r}")
        name = {"α": "alpha"}.get(name.strip(), name.strip())
        try:
            out[name] = parse_scalar(value)
        except ParseError as exc:
            raise _InputError(f"--param {name}: {exc}") from None
    return out


def _resolve(ctx, ref, params):
    """Catalog id or path to an algebra file, with ``--param`` bindings applied."""
    from .algebra import bind

    bindings = _bindings(params)
    path = Path(ref)
    if path.suffix == ".alg" or path.is_file():
        A = parse_algebra(path.read_text(), str(path))
        return A.name, bind(A, bindings), None
    cat = _catalog(ctx)
    return ref, cat.get(ref, bindings), cat


def _emit(report, as_json):
    if as_json:
        click.echo(report.to_json())
    else:
        click.echo(report.to_text())
    sys.exit(0 if report.ok else 1)


def _guard(fn):
    """Turn library input errors into exit code 2."""
    import functools

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except INPUT_ERRORS as exc:
            msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
            raise _InputError(str(msg)) from None

    return wrapper


json_opt = click.option("--json", "as_json", is_flag=True, help="Emit a machine-readable report.")
param_opt = click.option("--param", "params", multiple=True, metavar="NAME=VALUE", help="Bind a family parameter.")


@click.group()
@click.option(
    "--fixtures",
    type=click.Path(file_okay=False),
    envvar="NILALG_FIXTURES",
    help="Fixture directory (default: bundled; env NILALG_FIXTURES).",
)
@click.pass_context
def main(ctx, fixtures):
    """Exact verification of nilpotent bicommutative algebra classifications."""
    ctx.ensure_object(dict)
    ctx.obj["fixtures"] = fixtures


@main.command()
@click.argument("ref")
@param_opt
@json_opt
@click.pass_context
@_guard
def verify(ctx, ref, params, as_json):
    """Check bicommutativity and nilpotency of an algebra id or file."""
    name, A, _ = _resolve(ctx, ref, params)
    report = R.Report("verify")
    R.identity_items(report, A, name)
    for note in A.notes:
        report.add(name, "note", R.NOTE, note)
    _emit(report, as_json)


@main.command()
@click.argument("ref")
@param_opt
@json_opt
@click.pass_context
@_guard
def cohomology(ctx, ref, params, as_json):
    """Z2, B2 and H2 with comparison to recorded values."""
    name, A, cat = _resolve(ctx, ref, params)
    report = R.Report("cohomology")
    if cat is not None and not params:
        R.cohomology_items(report, cat, name, A)
    else:
        data = coh.h2(A)
        report.add(
            name,
            "dims Z2/B2/H2",
            R.NOTE,
            f"{data.dims}; Z2 {R._fmt_forms(data.z2_basis)}; B2 {R._fmt_forms(data.b2_basis)}; H2 {R._fmt_forms(data.h2_reps)}",
        )
    _emit(report, as_json)


@main.command()
@click.argument("parent")
@click.argument("cocycle", type=click.Path(dir_okay=False))
@click.option("--name", default=None, help="Name of the new algebra.")
@param_opt
@click.pass_context
@_guard
def extend(ctx, parent, cocycle, name, params):
    """Print the central extension of PARENT by the cocycle file."""
    pname, A, _ = _resolve(ctx, parent, params)
    cf = parse_cocycle_file(Path(cocycle).read_text(), cocycle)
    theta = cf.cocycle(A.dim, set(A.params), A.radicand)
    ext = coh.central_extension(A, theta, name=name or cf.name)
    ts = coh.check_ts_membership(A, theta)
    comments = [
        f"central extension of {pname} by {cf.name}",
        f"Ann(theta) meets Ann({pname}) trivially: {ts.annihilator_ok} (dim {ts.intersection_dim})",
        f"classes independent in H2: {ts.classes_independent}",
        "non-split without annihilator component" if ts.non_split else "split or with annihilator component",
    ]
    click.echo(format_algebra(ext, comments), nl=False)


@main.command()
@click.argument("ref")
@param_opt
@json_opt
@click.pass_context
@_guard
def annihilator(ctx, ref, params, as_json):
    """Two-sided, left and right annihilators."""
    name, A, _ = _resolve(ctx, ref, params)
    _emit(R.annihilator_report(A, name), as_json)


@main.command("derivations")
@click.argument("ref")
@param_opt
@json_opt
@click.pass_context
@_guard
def derivations_cmd(ctx, ref, params, as_json):
    """Dimension of the derivation algebra."""
    name, A, cat = _resolve(ctx, ref, params)
    report = R.Report("derivations")
    d = derivations(A).dim
    exp = None
    if cat is not None:
        entry = cat.entry(name)
        exp = entry.expected.der if entry.expected is not None else None
    if exp is not None and not (params and A.notes):
        report.add(name, "dim Der", d == exp, f"{d} expected {exp}")
    else:
        report.add(name, "dim Der", R.NOTE, str(d))
    for note in A.notes:
        report.add(name, "note", R.NOTE, note)
    _emit(report, as_json)


@main.command("fingerprint")
@click.argument("ref")
@param_opt
@json_opt
@click.pass_context
@_guard
def fingerprint_cmd(ctx, ref, params, as_json):
    """Basis-invariant dimensions used to tell algebras apart."""
    name, A, _ = _resolve(ctx, ref, params)
    report = R.Report("fingerprint")
    report.add(name, "fingerprint", R.NOTE, json.dumps(fingerprint(A).as_dict(), sort_keys=True))
    _emit(report, as_json)


@main.command()
@click.argument("ref")
@param_opt
@json_opt
@click.pass_context
@_guard
def degeneration(ctx, ref, params, as_json):
    """Verify a certificate given by catalog id or file path."""
    cat = _catalog(ctx)
    bindings = _bindings(params)
    path = Path(ref)
    report = R.Report("degeneration")
    if path.suffix == ".deg" or path.is_file():
        cf = parse_certificate_file(path.read_text(), str(path))
        src = cat.get(cf.source, cf.source_bindings)
        tgt = cat.get(cf.target, cf.target_bindings)
        cert = certificate_from_file(cf, src, tgt)
        subject = cf.name
    else:
        entry = cat.certificate(ref)
        cert = entry.certificate
        src = cat.get(cert.source, cert.source_bindings)
        tgt = cat.get(cert.target, cert.target_bindings)
        subject = entry.id
    if bindings:
        res = apply_certificate(cert, src, tgt, bindings)
        report.add(subject, "degeneration", res.ok, res.summary())
    else:
        chk = check_certificate(CertificateEntry(subject, cert, cert.label, ""), cat)
        report.add(subject, "degeneration", chk.ok, chk.details(), chk.elapsed_ms)
    _emit(report, as_json)


@main.command()
@click.argument("case", required=False)
@json_opt
@click.pass_context
@_guard
def normalization(ctx, case, as_json):
    """Verify orbit-normalization cases (all, one family, or one case id)."""
    cat = _catalog(ctx)
    if case and case not in cat.list("normalization_cases") and case not in [f.name for f in cat.normalization_families()]:
        raise UnknownIdError(f"unknown normalization case {case!r}")
    _emit(R.normalization(cat, case), as_json)


@main.command("report-all")
@json_opt
@click.pass_context
@_guard
def report_all(ctx, as_json):
    """Reproduce every table and case; exit 0 iff all checks pass."""
    _emit(R.report_all(_catalog(ctx)), as_json)


@main.command("list")
@click.argument("kind", type=click.Choice(["algebras", "certificates", "normalization_cases"]), default="algebras")
@click.option("--dim", type=int, default=None)
@click.pass_context
def list_cmd(ctx, kind, dim):
    """Catalog ids in catalog order."""
    cat = _catalog(ctx)
    for id_ in cat.list(kind, dim=dim) if kind == "algebras" else cat.list(kind):
        click.echo(id_)


if __name__ == "__main__":  # pragma: no cover
    main()
