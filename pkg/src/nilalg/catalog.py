"""The classification data as fixtures: algebras, expected invariants,
extension provenance, degeneration certificates and normalization cases.

Fixtures live in a directory with ``algebras/*.alg``, ``cocycles/*.coc``,
``certificates/<group>/*.deg``, ``expected/*.exp`` and
``normalization/*.nrm``.  ``NILALG_FIXTURES`` overrides the bundled copy.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .algebra import bind
from .cohomology import NormalizationCase, NormalizationFamily
from .degeneration import certificate_from_file
from .errors import ParseError, UnknownIdError
from .formats import (
    ExpressionParser,
    _as_form,
    _split_csv,
    parse_algebra,
    parse_certificate_file,
    parse_cocycle_file,
    parse_expected,
    parse_normalization_file,
    parse_scalar,
)
from .scalars import format_scalar

BUNDLED = Path(__file__).parent / "fixtures"


def fixtures_dir(override=None):
    if override:
        return Path(override)
    env = os.environ.get("NILALG_FIXTURES")
    return Path(env) if env else BUNDLED


@dataclass
class Expected:
    z2: int | None = None
    b2: int | None = None
    h2: int | None = None
    der: int | None = None
    der_exceptions: tuple = ()
    z2_elements: list = field(default_factory=list)
    b2_elements: list = field(default_factory=list)
    h2_elements: list = field(default_factory=list)
    parent: str | None = None
    raw: dict = field(default_factory=dict)


@dataclass
class Provenance:
    parent: str
    bindings: dict
    cocycle: object


@dataclass
class CatalogEntry:
    id: str
    algebra: object
    expected: Expected | None = None
    provenance: Provenance | None = None


@dataclass
class CertificateEntry:
    id: str
    certificate: object
    label: str
    kind: str
    path: Path | None = None


def _sort_key(id_, A):
    # non-pure (s) before pure before zero algebras; families after fixed algebras
    if id_.startswith("N"):
        group = 3 if "family" not in id_ and id_[1:].isdigit() else 4
    elif re.match(r"B\d+s_", id_):
        group = 0
    else:
        group = 1
    return (A.dim, group, id_)


class Catalog:
    def __init__(self, root=None):
        self.root = fixtures_dir(root)
        if not self.root.is_dir():
            raise FileNotFoundError(f"fixture directory {self.root} does not exist")
        self._entries = {}
        self._certs = {}
        self._families = {}
        self._load()

    # -- loading ------------------------------------------------------------

    def _load(self):
        for path in sorted((self.root / "algebras").glob("*.alg")):
            A = parse_algebra(path.read_text(), str(path))
            if A.name in self._entries:
                raise ParseError(f"duplicate algebra id {A.name}", None, None, str(path))
            self._entries[A.name] = CatalogEntry(A.name, A)
        self._entries = dict(sorted(self._entries.items(), key=lambda kv: _sort_key(kv[0], kv[1].algebra)))
        for path in sorted((self.root / "expected").glob("*.exp")):
            entry = self._entry(path.stem)
            entry.expected = self._expected(entry.algebra, parse_expected(path.read_text(), str(path)), str(path))
        for path in sorted((self.root / "cocycles").glob("*.coc")):
            cf = parse_cocycle_file(path.read_text(), str(path))
            child = self._entry(cf.name)
            parent = self._entry(cf.over).algebra
            theta = cf.cocycle(parent.dim, set(parent.params) | set(child.algebra.params), parent.radicand)
            child.provenance = Provenance(cf.over, cf.bindings, theta)
        cert_root = self.root / "certificates"
        for path in sorted(cert_root.rglob("*.deg"), key=lambda q: (q.parent.name != "tableB", str(q))):
            cf = parse_certificate_file(path.read_text(), str(path))
            if cf.name in self._certs:
                raise ParseError(f"duplicate certificate id {cf.name}", None, None, str(path))
            src = self._entry(cf.source).algebra
            tgt = self._entry(cf.target).algebra
            cert = certificate_from_file(cf, src, tgt)
            kind = path.relative_to(cert_root).parts[0] if len(path.relative_to(cert_root).parts) > 1 else ""
            self._certs[cf.name] = CertificateEntry(cf.name, cert, cf.label, kind, path)
        for path in sorted((self.root / "normalization").glob("*.nrm")):
            fam = self._normalization(parse_normalization_file(path.read_text(), str(path)), str(path))
            self._families[fam.name] = fam

    def _entry(self, id_):
        try:
            return self._entries[id_]
        except KeyError:
            raise UnknownIdError(f"unknown algebra id {id_!r}") from None

    def _expected(self, A, raw, source):
        e = Expected(raw=raw)
        for key in ("z2", "b2", "h2", "der"):
            if key in raw:
                setattr(e, key, int(raw[key]))
        if raw.get("der_exceptions"):
            e.der_exceptions = tuple(parse_scalar(v, A.params) for v in _split_csv(raw["der_exceptions"]))
        parser = ExpressionParser(A.params, A.radicand, forms=A.dim, source=source)
        for key in ("z2_elements", "b2_elements", "h2_elements"):
            if raw.get(key):
                forms = [_as_form(parser.parse(t), A.dim, None, source) for t in raw[key].split(";")]
                setattr(e, key, forms)
        e.parent = raw.get("parent")
        return e

    def _normalization(self, nf, source):
        base = self._entry(nf.base).algebra
        coeffs = list(nf.coefficients)
        names = set(base.params) | set(coeffs) | set(nf.variables)
        forms = ExpressionParser(base.params, forms=base.dim, source=source)
        nablas = [_as_form(forms.parse(t, no, col), base.dim, no, source) for no, t, col in nf.nablas]
        scal = ExpressionParser(names, source=source)
        rows = []
        for no, text, col in nf.rows:
            rows.append([scal.parse(x, no, col) for x in _split_csv(text)])

        def atom(no, text, col):
            t = text.strip()
            return t if t in coeffs else scal.parse(t, no, col)

        excluded = []
        for no, text, col in nf.excluded:
            zero, nonzero = [], []
            for part in text.split(";"):
                head, _, rest = part.strip().partition(" ")
                target = zero if head == "zero" else nonzero if head == "nonzero" else None
                if target is None:
                    raise ParseError("expected 'zero <atoms>' or 'nonzero <atoms>'", no, col, source)
                target.extend(atom(no, a, col) for a in _split_csv(rest))
            excluded.append((zero, nonzero))
        cases = []
        for ct in nf.cases:
            specs = []
            for no, text, col in ct.specializations:
                spec = {}
                for item in _split_csv(text):
                    k, _, v = item.partition("=")
                    spec[k.strip()] = parse_scalar(v, base.params)
                specs.append(spec)
            if ct.representative is None:
                raise ParseError(f"case {ct.label} has no representative", ct.line, 1, source)
            no, text, col = ct.representative
            rep = [scal.parse(x, no, col) for x in _split_csv(text)]
            if len(rep) != len(coeffs):
                raise ParseError("representative length differs from the coefficient list", no, col, source)
            cases.append(
                NormalizationCase(
                    family=nf.name,
                    label=ct.label,
                    base=nf.base,
                    coefficients=coeffs,
                    nablas=nablas,
                    variables=list(nf.variables),
                    automorphism=rows,
                    nonzero=[atom(*a) for a in ct.nonzero],
                    zero=[atom(*a) for a in ct.zero],
                    specializations=specs or [{}],
                    assignments=[(v, scal.parse(e, no, col)) for no, v, e, col in ct.assignments],
                    representative=rep,
                )
            )
        return NormalizationFamily(nf.name, nf.base, coeffs, nablas, list(nf.variables), rows, excluded, cases)

    # -- queries ------------------------------------------------------------

    def ids(self):
        return list(self._entries)

    def entry(self, id_):
        return self._entry(id_)

    def get(self, id_, bindings=None):
        """The algebra ``id_``, with ``bindings`` substituted for its parameters.

        Values at which the expected derivation dimension is known to jump
        are accepted and recorded in ``notes``.
        """
        entry = self._entry(id_)
        A = bind(entry.algebra, bindings or {})
        notes = []
        exp = entry.expected
        if bindings and exp is not None and exp.der_exceptions:
            for p, v in bindings.items():
                if any(v == x for x in exp.der_exceptions):
                    notes.append(
                        f"{p}={format_scalar(v)} is an exceptional value: dim Der differs from the generic {exp.der}"
                    )
        A.notes = tuple(notes)
        return A

    def expected_invariants(self, id_):
        entry = self._entry(id_)
        if entry.expected is None:
            raise UnknownIdError(f"no expected invariants recorded for {id_!r}")
        return entry.expected

    def provenance(self, id_):
        return self._entry(id_).provenance

    def list(self, kind="algebras", dim=None, table=None):
        """Ids in catalog order.

        ``table="A"`` restricts algebras to the pure 4-dimensional list.
        """
        if kind == "algebras":
            out = []
            for id_, e in self._entries.items():
                if dim is not None and e.algebra.dim != dim:
                    continue
                if table == "A" and not re.fullmatch(r"B4_\d+", id_):
                    continue
                out.append(id_)
            return out
        if kind == "certificates":
            return list(self._certs)
        if kind == "normalization_cases":
            return [c.id for fam in self._families.values() for c in fam.cases]
        raise ValueError(f"unknown listing kind {kind!r}")

    def certificates(self, kind=None):
        return [c for c in self._certs.values() if kind is None or c.kind == kind]

    def certificate(self, id_):
        try:
            return self._certs[id_]
        except KeyError:
            raise UnknownIdError(f"unknown certificate id {id_!r}") from None

    def normalization_families(self):
        return list(self._families.values())

    def normalization_case(self, id_):
        for fam in self._families.values():
            for c in fam.cases:
                if c.id == id_:
                    return c
        raise UnknownIdError(f"unknown normalization case {id_!r}")

    def sample_values(self, id_):
        """Fixed sample set minus the algebra's excluded values."""
        from .degeneration import sample_bindings

        A = self._entry(id_).algebra
        return sample_bindings(set(A.params), A.params)


@lru_cache(maxsize=8)
def _cached(root):
    return Catalog(root)


def load(root=None):
    """The catalog at ``root`` (or the default location), cached per path."""
    return _cached(str(fixtures_dir(root).resolve()))


def get(id_, bindings=None, root=None):
    return load(root).get(id_, bindings)


def expected_invariants(id_, root=None):
    return load(root).expected_invariants(id_)


def list_ids(kind="algebras", root=None, **kw):
    return load(root).list(kind, **kw)


def provenance(id_, root=None):
    return load(root).provenance(id_)


__all__ = [
    "Catalog",
    "CatalogEntry",
    "CertificateEntry",
    "Expected",
    "Provenance",
    "expected_invariants",
    "fixtures_dir",
    "get",
    "list_ids",
    "load",
    "provenance",
]
