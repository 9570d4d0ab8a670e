"""Readers and writers for the plain-text fixture formats.

Scalar expressions use ``+ - * / ^``, parentheses, integers, ``i``, declared
parameter names and ``sqrt(<radicand>)``.  Vectors are linear combinations
of ``e1..en`` and bilinear forms are combinations of ``D(i,j)``.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra
from .errors import ParseError
from .forms import BilinearForm, VectorCocycle
from .scalars import I, format_scalar, lower, sqrt_of, var

ALIASES = {"α": "alpha"}


class _Combination:
    """Formal linear combination of basis symbols, used while parsing."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {k: v for k, v in terms.items() if v != 0}

    def __add__(self, other):
        if not isinstance(other, _Combination):
            if other == 0:
                return self
            return NotImplemented
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return _Combination(t)

    __radd__ = __add__

    def __neg__(self):
        return _Combination({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, _Combination):
            return NotImplemented
        return _Combination({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, _Combination):
            return NotImplemented
        return _Combination({k: v / c for k, v in self.terms.items()})


class ExpressionParser:
    """Evaluate one expression over the declared names.

    ``basis`` enables ``e<k>`` symbols (``1 <= k <= basis``) and ``forms``
    enables ``D(i,j)``; both yield combinations instead of scalars.
    """

    def __init__(self, params=(), radicand=None, basis=None, forms=None, source=None, values=None):
        self.params = set(params)
        self.radicand = radicand
        self.basis = basis
        self.forms = forms
        self.source = source
        self.values = dict(values or {})

    def parse(self, text, line=None, column=1):
        src = text.strip()
        lead = len(text) - len(text.lstrip())
        for a, b in ALIASES.items():
            src = src.replace(a, b)
        if not src:
            raise ParseError("empty expression", line, column, self.source)
        shifted = []  # original column of each character of the rewritten text
        out = []
        for k, ch in enumerate(src):
            if ch == "^":
                out.append("**")
                shifted.extend([k, k])
            else:
                out.append(ch)
                shifted.append(k)
        code = "".join(out)
        self._cols = shifted
        self._line = line
        self._base = column + lead
        try:
            tree = ast.parse(code, mode="eval")
        except SyntaxError as exc:
            off = (exc.offset or 1) - 1
            raise ParseError(f"invalid expression {src!r}", line, self._col(off), self.source) from None
        return self._eval(tree.body)

    def _col(self, off):
        if not self._cols:
            return self._base
        off = min(max(off, 0), len(self._cols) - 1)
        return self._base + self._cols[off]

    def _fail(self, node, message):
        raise ParseError(message, self._line, self._col(getattr(node, "col_offset", 0)), self.source)

    def _eval(self, node):
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int) and not isinstance(node.value, bool):
                return Fraction(node.value)
            self._fail(node, f"unsupported literal {node.value!r}")
        if isinstance(node, ast.Name):
            return self._name(node)
        if isinstance(node, ast.UnaryOp):
            v = self._eval(node.operand)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
            self._fail(node, "unsupported unary operator")
        if isinstance(node, ast.BinOp):
            return self._binop(node)
        if isinstance(node, ast.Call):
            return self._call(node)
        self._fail(node, "unsupported syntax")

    def _name(self, node):
        name = node.id
        if name == "i":
            return I
        if name in self.values:
            return self.values[name]
        if name in self.params:
            return var(name)
        m = re.fullmatch(r"e(\d+)", name)
        if m and self.basis is not None:
            k = int(m.group(1))
            if not 1 <= k <= self.basis:
                self._fail(node, f"basis vector {name} out of range 1..{self.basis}")
            return _Combination({k: Fraction(1)})
        self._fail(node, f"unknown name {name!r}")

    def _binop(self, node):
        a = self._eval(node.left)
        if isinstance(node.op, ast.Pow):
            k = self._integer(node.right)
            if isinstance(a, _Combination):
                self._fail(node, "cannot raise a vector to a power")
            if k < 0 and a == 0:
                self._fail(node, "division by zero")
            return lower(a ** k)
        b = self._eval(node.right)
        op = node.op
        try:
            if isinstance(op, ast.Add):
                return self._lin(a + b)
            if isinstance(op, ast.Sub):
                return self._lin(a - b)
            if isinstance(op, ast.Mult):
                if isinstance(a, _Combination) and isinstance(b, _Combination):
                    self._fail(node, "product of two vectors is not a scalar expression")
                return self._lin(a * b)
            if isinstance(op, ast.Div):
                if isinstance(b, _Combination):
                    self._fail(node, "division by a vector")
                if b == 0:
                    self._fail(node, "division by zero")
                return self._lin(a / b)
        except TypeError:
            self._fail(node, "scalar and vector terms cannot be added")
        self._fail(node, "unsupported operator")

    def _lin(self, v):
        if isinstance(v, _Combination):
            return v
        return lower(v)

    def _integer(self, node):
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -self._integer(node.operand)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        self._fail(node, "exponent must be an integer literal")

    def _call(self, node):
        fn = node.func.id if isinstance(node.func, ast.Name) else None
        if fn == "sqrt":
            if self.radicand is None:
                self._fail(node, "sqrt used without a declared radical")
            if len(node.args) != 1:
                self._fail(node, "sqrt takes one argument")
            arg = self._eval(node.args[0])
            if arg != self.radicand:
                self._fail(node, f"sqrt({format_scalar(arg)}) is not the declared radical")
            return sqrt_of(self.radicand)
        if fn == "D" and self.forms is not None:
            if len(node.args) != 2:
                self._fail(node, "D takes two indices")
            i, j = (self._integer(a) for a in node.args)
            n = self.forms
            if not (1 <= i <= n and 1 <= j <= n):
                self._fail(node, f"D({i},{j}) out of range for dimension {n}")
            return _Combination({(i, j): Fraction(1)})
        self._fail(node, f"unknown function {fn!r}")


def parse_scalar(text, params=(), radicand=None, values=None):
    v = ExpressionParser(params, radicand, values=values).parse(text)
    if isinstance(v, _Combination):
        raise ParseError(f"expected a scalar, got a vector in {text!r}")
    return v


def _as_vector(value, n, line, source):
    if isinstance(value, _Combination):
        v = [Fraction(0)] * n
        for k, c in value.terms.items():
            v[k - 1] = lower(c)
        return v
    if value == 0:
        return [Fraction(0)] * n
    raise ParseError("expected a linear combination of basis vectors", line, None, source)


def _as_form(value, n, line, source):
    m = [[Fraction(0)] * n for _ in range(n)]
    if isinstance(value, _Combination):
        for (i, j), c in value.terms.items():
            m[i - 1][j - 1] = lower(c)
    elif value != 0:
        raise ParseError("expected a combination of D(i,j) terms", line, None, source)
    return BilinearForm(m)


# ---------------------------------------------------------------------------
# line handling
# ---------------------------------------------------------------------------


def _lines(text):
    """``(line_number, content)`` pairs with comments and blanks removed."""
    for no, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0].rstrip()
        if content.strip():
            yield no, content


def _split_csv(text):
    return [p.strip() for p in text.split(",") if p.strip()]


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

_PRODUCT = re.compile(r"\s*e(\d+)\s*\*\s*e(\d+)\s*=(.*)$")


def parse_algebra(text, source=None):
    name = dim = None
    params = {}
    radicand = None
    products = []
    for no, line in _lines(text):
        head, _, rest = line.strip().partition(" ")
        rest = rest.strip()
        if head == "algebra":
            if not rest:
                raise ParseError("missing algebra name", no, 1, source)
            name = rest
        elif head == "dim":
            if not rest.isdigit() or int(rest) < 1:
                raise ParseError(f"bad dimension {rest!r}", no, line.index(rest) + 1 if rest else 1, source)
            dim = int(rest)
        elif head == "param":
            pname, _, excl = rest.partition(" ")
            if not pname.isidentifier() or pname == "i":
                raise ParseError(f"bad parameter name {pname!r}", no, line.index(pname) + 1, source)
            pname = ALIASES.get(pname, pname)
            excl = excl.strip()
            values = ()
            if excl:
                if not excl.startswith("exclude"):
                    raise ParseError("expected 'exclude'", no, line.index(excl) + 1, source)
                body = excl[len("exclude"):]
                values = tuple(parse_scalar(v, params=set(params) | {pname}) for v in _split_csv(body))
            params[pname] = values
        elif head == "radical":
            col = line.index(rest) + 1 if rest else 1
            radicand = ExpressionParser(params, source=source).parse(rest, no, col)
        elif head.startswith("e"):
            m = _PRODUCT.match(line)
            if not m:
                raise ParseError("expected 'e<i>*e<j> = <combination>'", no, 1, source)
            products.append((no, int(m.group(1)), int(m.group(2)), m.group(3), m.start(3) + 1))
        else:
            raise ParseError(f"unknown directive {head!r}", no, 1, source)
    if name is None:
        raise ParseError("missing 'algebra <name>' line", None, None, source)
    if dim is None:
        raise ParseError("missing 'dim <n>' line", None, None, source)
    parser = ExpressionParser(params, radicand, basis=dim, source=source)
    table = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    seen = set()
    for no, i, j, rhs, col in products:
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise ParseError(f"product e{i}*e{j} out of range for dimension {dim}", no, 1, source)
        if (i, j) in seen:
            raise ParseError(f"product e{i}*e{j} given twice", no, 1, source)
        seen.add((i, j))
        table[i - 1][j - 1] = _as_vector(parser.parse(rhs, no, col), dim, no, source)
    return Algebra(name, dim, table, params, radicand)


def format_combination(vec, symbol="e"):
    parts = []
    for k, c in enumerate(vec, 1):
        if c == 0:
            continue
        atom = f"{symbol}{k}"
        if c == 1:
            parts.append(atom)
        elif c == -1:
            parts.append("-" + atom)
        else:
            parts.append(f"({format_scalar(c)})*{atom}")
    if not parts:
        return "0"
    text = parts[0]
    for p in parts[1:]:
        text += " - " + p[1:] if p.startswith("-") else " + " + p
    return text


def format_algebra(A, comments=()):
    lines = [f"# {c}" for c in comments]
    lines.append(f"algebra {A.name}")
    lines.append(f"dim {A.dim}")
    for p, excl in A.params.items():
        if excl:
            lines.append(f"param {p} exclude " + ", ".join(format_scalar(x) for x in excl))
        else:
            lines.append(f"param {p}")
    if A.radicand is not None:
        lines.append(f"radical {format_scalar(A.radicand)}")
    for (i, j), rhs in A.products().items():
        vec = [rhs.get(k, 0) for k in range(1, A.dim + 1)]
        lines.append(f"e{i}*e{j} = {format_combination(vec)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# algebra references: ``B4_24`` or ``B3_02(alpha=0)``
# ---------------------------------------------------------------------------

_REF = re.compile(r"^([A-Za-z][\w]*)\s*(?:\((.*)\))?\s*$")


def parse_reference(text, line=None, source=None):
    """``(id, {param: scalar})`` from an algebra reference."""
    m = _REF.match(text.strip())
    if not m:
        raise ParseError(f"bad algebra reference {text.strip()!r}", line, 1, source)
    bindings = {}
    if m.group(2):
        for item in _split_csv(m.group(2)):
            k, eq, v = item.partition("=")
            if not eq:
                raise ParseError(f"expected name=value in {item!r}", line, 1, source)
            k = ALIASES.get(k.strip(), k.strip())
            bindings[k] = parse_scalar(v)
    return m.group(1), bindings


def format_reference(id_, bindings):
    if not bindings:
        return id_
    return id_ + "(" + ", ".join(f"{k}={format_scalar(v)}" for k, v in bindings.items()) + ")"


# ---------------------------------------------------------------------------
# cocycles
# ---------------------------------------------------------------------------


@dataclass
class CocycleFile:
    name: str
    over: str
    bindings: dict
    components: list
    lines: list = field(default_factory=list)

    def cocycle(self, dim, params=(), radicand=None):
        parser = ExpressionParser(params, radicand, forms=dim, source=self.name)
        forms = [_as_form(parser.parse(t, no, col), dim, no, self.name) for no, t, col in self.components]
        return VectorCocycle(forms)


_COCYCLE = re.compile(r"^\s*cocycle\s+(\S+)\s+over\s+(.+)$")


def parse_cocycle_file(text, source=None):
    """Header and raw component texts; call ``.cocycle(dim)`` once the base is known."""
    header = None
    comps = []
    for no, line in _lines(text):
        m = _COCYCLE.match(line)
        if m:
            if header is not None:
                raise ParseError("second cocycle header", no, 1, source)
            ref, bindings = parse_reference(m.group(2), no, source)
            header = (m.group(1), ref, bindings)
            continue
        s = line.strip()
        if s.startswith("component:"):
            body = line[line.index("component:") + len("component:"):]
            comps.append((no, body, line.index("component:") + len("component:") + 1))
            continue
        raise ParseError("expected 'component: <form>'", no, 1, source)
    if header is None:
        raise ParseError("missing 'cocycle <name> over <algebra>' line", None, None, source)
    if not comps:
        raise ParseError("cocycle has no components", None, None, source)
    return CocycleFile(header[0], header[1], header[2], comps)


def format_cocycle(name, over, theta):
    lines = [f"cocycle {name} over {over}"]
    from .forms import format_form

    for comp in VectorCocycle.of(theta):
        lines.append(f"component: {format_form(comp)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass
class CertificateFile:
    name: str
    source: str
    source_bindings: dict
    index: tuple | None
    target: str
    target_bindings: dict
    constraints: list
    radical: tuple | None
    basis: list
    label: str = ""
    origin: str | None = None


_SOURCE = re.compile(r"^\s*source\s+(.+?)(?:\s+index\s+(.+))?$")
_BASIS = re.compile(r"^\s*E(\d+)\s*=(.*)$")
_CONSTRAINT = re.compile(r"^\s*constraint\s+(.+?)\s*!=\s*0\s*$")


def parse_certificate_file(text, source=None):
    """Raw certificate fields; expressions are evaluated by the degeneration module."""
    name = src = tgt = None
    src_b = tgt_b = {}
    index = radical = None
    constraints = []
    basis = {}
    label = ""
    for no, line in _lines(text):
        s = line.strip()
        head = s.split(None, 1)[0]
        if head == "degeneration":
            name = s[len("degeneration"):].strip()
        elif head == "label":
            label = s[len("label"):].strip()
        elif head == "source":
            m = _SOURCE.match(line)
            src, src_b = parse_reference(m.group(1), no, source)
            if m.group(2):
                index = (no, m.group(2), line.index(m.group(2)) + 1)
        elif head == "target":
            tgt, tgt_b = parse_reference(s[len("target"):], no, source)
        elif head == "radical":
            body = s[len("radical"):]
            radical = (no, body, line.index(body.strip()) + 1)
        elif head == "constraint":
            m = _CONSTRAINT.match(line)
            if not m:
                raise ParseError("expected 'constraint <polynomial> != 0'", no, 1, source)
            constraints.append((no, m.group(1), m.start(1) + 1))
        elif _BASIS.match(line):
            m = _BASIS.match(line)
            k = int(m.group(1))
            if k in basis:
                raise ParseError(f"E{k} given twice", no, 1, source)
            basis[k] = (no, m.group(2), m.start(2) + 1)
        else:
            raise ParseError(f"unknown directive {head!r}", no, 1, source)
    for what, val in (("degeneration", name), ("source", src), ("target", tgt)):
        if not val:
            raise ParseError(f"missing '{what}' line", None, None, source)
    n = len(basis)
    if sorted(basis) != list(range(1, n + 1)):
        raise ParseError("basis lines must be E1..En without gaps", None, None, source)
    return CertificateFile(
        name, src, src_b, index, tgt, tgt_b, constraints, radical, [basis[k] for k in range(1, n + 1)], label, source
    )


# ---------------------------------------------------------------------------
# expected invariants: ``key=value`` lines
# ---------------------------------------------------------------------------


def parse_expected(text, source=None):
    out = {}
    for no, line in _lines(text):
        key, eq, value = line.partition("=")
        if not eq:
            raise ParseError("expected key=value", no, 1, source)
        out[key.strip()] = value.strip()
    return out


# ---------------------------------------------------------------------------
# normalization case families
# ---------------------------------------------------------------------------


@dataclass
class NormalizationFile:
    name: str
    base: str
    coefficients: list
    nablas: list
    variables: list
    rows: list
    excluded: list
    cases: list


@dataclass
class CaseText:
    label: str
    line: int
    zero: list = field(default_factory=list)
    nonzero: list = field(default_factory=list)
    specializations: list = field(default_factory=list)
    assignments: list = field(default_factory=list)
    representative: tuple | None = None


def parse_normalization_file(text, source=None):
    """Raw case-family text; expressions are evaluated by the cohomology loader."""
    f = NormalizationFile(None, None, [], [], [], [], [], [])
    case = None
    for no, line in _lines(text):
        s = line.strip()
        head, _, rest = s.partition(" ")
        rest = rest.strip()
        col = line.index(rest) + 1 if rest else 1
        if head == "normalization":
            f.name = rest
        elif head == "base":
            f.base = rest
        elif head == "coefficients":
            f.coefficients = rest.split()
        elif head == "nabla":
            f.nablas.append((no, rest, col))
        elif head == "vars":
            f.variables = rest.split()
        elif head == "row":
            f.rows.append((no, rest, col))
        elif head == "excluded":
            f.excluded.append((no, rest, col))
        elif head == "case":
            case = CaseText(rest, no)
            f.cases.append(case)
        elif case is None:
            raise ParseError(f"{head!r} outside a case", no, 1, source)
        elif head == "zero":
            case.zero.extend((no, a, col) for a in _split_csv(rest))
        elif head == "nonzero":
            case.nonzero.extend((no, a, col) for a in _split_csv(rest))
        elif head == "specialize":
            case.specializations.append((no, rest, col))
        elif head == "set":
            vname, eq, expr = rest.partition("=")
            if not eq:
                raise ParseError("expected 'set <var> = <expr>'", no, col, source)
            case.assignments.append((no, vname.strip(), expr, line.index("=") + 2))
        elif head == "representative":
            case.representative = (no, rest, col)
        else:
            raise ParseError(f"unknown directive {head!r}", no, 1, source)
    if not f.name or not f.base:
        raise ParseError("missing 'normalization' or 'base' line", None, None, source)
    return f
