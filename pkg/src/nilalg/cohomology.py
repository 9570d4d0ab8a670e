"""Second cohomology with trivial coefficients and central extensions.

Bilinear forms are identified with vectors of length ``n*n`` (row-major in the
``Delta_ij`` basis), so cocycle and coboundary spaces are ordinary subspaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .algebra import Algebra, annihilator, bind, is_automorphism
from .errors import DimensionMismatchError, NotACocycleError
from .forms import BilinearForm, VectorCocycle
from .linalg import Subspace
from .scalars import RationalFunction, lower, substitute, var

COCYCLE_RIGHT = "theta(xy,z)=theta(xz,y)"
COCYCLE_LEFT = "theta(x,yz)=theta(y,xz)"
# ---------------------------------------------------------------------------
# Z^2, B^2, H^2
# ---------------------------------------------------------------------------


def _cocycle_rows(A):
    n = A.dim
    c = A.table
    rows = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                # theta(e_x e_y, e_z) - theta(e_x e_z, e_y)
                row = [0] * (n * n)
                for k in range(n):
                    if c[x][y][k] != 0:
                        row[k * n + z] = row[k * n + z] + c[x][y][k]
                    if c[x][z][k] != 0:
                        row[k * n + y] = row[k * n + y] - c[x][z][k]
                if any(v != 0 for v in row):
                    rows.append(row)
                # theta(e_x, e_y e_z) - theta(e_y, e_x e_z)
                row = [0] * (n * n)
                for k in range(n):
                    if c[y][z][k] != 0:
                        row[x * n + k] = row[x * n + k] + c[y][z][k]
                    if c[x][z][k] != 0:
                        row[y * n + k] = row[y * n + k] - c[x][z][k]
                if any(v != 0 for v in row):
                    rows.append(row)
    return rows


def z2_subspace(A):
    n2 = A.dim * A.dim
    rows = _cocycle_rows(A)
    if not rows:
        return Subspace.full(n2)
    return Subspace(linalg.nullspace(rows, n2), n2)


def b2_subspace(A):
    n = A.dim
    vecs = []
    for k in range(n):
        v = [A.table[i][j][k] for i in range(n) for j in range(n)]
        if any(x != 0 for x in v):
            vecs.append(v)
    return Subspace(vecs, n * n)


def _forms(space, n):
    return [BilinearForm.from_vector(v, n) for v in space.basis]


def cocycle_space(A):
    """Echelon basis of ``Z^2(A)``."""
    return _forms(z2_subspace(A), A.dim)


def coboundary_space(A):
    """Echelon basis of ``B^2(A) = {delta f}``, where ``delta f(x, y) = f(xy)``."""
    return _forms(b2_subspace(A), A.dim)


def coboundary(A, f):
    """``delta f`` for a linear functional ``f`` given by its coordinates."""
    n = A.dim
    return BilinearForm(
        [[lower(sum((f[k] * A.table[i][j][k] for k in range(n)), Fraction(0))) for j in range(n)] for i in range(n)]
    )


def cocycle_violation(A, theta):
    """First ``(equation, triple)`` violated by ``theta``, or ``None``."""
    n = A.dim
    if theta.dim != n:
        raise DimensionMismatchError("cocycle and algebra dimensions differ")
    basis = [[Fraction(int(k == j)) for k in range(n)] for j in range(n)]
    c = A.table
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if theta(c[x][y], basis[z]) != theta(c[x][z], basis[y]):
                    return COCYCLE_RIGHT, (x + 1, y + 1, z + 1)
                if theta(basis[x], c[y][z]) != theta(basis[y], c[x][z]):
                    return COCYCLE_LEFT, (x + 1, y + 1, z + 1)
    return None


def is_cocycle(A, theta):
    return cocycle_violation(A, theta) is None


@dataclass
class CohomologyData:
    z2_basis: list
    b2_basis: list
    h2_reps: list

    @property
    def dims(self):
        return len(self.z2_basis), len(self.b2_basis), len(self.h2_reps)


def h2(A):
    """``Z^2``, ``B^2`` and coset representatives of ``H^2``.

    The representatives are the echelon ``Z^2`` basis elements that are not
    pivots once ``B^2`` is written in that basis.
    """
    n = A.dim
    Z = z2_subspace(A)
    B = b2_subspace(A)
    if B.dim:
        coords = [[b[p] for p in Z.pivots] for b in B.basis]
        _, piv = linalg.rref(coords, Z.dim)
    else:
        piv = []
    reps = [Z.basis[k] for k in range(Z.dim) if k not in set(piv)]
    return CohomologyData(
        z2_basis=_forms(Z, n),
        b2_basis=_forms(B, n),
        h2_reps=[BilinearForm.from_vector(v, n) for v in reps],
    )


def h2_coordinates(theta, reps, b2_basis):
    """Coefficients of ``theta`` on ``reps`` modulo ``B^2``; ``None`` if outside the span."""
    cols = [r.vector() for r in reps] + [b.vector() for b in b2_basis]
    a = linalg.transpose(cols) if cols else [[] for _ in theta.vector()]
    x = linalg.solve(a, theta.vector())
    if x is None:
        return None
    return x[: len(reps)]


def classes_independent(A, forms):
    B = b2_subspace(A)
    rows = B.basis + [f.vector() for f in forms]
    if not rows:
        return True
    return linalg.rank(rows, A.dim * A.dim) == B.dim + len(forms)


# ---------------------------------------------------------------------------
# annihilators of cocycles, extensions and T_s
# ---------------------------------------------------------------------------


def cocycle_annihilator(A, theta):
    """``{x : theta_i(x, A) = theta_i(A, x) = 0 for every component}``."""
    theta = VectorCocycle.of(theta)
    n = A.dim
    if theta.dim != n:
        raise DimensionMismatchError("cocycle and algebra dimensions differ")
    rows = []
    for comp in theta:
        m = comp.matrix
        for j in range(n):
            rows.append([m[a][j] for a in range(n)])
            rows.append([m[j][b] for b in range(n)])
    rows = [r for r in rows if any(x != 0 for x in r)]
    if not rows:
        return Subspace.full(n)
    return Subspace(linalg.nullspace(rows, n), n)


def central_extension(A, theta, name=None, check=True):
    """``A + V`` with product ``xy + theta(x, y)`` and ``V`` central.

    The new basis is ``e_1..e_n, v_1..v_s``.  With ``check`` every component
    must be a cocycle; ``NotACocycleError`` names the first violation.
    """
    theta = VectorCocycle.of(theta)
    n, s = A.dim, theta.s
    if theta.dim != n:
        raise DimensionMismatchError("cocycle and algebra dimensions differ")
    if check:
        for k, comp in enumerate(theta):
            bad = cocycle_violation(A, comp)
            if bad is not None:
                raise NotACocycleError(bad[0], bad[1], k)
    m = n + s
    table = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
    for i in range(n):
        for j in range(n):
            table[i][j] = list(A.table[i][j]) + [comp.matrix[i][j] for comp in theta]
    return Algebra(name or f"{A.name}_ext", m, table, A.params, A.radicand)


@dataclass
class TsReport:
    annihilator_ok: bool
    classes_independent: bool
    intersection_dim: int

    @property
    def non_split(self):
        return self.annihilator_ok and self.classes_independent


def check_ts_membership(A, theta):
    """Whether ``<[theta_1], ..., [theta_s]>`` lies in ``T_s(A)``."""
    theta = VectorCocycle.of(theta)
    inter = cocycle_annihilator(A, theta).intersection(annihilator(A))
    return TsReport(
        annihilator_ok=inter.dim == 0,
        classes_independent=classes_independent(A, theta.components),
        intersection_dim=inter.dim,
    )


def transform_cocycle(theta, phi):
    """``(phi theta)(x, y) = theta(phi x, phi y)``, i.e. ``phi^T theta phi``."""
    n = theta.dim
    if len(phi) != n:
        raise DimensionMismatchError("map and form dimensions differ")
    return BilinearForm(linalg.matmul(linalg.matmul(linalg.transpose(phi), theta.matrix), phi))


# ---------------------------------------------------------------------------
# orbit normalization cases
# ---------------------------------------------------------------------------


@dataclass
class NormalizationCase:
    """One case of an orbit analysis on ``<sum alpha_i nabla_i>``."""

    family: str
    label: str
    base: str
    coefficients: list
    nablas: list
    variables: list
    automorphism: list
    nonzero: list = field(default_factory=list)
    zero: list = field(default_factory=list)
    specializations: list = field(default_factory=lambda: [{}])
    assignments: list = field(default_factory=list)
    representative: list = field(default_factory=list)

    @property
    def id(self):
        return f"{self.family}/{self.label}"


@dataclass
class NormalizationFamily:
    name: str
    base: str
    coefficients: list
    nablas: list
    variables: list
    automorphism: list
    excluded: list
    cases: list


@dataclass
class NormalizationResult:
    case: str
    ok: bool
    reason: str = ""
    coordinates: list = field(default_factory=list)
    residual: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _zero_bindings(case):
    return {c: Fraction(0) for c in case.zero if isinstance(c, str)}


def _denominator_supported(value, atoms):
    """Whether every factor of the denominator divides a product of ``atoms``."""
    value = lower(value)
    if not isinstance(value, RationalFunction):
        return True
    den = value.denominator
    prod = None
    for a in atoms:
        a = lower(a)
        if isinstance(a, RationalFunction):
            p = a.numerator
            prod = p if prod is None else prod * p
    while not den.is_constant():
        if prod is None:
            return False
        g = den.gcd(prod)
        if g.is_constant():
            return False
        den = (RationalFunction(den) / RationalFunction(g)).numerator
    return True


def _atom_value(atom, bindings):
    if isinstance(atom, str):
        return bindings.get(atom, var(atom))
    return substitute(atom, bindings)


def verify_normalization_case(case, base_algebra):
    """Check one case projectively modulo ``B^2``.

    Coefficients forced to zero are set to 0, the others stay free
    parameters.  The automorphism is built from the case's choices, checked,
    applied to the generic cocycle, and the result's ``H^2`` coordinates must
    be a nonzero multiple of the representative.
    """
    coords_seen = []
    for spec in case.specializations:
        bindings = dict(spec)
        for atom in case.zero:
            if not isinstance(atom, str) and _atom_value(atom, bindings) != 0:
                return NormalizationResult(case.id, False, f"zero condition {atom} not met by {spec}")
        bindings.update(_zero_bindings(case))
        for atom in case.nonzero:
            if _atom_value(atom, bindings) == 0:
                return NormalizationResult(case.id, False, f"nonzero condition {atom} vanishes")
        A = bind(base_algebra, {p: v for p, v in spec.items() if p in base_algebra.params})
        n = A.dim
        nablas = [BilinearForm([[substitute(x, spec) for x in row] for row in f.matrix]) for f in case.nablas]
        theta = BilinearForm.zero(n)
        for name, nab in zip(case.coefficients, nablas):
            coeff = bindings.get(name, var(name))
            if coeff != 0:
                theta = theta + nab * coeff
        env = dict(bindings)
        for name, expr in case.assignments:
            env[name] = substitute(expr, env)
        atoms = [bindings.get(a, var(a)) if isinstance(a, str) else a for a in case.nonzero]
        for name, _ in case.assignments:
            if not _denominator_supported(env[name], atoms):
                return NormalizationResult(case.id, False, f"choice for {name} divides by a quantity not assumed nonzero")
        phi = [[substitute(x, env) for x in row] for row in case.automorphism]
        if not is_automorphism(A, phi):
            return NormalizationResult(case.id, False, "automorphism check failed")
        moved = transform_cocycle(theta, phi)
        reps = nablas
        b2 = coboundary_space(A)
        coords = h2_coordinates(moved, reps, b2)
        if coords is None:
            return NormalizationResult(case.id, False, "transformed cocycle left the span of the nablas and B^2")
        rep = list(case.representative)
        pivot = next(k for k, r in enumerate(rep) if r != 0)
        scale = coords[pivot] / rep[pivot] if coords[pivot] != 0 else Fraction(0)
        residual = [lower(c - scale * r) for c, r in zip(coords, rep)]
        if scale == 0 or any(x != 0 for x in residual):
            return NormalizationResult(case.id, False, "not proportional to the representative", coords, residual)
        coords_seen.append(coords)
    return NormalizationResult(case.id, True, "", coords_seen[-1] if coords_seen else [])


def _pattern_matches(pattern, zero, nonzero):
    return all(pattern[_atom_key(a)] for a in zero) and not any(pattern[_atom_key(a)] for a in nonzero)


def _atom_key(atom):
    return atom if isinstance(atom, str) else str(atom)


def check_case_coverage(family):
    """Every zero/nonzero pattern of the atoms falls in exactly one case or exclusion.

    Returns the list of offending patterns (empty when the cases partition).
    """
    atoms = {}
    for case in family.cases:
        for a in case.zero + case.nonzero:
            atoms.setdefault(_atom_key(a), a)
    for zero, nonzero in family.excluded:
        for a in zero + nonzero:
            atoms.setdefault(_atom_key(a), a)
    keys = sorted(atoms)
    bad = []
    for bits in itertools.product((True, False), repeat=len(keys)):
        pattern = dict(zip(keys, bits))  # True means "is zero"
        hits = [c.label for c in family.cases if _pattern_matches(pattern, c.zero, c.nonzero)]
        hits += ["excluded" for zero, nonzero in family.excluded if _pattern_matches(pattern, zero, nonzero)]
        if len(hits) != 1:
            bad.append(({k: ("0" if v else "!=0") for k, v in pattern.items()}, hits))
    return bad
