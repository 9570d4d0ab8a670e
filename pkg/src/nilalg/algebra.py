"""Finite-dimensional algebras given by structure constants.

``Algebra.table[i][j]`` holds the coordinates of ``e_{i+1} e_{j+1}``; the
public functions take 1-based basis labels only where the text formats do.
Linear maps are square matrices whose column ``j`` is the image of ``e_{j+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    DimensionMismatchError,
    ExcludedParameterError,
    NotAnIdealError,
    SingularMatrixError,
    ZeroAnnihilatorError,
)
from .forms import BilinearForm, VectorCocycle
from .linalg import Subspace
from .scalars import free_params, lower, substitute, var

RIGHT_COMMUTATIVITY = "(xy)z=(xz)y"
LEFT_COMMUTATIVITY = "x(yz)=y(xz)"


class Algebra:
    """An algebra structure on coordinate space of dimension ``dim``.

    ``params`` maps each declared parameter name to its tuple of excluded
    values.  ``radicand`` is the square of the one radical allowed in the
    algebra's arithmetic context, if any.
    """

    __slots__ = ("name", "dim", "params", "radicand", "table", "notes")

    def __init__(self, name, dim, table=None, params=None, radicand=None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.name = name
        self.dim = dim
        self.params = dict(params or {})
        self.radicand = radicand
        if table is None:
            table = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        if len(table) != dim or any(len(r) != dim or any(len(v) != dim for v in r) for r in table):
            raise DimensionMismatchError(f"structure tensor of {name} is not {dim}x{dim}x{dim}")
        self.table = [[[lower(x) for x in v] for v in row] for row in table]
        self.notes = ()

    @classmethod
    def from_products(cls, name, dim, products, params=None, radicand=None):
        """Build from ``{(i, j): {k: c}}`` with 1-based labels; unlisted products are zero."""
        table = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), rhs in products.items():
            for k, c in rhs.items():
                table[i - 1][j - 1][k - 1] = table[i - 1][j - 1][k - 1] + c
        return cls(name, dim, table, params, radicand)

    @classmethod
    def zero(cls, dim, name=None):
        return cls(name or f"N{dim}", dim)

    def renamed(self, name):
        return Algebra(name, self.dim, self.table, self.params, self.radicand)

    def products(self):
        """Nonzero products as ``{(i, j): {k: c}}`` with 1-based labels."""
        out = {}
        for i, row in enumerate(self.table, 1):
            for j, v in enumerate(row, 1):
                nz = {k: c for k, c in enumerate(v, 1) if c != 0}
                if nz:
                    out[(i, j)] = nz
        return out

    def free_params(self):
        names = set()
        for row in self.table:
            for v in row:
                for c in v:
                    names |= free_params(c)
        return names

    def is_zero(self):
        return all(c == 0 for row in self.table for v in row for c in v)

    def same_structure(self, other):
        return self.dim == other.dim and all(
            a == b
            for r1, r2 in zip(self.table, other.table)
            for v1, v2 in zip(r1, r2)
            for a, b in zip(v1, v2)
        )

    def left_matrix(self, x):
        """Matrix of ``y -> x y``."""
        n = self.dim
        cols = [product(self, x, _unit(j, n)) for j in range(n)]
        return linalg.transpose(cols)

    def right_matrix(self, x):
        """Matrix of ``y -> y x``."""
        n = self.dim
        cols = [product(self, _unit(j, n), x) for j in range(n)]
        return linalg.transpose(cols)

    def __repr__(self):
        return f"Algebra({self.name!r}, dim={self.dim})"


def _unit(j, n):
    v = [Fraction(0)] * n
    v[j] = Fraction(1)
    return v


def bind(A, bindings, name=None):
    """Substitute values for declared parameters, honoring exclusions."""
    if not bindings:
        return A
    for p, value in bindings.items():
        if p not in A.params:
            raise KeyError(f"{A.name} has no parameter {p!r}")
        for bad in A.params[p]:
            if value == bad:
                raise ExcludedParameterError(f"{A.name}: {p}={value} is excluded")
    table = [[[substitute(c, bindings) for c in v] for v in row] for row in A.table]
    params = {p: ex for p, ex in A.params.items() if p not in bindings}
    radicand = substitute(A.radicand, bindings) if A.radicand is not None else None
    return Algebra(name or A.name, A.dim, table, params, radicand)


# ---------------------------------------------------------------------------
# products and identities
# ---------------------------------------------------------------------------


def product(A, u, v):
    """Coordinates of ``u v``."""
    n = A.dim
    if len(u) != n or len(v) != n:
        raise DimensionMismatchError(f"vectors must have length {n}")
    out = [0] * n
    for i, ui in enumerate(u):
        if ui == 0:
            continue
        row = A.table[i]
        for j, vj in enumerate(v):
            if vj == 0:
                continue
            w = row[j]
            c = ui * vj
            for k, x in enumerate(w):
                if x != 0:
                    out[k] = out[k] + c * x
    return [lower(x) for x in out]


def check_bicommutative(A):
    """Violated ``(identity, i, j, k)`` triples (1-based); empty means pass.

    Every basis triple is tested, which is exhaustive by trilinearity.
    """
    n = A.dim
    basis = [_unit(j, n) for j in range(n)]
    violations = []
    for i in range(n):
        for j in range(n):
            eij = A.table[i][j]
            for k in range(n):
                lhs = product(A, eij, basis[k])
                rhs = product(A, A.table[i][k], basis[j])
                if any(a != b for a, b in zip(lhs, rhs)):
                    violations.append((RIGHT_COMMUTATIVITY, i + 1, j + 1, k + 1))
                lhs = product(A, basis[i], A.table[j][k])
                rhs = product(A, basis[j], A.table[i][k])
                if any(a != b for a, b in zip(lhs, rhs)):
                    violations.append((LEFT_COMMUTATIVITY, i + 1, j + 1, k + 1))
    return violations


def is_bicommutative(A):
    return not check_bicommutative(A)


def _span_products(A, U, V):
    vecs = [product(A, u, v) for u in U.basis for v in V.basis]
    vecs = [w for w in vecs if any(x != 0 for x in w)]
    return Subspace(vecs, A.dim)


def power_series(A):
    """Chain ``A^(1), A^(2), ...`` and the nilpotency index.

    ``A^(k)`` is spanned by ``A^(i) A^(j)`` over ``i + j = k``.  The chain stops
    at the first zero term or at ``k = n + 1``; the index is ``None`` when no
    term within that bound vanishes.
    """
    n = A.dim
    chain = [Subspace.full(n)]
    for k in range(2, n + 2):
        total = Subspace.zero(n)
        for i in range(1, k):
            total = total + _span_products(A, chain[i - 1], chain[k - i - 1])
        chain.append(total)
        if total.dim == 0:
            return chain, k
    return chain, None


def is_nilpotent(A):
    return power_series(A)[1] is not None


def square(A):
    """The subspace ``A^2`` spanned by all products."""
    return _span_products(A, Subspace.full(A.dim), Subspace.full(A.dim))


# ---------------------------------------------------------------------------
# annihilators and derivations
# ---------------------------------------------------------------------------


def _ann_rows(A, left=True, right=True):
    n = A.dim
    rows = []
    for j in range(n):
        for k in range(n):
            if left:
                # x e_j = 0
                rows.append([A.table[i][j][k] for i in range(n)])
            if right:
                # e_j x = 0
                rows.append([A.table[j][i][k] for i in range(n)])
    return [r for r in rows if any(x != 0 for x in r)]


def _kernel(rows, n):
    if not rows:
        return Subspace.full(n)
    return Subspace(linalg.nullspace(rows, n), n)


def annihilator(A):
    """``Ann(A) = {x : xA + Ax = 0}``."""
    return _kernel(_ann_rows(A), A.dim)


def left_annihilator(A):
    """``{x : xA = 0}``."""
    return _kernel(_ann_rows(A, right=False), A.dim)


def right_annihilator(A):
    """``{x : Ax = 0}``."""
    return _kernel(_ann_rows(A, left=False), A.dim)


def _derivation_rows(A):
    n = A.dim
    c = A.table
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [0] * (n * n)
                for m in range(n):
                    if c[i][j][m] != 0:
                        row[k * n + m] = row[k * n + m] + c[i][j][m]
                for a in range(n):
                    if c[a][j][k] != 0:
                        row[a * n + i] = row[a * n + i] - c[a][j][k]
                    if c[i][a][k] != 0:
                        row[a * n + j] = row[a * n + j] - c[i][a][k]
                if any(x != 0 for x in row):
                    rows.append(row)
    return rows


def derivations(A):
    """Derivation algebra as a subspace of ``n*n`` coordinates.

    Coordinate ``a*n + b`` is the entry ``D[a][b]`` (row ``a``, column ``b``).
    """
    return _kernel(_derivation_rows(A), A.dim * A.dim)


def derivation_dim(A):
    rows = _derivation_rows(A)
    n2 = A.dim * A.dim
    return n2 - (linalg.rank(rows, n2) if rows else 0)


def as_matrix(vec, n):
    return [list(vec[a * n:(a + 1) * n]) for a in range(n)]


def is_derivation(A, D):
    n = A.dim
    for i in range(n):
        for j in range(n):
            lhs = linalg.matvec(D, A.table[i][j])
            di = [D[a][i] for a in range(n)]
            dj = [D[a][j] for a in range(n)]
            rhs = [x + y for x, y in zip(product(A, di, _unit(j, n)), product(A, _unit(i, n), dj))]
            if any(a != b for a, b in zip(lhs, rhs)):
                return False
    return True


def commutator(D1, D2):
    a = linalg.matmul(D1, D2)
    b = linalg.matmul(D2, D1)
    return [[lower(x - y) for x, y in zip(r, s)] for r, s in zip(a, b)]


# ---------------------------------------------------------------------------
# maps and basis changes
# ---------------------------------------------------------------------------


def _column(P, j):
    return [row[j] for row in P]


def is_automorphism(A, phi):
    """Invertible and multiplicative; parametric entries are taken generically."""
    n = A.dim
    if len(phi) != n or any(len(r) != n for r in phi):
        raise DimensionMismatchError("map does not match the algebra's dimension")
    if linalg.det(phi) == 0:
        return False
    cols = [_column(phi, j) for j in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = linalg.matvec(phi, A.table[i][j])
            rhs = product(A, cols[i], cols[j])
            if any(a != b for a, b in zip(lhs, rhs)):
                return False
    return True


def change_basis(A, P, name=None):
    """Structure constants in the basis formed by the columns of ``P``."""
    n = A.dim
    if len(P) != n or any(len(r) != n for r in P):
        raise DimensionMismatchError("basis matrix does not match the algebra's dimension")
    try:
        Pinv = linalg.inverse(P)
    except SingularMatrixError:
        raise SingularMatrixError("basis change matrix is singular") from None
    cols = [_column(P, j) for j in range(n)]
    table = [
        [linalg.matvec(Pinv, product(A, cols[a], cols[b])) for b in range(n)] for a in range(n)
    ]
    return Algebra(name or A.name, n, table, A.params, A.radicand)


# ---------------------------------------------------------------------------
# quotients and central extensions
# ---------------------------------------------------------------------------


def is_ideal(A, I):
    n = A.dim
    for v in I.basis:
        for j in range(n):
            e = _unit(j, n)
            if not I.contains(product(A, v, e)) or not I.contains(product(A, e, v)):
                return False
    return True


def _split(w, I, U):
    """Write ``w = sum_u c_u e_u + sum_k lam_k v_k``; return ``(c, lam)``."""
    lam = [w[p] for p in I.pivots]
    c = []
    for u in U:
        x = w[u]
        for lk, vk in zip(lam, I.basis):
            if lk != 0 and vk[u] != 0:
                x = x - lk * vk[u]
        c.append(lower(x))
    return c, lam


def quotient(A, I, name=None):
    """``A / I`` on the non-pivot coordinate complement of ``I``."""
    if not isinstance(I, Subspace):
        I = Subspace(list(I), A.dim)
    if not is_ideal(A, I):
        raise NotAnIdealError(f"subspace of dim {I.dim} is not a two-sided ideal of {A.name}")
    U = I.complement_coordinates()
    if not U:
        raise ValueError("quotient by the whole algebra has dimension 0")
    table = [[_split(A.table[a][b], I, U)[0] for b in U] for a in U]
    return Algebra(name or f"{A.name}/I", len(U), table, A.params, A.radicand)


def _decomposition_space(A):
    ann = annihilator(A)
    if ann.dim == 0:
        raise ZeroAnnihilatorError(f"{A.name} has zero annihilator")
    if ann.dim == A.dim:
        # zero product: keep e1 so the quotient is 1-dimensional (split case)
        n = A.dim
        ann = Subspace([_unit(j, n) for j in range(1, n)], n)
    return ann


def adapted_basis(A):
    """Columns: complement coordinates of Ann(A), then the Ann(A) basis."""
    ann = _decomposition_space(A)
    n = A.dim
    cols = [_unit(u, n) for u in ann.complement_coordinates()] + [list(v) for v in ann.basis]
    return linalg.transpose(cols)


def decompose_central_extension(A):
    """``(A / Ann(A), theta)`` with ``A`` isomorphic to the central extension.

    ``theta_k(e_a, e_b)`` is the ``k``-th annihilator component of ``e_a e_b``.
    For a zero algebra the quotient is kept 1-dimensional and ``theta = 0``.
    """
    ann = _decomposition_space(A)
    U = ann.complement_coordinates()
    m = len(U)
    table = []
    forms = [[[Fraction(0)] * m for _ in range(m)] for _ in range(ann.dim)]
    for ia, a in enumerate(U):
        row = []
        for ib, b in enumerate(U):
            c, lam = _split(A.table[a][b], ann, U)
            row.append(c)
            for k, x in enumerate(lam):
                forms[k][ia][ib] = x
        table.append(row)
    Aq = Algebra(f"{A.name}/Ann", m, table, A.params, A.radicand)
    return Aq, VectorCocycle([BilinearForm(f) for f in forms])


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    dim_powers: tuple
    dim_ann: int
    dim_left_ann: int
    dim_right_ann: int
    dim_der: int
    rank_profile: tuple

    def as_dict(self):
        return {
            "dim_powers": list(self.dim_powers),
            "dim_ann": self.dim_ann,
            "dim_left_ann": self.dim_left_ann,
            "dim_right_ann": self.dim_right_ann,
            "dim_der": self.dim_der,
            "rank_profile": list(self.rank_profile),
        }


def generic_multiplication_ranks(A):
    """Ranks of ``L_x`` and ``R_x`` for a generic element ``x``."""
    n = A.dim
    if A.radicand is not None:
        x = [var(f"_g{k}") for k in range(1, n + 1)]
        return linalg.rank(A.left_matrix(x)), linalg.rank(A.right_matrix(x))
    units = [_unit(k, n) for k in range(n)]
    left = linalg.pencil_rank([A.left_matrix(u) for u in units])
    right = linalg.pencil_rank([A.right_matrix(u) for u in units])
    return left, right


def fingerprint(A):
    chain, _ = power_series(A)
    return Fingerprint(
        dim_powers=tuple(s.dim for s in chain[1:]),
        dim_ann=annihilator(A).dim,
        dim_left_ann=left_annihilator(A).dim,
        dim_right_ann=right_annihilator(A).dim,
        dim_der=derivation_dim(A),
        rank_profile=generic_multiplication_ranks(A),
    )
