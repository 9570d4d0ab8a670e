"""Exact linear algebra over any field in the scalar tower.

Matrices are plain lists of rows.  Entries may mix ints, fractions and the
exact scalar types; a parametric entry is treated as the generic value of the
parameter (nonzero unless it is identically zero).
"""

from __future__ import annotations

from fractions import Fraction

from sympy import QQ, QQ_I, Symbol
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex

from .errors import DimensionMismatchError, SingularMatrixError
from .scalars import (
    GaussRational,
    RadicalScalar,
    RationalFunction,
    _from_domain,
    _to_domain,
    from_sympy_field,
    lower,
    to_sympy_field,
)

# below this many entries plain Python elimination beats building a DomainMatrix
_SMALL = 48


def _zero(x):
    return x == 0


def _cost(x):
    """Rough size of a scalar; elimination pivots on the cheapest entry."""
    if isinstance(x, (int, Fraction)):
        return 0
    if isinstance(x, GaussRational):
        return 1
    if isinstance(x, RationalFunction):
        return 2 + len(x.num) + len(x.den)
    if isinstance(x, RadicalScalar):
        return 2 + _cost(x.base) + _cost(x.radical_part)
    return 2


def _ground(m):
    """``QQ`` or ``QQ_I`` when every entry is a number, else ``None``."""
    gauss = False
    for row in m:
        for x in row:
            if isinstance(x, GaussRational):
                gauss = gauss or bool(x.im)
            elif not isinstance(x, (int, Fraction)):
                return None
    return QQ_I if gauss else QQ


def _ground_matrix(m, ncols, K):
    return DomainMatrix([[_to_domain(lower(x), K) for x in row] for row in m], (len(m), ncols), K)


def _parametric(m):
    """Parameter names and ground domain when ``m`` is over a rational function field."""
    names = set()
    gauss = False
    for row in m:
        for x in row:
            if isinstance(x, RadicalScalar):
                return None
            if isinstance(x, RationalFunction):
                names.update(x.params)
                gauss = gauss or x.num.ring.domain is QQ_I
            elif isinstance(x, GaussRational) and x.im:
                gauss = True
    if not names:
        return None
    return tuple(sorted(names)), (QQ_I if gauss else QQ)


def _field_matrix(m, ncols, names, ground):
    K = ground.frac_field(*[Symbol(n) for n in names], order=grlex)
    return DomainMatrix([[to_sympy_field(x, K) for x in row] for row in m], (len(m), ncols), K)


def _rref_field(m, ncols, names, ground):
    # fraction-free elimination in sympy keeps parametric entries small
    red, pivots = _field_matrix(m, ncols, names, ground).rref(method="CD")
    rows = red.to_list()[: len(pivots)]
    basis = [[lower(from_sympy_field(x, names, ground)) for x in row] for row in rows]
    return basis, list(pivots)


def rref(rows, ncols=None):
    """Reduced row echelon form.

    Returns ``(basis_rows, pivots)`` with zero rows dropped.
    """
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if m and ncols:
        field = _parametric(m)
        if field is not None:
            return _rref_field(m, ncols, *field)
        K = _ground(m) if len(m) * ncols >= _SMALL else None
        if K is not None:
            red, pivots = _ground_matrix(m, ncols, K).rref()
            rows = red.to_list()[: len(pivots)]
            return [[_from_domain(x, K) for x in row] for row in rows], list(pivots)
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        best = None
        for k in range(r, nrows):
            x = m[k][c]
            if not _zero(x):
                cost = _cost(x)
                if best is None or cost < best:
                    p, best = k, cost
                    if cost == 0:
                        break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        row = m[r]
        if piv != 1:
            inv = 1 / piv if not isinstance(piv, int) else Fraction(1, piv)
            for j in range(c, ncols):
                if not _zero(row[j]):
                    row[j] = row[j] * inv
        row[c] = Fraction(1)
        nz = [j for j in range(c + 1, ncols) if not _zero(row[j])]
        for k in range(nrows):
            if k == r:
                continue
            f = m[k][c]
            if _zero(f):
                continue
            other = m[k]
            for j in nz:
                other[j] = other[j] - f * row[j]
            other[c] = Fraction(0)
        pivots.append(c)
        r += 1
    basis = [[lower(x) for x in row] for row in m[:r]]
    return basis, pivots


def rank(rows, ncols=None):
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if m and ncols:
        field = _parametric(m)
        if field is not None:
            return _ring_rank(_field_matrix(m, ncols, *field))
        K = _ground(m) if len(m) * ncols >= _SMALL else None
        if K is not None:
            return _ground_matrix(m, ncols, K).rank()
    return len(rref(m, ncols)[1])


def _ring_rank(dm):
    # clearing denominators row by row leaves a polynomial matrix for fraction-free elimination
    _, ring_matrix = dm.clear_denoms_rowwise(convert=True)
    return len(ring_matrix.rref_den(method="FF")[2])


def pencil_rank(mats):
    """Rank of ``sum_k x_k mats[k]`` over the field of the indeterminates ``x_k``."""
    rows, cols = len(mats[0]), len(mats[0][0])
    field = _parametric([x for M in mats for x in M]) or ((), QQ)
    names, ground = field
    if any(isinstance(x, GaussRational) and x.im for M in mats for row in M for x in row):
        ground = QQ_I
    xs = [f"_x{k}" for k in range(len(mats))]
    syms = [Symbol(n) for n in names + tuple(xs)]
    polynomial = all(
        not isinstance(x, RationalFunction) or x.den.is_ground for M in mats for row in M for x in row
    )
    K = ground.poly_ring(*syms, order=grlex) if polynomial else ground.frac_field(*syms, order=grlex)
    gens = K.gens[len(names):]
    total = [[K.zero] * cols for _ in range(rows)]
    for g, M in zip(gens, mats):
        for i in range(rows):
            for j in range(cols):
                if not _zero(M[i][j]):
                    total[i][j] = total[i][j] + g * to_sympy_field(M[i][j], K)
    dm = DomainMatrix(total, (rows, cols), K)
    if polynomial:
        return len(dm.rref_den(method="FF")[2])
    return _ring_rank(dm)


def nullspace(rows, ncols):
    """Basis of ``{x : A x = 0}``, one vector per free column, in RREF."""
    basis, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    vectors = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(basis, pivots):
            if not _zero(row[f]):
                v[p] = lower(-row[f])
        vectors.append(v)
    if not vectors:
        return []
    return rref(vectors, ncols)[0]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    n, k = len(a), len(b)
    p = len(b[0]) if b else 0
    if a and len(a[0]) != k:
        raise DimensionMismatchError("matrix shapes do not match")
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(p):
            s = 0
            for t in range(k):
                x = ai[t]
                if _zero(x):
                    continue
                y = b[t][j]
                if _zero(y):
                    continue
                s = s + x * y
            row.append(lower(s))
        out.append(row)
    return out


def matvec(a, v):
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            if _zero(x) or _zero(y):
                continue
            s = s + x * y
        out.append(lower(s))
    return out


def det(m):
    """Determinant by elimination over the field."""
    n = len(m)
    a = [list(r) for r in m]
    d = Fraction(1)
    for c in range(n):
        p = None
        for k in range(c, n):
            if not _zero(a[k][c]):
                p = k
                break
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d = d * piv
        inv = 1 / piv if not isinstance(piv, int) else Fraction(1, piv)
        for k in range(c + 1, n):
            f = a[k][c]
            if _zero(f):
                continue
            f = f * inv
            for j in range(c + 1, n):
                if not _zero(a[c][j]):
                    a[k][j] = a[k][j] - f * a[c][j]
    return lower(d)


def inverse(m):
    n = len(m)
    aug = [list(m[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    basis, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in basis[:n]]


def solve(a, b):
    """One solution of ``a x = b`` or ``None`` when inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [list(r) + [y] for r, y in zip(a, b)]
    basis, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(basis, pivots):
        x[p] = row[ncols]
    return x


class Subspace:
    """Subspace of coordinate space, stored as a reduced row echelon basis."""

    __slots__ = ("basis", "pivots", "ambient")

    def __init__(self, vectors, ambient):
        self.ambient = ambient
        if vectors:
            for v in vectors:
                if len(v) != ambient:
                    raise DimensionMismatchError("vector length does not match ambient dimension")
            self.basis, self.pivots = rref(vectors, ambient)
        else:
            self.basis, self.pivots = [], []

    @classmethod
    def full(cls, n):
        return cls(identity(n), n)

    @classmethod
    def zero(cls, n):
        return cls([], n)

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def contains(self, v):
        return rank(self.basis + [list(v)], self.ambient) == self.dim

    def __contains__(self, v):
        return self.contains(v)

    def issubset(self, other):
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.pivots == other.pivots
            and all(a == b for ra, rb in zip(self.basis, other.basis) for a, b in zip(ra, rb))
        )

    def __add__(self, other):
        return Subspace(self.basis + other.basis, self.ambient)

    def intersection(self, other):
        # x in both  <=>  x is orthogonal to both complements' annihilators
        eqs = self.equations() + other.equations()
        if not eqs:
            return Subspace.full(self.ambient)
        return Subspace(nullspace(eqs, self.ambient), self.ambient)

    def equations(self):
        """Rows of a matrix whose kernel is this subspace."""
        if not self.basis:
            return identity(self.ambient)
        return nullspace(self.basis, self.ambient)

    def complement_coordinates(self):
        """Coordinates that are not pivots: a canonical complement."""
        piv = set(self.pivots)
        return [c for c in range(self.ambient) if c not in piv]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"
