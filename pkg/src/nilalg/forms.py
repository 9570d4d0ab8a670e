"""Bilinear forms on coordinate space and vector-valued cocycles."""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatchError
from .scalars import format_scalar, lower


class BilinearForm:
    """``theta`` with ``matrix[i][j] = theta(e_i, e_j)`` (0-based indices)."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        n = len(matrix)
        if any(len(row) != n for row in matrix):
            raise DimensionMismatchError("bilinear form matrix must be square")
        self.matrix = [[lower(x) for x in row] for row in matrix]

    @classmethod
    def zero(cls, n):
        return cls([[Fraction(0)] * n for _ in range(n)])

    @classmethod
    def delta(cls, i, j, n):
        """The elementary form Delta_ij (1-based indices)."""
        m = [[Fraction(0)] * n for _ in range(n)]
        m[i - 1][j - 1] = Fraction(1)
        return cls(m)

    @classmethod
    def from_vector(cls, v, n):
        return cls([list(v[i * n:(i + 1) * n]) for i in range(n)])

    @property
    def dim(self):
        return len(self.matrix)

    def vector(self):
        return [x for row in self.matrix for x in row]

    def __call__(self, u, v):
        s = 0
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            row = self.matrix[i]
            for j, vj in enumerate(v):
                if vj == 0 or row[j] == 0:
                    continue
                s = s + ui * row[j] * vj
        return lower(s)

    def __add__(self, other):
        return BilinearForm([[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)])

    def __sub__(self, other):
        return BilinearForm([[a - b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)])

    def __neg__(self):
        return BilinearForm([[-a for a in r] for r in self.matrix])

    def __mul__(self, c):
        return BilinearForm([[a * c for a in r] for r in self.matrix])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return self.dim == other.dim and all(
            a == b for r, s in zip(self.matrix, other.matrix) for a, b in zip(r, s)
        )

    __hash__ = None

    def is_zero(self):
        return all(x == 0 for row in self.matrix for x in row)

    def __str__(self):
        return format_form(self)

    def __repr__(self):
        return f"BilinearForm({self})"


def format_form(theta):
    """Sum of ``c*D(i,j)`` terms."""
    parts = []
    for i, row in enumerate(theta.matrix, 1):
        for j, c in enumerate(row, 1):
            if c == 0:
                continue
            atom = f"D({i},{j})"
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


class VectorCocycle:
    """``theta = sum_k theta_k v_k``: one bilinear form per new basis vector."""

    __slots__ = ("components",)

    def __init__(self, components):
        components = list(components)
        if not components:
            raise ValueError("a vector cocycle needs at least one component")
        n = components[0].dim
        if any(c.dim != n for c in components):
            raise DimensionMismatchError("cocycle components have different dimensions")
        self.components = components

    @classmethod
    def of(cls, theta):
        if isinstance(theta, VectorCocycle):
            return theta
        if isinstance(theta, BilinearForm):
            return cls([theta])
        return cls(theta)

    @property
    def dim(self):
        return self.components[0].dim

    @property
    def s(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, k):
        return self.components[k]

    def __eq__(self, other):
        if not isinstance(other, VectorCocycle):
            return NotImplemented
        return self.components == other.components

    __hash__ = None

    def __repr__(self):
        return "VectorCocycle([" + "; ".join(format_form(c) for c in self.components) + "])"
