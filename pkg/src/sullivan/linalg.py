"""Exact linear algebra over the rationals.

Everything here works on dense matrices of :class:`fractions.Fraction`.
Vectors are tuples of Fractions; matrices act on column vectors.  A
:class:`Subspace` is stored by its reduced row-echelon basis, so two equal
subspaces always have identical representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vector(entries: Iterable) -> Vector:
    return tuple(Fraction(e) for e in entries)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


@dataclass(frozen=True)
class Matrix:
    """A dense ``rows x cols`` matrix with rational entries."""

    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry count does not match %dx%d" % (self.rows, self.cols))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = tuple(vector(r) for r in rows)
        if cols is None:
            if not rows:
                raise ValueError("column count needed for a matrix with no rows")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = [vector(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ValueError("column of length %d, expected %d" % (len(c), rows))
        entries = tuple(tuple(c[i] for c in columns) for i in range(rows))
        return cls(rows, len(columns), entries)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                      tuple(() for _ in range(self.cols)))

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector of length %d for a matrix with %d columns" % (len(v), self.cols))
        nz = [(j, x) for j, x in enumerate(v) if x]
        return tuple(sum((r[j] * x for j, x in nz), ZERO) for r in self.entries)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch %dx%d @ %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        cols = [other.column(j) for j in range(other.cols)]
        return Matrix.from_columns([self.apply(c) for c in cols], self.rows)

    def rank(self) -> int:
        return len(rref(self)[1])

    def is_zero(self) -> bool:
        return all(not any(r) for r in self.entries)

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)


def _rref_rows(rows: list, ncols: int) -> tuple:
    """In-place Gauss-Jordan on a list of mutable rows; returns (rows, pivots)."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = [x * inv for x in prow]
            rows[r] = prow
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in support:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], tuple(pivots)


def rref(m: Matrix) -> tuple:
    """Reduced row-echelon form of ``m`` with zero rows removed, and its pivot columns."""
    rows, pivots = _rref_rows([list(r) for r in m.entries], m.cols)
    return Matrix(len(rows), m.cols, tuple(tuple(r) for r in rows)), pivots


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``Q^ambient_dim`` held in canonical (RREF) form."""

    ambient_dim: int
    basis: tuple  # RREF rows
    pivots: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError("vector of length %d in ambient dimension %d" % (len(v), ambient_dim))
            if any(v):
                rows.append([Fraction(x) for x in v])
        rows, pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in rows), pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vector(n, i) for i in range(n)), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """Remainder of ``v`` after clearing the pivot columns; zero iff ``v`` lies in the subspace."""
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if f:
                for j, x in enumerate(row):
                    if x:
                        v[j] -= f * x
        return tuple(v)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero(self.reduce(v))

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coordinates of ``v`` in the echelon basis.  ``v`` must lie in the subspace."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(Fraction(v[p]) for p in self.pivots)

    def element(self, coords: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.ambient_dim
        for c, row in zip(coords, self.basis):
            if c:
                for j, x in enumerate(row):
                    if x:
                        out[j] += c * x
        return tuple(out)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return self.ambient_dim == other.ambient_dim and all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def annihilator(self) -> "Subspace":
        """Vectors orthogonal (standard pairing) to every basis vector."""
        return kernel(Matrix(self.dim, self.ambient_dim, self.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if self.dim == self.ambient_dim:
            return other
        if other.dim == other.ambient_dim:
            return self
        return (self.annihilator() + other.annihilator()).annihilator()

    def as_matrix(self) -> Matrix:
        return Matrix(self.dim, self.ambient_dim, self.basis)


def kernel(m: Matrix) -> Subspace:
    """Subspace of ``Q^cols`` annihilated by ``m``."""
    reduced, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    vectors = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, p in zip(reduced.entries, pivots):
            v[p] = -row[f]
        vectors.append(v)
    return Subspace.span(vectors, m.cols)


def image(m: Matrix) -> Subspace:
    """Column space of ``m`` inside ``Q^rows``."""
    return Subspace.span(m.transpose().entries, m.rows)


def solve(m: Matrix, b: Sequence[Fraction]) -> Optional[Vector]:
    """Some ``x`` with ``m x = b`` (free variables set to zero), or None."""
    if len(b) != m.rows:
        raise ValueError("right-hand side of length %d for %d rows" % (len(b), m.rows))
    rows = [list(r) + [Fraction(x)] for r, x in zip(m.entries, b)]
    rows, pivots = _rref_rows(rows, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for row, p in zip(rows, pivots):
        x[p] = row[m.cols]
    return tuple(x)


def quotient_basis(big: Subspace, small: Subspace) -> list:
    """Vectors of ``big`` whose classes form a basis of ``big / small``.

    The chosen vectors are the echelon basis vectors of ``big`` sitting at
    non-pivot positions of ``small`` written in ``big``'s coordinates.
    """
    if not small.is_subspace_of(big):
        raise ValueError("small subspace is not contained in big subspace")
    coords = Subspace.span([big.coordinates(v) for v in small.basis], big.dim)
    taken = set(coords.pivots)
    return [b for i, b in enumerate(big.basis) if i not in taken]


def preimage_subspace(m: Matrix, target: Subspace) -> Subspace:
    """``{x : m x in target}``."""
    if target.ambient_dim != m.rows:
        raise ValueError("target lives in dimension %d, matrix has %d rows" % (target.ambient_dim, m.rows))
    ann = target.annihilator()
    if ann.dim == 0:
        return Subspace.full(m.cols)
    return kernel(ann.as_matrix() @ m)
