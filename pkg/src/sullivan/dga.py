"""Differential graded-commutative algebras given by generators, differentials and relations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .algebra import Element, GeneratorTable
from .groebner import QuotientAlgebra
from .linalg import Matrix, Subspace, image, kernel, quotient_basis, solve, zero_vector


class InvalidDGA(ValueError):
    def __init__(self, report: "ValidationReport"):
        super().__init__("invalid differential algebra:\n  " + "\n  ".join(report.failures))
        self.report = report


class NotACoboundary(ValueError):
    pass


@dataclass
class ValidationReport:
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class CohomologyBasis:
    """Canonical basis of ``H^degree``: cocycle representatives plus the data to classify cocycles."""

    degree: int
    representatives: tuple  # Elements
    vectors: tuple  # their coordinate vectors in the algebra's degree basis
    cocycles: Subspace
    coboundaries: Subspace

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def coordinates(self, v: Sequence[Fraction]) -> tuple:
        """Class coordinates of a cocycle given by its coordinate vector."""
        if not self.cocycles.contains(v):
            raise ValueError("not a cocycle")
        if not self.vectors:
            return ()
        cols = list(self.vectors) + list(self.coboundaries.basis)
        m = Matrix.from_columns(cols, self.cocycles.ambient_dim)
        x = solve(m, v)
        return x[:len(self.vectors)]


class DGA:
    """A quotient algebra together with the differentials of its generators.

    ``differentials`` maps generator names to elements; missing names have
    zero differential.  Construction does not validate; call :meth:`validate`
    or :meth:`checked`.
    """

    def __init__(self, algebra: QuotientAlgebra, differentials: Mapping[str, Element] | Sequence[Element]):
        self.algebra = algebra
        table = algebra.table
        self.table = table
        if isinstance(differentials, Mapping):
            for name in differentials:
                table.position(name)
            diffs = [differentials.get(n) for n in table.names]
        else:
            diffs = list(differentials)
            if len(diffs) != len(table):
                raise ValueError("one differential per generator expected")
        self.generator_differentials = tuple(
            Element.zero(table) if d is None else d for d in diffs)
        for d in self.generator_differentials:
            if d.table != table:
                raise ValueError("differential over a different generator table")
        self._mono_d = {}
        self._matrices = {}
        self._cohomology = {}

    @classmethod
    def from_presentation(cls, table: GeneratorTable, differentials, relations=(),
                          degree_bound: Optional[int] = None) -> "DGA":
        """Build with a degree bound large enough to validate the presentation.

        Without relations the algebra is free and unbounded.
        """
        relations = tuple(relations)
        if relations:
            needed = max(table.degrees) + 2
            needed = max([needed] + [r.degree + 1 for r in relations if r.degree is not None])
            degree_bound = needed if degree_bound is None else max(degree_bound, needed)
        else:
            degree_bound = None
        return cls(QuotientAlgebra(table, relations, degree_bound), differentials)

    @property
    def degree_bound(self) -> Optional[int]:
        return self.algebra.degree_bound

    def with_degree_bound(self, n: int) -> "DGA":
        """This DGA, rebuilt over a larger Gröbner truncation if ``n`` exceeds the current bound."""
        b = self.degree_bound
        if b is None or b >= n:
            return self
        return DGA(QuotientAlgebra(self.table, self.algebra.relations, n), self.generator_differentials)

    def checked(self) -> "DGA":
        report = self.validate()
        if not report.ok:
            raise InvalidDGA(report)
        return self

    def __repr__(self):
        lines = ["DGA(%r) with differential:" % self.algebra]
        for n, d in zip(self.table.names, self.generator_differentials):
            lines.append("  %s --> %s" % (n, d))
        return "\n".join(lines)

    # --- differential ------------------------------------------------------

    def _d_monomial(self, m: tuple) -> Element:
        cached = self._mono_d.get(m)
        if cached is not None:
            return cached
        table = self.table
        n = len(table)
        out = Element.zero(table)
        prefix_degree = 0
        for i in range(n):
            e = m[i]
            if not e:
                continue
            dg = self.generator_differentials[i]
            if dg:
                before = tuple(m[j] if j < i else 0 for j in range(n))
                after = tuple(m[j] if j > i else 0 for j in range(n))
                power = tuple(e - 1 if j == i else 0 for j in range(n))
                # d(g^e) = e g^(e-1) d(g) for even g; odd g has e == 1
                term = (Element.monomial(table, before) * Element.monomial(table, power)
                        * dg * Element.monomial(table, after)) * e
                out = out - term if prefix_degree % 2 else out + term
            prefix_degree += e * table.degrees[i]
        self._mono_d[m] = out
        return out

    def d(self, x: Element) -> Element:
        """Graded Leibniz extension of the generator differentials, in normal form."""
        if x.table != self.table:
            raise ValueError("element over a different generator table")
        for k in x.degrees():
            self.algebra._check_degree(k + 1)
        out = Element.zero(self.table)
        for m, c in x.terms.items():
            out = out + self._d_monomial(m) * c
        return self.algebra.normal_form(out)

    # --- validation --------------------------------------------------------

    def validate(self) -> ValidationReport:
        report = ValidationReport()
        table = self.table
        bound = self.degree_bound
        for name, k, dg in zip(table.names, table.degrees, self.generator_differentials):
            if dg.is_zero():
                continue
            if dg.degrees() != {k + 1}:
                report.failures.append(
                    "d(%s) = %s is not homogeneous of degree %d" % (name, dg, k + 1))
                continue
            if bound is not None and k + 2 > bound:
                report.failures.append("d(d(%s)) lies above the degree bound %d" % (name, bound))
                continue
            dd = self.d(dg)
            if not dd.is_zero():
                report.failures.append("d(d(%s)) = %s is not zero" % (name, dd))
        for r in self.algebra.relations:
            k = r.degree
            if bound is not None and k + 1 > bound:
                report.failures.append("d(%s) lies above the degree bound %d" % (r, bound))
                continue
            dr = self.d(r)
            if not dr.is_zero():
                report.failures.append("d(%s) = %s does not reduce to zero" % (r, dr))
        return report

    # --- linear algebra per degree ------------------------------------------

    def basis(self, k: int) -> tuple:
        return self.algebra.basis(k)

    def coordinates(self, x: Element, k: Optional[int] = None) -> tuple:
        return self.algebra.coordinates(x, k)

    def element(self, coords, k: int) -> Element:
        return self.algebra.element(coords, k)

    def differential_matrix(self, k: int) -> Matrix:
        """Matrix of ``d : A_k -> A_{k+1}`` in the normal-monomial bases."""
        if k in self._matrices:
            return self._matrices[k]
        src = self.basis(k)
        tgt_dim = self.algebra.dimension(k + 1)
        cols = []
        for m in src:
            dm = self.d(Element.monomial(self.table, m))
            cols.append(zero_vector(tgt_dim) if dm.is_zero() else self.coordinates(dm, k + 1))
        mat = Matrix.from_columns(cols, tgt_dim)
        self._matrices[k] = mat
        return mat

    def cocycles(self, k: int) -> Subspace:
        return kernel(self.differential_matrix(k))

    def coboundaries(self, k: int) -> Subspace:
        if k == 0:
            return Subspace.zero(1)
        return image(self.differential_matrix(k - 1))

    def cohomology(self, k: int) -> CohomologyBasis:
        if k in self._cohomology:
            return self._cohomology[k]
        if k == 0:
            one = Element.one(self.table)
            h = CohomologyBasis(0, (one,), ((Fraction(1),),), Subspace.full(1), Subspace.zero(1))
        else:
            z = self.cocycles(k)
            b = self.coboundaries(k)
            vecs = tuple(quotient_basis(z, b))
            reps = tuple(self.element(v, k) for v in vecs)
            h = CohomologyBasis(k, reps, vecs, z, b)
        self._cohomology[k] = h
        return h

    def betti(self, k: int) -> int:
        return self.cohomology(k).dimension

    def class_coordinates(self, x: Element, basis: Optional[CohomologyBasis] = None,
                          k: Optional[int] = None) -> tuple:
        """Coordinates of the class of the cocycle ``x``; zero iff ``x`` is a coboundary."""
        if k is None:
            k = basis.degree if basis is not None else x.degree
        if k is None:
            raise ValueError("degree needed for the zero element")
        if basis is None:
            basis = self.cohomology(k)
        v = self.coordinates(x, k)
        if not basis.cocycles.contains(v):
            raise ValueError("%s is not a cocycle" % x)
        return basis.coordinates(v)

    def is_coboundary(self, x: Element, k: Optional[int] = None) -> bool:
        k = x.degree if k is None else k
        if k is None:
            return True
        return self.coboundaries(k).contains(self.coordinates(x, k))

    def coboundary_preimage(self, c: Element, k: Optional[int] = None) -> Element:
        """Some ``b`` with ``d(b) = c`` (free variables zero)."""
        if k is None:
            k = c.degree
        if k is None:  # zero element without a stated degree
            return Element.zero(self.table)
        if k == 0:
            if c.is_zero():
                return Element.zero(self.table)
            raise NotACoboundary("%s is not a coboundary" % c)
        x = solve(self.differential_matrix(k - 1), self.coordinates(c, k))
        if x is None:
            raise NotACoboundary("%s is not a coboundary" % c)
        return self.element(x, k - 1)


def validate(dga: DGA) -> ValidationReport:
    return dga.validate()


def extend_differential(x: Element, dga: DGA) -> Element:
    return dga.d(x)


def differential_matrix(dga: DGA, k: int) -> Matrix:
    return dga.differential_matrix(k)


def cohomology(dga: DGA, k: int) -> CohomologyBasis:
    return dga.cohomology(k)


def class_coordinates(x: Element, basis: CohomologyBasis, dga: DGA) -> tuple:
    return dga.class_coordinates(x, basis)


def coboundary_preimage(c: Element, dga: DGA) -> Element:
    return dga.coboundary_preimage(c)
