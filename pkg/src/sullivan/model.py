"""Minimal Sullivan models built one generator at a time.

The model ``M`` grows by two kinds of generators.  Closed ``x`` generators
fill the cokernel of ``phi*: H^k(M) -> H^k(A)``; ``y`` generators of degree
``k-1`` kill the kernel of ``phi*`` in degree ``k``, their differential being
a cocycle representing a kernel class and their image a preimage under
``d_A`` of its image in ``A``.  The y-phase may need several rounds, since
new generators can create new kernel classes.

Every choice (cohomology representatives, kernel bases, preimages) comes
from the canonical echelon machinery in :mod:`sullivan.linalg`, so two runs
on the same input produce the same model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import Element, GeneratorTable
from .dga import DGA, NotACoboundary
from .groebner import QuotientAlgebra
from .linalg import Matrix, Subspace, image, kernel, preimage_subspace, quotient_basis


class IterationLimitExceeded(ValueError):
    """The y-phase in some degree did not make ``phi*`` injective in time.

    ``partial`` is the model as it stood when the limit was hit; its
    invariant table holds every completed stage.
    """

    def __init__(self, degree: int, max_iterations: int, partial: "MinimalModel"):
        super().__init__("could not cover all relations in max iterations in degree %d" % degree)
        self.degree = degree
        self.generator_degree = degree - 1
        self.max_iterations = max_iterations
        self.partial = partial


class ConsistencyError(RuntimeError):
    """An internal invariant failed; indicates a bug or an invalid input that slipped through."""


@dataclass(frozen=True)
class ModelGenerator:
    name: str
    kind: str  # "x" (closed) or "y"
    degree: int
    index: int
    differential: Element  # over the model's table at the time of addition
    phi_image: Element  # element of the target
    stage: str


@dataclass(frozen=True)
class InvariantTable:
    """Numerical invariants ``(degree, stage) -> count``; zero entries are not stored."""

    entries: tuple = ()  # sorted ((i, j), v) pairs

    @classmethod
    def from_dict(cls, d: dict) -> "InvariantTable":
        return cls(tuple(sorted((k, v) for k, v in d.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.entries)

    def get(self, i: int, j: int) -> int:
        return self.as_dict().get((i, j), 0)

    def __getitem__(self, key) -> int:
        return self.get(*key)

    def truncated(self, max_degree: int) -> "InvariantTable":
        return InvariantTable(tuple((k, v) for k, v in self.entries if k[0] <= max_degree))

    def rows(self) -> list:
        return [[i, j, v] for (i, j), v in self.entries]

    def __str__(self):
        if not self.entries:
            return "(all zero)"
        return " ".join("v^%d_%d=%d" % (i, j, v) for (i, j), v in self.entries)


@dataclass(frozen=True)
class ModelDiagram:
    rows: tuple

    def render(self) -> str:
        if not self.rows:
            return "(empty model)"
        left = [str(r.phi_image) for r in self.rows]
        mid = [r.name for r in self.rows]
        w1 = max(len(s) for s in left)
        w2 = max(len(s) for s in mid)
        return "\n".join(
            "%s <- %s -> %s" % (a.rjust(w1), b.ljust(w2), r.differential)
            for a, b, r in zip(left, mid, self.rows))

    def __str__(self):
        return self.render()


class _Morphism:
    """Algebra map from a free algebra on ``table`` to ``target`` given by generator images."""

    def __init__(self, table: GeneratorTable, images: Sequence[Element], target: DGA):
        self.table = table
        self.images = tuple(images)
        self.target = target
        self._cache = {}

    def _monomial(self, m: tuple) -> Element:
        out = self._cache.get(m)
        if out is None:
            tt = self.target.table
            out = Element.one(tt)
            for e, img in zip(m, self.images):
                for _ in range(e):
                    out = out * img
            out = self.target.algebra.normal_form(out)
            self._cache[m] = out
        return out

    def __call__(self, x: Element) -> Element:
        x = x.lift_to(self.table)
        out = Element.zero(self.target.table)
        for m, c in x.terms.items():
            out = out + self._monomial(m) * c
        return out


def _free_dga(table: GeneratorTable, diffs: Sequence[Element]) -> DGA:
    return DGA(QuotientAlgebra(table), [d.lift_to(table) for d in diffs])


@dataclass(frozen=True)
class MinimalModel:
    model: DGA
    target: DGA
    phi: tuple  # images of the model generators
    diagram: ModelDiagram
    invariants: InvariantTable
    degree: int
    _map: _Morphism = field(repr=False, compare=False, default=None)

    @classmethod
    def from_rows(cls, rows: Sequence[ModelGenerator], target: DGA, degree: int,
                  invariants: Optional[dict] = None) -> "MinimalModel":
        table = GeneratorTable(tuple(r.name for r in rows), tuple(r.degree for r in rows))
        model = _free_dga(table, [r.differential for r in rows])
        phi = tuple(r.phi_image for r in rows)
        return cls(model, target, phi, ModelDiagram(tuple(rows)), InvariantTable.from_dict(invariants or {}),
                   degree, _Morphism(table, phi, target))

    @property
    def generators(self) -> tuple:
        return self.diagram.rows

    @property
    def table(self) -> GeneratorTable:
        return self.model.table

    def apply_phi(self, x: Element) -> Element:
        return self._map(x)

    def induced_map(self, k: int):
        return _induced_map(self.model, self._map, self.target, k)

    def render(self) -> str:
        return self.diagram.render()


def _induced_map(model: DGA, phi: _Morphism, target: DGA, k: int):
    hm = model.cohomology(k)
    ha = target.cohomology(k)
    cols = [target.class_coordinates(phi(rep), ha, k) for rep in hm.representatives]
    return Matrix.from_columns(cols, ha.dimension), hm, ha


class ModelBuilder:
    """Mutable state of a minimal-model construction.

    ``debug=True`` re-checks after every y-round that cohomology below the
    current degree is unchanged and still mapped isomorphically.
    """

    def __init__(self, target: DGA, degree: int, debug: bool = False):
        self.target = target
        self.degree = degree
        self.debug = debug
        self.table = GeneratorTable((), ())
        self.rows = []
        self.invariants = {}
        self._counters = {}
        self._model = None
        self._phi = None

    # --- state ---------------------------------------------------------------

    def model(self) -> DGA:
        if self._model is None:
            self._model = _free_dga(self.table, [r.differential for r in self.rows])
        return self._model

    def phi(self) -> _Morphism:
        if self._phi is None:
            self._phi = _Morphism(self.table, [r.phi_image for r in self.rows], self.target)
        return self._phi

    def _add(self, kind: str, degree: int, differential: Element, phi_image: Element, stage: str):
        idx = self._counters.get((kind, degree), 0)
        self._counters[(kind, degree)] = idx + 1
        name = "%s%d_%d" % (kind, degree, idx)
        self.rows.append(ModelGenerator(name, kind, degree, idx, differential, phi_image, stage))
        self.table = self.table.extend([name], [degree])
        self._model = None
        self._phi = None

    def _record(self, i: int, j: int, n: int):
        if n:
            self.invariants[(i, j)] = self.invariants.get((i, j), 0) + n

    def snapshot(self) -> MinimalModel:
        return MinimalModel.from_rows(self.rows, self.target, self.degree, self.invariants)

    # --- steps ---------------------------------------------------------------

    def induced_map(self, k: int):
        """Matrix of ``phi*_k`` together with the two cohomology bases."""
        return _induced_map(self.model(), self.phi(), self.target, k)

    def first_step(self, max_degree: int) -> Optional[int]:
        """Add closed generators for the first nonzero ``H^k(A)``, ``k <= max_degree``."""
        for k in range(1, max_degree + 1):
            ha = self.target.cohomology(k)
            if ha.dimension:
                zero = Element.zero(self.table)
                for rep in ha.representatives:
                    self._add("x", k, zero, rep, "first-step")
                self._record(k, 0, ha.dimension)
                return k
        return None

    def y_iteration(self, k: int, max_iterations: int, final: bool = False) -> int:
        """Add degree ``k-1`` generators until ``phi*_k`` is injective; returns the round count."""
        label = "final" if final else "y"
        rounds = 0
        while True:
            mat, hm, _ = self.induced_map(k)
            ker = kernel(mat)
            if ker.dim == 0:
                return rounds
            if rounds == max_iterations:
                raise IterationLimitExceeded(k, max_iterations, self.snapshot())
            rounds += 1
            before = self._lower_cohomology(k) if self.debug else None
            phi = self.phi()
            batch = []
            for w in ker.basis:
                z = Element.zero(self.table)
                for c, rep in zip(w, hm.representatives):
                    if c:
                        z = z + rep * c
                c_img = phi(z)
                try:
                    b = self.target.coboundary_preimage(c_img, k)
                except NotACoboundary as exc:
                    raise ConsistencyError(
                        "image %s of kernel class %s has no preimage in degree %d" % (c_img, z, k - 1)) from exc
                batch.append((z, b))
            for z, b in batch:
                self._add("y", k - 1, z, b, "%s(k=%d,j=%d)" % (label, k, rounds))
            self._record(k - 1, rounds, len(batch))
            if self.debug:
                after = self._lower_cohomology(k)
                if before != after:
                    raise ConsistencyError("lower cohomology changed while adding generators of degree %d" % (k - 1))

    def x_step(self, k: int) -> int:
        """Add closed degree-``k`` generators for a complement of ``Im(phi*_k)``."""
        mat, _, ha = self.induced_map(k)
        if mat.rank() != mat.cols:
            raise ConsistencyError("phi*_%d is not injective before the x-step" % k)
        complement = quotient_basis(Subspace.full(ha.dimension), image(mat))
        zero = Element.zero(self.table)
        for u in complement:
            rep = Element.zero(self.target.table)
            for c, r in zip(u, ha.representatives):
                if c:
                    rep = rep + r * c
            self._add("x", k, zero, rep, "x(k=%d)" % k)
        self._record(k, 0, len(complement))
        return len(complement)

    def _lower_cohomology(self, k: int) -> list:
        out = []
        for m in range(1, k):
            mat, hm, ha = self.induced_map(m)
            out.append((hm.dimension, ha.dimension, mat.rank()))
        return out

    def finish(self) -> MinimalModel:
        return self.snapshot()


def first_step(builder: ModelBuilder, max_degree: int) -> Optional[int]:
    return builder.first_step(max_degree)


def induced_map_on_Hk(builder: ModelBuilder, k: int):
    return builder.induced_map(k)


def y_iteration(builder: ModelBuilder, k: int, max_iterations: int = 3) -> int:
    return builder.y_iteration(k, max_iterations)


def x_step(builder: ModelBuilder, k: int) -> int:
    return builder.x_step(k)


def minimal_model(a: DGA, i: int, max_iterations: int = 3, debug: bool = False) -> MinimalModel:
    """The ``i``-minimal model of ``a`` with its ``i``-quasi-isomorphism.

    Raises :class:`IterationLimitExceeded` when some y-phase needs more than
    ``max_iterations`` rounds.
    """
    if i < 0:
        raise ValueError("degree must be non-negative")
    if max_iterations < 0:
        raise ValueError("max_iterations must be non-negative")
    a = a.with_degree_bound(i + 2)
    b = ModelBuilder(a, i, debug=debug)
    k0 = b.first_step(i)
    if k0 is not None:
        for k in range(k0 + 1, i + 1):
            b.y_iteration(k, max_iterations)
            b.x_step(k)
    b.y_iteration(i + 1, max_iterations, final=True)
    return b.finish()


# --- verification ------------------------------------------------------------


@dataclass
class Report:
    failures: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def verify_quasi_isomorphism(m: MinimalModel, a: Optional[DGA] = None) -> Report:
    """Check ``phi*_k`` bijective for ``k <= i`` and injective for ``k = i+1``."""
    a = m.target if a is None else a.with_degree_bound(m.degree + 2)
    phi = _Morphism(m.table, m.phi, a)
    report = Report()
    for k in range(1, m.degree + 2):
        mat, hm, ha = _induced_map(m.model, phi, a, k)
        r = mat.rank()
        report.checks.append("H^%d: dim M=%d, dim A=%d, rank=%d" % (k, hm.dimension, ha.dimension, r))
        if r != hm.dimension:
            report.failures.append("phi*_%d is not injective (rank %d < %d)" % (k, r, hm.dimension))
        if k <= m.degree and r != ha.dimension:
            report.failures.append("phi*_%d is not surjective (rank %d < %d)" % (k, r, ha.dimension))
    for g, img in zip(m.table.names, m.phi):
        x = Element.generator(m.table, g)
        lhs = a.d(img) if img.degree is not None else Element.zero(a.table)
        rhs = phi(m.model.d(x))
        if lhs != rhs:
            report.failures.append("phi does not commute with d on %s" % g)
        if not img.is_zero() and img.degree != m.table.degrees[m.table.position(g)]:
            report.failures.append("phi(%s) = %s has the wrong degree" % (g, img))
    return report


def verify_minimality(m: MinimalModel) -> Report:
    """Freeness, generator order, and a replay check that no y-differential was already exact."""
    report = Report()
    model = m.model
    table = model.table
    if model.algebra.relations:
        report.failures.append("model has relations")
    prev = 0
    for p, (row, dg) in enumerate(zip(m.generators, model.generator_differentials)):
        if row.degree < prev:
            report.failures.append("%s has degree %d after a generator of degree %d" % (row.name, row.degree, prev))
        prev = max(prev, row.degree)
        if row.degree > m.degree:
            report.failures.append("%s has degree above %d" % (row.name, m.degree))
        if (row.kind == "x") != dg.is_zero():
            report.failures.append("%s: kind %s does not match its differential %s" % (row.name, row.kind, dg))
        if any(any(e for e in mono[p:]) for mono in dg.terms):
            report.failures.append("d(%s) = %s uses %s or a later generator" % (row.name, dg, row.name))
            continue
        if not dg.is_zero() and dg.degrees() != {row.degree + 1}:
            report.failures.append("d(%s) has the wrong degree" % row.name)
            continue
        if row.kind == "y":
            prefix = GeneratorTable(table.names[:p], table.degrees[:p])
            z = Element(prefix, {mono[:p]: c for mono, c in dg.terms.items()})
            sub = _free_dga(prefix, [Element(prefix, {mm[:p]: c for mm, c in d.terms.items()})
                                     for d in model.generator_differentials[:p]])
            if not sub.d(z).is_zero():
                report.failures.append("d(%s) is not a cocycle of the earlier generators" % row.name)
            elif sub.is_coboundary(z, row.degree + 1):
                report.failures.append("d(%s) = %s is already a coboundary when %s is added" % (row.name, dg, row.name))
    vr = model.validate()
    report.failures.extend(vr.failures)
    return report


# --- intrinsic invariants ------------------------------------------------------


def _subalgebra(model: DGA, spaces: dict, top: int) -> dict:
    """Degree components ``0..top`` of the subalgebra generated by ``spaces`` (degree -> Elements)."""
    one = Element.one(model.table)
    comps = {0: Subspace.full(1)}
    elems = {0: [one]}
    for k in range(1, top + 1):
        vecs = []
        for l, gens in spaces.items():
            if 1 <= l <= k:
                for g in gens:
                    for n in elems[k - l]:
                        p = g * n
                        if p:
                            vecs.append(model.coordinates(p, k))
        s = Subspace.span(vecs, len(model.basis(k)))
        comps[k] = s
        elems[k] = [model.element(v, k) for v in s.basis]
    return comps


def intrinsic_invariants(m: MinimalModel, up_to_degree: Optional[int] = None) -> InvariantTable:
    """Invariants computed from the chains ``V^i_j``, ``W^i_j`` and subalgebras ``N^i_j`` alone."""
    model = m.model
    top = m.degree if up_to_degree is None else up_to_degree
    settled = {}  # degree l -> basis Elements of the stable V^l
    out = {}
    for i in range(1, top + 1):
        d = model.differential_matrix(i)
        lower = _subalgebra(model, settled, i + 1)
        v_space = kernel(d)
        w_space = v_space.intersection(lower[i])
        out[(i, 0)] = v_space.dim - w_space.dim
        j = 0
        while True:
            spaces = dict(settled)
            spaces[i] = [model.element(b, i) for b in v_space.basis]
            n = _subalgebra(model, spaces, i + 1)
            v_next = preimage_subspace(d, n[i + 1])
            w_next = v_next.intersection(n[i])
            j += 1
            out[(i, j)] = v_next.dim - w_next.dim
            if v_next == v_space:
                break
            v_space = v_next
        settled[i] = [model.element(b, i) for b in v_space.basis]
    return InvariantTable.from_dict(out)
