"""Formality tests: compare the model of A with the model of its cohomology algebra.

Equal numerical invariants are necessary for ``i``-formality; equal
invariants together with the psi-condition are sufficient.  When the
invariants agree and the psi-condition fails nothing is known, and the
verdict says so.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .algebra import Element, GeneratorTable
from .dga import DGA
from .linalg import Matrix, Subspace, image, kernel, quotient_basis
from .model import InvariantTable, IterationLimitExceeded, MinimalModel, minimal_model


@dataclass(frozen=True)
class CohomologyPresentation:
    """Generators, relations and witness cocycles presenting ``H*(source)`` up to ``degree``."""

    table: GeneratorTable
    relations: tuple  # Elements over ``table``
    witnesses: tuple  # cocycles of the source, one per generator
    degree: int

    def to_dga(self, degree_bound: Optional[int] = None) -> DGA:
        """The presentation as a DGA with zero differential."""
        bound = self.degree + 1 if degree_bound is None else degree_bound
        return DGA.from_presentation(self.table, {}, self.relations, degree_bound=bound)

    def render(self) -> str:
        lines = ["generators: " + " ".join("%s:%d" % nd for nd in zip(self.table.names, self.table.degrees))]
        if self.relations:
            lines.append("relations:")
            lines.extend("  %s" % r for r in self.relations)
        return "\n".join(lines)


def _evaluate(table: GeneratorTable, witnesses, a: DGA, m: tuple) -> Element:
    out = Element.one(a.table)
    for e, w in zip(m, witnesses):
        for _ in range(e):
            out = out * w
    return a.algebra.normal_form(out)


def cohomology_algebra(a: DGA, n: int) -> CohomologyPresentation:
    """Present ``H*(a)`` in degrees ``<= n`` degree by degree.

    In degree ``k`` the products of the generators found so far are mapped
    to ``H^k``; the canonical kernel basis gives the new relations and the
    canonical complement of the image gives the new generators ``x0, x1, ...``.
    """
    a = a.with_degree_bound(n + 1)
    names, degrees, witnesses, relations = [], [], [], []
    for k in range(1, n + 1):
        table = GeneratorTable(tuple(names), tuple(degrees))
        quotient = CohomologyPresentation(table, tuple(r.lift_to(table) for r in relations),
                                          tuple(witnesses), k).to_dga(k).algebra
        ha = a.cohomology(k)
        basis = quotient.basis(k)
        cols = [a.class_coordinates(_evaluate(table, witnesses, a, m), ha, k) for m in basis]
        mat = Matrix.from_columns(cols, ha.dimension)
        for w in kernel(mat).basis:
            relations.append(quotient.element(w, k))
        for u in quotient_basis(Subspace.full(ha.dimension), image(mat)):
            rep = Element.zero(a.table)
            for c, r in zip(u, ha.representatives):
                if c:
                    rep = rep + r * c
            names.append("x%d" % len(names))
            degrees.append(k)
            witnesses.append(rep)
    table = GeneratorTable(tuple(names), tuple(degrees))
    return CohomologyPresentation(table, tuple(r.lift_to(table) for r in relations), tuple(witnesses), n)


# --- psi ---------------------------------------------------------------------------


def _kills_y(m: MinimalModel, x: Element) -> Element:
    ys = [i for i, g in enumerate(m.generators) if g.kind == "y"]
    x = x.lift_to(m.table)
    return Element(m.table, {mono: c for mono, c in x.terms.items() if not any(mono[i] for i in ys)})


def psi_map(m: MinimalModel):
    """The algebra map ``M -> H*(M)`` sending x-generators to their classes and y-generators to 0.

    Returns a function of homogeneous elements giving class coordinates in
    the canonical cohomology basis of the model.
    """
    model = m.model

    def psi(x: Element, k: Optional[int] = None) -> tuple:
        k = x.degree if k is None else k
        if k is None:
            raise ValueError("degree needed for the zero element")
        return model.class_coordinates(_kills_y(m, x), k=k)

    return psi


def psi_condition(m: MinimalModel, i: int) -> tuple:
    """``(holds, failures)`` for the y-differentials landing in degrees ``<= i+1``."""
    psi = psi_map(m)
    failures = []
    for g, dg in zip(m.generators, m.model.generator_differentials):
        if g.kind != "y" or g.degree + 1 > i + 1:
            continue
        coords = psi(dg, g.degree + 1)
        if any(coords):
            failures.append("psi(d(%s)) = psi(%s) != 0" % (g.name, dg))
    return not failures, failures


# --- verdict -------------------------------------------------------------------------


class Outcome(enum.Enum):
    FORMAL = "formal"
    NOT_FORMAL = "not-formal"
    INCONCLUSIVE = "inconclusive"

    def render(self) -> str:
        return {Outcome.FORMAL: "True", Outcome.NOT_FORMAL: "False",
                Outcome.INCONCLUSIVE: "inconclusive (criteria disagree)"}[self]


@dataclass(frozen=True)
class FormalityVerdict:
    outcome: Outcome
    degree: int
    model_invariants: InvariantTable
    cohomology_invariants: InvariantTable
    mismatch: Optional[tuple] = None  # (i, j, v for M_A, v for M_H or None if unknown)
    psi_failures: tuple = ()
    cohomology_limit: Optional[str] = None  # iteration-limit message from the M_H construction

    def __bool__(self):
        return self.outcome is Outcome.FORMAL

    def render(self) -> str:
        lines = [self.outcome.render(),
                 "invariants of M_A: %s" % self.model_invariants,
                 "invariants of M_H: %s%s" % (self.cohomology_invariants,
                                              " (partial)" if self.cohomology_limit else "")]
        if self.cohomology_limit:
            lines.append("M_H: %s" % self.cohomology_limit)
        if self.mismatch:
            i, j, va, vh = self.mismatch
            lines.append("first mismatch: v^%d_%d is %d for M_A and %s for M_H"
                         % (i, j, va, "> 0" if vh is None else vh))
        for f in self.psi_failures:
            lines.append("psi-condition fails: %s" % f)
        return "\n".join(lines)


def _first_mismatch(ta: InvariantTable, th: InvariantTable, i: int, limit: Optional[IterationLimitExceeded]):
    da, dh = ta.truncated(i).as_dict(), th.truncated(i).as_dict()
    keys = set(da) | set(dh)
    if limit is not None:
        gd, cap = limit.generator_degree, limit.max_iterations
        # only stages M_H actually completed are comparable
        keys = {k for k in keys if k[0] < gd or (k[0] == gd and k[1] <= cap)}
        keys.add((gd, cap + 1))
    for key in sorted(keys):
        va = da.get(key, 0)
        if limit is not None and key == (limit.generator_degree, limit.max_iterations + 1):
            if va == 0:
                return key + (va, None)
            continue
        vh = dh.get(key, 0)
        if va != vh:
            return key + (va, vh)
    return None


def is_formal(a: DGA, i: int, max_iterations: int = 3) -> FormalityVerdict:
    """Three-valued ``i``-formality verdict.

    An iteration-limit failure while modelling the cohomology algebra is
    evidence of non-formality: that stage of ``M_H`` has more generators
    than the corresponding, completed, stage of ``M_A``.
    """
    ma = minimal_model(a, i, max_iterations)
    h = cohomology_algebra(ma.model, i + 1).to_dga(i + 2)
    limit = None
    try:
        th = minimal_model(h, i, max_iterations).invariants
    except IterationLimitExceeded as exc:
        limit = exc
        th = exc.partial.invariants
    ta = ma.invariants
    mismatch = _first_mismatch(ta, th, i, limit)
    msg = str(limit) if limit is not None else None
    if mismatch is not None:
        return FormalityVerdict(Outcome.NOT_FORMAL, i, ta, th, mismatch, (), msg)
    holds, failures = psi_condition(ma, i)
    outcome = Outcome.FORMAL if holds else Outcome.INCONCLUSIVE
    return FormalityVerdict(outcome, i, ta, th, None, tuple(failures), msg)
