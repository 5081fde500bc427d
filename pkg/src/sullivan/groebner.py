"""Gröbner bases for homogeneous ideals of a free graded-commutative algebra.

Left and right ideals coincide up to sign in a graded-commutative ring, so
everything is done with left multiples.  Besides the usual S-pairs, a
generator ``g`` whose leading monomial contains an odd variable ``x`` gives
the extra pair ``x*g``: the product kills the leading term and exposes a
lower one.  Odd squares are never stored, the monomial arithmetic already
sends them to zero.

Completion is truncated at a degree bound; the basis is exact for every
reduction in degrees up to that bound.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from typing import Iterable, Optional, Sequence

from .algebra import (
    Element,
    GeneratorTable,
    homogeneous_monomials,
    monomial_degree,
    monomial_product,
    order_key,
)
from .linalg import ZERO


class DegreeBoundError(ValueError):
    """Raised when a query reaches past the degree a quotient was built for."""


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _monic(f: Element) -> Element:
    lc = f.terms[f.leading_monomial()]
    return f * (1 / lc) if lc != 1 else f


def reduce(f: Element, basis: Sequence[Element]) -> Element:
    """Full reduction of ``f`` modulo ``basis`` (monic elements)."""
    if not basis or f.is_zero():
        return f
    table = f.table
    leads = [(g.leading_monomial(), g) for g in basis]
    terms = dict(f.terms)
    out = {}
    while terms:
        m = max(terms, key=lambda t: order_key(table, t))
        c = terms.pop(m)
        for lm, g in leads:
            if _divides(lm, m):
                cof = tuple(x - y for x, y in zip(m, lm))
                sign, prod = monomial_product(table, cof, lm)
                # prod == m; cof*g has leading term sign*m
                factor = c * sign
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    p = monomial_product(table, cof, gm)
                    if p is None:
                        continue
                    s, pm = p
                    v = terms.get(pm, ZERO) - factor * s * gc
                    if v:
                        terms[pm] = v
                    else:
                        terms.pop(pm, None)
                break
        else:
            out[m] = c
    return Element(table, out)


@dataclass(frozen=True)
class GroebnerBasis:
    table: GeneratorTable
    elements: tuple
    degree_bound: Optional[int]

    def leading_monomials(self) -> list:
        return [g.leading_monomial() for g in self.elements]

    def reduce(self, f: Element) -> Element:
        return reduce(f, self.elements)


def _check_relation(table: GeneratorTable, r: Element) -> Element:
    if r.table != table:
        raise ValueError("relation over a different generator table")
    if r.is_zero():
        raise ValueError("zero relation")
    if not r.is_homogeneous():
        raise ValueError("relation %s is not homogeneous" % r)
    return r


def groebner(table: GeneratorTable, relations: Iterable[Element], degree_bound: Optional[int]) -> GroebnerBasis:
    """Degree-truncated reduced Gröbner basis of the ideal generated by ``relations``.

    Pairs are processed lowest degree first; anything above ``degree_bound``
    is dropped.  ``degree_bound=None`` is only allowed without relations.
    """
    relations = [_check_relation(table, r) for r in relations]
    if not relations:
        return GroebnerBasis(table, (), degree_bound)
    if degree_bound is None:
        raise ValueError("a degree bound is required when there are relations")

    tick = count()
    queue = []
    for r in relations:
        if r.degree <= degree_bound:
            heapq.heappush(queue, (r.degree, next(tick), r))

    basis = []
    while queue:
        deg, _, f = heapq.heappop(queue)
        h = reduce(f, basis)
        if h.is_zero():
            continue
        h = _monic(h)
        lm = h.leading_monomial()
        for g in basis:
            glm = g.leading_monomial()
            lcm = tuple(max(x, y) for x, y in zip(lm, glm))
            d = monomial_degree(table, lcm)
            if d > degree_bound:
                continue
            u = Element.monomial(table, tuple(x - y for x, y in zip(lcm, lm)))
            v = Element.monomial(table, tuple(x - y for x, y in zip(lcm, glm)))
            uh, vg = u * h, v * g
            s = uh * (1 / uh.terms[lcm]) - vg * (1 / vg.terms[lcm])
            if not s.is_zero():
                heapq.heappush(queue, (d, next(tick), s))
        for i, e in enumerate(lm):
            if e and table.odd[i] and deg + table.degrees[i] <= degree_bound:
                s = Element.generator(table, i) * h
                if not s.is_zero():
                    heapq.heappush(queue, (deg + table.degrees[i], next(tick), s))
        basis.append(h)

    # minimalise, then inter-reduce tails
    leads = [g.leading_monomial() for g in basis]
    keep = []
    for i, g in enumerate(basis):
        if any(j != i and _divides(leads[j], leads[i]) and (leads[j] != leads[i] or j < i)
               for j in range(len(basis))):
            continue
        keep.append(g)
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        lm = g.leading_monomial()
        tail = Element(table, {m: c for m, c in g.terms.items() if m != lm})
        reduced.append(Element.monomial(table, lm, g.terms[lm]) + reduce(tail, others))
    reduced = [_monic(g) for g in reduced]
    reduced.sort(key=lambda g: order_key(table, g.leading_monomial()))
    return GroebnerBasis(table, tuple(reduced), degree_bound)


class QuotientAlgebra:
    """Free graded-commutative algebra modulo a homogeneous ideal, up to a degree bound.

    ``degree_bound=None`` means unbounded and requires an empty relation set.
    """

    def __init__(self, table: GeneratorTable, relations: Iterable[Element] = (),
                 degree_bound: Optional[int] = None):
        self.table = table
        self.relations = tuple(relations)
        self.degree_bound = degree_bound
        self.gb = groebner(table, self.relations, degree_bound)
        self._leads = self.gb.leading_monomials()
        self._bases = {}
        self._index = {}
        self._nf_cache = {}

    @property
    def is_free(self) -> bool:
        return not self.gb.elements

    def _check_degree(self, k: int):
        if self.degree_bound is not None and k > self.degree_bound:
            raise DegreeBoundError("degree %d exceeds the computed bound %d" % (k, self.degree_bound))

    def basis(self, k: int) -> tuple:
        """Normal monomials of degree ``k``, largest first."""
        self._check_degree(k)
        if k not in self._bases:
            mons = homogeneous_monomials(self.table, k)
            if self._leads:
                mons = tuple(m for m in mons if not any(_divides(l, m) for l in self._leads))
            self._bases[k] = mons
            self._index[k] = {m: i for i, m in enumerate(mons)}
        return self._bases[k]

    def dimension(self, k: int) -> int:
        return len(self.basis(k))

    def normal_form(self, x: Element) -> Element:
        if x.table != self.table:
            raise ValueError("element over a different generator table")
        for d in x.degrees():
            self._check_degree(d)
        if self.is_free:
            return x
        out = Element.zero(self.table)
        for m, c in x.terms.items():
            nf = self._nf_cache.get(m)
            if nf is None:
                nf = self.gb.reduce(Element.monomial(self.table, m))
                self._nf_cache[m] = nf
            out = out + nf * c
        return out

    def coordinates(self, x: Element, k: Optional[int] = None) -> tuple:
        """Coefficient vector of the normal form of homogeneous ``x`` in ``basis(k)``."""
        if k is None:
            k = x.degree
            if k is None:
                if x.is_zero():
                    raise ValueError("degree needed for the zero element")
                raise ValueError("element %s is not homogeneous" % x)
        nf = self.normal_form(x)
        if nf.degrees() - {k}:
            raise ValueError("element does not have degree %d" % k)
        basis = self.basis(k)
        index = self._index[k]
        v = [ZERO] * len(basis)
        for m, c in nf.terms.items():
            v[index[m]] = c
        return tuple(v)

    def element(self, coords: Sequence[Fraction], k: int) -> Element:
        return Element.from_vector(self.table, self.basis(k), coords)

    def __repr__(self):
        rels = ", ".join(str(r) for r in self.relations)
        return "QuotientAlgebra(%s, relations=[%s])" % (
            ", ".join("%s:%d" % nd for nd in zip(self.table.names, self.table.degrees)), rels)


def quotient_degree_basis(q: QuotientAlgebra, k: int) -> tuple:
    return q.basis(k)


def normal_form(x: Element, q: QuotientAlgebra) -> Element:
    return q.normal_form(x)
