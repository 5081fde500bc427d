"""Free graded-commutative algebras over Q.

Monomials are exponent tuples parallel to a :class:`GeneratorTable`; the
exponent of an odd generator is 0 or 1.  A monomial is always read in table
order, so multiplying two of them means merging the factor lists and
counting the odd/odd transpositions (the Koszul sign).

The monomial order compares weighted degree first and then the exponent
tuples lexicographically, earlier generators being more significant.  Bases
and printed sums list monomials from largest to smallest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .linalg import ZERO


class UnknownGenerator(KeyError):
    pass


@dataclass(frozen=True)
class GeneratorTable:
    names: tuple
    degrees: tuple
    odd: tuple = field(init=False, repr=False, compare=False)
    index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        degrees = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "degrees", degrees)
        if len(names) != len(degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        for n, d in zip(names, degrees):
            if d < 1:
                raise ValueError("generator %s has degree %d; generators need degree >= 1" % (n, d))
        object.__setattr__(self, "odd", tuple(d % 2 == 1 for d in degrees))
        object.__setattr__(self, "index", {n: i for i, n in enumerate(names)})

    def __len__(self):
        return len(self.names)

    def __hash__(self):
        return hash((self.names, self.degrees))

    def position(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def extend(self, names: Sequence[str], degrees: Sequence[int]) -> "GeneratorTable":
        return GeneratorTable(self.names + tuple(names), self.degrees + tuple(degrees))

    def is_prefix_of(self, other: "GeneratorTable") -> bool:
        n = len(self)
        return other.names[:n] == self.names and other.degrees[:n] == self.degrees

    def unit(self) -> tuple:
        return (0,) * len(self.names)

    def generator_monomial(self, i: int) -> tuple:
        return tuple(1 if j == i else 0 for j in range(len(self.names)))


def monomial_degree(table: GeneratorTable, m: Sequence[int]) -> int:
    return sum(e * d for e, d in zip(m, table.degrees))


def order_key(table: GeneratorTable, m: tuple) -> tuple:
    return (monomial_degree(table, m), m)


def monomial_product(table: GeneratorTable, a: tuple, b: tuple):
    """``(sign, monomial)`` for the product ``a*b``, or None if it vanishes."""
    odd = table.odd
    parity = 0
    odd_after = 0  # odd factors of a with index greater than the current one
    for j in range(len(a) - 1, -1, -1):
        if odd[j]:
            if b[j]:
                if a[j]:
                    return None
                parity ^= odd_after & 1
            if a[j]:
                odd_after += 1
    return (-1 if parity else 1), tuple(x + y for x, y in zip(a, b))


def normal_order(table: GeneratorTable, word: Iterable):
    """Sort a word of ``(generator, power)`` factors into table order.

    Returns ``(sign, monomial)`` or None when an odd generator occurs twice.
    Generators may be given by name or by position.
    """
    factors = []
    for g, p in word:
        i = table.position(g) if isinstance(g, str) else int(g)
        if not 0 <= i < len(table):
            raise UnknownGenerator(g)
        if p < 0:
            raise ValueError("negative power")
        if p == 0:
            continue
        if table.odd[i] and p > 1:
            return None
        factors.append((i, p))
    exps = [0] * len(table)
    inversions = 0
    for pos, (i, p) in enumerate(factors):
        if table.odd[i]:
            if exps[i]:
                return None
            inversions += sum(1 for j, _ in factors[:pos] if j > i and table.odd[j])
        exps[i] += p
    return (-1 if inversions % 2 else 1), tuple(exps)


@lru_cache(maxsize=None)
def homogeneous_monomials(table: GeneratorTable, k: int) -> tuple:
    """All monomials of weighted degree ``k``, largest first."""
    n = len(table)
    out = []

    def rec(i, remaining, acc):
        if i == n:
            if remaining == 0:
                out.append(tuple(acc))
            return
        d = table.degrees[i]
        top = remaining // d
        if table.odd[i]:
            top = min(top, 1)
        for e in range(top, -1, -1):
            acc.append(e)
            rec(i + 1, remaining - e * d, acc)
            acc.pop()

    if k < 0:
        return ()
    rec(0, k, [])
    # lexicographic descent with a fixed degree is already the monomial order
    return tuple(out)


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def format_monomial(table: GeneratorTable, m: tuple) -> str:
    parts = []
    for name, e in zip(table.names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append("%s^%d" % (name, e))
    return "*".join(parts)


class Element:
    """A rational combination of monomials over a fixed generator table.

    Instances are treated as immutable; ``terms`` never holds zero coefficients.
    """

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: GeneratorTable, terms: Optional[dict] = None):
        self.table = table
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, table: GeneratorTable) -> "Element":
        return cls(table)

    @classmethod
    def one(cls, table: GeneratorTable) -> "Element":
        return cls(table, {table.unit(): 1})

    @classmethod
    def monomial(cls, table: GeneratorTable, m: tuple, coeff=1) -> "Element":
        return cls(table, {tuple(m): coeff})

    @classmethod
    def generator(cls, table: GeneratorTable, name) -> "Element":
        i = table.position(name) if isinstance(name, str) else name
        return cls(table, {table.generator_monomial(i): 1})

    @classmethod
    def from_vector(cls, table: GeneratorTable, basis: Sequence[tuple], coeffs) -> "Element":
        return cls(table, {m: c for m, c in zip(basis, coeffs) if c})

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set:
        return {monomial_degree(self.table, m) for m in self.terms}

    @property
    def degree(self) -> Optional[int]:
        """Degree if homogeneous and nonzero, else None."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_components(self) -> dict:
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(monomial_degree(self.table, m), {})[m] = c
        return {d: Element(self.table, t) for d, t in parts.items()}

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda mc: order_key(self.table, mc[0]), reverse=True)

    def leading_monomial(self) -> tuple:
        return max(self.terms, key=lambda m: order_key(self.table, m))

    def coefficient(self, m: tuple) -> Fraction:
        return self.terms.get(m, ZERO)

    def vector(self, basis: Sequence[tuple]) -> tuple:
        return tuple(self.terms.get(m, ZERO) for m in basis)

    def lift_to(self, table: GeneratorTable) -> "Element":
        """Re-express over a table that extends this one."""
        if table == self.table:
            return self
        if not self.table.is_prefix_of(table):
            raise ValueError("target table does not extend the source table")
        pad = (0,) * (len(table) - len(self.table))
        return Element(table, {m + pad: c for m, c in self.terms.items()})

    # arithmetic
    def _check(self, other: "Element"):
        if self.table != other.table:
            raise ValueError("elements over different generator tables")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Element.one(self.table) * other
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, ZERO) + c
        return Element(self.table, t)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Element(self.table, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        t = {}
        table = self.table
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                p = monomial_product(table, a, b)
                if p is None:
                    continue
                s, m = p
                t[m] = t.get(m, ZERO) + s * ca * cb
        return Element(table, t)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Element.one(self.table)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == Element.one(self.table) * other
        if not isinstance(other, Element):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.table, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            mono = format_monomial(self.table, m)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = _fmt_coeff(a)
            elif a == 1:
                body = mono
            else:
                body = "%s*%s" % (_fmt_coeff(a), mono)
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return "Element(%s)" % self


def multiply(a: Element, b: Element) -> Element:
    return a * b


def graded_commutator_check(a: Element, b: Element) -> bool:
    """Whether ``a*b == (-1)^(|a||b|) b*a`` for homogeneous ``a`` and ``b``."""
    if not (a.is_homogeneous() and b.is_homogeneous()):
        raise ValueError("graded commutator check needs homogeneous elements")
    if a.is_zero() or b.is_zero():
        return True
    sign = -1 if (a.degree * b.degree) % 2 else 1
    return a * b == (b * a) * sign
