"""Reading and writing presentation files.

A presentation file looks like::

    # the cohomology of S^2 v S^3
    generators: e2:2 e3:3
    differential:
      e3 = 0
    relations: e2^2, e2*e3

Section headers start in column one.  Entries of ``differential`` and
``relations`` go on the header line (comma separated) or on indented lines
below it.  Generators missing from ``differential`` have zero differential.
Expressions use rational coefficients (``-3``, ``1/2``), generator names,
``*``, ``^`` with a positive integer exponent, and ``+``/``-``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import Element, GeneratorTable
from .dga import DGA

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[0-9]+")
_SECTIONS = ("generators", "differential", "relations")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = "line %d, column %d: " % (line, column) if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


class _Expr:
    """Recursive-descent parser for one expression; ``col0`` is its 1-based column in the file."""

    def __init__(self, text: str, table: GeneratorTable, line: int, col0: int):
        self.text = text
        self.table = table
        self.line = line
        self.col0 = col0
        self.pos = 0

    def error(self, msg: str, pos: Optional[int] = None):
        p = self.pos if pos is None else pos
        return ParseError(msg, self.line, self.col0 + p)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def parse(self) -> Element:
        if not self.peek():
            raise self.error("empty expression")
        out = Element.zero(self.table)
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        out = out + self.term() * sign
        while self.peek():
            c = self.peek()
            if c not in "+-":
                raise self.error("unexpected %r" % c)
            self.pos += 1
            t = self.term()
            out = out + t if c == "+" else out - t
        return out

    def term(self) -> Element:
        out = self.factor()
        while self.peek() == "*":
            self.pos += 1
            out = out * self.factor()
        return out

    def factor(self) -> Element:
        c = self.peek()
        if c.isdigit():
            num = self.integer()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                start = self.pos
                den = self.integer()
                if den == 0:
                    raise self.error("zero denominator", start)
            return Element.one(self.table) * Fraction(num, den)
        m = _NAME.match(self.text, self.pos)
        if not m:
            raise self.error("expected a coefficient or a generator name" if c else "unexpected end of expression")
        name = m.group()
        if name not in self.table.index:
            raise self.error("unknown generator %r" % name)
        self.pos = m.end()
        g = Element.generator(self.table, name)
        if self.peek() == "^":
            self.pos += 1
            start = self.pos
            e = self.integer()
            if e < 1:
                raise self.error("exponent must be a positive integer", start)
            g = g ** e
        return g


def parse_expression(text: str, table: GeneratorTable, line: int = 0, column: int = 1) -> Element:
    return _Expr(text, table, line, column).parse()


@dataclass
class InputDocument:
    generators: tuple  # ((name, degree), ...)
    differential: dict = field(default_factory=dict)  # name -> canonical expression, nonzero only
    relations: tuple = ()  # canonical expressions

    def table(self) -> GeneratorTable:
        return GeneratorTable(tuple(n for n, _ in self.generators), tuple(d for _, d in self.generators))

    def elements(self):
        table = self.table()
        diffs = {n: parse_expression(e, table) for n, e in self.differential.items()}
        rels = [parse_expression(e, table) for e in self.relations]
        return table, diffs, rels

    def to_dga(self, degree_bound: Optional[int] = None) -> DGA:
        table, diffs, rels = self.elements()
        return DGA.from_presentation(table, diffs, rels, degree_bound)

    def render(self) -> str:
        lines = ["generators: " + " ".join("%s:%d" % g for g in self.generators)]
        if self.differential:
            lines.append("differential:")
            lines.extend("  %s = %s" % (n, e) for n, e in self.differential.items())
        if self.relations:
            lines.append("relations:")
            lines.extend("  %s" % r for r in self.relations)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dga(cls, a: DGA) -> "InputDocument":
        t = a.table
        diff = {n: str(d) for n, d in zip(t.names, a.generator_differentials) if d}
        return cls(tuple(zip(t.names, t.degrees)), diff, tuple(str(r) for r in a.algebra.relations))


def _split(text: str, col: int):
    """Comma-separated pieces with their 1-based columns."""
    pos = 0
    for piece in text.split(","):
        stripped = piece.strip()
        if stripped:
            yield stripped, col + pos + (len(piece) - len(piece.lstrip()))
        pos += len(piece) + 1


def parse(text: str) -> InputDocument:
    """Parse a presentation file; raises :class:`ParseError` with line and column."""
    raw = {s: [] for s in _SECTIONS}  # section -> [(lineno, col, text)]
    seen = set()
    section = None
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        if not body[0].isspace():
            head, sep, rest = body.partition(":")
            head = head.strip()
            if not sep or head not in _SECTIONS:
                raise ParseError("expected one of %s followed by ':'" % ", ".join(_SECTIONS), lineno, 1)
            if head in seen:
                raise ParseError("section %r appears twice" % head, lineno, 1)
            seen.add(head)
            section = head
            if rest.strip():
                raw[section].append((lineno, len(head) + 2, rest))
        else:
            if section is None:
                raise ParseError("indented line outside a section", lineno, 1)
            raw[section].append((lineno, 1, body))

    gens = []
    names = set()
    for lineno, col, rest in raw["generators"]:
        for m in re.finditer(r"\S+", rest):
            tok = m.group()
            c = col + m.start()
            name, sep, deg = tok.partition(":")
            if not sep or not _NAME.fullmatch(name) or not re.fullmatch(r"-?[0-9]+", deg):
                raise ParseError("expected name:degree, got %r" % tok, lineno, c)
            d = int(deg)
            if d < 1:
                raise ParseError("generator %s has degree %d; all degrees must be >= 1 (connected algebra)"
                                 % (name, d), lineno, c)
            if name in names:
                raise ParseError("duplicate generator %r" % name, lineno, c)
            names.add(name)
            gens.append((name, d))
    if not gens:
        raise ParseError("no generators given", 1 if not raw["generators"] else raw["generators"][0][0], 1)
    table = GeneratorTable(tuple(n for n, _ in gens), tuple(d for _, d in gens))

    diffs = {}
    for lineno, col, rest in raw["differential"]:
        for piece, c in _split(rest, col):
            name, sep, expr = piece.partition("=")
            name = name.strip()
            if not sep:
                raise ParseError("expected 'name = expression'", lineno, c)
            if name not in table.index:
                raise ParseError("differential of unknown generator %r" % name, lineno, c)
            if name in diffs:
                raise ParseError("differential of %r given twice" % name, lineno, c)
            ecol = c + piece.index("=") + 1 + len(expr) - len(expr.lstrip())
            value = parse_expression(expr.strip(), table, lineno, ecol)
            k = table.degrees[table.position(name)]
            if value and value.degrees() != {k + 1}:
                raise ParseError("d(%s) must be homogeneous of degree %d" % (name, k + 1), lineno, ecol)
            diffs[name] = value

    rels = []
    for lineno, col, rest in raw["relations"]:
        for piece, c in _split(rest, col):
            value = parse_expression(piece, table, lineno, c)
            if value.is_zero():
                raise ParseError("relation %r is zero" % piece, lineno, c)
            if not value.is_homogeneous():
                raise ParseError("relation %r is not homogeneous" % piece, lineno, c)
            rels.append(value)

    differential = {n: str(diffs[n]) for n in table.names if n in diffs and diffs[n]}
    return InputDocument(tuple(gens), differential, tuple(str(r) for r in rels))
