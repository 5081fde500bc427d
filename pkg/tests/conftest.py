import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sullivan.algebra import Element, GeneratorTable, homogeneous_monomials
from sullivan.dga import DGA
from sullivan.presentation import parse

INPUTS = Path(__file__).resolve().parent.parent / "inputs"

settings.register_profile("default", deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def load(name: str, degree_bound=None) -> DGA:
    return parse((INPUTS / name).read_text()).to_dga(degree_bound)


@pytest.fixture
def worked():
    return load("worked_example.cdga")


@pytest.fixture
def wedge():
    return load("wedge_s2_s3.cdga", 8)


@pytest.fixture
def g514():
    return load("g5_14.cdga")


@pytest.fixture
def g535():
    return load("g5_35.cdga")


# --- strategies ---------------------------------------------------------------

coefficients = st.integers(-3, 3).map(Fraction)


@st.composite
def tables(draw, max_generators=4, max_degree=3):
    degrees = sorted(draw(st.lists(st.integers(1, max_degree), min_size=1, max_size=max_generators)))
    return GeneratorTable(tuple("g%d" % i for i in range(len(degrees))), tuple(degrees))


@st.composite
def homogeneous(draw, table, k):
    mons = homogeneous_monomials(table, k)
    if not mons:
        return Element.zero(table)
    cs = draw(st.lists(coefficients, min_size=len(mons), max_size=len(mons)))
    return Element.from_vector(table, mons, cs)


@st.composite
def table_and_elements(draw, count=2, max_degree=5):
    t = draw(tables())
    out = []
    for _ in range(count):
        k = draw(st.integers(0, max_degree))
        out.append(draw(homogeneous(t, k)))
    return t, out


def _random_cocycle(draw, prefix: DGA, k: int):
    z = prefix.cocycles(k)
    if not z.dim:
        return Element.zero(prefix.table)
    cs = draw(st.lists(coefficients, min_size=z.dim, max_size=z.dim))
    return prefix.element(z.element(cs), k)


@st.composite
def presentations(draw, with_relations=True):
    """Small valid CDGA presentations.

    Each generator gets a random cocycle of the earlier generators as its
    differential, so ``d^2 = 0``; relations are random cocycles, so the
    ideal is closed under ``d``.
    """
    t = draw(tables())
    diffs = []
    for p, k in enumerate(t.degrees):
        prefix = GeneratorTable(t.names[:p], t.degrees[:p])
        pre = DGA.from_presentation(prefix, [d.lift_to(prefix) for d in diffs]) if p else None
        dg = _random_cocycle(draw, pre, k + 1) if pre is not None else Element.zero(prefix)
        diffs.append(dg)
    diffs = [d.lift_to(t) for d in diffs]
    relations = []
    if with_relations and draw(st.booleans()):
        free = DGA.from_presentation(t, diffs)
        for _ in range(draw(st.integers(1, 2))):
            k = draw(st.integers(2, 4))
            r = _random_cocycle(draw, free, k)
            if r:
                relations.append(r)
    return DGA.from_presentation(t, diffs, relations)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for key in sorted(results):
            terminalreporter.write_line(results[key])
