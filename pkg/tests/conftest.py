import random
import sys
from fractions import Fraction

import pytest
import sympy
from hypothesis import settings, strategies as st

from qsets import logic

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_ints = st.integers(min_value=-3, max_value=3)


def matrices(rows=(1, 4), cols=(1, 4)):
    return st.integers(*rows).flatmap(
        lambda r: st.integers(*cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))


@st.composite
def projections(draw, dim=None):
    d = dim if dim is not None else draw(st.integers(1, 4))
    k = draw(st.integers(0, d))
    vs = draw(st.lists(st.lists(small_ints, min_size=d, max_size=d), min_size=k, max_size=k))
    return logic.span(vs, d)


@st.composite
def projection_pairs(draw, dims=(1, 4)):
    d = draw(st.integers(*dims))
    return draw(projections(d)), draw(projections(d))


@st.composite
def projection_triples(draw, dims=(1, 3)):
    d = draw(st.integers(*dims))
    return draw(projections(d)), draw(projections(d)), draw(projections(d))


def sympy_projector(p):
    """Orthogonal projector onto range(p) computed by sympy, as a Fraction matrix."""
    if p.is_zero:
        return tuple(tuple(Fraction(0) for _ in range(p.dim)) for _ in range(p.dim))
    b = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in p.basis]).T
    m = b * (b.T * b).inv() * b.T
    return tuple(tuple(Fraction(int(m[i, j].p), int(m[i, j].q)) for j in range(p.dim))
                 for i in range(p.dim))


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in sorted(results.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
