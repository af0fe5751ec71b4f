import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from rbalanced.geometry import PointConfiguration
from rbalanced.verify import sample_configuration

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def square():
    return PointConfiguration.build([[0, 0], [1, 0], [1, 1], [0, 1]], ["1/2", "1/2"])


def triangle():
    return PointConfiguration.build([[0, 0], [1, 0], [0, 1]], ["1/3", "1/3"])


def cross_polytope(d):
    pts = []
    for i in range(d):
        for s in (1, -1):
            pts.append([s if j == i else 0 for j in range(d)])
    return PointConfiguration.build(pts, [0] * d)


def collinear():
    return PointConfiguration.build([[-1], [0], [1]], [0])


@pytest.fixture
def sq():
    return square()


@pytest.fixture
def tri():
    return triangle()


@pytest.fixture
def cross3():
    return cross_polytope(3)


@pytest.fixture
def line3():
    return collinear()


@st.composite
def configurations(draw, m_min=2, m_max=7, d_min=1, d_max=3, interior=None):
    """Small integer configurations; r a convex combination of the points.

    ``interior=True`` forces positive weights, ``False`` zeroes some, ``None`` mixes.
    """
    m = draw(st.integers(m_min, m_max))
    d = draw(st.integers(d_min, d_max))
    pts = draw(st.lists(st.lists(st.integers(-3, 3), min_size=d, max_size=d), min_size=m, max_size=m))
    lo = 1 if interior else 0
    w = draw(st.lists(st.integers(lo, 4), min_size=m, max_size=m))
    if interior is False and all(w):
        w[0] = 0
    if not any(w):
        w[0] = 1
    total = sum(w)
    r = [Fraction(sum(w[i] * pts[i][j] for i in range(m)), total) for j in range(d)]
    return PointConfiguration.build(pts, r)


def seeded_configurations(seed, count, m_range=(4, 8), d_range=(2, 4)):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        m = rng.randint(*m_range)
        d = rng.randint(*d_range)
        out.append(sample_configuration(rng, m, d))
    return out
