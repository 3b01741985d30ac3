from fractions import Fraction

import pytest

from dualdepth.family import Family
from dualdepth.geometry import ConvexBody

TRIANGLE = ((0, 0), (4, 0), (0, 3))


def edges(vertices, prefix="E"):
    n = len(vertices)
    return tuple(ConvexBody.polygon(f"{prefix}{i}", [vertices[i], vertices[(i + 1) % n]]) for i in range(n))


def lines(*coeffs):
    """Lines a*x + b*y = c from (a, b, c) triples."""
    return Family(2, tuple(ConvexBody.hyperplane(f"L{i}", (a, b), c) for i, (a, b, c) in enumerate(coeffs)))


@pytest.fixture
def triangle_edges():
    return Family(2, edges(TRIANGLE))


@pytest.fixture
def nested_triangles():
    inner = edges(((1, 1), (5, 1), (1, 4)), "I")
    outer = edges(((-2, -2), (10, -2), (-2, 9)), "O")
    return Family(2, inner + outer)


CENTROID = (Fraction(4, 3), Fraction(1))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
