from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dualdepth import linalg
from dualdepth.generators import random_affine
from dualdepth.geometry import (
    AffineMap, ConvexBody, DimensionError, Flat, HalfSpace, ProjectionFrame, UnboundedBodyError,
    apply_affine, as_rational, bounding_box, clip_to_box, closest_point, contains, is_bounded,
    is_empty, lp_feasible, parse_point, project, project_point, support_halfspace, vertices,
)

F = Fraction
SQUARE = ConvexBody.box("S", (0, 0), (1, 1))


def test_rational_parsing():
    assert as_rational("3/4") == F(3, 4)
    assert as_rational("0.125") == F(1, 8)
    assert parse_point("1/2, -3") == (F(1, 2), F(-3))
    with pytest.raises((TypeError, ValueError)):
        as_rational(0.5)
    with pytest.raises(ValueError):
        as_rational("x/2")


def test_lp_feasible_examples():
    tri = [HalfSpace((-1, 0), 0), HalfSpace((0, -1), 0), HalfSpace((1, 1), 1)]
    p = lp_feasible(tri)
    assert p is not None and all(h.contains(p) for h in tri)
    assert lp_feasible([HalfSpace((1,), 0), HalfSpace((-1,), -1)]) is None
    eqs = [HalfSpace((1, 0), 0), HalfSpace((0, 1), 0), HalfSpace((1, 1), 0)]
    assert lp_feasible([], eqs, dim=2) == (0, 0)


def test_contains_examples():
    assert contains(SQUARE, (F(1, 2), F(1, 2)))
    assert not contains(SQUARE, (2, 0))
    line = ConvexBody.hyperplane("L", (1, 1), 1)
    assert contains(line, (F(1, 2), F(1, 2)))
    with pytest.raises(DimensionError):
        contains(SQUARE, (1, 2, 3))


def test_closest_point_examples():
    assert closest_point(SQUARE, (2, F(1, 2))) == (1, F(1, 2))
    assert closest_point(SQUARE, (F(1, 4), F(1, 4))) == (F(1, 4), F(1, 4))
    assert closest_point(SQUARE, (2, 2)) == (1, 1)
    with pytest.raises(UnboundedBodyError):
        closest_point(ConvexBody.hyperplane("L", (1, 0), 0), (1, 1))


def test_support_halfspace_examples():
    h = support_halfspace(ConvexBody.box("T", (1, 0), (2, 1)), (0, 0))
    # the half-space x1 >= 1 in some positive scaling
    assert h.contains((1, 5)) and not h.contains((F(99, 100), 0))
    assert h.normal[1] == 0 and h.offset / h.normal[0] == 1
    h1 = support_halfspace(ConvexBody.box("I", (2,), (3,)), (0,))
    assert h1.contains((2,)) and not h1.contains((F(199, 100),))
    with pytest.raises(ValueError):
        support_halfspace(SQUARE, (F(1, 2), F(1, 2)))


def test_projection_examples():
    sq = project(SQUARE, Flat((0, 0), ((0, 1),)))
    assert vertices(sq) == [(0,), (1,)]
    seg = ConvexBody.polygon("G", [(0, 0), (1, 1)])
    pt = project(seg, Flat((0, 0), ((1, 1),)))
    assert vertices(pt) == [(0,)]
    tri = ConvexBody.polygon("T", [(0, 0), (2, 0), (0, 2)])
    frame = ProjectionFrame.along([(1, -1)], 2)
    image = project(tri, frame)
    # fiber oracle: u is in the image iff some point of the fiber lies in the triangle
    for k in range(-12, 13):
        u = F(k, 4)
        fiber = lp_feasible(list(tri.halfspaces), [HalfSpace(frame.inverse[0], u)], dim=2)
        assert contains(image, (u,)) == (fiber is not None)


def test_clip_to_box_examples():
    seg = clip_to_box(ConvexBody.hyperplane("L", (1, 0), 0), (-10, -10), (10, 10))
    assert vertices(seg) == [(0, -10), (0, 10)]
    assert vertices(clip_to_box(SQUARE, (-100, -100), (100, 100))) == vertices(SQUARE)
    half = ConvexBody("H", (HalfSpace((-1, 0), 0),), 2)
    assert vertices(clip_to_box(half, (-1, -1), (1, 1))) == [(0, -1), (0, 1), (1, -1), (1, 1)]


def test_boundedness_and_emptiness():
    assert is_bounded(SQUARE)
    assert not is_bounded(ConvexBody.hyperplane("L", (1, 2), 0))
    assert is_empty(ConvexBody("E", (HalfSpace((1, 0), 0), HalfSpace((-1, 0), -1)), 2))
    assert bounding_box([(0, 0), (2, 4)]) == ((-1, -2), (3, 6))


def test_affine_examples():
    ident = AffineMap.identity(2)
    assert apply_affine(ident, SQUARE).halfspaces == SQUARE.halfspaces
    double = AffineMap(((2, 0), (0, 2)), (0, 0))
    img = apply_affine(double, SQUARE)
    assert contains(img, double((F(1, 2), F(1, 2)))) == contains(SQUARE, (F(1, 2), F(1, 2)))
    with pytest.raises(ValueError):
        apply_affine(AffineMap(((1, 1), (1, 1)), (0, 0)), SQUARE)


coord = st.fractions(min_value=-4, max_value=4, max_denominator=6)
point2 = st.tuples(coord, coord)


@st.composite
def polygons(draw):
    pts = draw(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=3, max_size=3, unique=True))
    (x0, y0), (x1, y1), (x2, y2) = pts
    area = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
    if area == 0:
        pts = [(0, 0), (3, 0), (0, 2)]
    elif area < 0:
        pts[1], pts[2] = pts[2], pts[1]
    return ConvexBody.polygon("P", pts)


@settings(max_examples=40, deadline=None)
@given(polygons(), point2)
def test_closest_point_variational_inequality(body, b):
    q = closest_point(body, b)
    assert contains(body, q)
    dq = linalg.norm2(linalg.sub(b, q))
    for y in vertices(body):
        assert dq <= linalg.norm2(linalg.sub(b, y))
        assert linalg.dot(linalg.sub(b, q), linalg.sub(y, q)) <= 0
    if not contains(body, b):
        h = support_halfspace(body, b)
        assert all(h.contains(y) for y in vertices(body)) and not h.contains(b)


@settings(max_examples=25, deadline=None)
@given(polygons(), st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(any), st.lists(coord, min_size=5, max_size=5))
def test_projection_matches_fiber_lp(body, direction, samples):
    frame = ProjectionFrame.along([direction], 2)
    image = project(body, frame)
    for u in samples:
        fiber = lp_feasible(list(body.halfspaces), [HalfSpace(frame.inverse[0], u)], dim=2)
        assert contains(image, (u,)) == (fiber is not None)


@settings(max_examples=25, deadline=None)
@given(polygons(), st.integers(0, 10 ** 6), st.lists(point2, min_size=5, max_size=20))
def test_affine_preserves_membership(body, seed, pts):
    T = random_affine(2, seed)
    img = apply_affine(T, body)
    for p in pts:
        assert contains(body, p) == contains(img, T(p))
    assert (lp_feasible(list(img.halfspaces)) is None) == is_empty(body)


def test_projected_point_coordinates_roundtrip():
    frame = ProjectionFrame.along([(1, 2)], 2)
    u = project_point((3, 1), frame)
    lifted = frame.lift(u)
    # lifted point differs from the original by a multiple of the direction
    diff = linalg.sub((3, 1), lifted)
    assert diff[0] * 2 == diff[1]
