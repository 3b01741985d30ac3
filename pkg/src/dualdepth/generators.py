"""Seeded instance generators.  Every generator checks its advertised
intersection property before returning."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Sequence

from . import linalg
from .family import Family, check_pik
from .geometry import AffineMap, ConvexBody, HalfSpace, Point, as_point

MAX_ATTEMPTS = 1000


class GenerationError(RuntimeError):
    pass


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _hyperplanes_general(planes: Sequence[tuple[Point, Fraction]], d: int) -> bool:
    """Any d meet in exactly one point and no d+1 share a point."""
    for combo in combinations(planes, d):
        if linalg.solve([a for a, _ in combo], [b for _, b in combo]) is None:
            return False
    for combo in combinations(planes, d + 1):
        p = linalg.solve([a for a, _ in combo[:d]], [b for _, b in combo[:d]])
        a, b = combo[d]
        if linalg.dot(a, p) == b:
            return False
    return True


def gen_lines_general_position(n: int, d: int = 2, seed=0, coeff: int = 9) -> Family:
    """n hyperplanes in general position (lines when d = 2); Pi_d holds."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = _rng(seed)
    for _ in range(MAX_ATTEMPTS):
        planes = []
        for _ in range(n):
            a = tuple(Fraction(rng.randint(-coeff, coeff)) for _ in range(d))
            if not any(a):
                break
            planes.append((a, Fraction(rng.randint(-coeff, coeff))))
        if len(planes) < n or not _hyperplanes_general(planes, d):
            continue
        fam = Family(d, tuple(ConvexBody.hyperplane(f"L{i}", a, b) for i, (a, b) in enumerate(planes)))
        if check_pik(fam, d):
            return fam
    raise GenerationError("no general-position arrangement within the attempt cap")


def gen_concurrent_lines(n: int, point: Sequence = (0, 0)) -> Family:
    """n hyperplanes through one point, normals on the moment curve; Pi_n holds."""
    p = as_point(point)
    d = len(p)
    bodies = []
    for i in range(n):
        a = tuple(Fraction(i ** j) for j in range(d))
        bodies.append(ConvexBody.hyperplane(f"C{i}", a, linalg.dot(a, p)))
    fam = Family(d, tuple(bodies))
    if not check_pik(fam, max(n, 1)):
        raise GenerationError("concurrent hyperplanes failed to meet")
    return fam


DEFAULT_TRIANGLE = ((0, 0), (4, 0), (0, 3))


def _barycentric_rows(verts: Sequence[Point]):
    d = len(verts[0])
    m = [[v[j] for v in verts] for j in range(d)] + [[Fraction(1)] * (d + 1)]
    inv = linalg.inverse(m)
    if inv is None:
        raise ValueError("simplex vertices are affinely dependent")
    return [(tuple(row[:d]), row[d]) for row in inv]  # lambda_i(x) = w.x + c


def gen_simplex_facet_bodies(d: int = 2, thickness=Fraction(1, 10), vertices: Sequence | None = None) -> Family:
    """Facets of a simplex thickened by ``thickness`` in barycentric units.

    Body i is {|lambda_i| <= t, lambda_j >= -t for j != i}.  Pi_d always holds
    and Pi_{d+1} fails when t < 1/(d+1); t = 0 gives the bare facets.
    """
    t = Fraction(thickness)
    if vertices is None:
        if d == 2:
            vertices = DEFAULT_TRIANGLE
        else:
            vertices = [tuple(0 for _ in range(d))] + [
                tuple(d + 1 if i == j else 0 for j in range(d)) for i in range(d)]
    verts = [as_point(v) for v in vertices]
    if len(verts) != d + 1 or any(len(v) != d for v in verts):
        raise ValueError(f"need {d + 1} vertices in dimension {d}")
    rows = _barycentric_rows(verts)
    bodies = []
    for i in range(d + 1):
        w, c = rows[i]
        hs = [HalfSpace(w, t - c), HalfSpace(tuple(-v for v in w), t + c)]
        for j in range(d + 1):
            if j != i:
                wj, cj = rows[j]
                hs.append(HalfSpace(tuple(-v for v in wj), t + cj))
        bodies.append(ConvexBody(f"F{i}", tuple(hs), d))
    fam = Family(d, tuple(bodies))
    if not check_pik(fam, d):
        raise GenerationError("thickened facets failed Pi_d")
    if t < Fraction(1, d + 1) and check_pik(fam, d + 1):
        raise GenerationError("thin facets unexpectedly share a point")
    return fam


def rational_sqrt(q: Fraction) -> Fraction:
    q = Fraction(q)
    n, m = isqrt(q.numerator), isqrt(q.denominator)
    if n * n != q.numerator or m * m != q.denominator:
        raise ValueError(f"{q} is not a rational square")
    return Fraction(n, m)


def incenter(vertices: Sequence[Sequence]) -> Point:
    """Incenter of a planar triangle with rational side lengths."""
    a_, b_, c_ = (as_point(v) for v in vertices)
    la = rational_sqrt(linalg.norm2(linalg.sub(b_, c_)))
    lb = rational_sqrt(linalg.norm2(linalg.sub(a_, c_)))
    lc = rational_sqrt(linalg.norm2(linalg.sub(a_, b_)))
    s = la + lb + lc
    return tuple((la * a_[j] + lb * b_[j] + lc * c_[j]) / s for j in range(2))


# Heronian triangles with rational vertex coordinates.
HERONIAN_TRIANGLES = (
    ((0, 0), (4, 0), (0, 3)),
    ((0, 0), (14, 0), (5, 12)),
    ((0, 0), (6, 0), (3, 4)),
    ((0, 0), (8, 0), (4, 3)),
    ((0, 0), (21, 0), (5, 12)),
    ((0, 0), (12, 0), (0, 5)),
)


def rational_rotation(rng: random.Random) -> tuple[tuple[Fraction, ...], ...]:
    """Rotation by a Pythagorean angle (rational cosine and sine)."""
    u, v = rng.randint(1, 4), rng.randint(0, 4)
    h = u * u + v * v
    c, s = Fraction(u * u - v * v, h), Fraction(2 * u * v, h)
    return ((c, -s), (s, c))


def gen_heronian_triangle(seed=0) -> tuple[Point, ...]:
    """A rotated, scaled, translated Heronian triangle (incenter stays rational)."""
    rng = _rng(seed)
    tri = rng.choice(HERONIAN_TRIANGLES)
    rot = rational_rotation(rng)
    k = Fraction(rng.randint(1, 3), rng.randint(1, 2))
    shift = (Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5)))
    out = []
    for p in tri:
        q = linalg.matvec(rot, as_point(p))
        out.append(tuple(k * q[j] + shift[j] for j in range(2)))
    area2 = (out[1][0] - out[0][0]) * (out[2][1] - out[0][1]) - (out[2][0] - out[0][0]) * (out[1][1] - out[0][1])
    if area2 < 0:
        out[1], out[2] = out[2], out[1]
    return tuple(out)


def _random_compact_body(rng: random.Random, name: str, d: int, spread: int = 6) -> ConvexBody:
    if d == 2 and rng.random() < 0.5:
        while True:
            pts = [(rng.randint(-spread, spread), rng.randint(-spread, spread)) for _ in range(3)]
            (x0, y0), (x1, y1), (x2, y2) = pts
            area2 = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
            if area2:
                if area2 < 0:
                    pts[1], pts[2] = pts[2], pts[1]
                return ConvexBody.polygon(name, pts)
    lo, hi = [], []
    for _ in range(d):
        a = rng.randint(-spread, spread // 2)
        b = rng.randint(a + 1, spread + 1)
        lo.append(a)
        hi.append(b)
    return ConvexBody.box(name, lo, hi)


def gen_random_pik(n: int, d: int = 2, k: int = 3, seed=0) -> Family:
    """Random compact triangles and boxes, re-drawn until Pi_k holds."""
    rng = _rng(seed)
    for _ in range(MAX_ATTEMPTS):
        fam = Family(d, tuple(_random_compact_body(rng, f"B{i}", d) for i in range(n)))
        if check_pik(fam, k):
            return fam
    raise GenerationError(f"no Pi_{k} family within {MAX_ATTEMPTS} attempts")


def gen_planted_violation(n: int, seed=0) -> tuple[Family, tuple[int, ...]]:
    """Edges of a random triangle plus n-3 large boxes containing it.

    The edge triple is the only Pi_3 violation; returns it with the family.
    """
    if n < 3:
        raise ValueError("need at least three bodies")
    rng = _rng(seed)
    while True:
        pts = [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(3)]
        (x0, y0), (x1, y1), (x2, y2) = pts
        if (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0):
            break
    edges = [ConvexBody.polygon(f"E{i}", [pts[i], pts[(i + 1) % 3]]) for i in range(3)]
    boxes = [ConvexBody.box(f"B{j}", (-6 - rng.randint(0, 3), -6 - rng.randint(0, 3)),
                            (6 + rng.randint(0, 3), 6 + rng.randint(0, 3))) for j in range(n - 3)]
    order = list(range(n))
    rng.shuffle(order)
    pool = edges + boxes
    bodies = [pool[i] for i in order]
    planted = tuple(sorted(order.index(i) for i in range(3)))
    fam = Family(2, tuple(bodies))
    if check_pik(fam, 3):
        raise GenerationError("planted violation vanished")
    return fam, planted


def gen_pi_d_family(seed=0, n_range=(3, 7)) -> Family:
    """Planar Pi_2 family: generic lines, concurrent lines, or thickened
    triangle edges plus generic lines, drawn by seed."""
    rng = _rng(seed)
    kind = rng.choice(("generic", "concurrent", "thick"))
    n = rng.randint(*n_range)
    if kind == "generic":
        return gen_lines_general_position(n, 2, rng)
    if kind == "concurrent":
        p = (Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)))
        return gen_concurrent_lines(n, p)
    for _ in range(MAX_ATTEMPTS):
        tri = gen_heronian_triangle(rng)
        t = Fraction(rng.randint(1, 3), 10)
        base = gen_simplex_facet_bodies(2, t, tri)
        extra = []
        for i in range(max(0, n - 3)):
            a = (Fraction(rng.randint(-5, 5)), Fraction(rng.randint(1, 5)))
            q = tri[rng.randrange(3)]
            b = linalg.dot(a, q) + Fraction(rng.randint(-2, 2))
            extra.append(ConvexBody.hyperplane(f"L{i}", a, b))
        fam = Family(2, base.bodies + tuple(extra))
        if check_pik(fam, 2):
            return fam
    raise GenerationError("no Pi_2 mix within the attempt cap")


def gen_slab_instance(seed=0, height: int = 20) -> tuple[Family, Family]:
    """Two families of two tall disjoint boxes whose gaps overlap in x."""
    rng = _rng(seed)
    gap_lo = rng.randint(-3, 3)
    gap_hi = gap_lo + rng.randint(2, 4)
    fams = []
    for fi in range(2):
        a = gap_lo + rng.randint(0, 1) * (1 if fi else 0) - rng.randint(0, 1)
        b = gap_hi - rng.randint(0, 1) * (0 if fi else 1) + rng.randint(0, 1)
        if b - a < 1:
            b = a + 1
        w1, w2 = rng.randint(1, 3), rng.randint(1, 3)
        h = (-height, height)
        fams.append(Family(2, (
            ConvexBody.box(f"S{fi}a", (a - w1, h[0]), (a, h[1])),
            ConvexBody.box(f"S{fi}b", (b, h[0]), (b + w2, h[1])),
        )))
    return fams[0], fams[1]


def _lattice_box(rng, size):
    if rng.random() < 0.6:  # thin walls make enclosures likely
        if rng.random() < 0.5:
            x0, y0 = rng.randint(0, size - 1), rng.randint(0, size - 2)
            return (x0, y0), (x0 + 1, rng.randint(y0 + 2, size))
        y0, x0 = rng.randint(0, size - 1), rng.randint(0, size - 2)
        return (x0, y0), (rng.randint(x0 + 2, size), y0 + 1)
    x0, y0 = rng.randint(0, size - 1), rng.randint(0, size - 1)
    return (x0, y0), (rng.randint(x0 + 1, size), rng.randint(y0 + 1, size))


def _ring(rng, size):
    """Four walls around an inner rectangle, sometimes with one wall cut short."""
    x0, y0 = rng.randint(0, size - 3), rng.randint(0, size - 3)
    x1, y1 = rng.randint(x0 + 3, size), rng.randint(y0 + 3, size)
    walls = [((x0, y0), (x1, y0 + 1)), ((x0, y1 - 1), (x1, y1)),
             ((x0, y0), (x0 + 1, y1)), ((x1 - 1, y0), (x1, y1))]
    if rng.random() < 0.4:
        (a, b), (c, e) = walls[0]
        walls[0] = ((a, b), (c - 1, e))  # opens a unit gap in the bottom wall
    return walls


def gen_rectangle_instance(seed=0, n_range=(2, 6), size: int = 4):
    """Lattice rectangles in [0, size]^2, a query point off every grid line
    and outside the avoided rectangles, and the avoided subset."""
    rng = _rng(seed)
    while True:
        boxes = _ring(rng, size) if rng.random() < 0.5 else []
        n = max(len(boxes), rng.randint(*n_range))
        while len(boxes) < n:
            boxes.append(_lattice_box(rng, size))
        rng.shuffle(boxes)
        fam = Family(2, tuple(ConvexBody.box(f"R{i}", *b) for i, b in enumerate(boxes)))
        avoid = tuple(i for i in range(n) if rng.random() < 0.85)
        free = []
        for i in range(-1, size + 1):
            for j in range(-1, size + 1):
                x = (Fraction(2 * i + 1, 2) + Fraction(1, 32), Fraction(2 * j + 1, 2) + Fraction(1, 32))
                if not any(all(h.contains(x) for h in fam[k].halfspaces) for k in avoid):
                    free.append(x)
        if free:
            inner = [x for x in free if 0 < x[0] < size and 0 < x[1] < size]
            return fam, rng.choice(inner or free), avoid


def random_affine(d: int, seed=0, coeff: int = 3) -> AffineMap:
    rng = _rng(seed)
    while True:
        m = tuple(tuple(Fraction(rng.randint(-coeff, coeff), rng.randint(1, 3)) for _ in range(d))
                  for _ in range(d))
        if linalg.det(m):
            t = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(d))
            return AffineMap(m, t)


def gen_point_set(n: int, d: int = 2, seed=0, spread: int = 10) -> list[Point]:
    rng = _rng(seed)
    return [tuple(Fraction(rng.randint(-spread, spread)) for _ in range(d)) for _ in range(n)]
