"""Exact points, half-spaces and H-polytopes.

Every predicate in this module is decided in rational arithmetic.  A body
is a finite conjunction of closed half-spaces ``a.x <= b``; hyperplanes are
two opposing half-spaces, and unbounded bodies are allowed (clip them when
an operation needs compactness).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg
from .linalg import dot, sub
from .lp import INFEASIBLE, OPTIMAL, UNBOUNDED, linprog

Point = tuple[Fraction, ...]


class DimensionError(ValueError):
    pass


class UnboundedBodyError(ValueError):
    pass


def as_rational(value) -> Fraction:
    """Exact conversion from int, Fraction or a "p/q" / decimal string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def as_point(coords: Iterable) -> Point:
    return tuple(as_rational(v) for v in coords)


def parse_point(text: str) -> Point:
    """Parse ``"1/2,3"`` style comma separated coordinates."""
    return as_point(part for part in text.split(","))


def fmt(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True)
class HalfSpace:
    """The closed half-space ``{x : normal . x <= offset}``."""

    normal: Point
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", as_point(self.normal))
        object.__setattr__(self, "offset", as_rational(self.offset))
        if not any(self.normal):
            raise ValueError("half-space normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, p: Sequence) -> Fraction:
        return dot(self.normal, p) - self.offset

    def contains(self, p: Sequence) -> bool:
        return self.value(p) <= 0

    def flipped(self) -> "HalfSpace":
        return HalfSpace(tuple(-a for a in self.normal), -self.offset)


@dataclass(frozen=True)
class ConvexBody:
    name: str
    halfspaces: tuple[HalfSpace, ...]
    dim: int = field(default=-1)

    def __post_init__(self):
        hs = tuple(self.halfspaces)
        object.__setattr__(self, "halfspaces", hs)
        dims = {h.dim for h in hs}
        if self.dim < 0:
            if not dims:
                raise DimensionError(f"body {self.name!r}: dimension needed when there are no half-spaces")
            object.__setattr__(self, "dim", dims.pop())
            dims = set()
        if dims - {self.dim}:
            raise DimensionError(f"body {self.name!r}: half-spaces of mixed dimension")

    @classmethod
    def box(cls, name: str, lo: Sequence, hi: Sequence) -> "ConvexBody":
        lo, hi = as_point(lo), as_point(hi)
        d = len(lo)
        hs = []
        for j in range(d):
            e = [0] * d
            e[j] = 1
            hs.append(HalfSpace(tuple(e), hi[j]))
            e[j] = -1
            hs.append(HalfSpace(tuple(e), -lo[j]))
        return cls(name, tuple(hs), d)

    @classmethod
    def hyperplane(cls, name: str, normal: Sequence, offset) -> "ConvexBody":
        h = HalfSpace(normal, offset)
        return cls(name, (h, h.flipped()), h.dim)

    @classmethod
    def polygon(cls, name: str, vertices: Sequence[Sequence]) -> "ConvexBody":
        """Convex polygon from counter-clockwise vertices (two give a segment, one a point)."""
        pts = [as_point(v) for v in vertices]
        if any(len(p) != 2 for p in pts):
            raise DimensionError("polygon vertices must be planar")
        if len(pts) == 1:
            return cls.box(name, pts[0], pts[0])
        if len(pts) == 2:
            p, q = pts
            dx, dy = q[0] - p[0], q[1] - p[1]
            line = HalfSpace((dy, -dx), dy * p[0] - dx * p[1])
            hs = (line, line.flipped(),
                  HalfSpace((dx, dy), dx * q[0] + dy * q[1]),
                  HalfSpace((-dx, -dy), -(dx * p[0] + dy * p[1])))
            return cls(name, hs, 2)
        hs = []
        for p, q in zip(pts, pts[1:] + pts[:1]):
            dx, dy = q[0] - p[0], q[1] - p[1]
            hs.append(HalfSpace((dy, -dx), dy * p[0] - dx * p[1]))
        return cls(name, tuple(hs), 2)

    def renamed(self, name: str) -> "ConvexBody":
        return ConvexBody(name, self.halfspaces, self.dim)


def _check_dim(body: ConvexBody, p: Sequence):
    if len(p) != body.dim:
        raise DimensionError(f"point of dimension {len(p)} against body {body.name!r} of dimension {body.dim}")


def contains(body: ConvexBody, p: Sequence) -> bool:
    _check_dim(body, p)
    return all(h.contains(p) for h in body.halfspaces)


def lp_feasible(halfspaces: Sequence[HalfSpace], equalities: Sequence[HalfSpace] = (),
                dim: int | None = None) -> Point | None:
    """A point satisfying every half-space and every equality ``a.x == b``, or None."""
    dims = {h.dim for h in halfspaces} | {h.dim for h in equalities}
    if dim is not None:
        dims.add(dim)
    if len(dims) > 1:
        raise DimensionError(f"constraints of mixed dimension {sorted(dims)}")
    if not dims:
        raise DimensionError("dimension unknown for an empty constraint list")
    d = dims.pop()
    res = linprog([0] * d,
                  [h.normal for h in halfspaces], [h.offset for h in halfspaces],
                  [h.normal for h in equalities], [h.offset for h in equalities])
    if res.status == INFEASIBLE:
        return None
    return res.x


def is_empty(body: ConvexBody) -> bool:
    return lp_feasible(body.halfspaces, dim=body.dim) is None


def maximize(body: ConvexBody, c: Sequence):
    return linprog(c, [h.normal for h in body.halfspaces], [h.offset for h in body.halfspaces])


def is_bounded(body: ConvexBody) -> bool:
    """True iff the recession cone of the body is {0} (empty bodies count as bounded)."""
    if is_empty(body):
        return True
    d = body.dim
    rows = [h.normal for h in body.halfspaces]
    rhs = [0] * len(rows)
    for j in range(d):
        e = [0] * d
        e[j] = 1
        rows.append(tuple(e))
        rhs.append(1)
        e = [0] * d
        e[j] = -1
        rows.append(tuple(e))
        rhs.append(1)
    for j in range(d):
        for s in (1, -1):
            c = [0] * d
            c[j] = s
            if linprog(c, rows, rhs).value > 0:
                return False
    return True


def vertices(body: ConvexBody) -> list[Point]:
    """All vertices, in a deterministic order (lexicographic)."""
    d = body.dim
    found = set()
    hs = body.halfspaces
    for combo in combinations(range(len(hs)), d):
        m = [hs[i].normal for i in combo]
        p = linalg.solve(m, [hs[i].offset for i in combo])
        if p is not None and all(h.contains(p) for h in hs):
            found.add(p)
    return sorted(found)


def _project_to_affine(b: Point, rows: Sequence[Sequence], rhs: Sequence) -> Point | None:
    """Euclidean projection of b onto {x : rows x = rhs}; None if rows are dependent."""
    if not rows:
        return b
    gram = [[dot(r1, r2) for r2 in rows] for r1 in rows]
    resid = [dot(r, b) - c for r, c in zip(rows, rhs)]
    lam = linalg.solve(gram, resid)
    if lam is None:
        return None
    q = list(b)
    for l, r in zip(lam, rows):
        if l:
            for j, v in enumerate(r):
                q[j] -= l * v
    return tuple(q)


def closest_point(body: ConvexBody, b: Sequence) -> Point:
    """Exact Euclidean nearest point of a bounded nonempty body to ``b``.

    Enumerates candidate faces by independent active sets of size at most d,
    projects onto each affine hull, and keeps the nearest feasible projection.
    """
    b = as_point(b)
    _check_dim(body, b)
    if not is_bounded(body):
        raise UnboundedBodyError(f"body {body.name!r} is unbounded; clip it first")
    hs = body.halfspaces
    if all(h.contains(b) for h in hs):
        return b
    best, best_d = None, None
    for size in range(1, body.dim + 1):
        for combo in combinations(range(len(hs)), size):
            q = _project_to_affine(b, [hs[i].normal for i in combo], [hs[i].offset for i in combo])
            if q is None or not all(h.contains(q) for h in hs):
                continue
            dq = linalg.norm2(sub(q, b))
            if best_d is None or dq < best_d:
                best, best_d = q, dq
    if best is None:
        raise ValueError(f"body {body.name!r} is empty")
    return best


def support_halfspace(body: ConvexBody, b: Sequence) -> HalfSpace:
    """Half-space through the nearest point q, normal q - b, containing the body.

    This is ``{x : x.(q-b) >= q.(q-b)}`` written in ``<=`` form.
    """
    b = as_point(b)
    q = closest_point(body, b)
    n = sub(q, b)
    if not any(n):
        raise ValueError(f"point lies in body {body.name!r}; the separating normal degenerates")
    return HalfSpace(tuple(-v for v in n), -dot(n, q))


@dataclass(frozen=True)
class Flat:
    """Affine flat ``basepoint + span(directions)``."""

    basepoint: Point
    directions: tuple[Point, ...] = ()

    def __post_init__(self):
        bp = as_point(self.basepoint)
        dirs = tuple(as_point(v) for v in self.directions)
        object.__setattr__(self, "basepoint", bp)
        object.__setattr__(self, "directions", dirs)
        d = len(bp)
        if any(len(v) != d for v in dirs):
            raise DimensionError("flat directions must match the basepoint dimension")
        if len(dirs) >= d:
            raise ValueError("flat dimension must be below the ambient dimension")
        if dirs and linalg.rank(dirs) != len(dirs):
            raise ValueError("flat directions are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.directions)

    @property
    def ambient_dim(self) -> int:
        return len(self.basepoint)


@dataclass(frozen=True)
class ProjectionFrame:
    """Coordinates for orthogonal projection along a direction span.

    ``complement`` is a rational basis of the orthogonal complement; a point
    x = C u + D w is projected to its coordinates u.
    """

    directions: tuple[Point, ...]
    complement: tuple[Point, ...]
    change: tuple[tuple[Fraction, ...], ...]   # columns [C | D] as a matrix
    inverse: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def along(cls, directions: Sequence[Sequence], d: int) -> "ProjectionFrame":
        dirs = tuple(as_point(v) for v in directions)
        if any(len(v) != d for v in dirs):
            raise DimensionError("direction dimension mismatch")
        if dirs and linalg.rank(dirs) != len(dirs):
            raise ValueError("projection directions are linearly dependent")
        comp = tuple(linalg.nullspace(dirs, d)) if dirs else tuple(
            tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))
        cols = list(comp) + list(dirs)
        change = tuple(tuple(col[i] for col in cols) for i in range(d))
        inv = linalg.inverse(change)
        return cls(dirs, comp, change, tuple(tuple(r) for r in inv))

    @property
    def target_dim(self) -> int:
        return len(self.complement)

    def coords(self, p: Sequence) -> Point:
        return linalg.matvec(self.inverse[: self.target_dim], p)

    def lift(self, u: Sequence) -> Point:
        d = len(self.change)
        out = [Fraction(0)] * d
        for c, vec in zip(u, self.complement):
            for j in range(d):
                out[j] += c * vec[j]
        return tuple(out)


def _normalize_row(coeffs: Sequence[Fraction], rhs: Fraction):
    m = max(abs(v) for v in coeffs)
    return tuple(v / m for v in coeffs), rhs / m


def fourier_motzkin(rows: list[tuple[tuple, Fraction]], keep: int) -> tuple[list[tuple[tuple, Fraction]], bool]:
    """Eliminate every variable with index >= keep.  Returns (rows, feasible_flag)."""
    nvars = len(rows[0][0]) if rows else keep
    current = []
    for a, b in rows:
        if any(a):
            current.append(_normalize_row(a, b))
        elif b < 0:
            return [], False
    for var in reversed(range(keep, nvars)):
        pos = [r for r in current if r[0][var] > 0]
        neg = [r for r in current if r[0][var] < 0]
        nxt = [r for r in current if r[0][var] == 0]
        for pa, pb in pos:
            for na, nb in neg:
                cp, cn = pa[var], -na[var]
                a = tuple(cn * x + cp * y for x, y in zip(pa, na))
                b = cn * pb + cp * nb
                if any(a):
                    nxt.append(_normalize_row(a, b))
                elif b < 0:
                    return [], False
        seen = {}
        for a, b in nxt:
            seen.setdefault(a, b)
            if b < seen[a]:
                seen[a] = b
        current = [(a[:var], b) for a, b in sorted(seen.items())]
    return current, True


def remove_redundant(halfspaces: Sequence[HalfSpace], dim: int) -> tuple[HalfSpace, ...]:
    kept = list(halfspaces)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1:]
        h = kept[i]
        if others:
            res = linprog(h.normal, [o.normal for o in others], [o.offset for o in others])
            if res.status == OPTIMAL and res.value <= h.offset:
                kept.pop(i)
                continue
        i += 1
    return tuple(kept)


def _empty_body(name: str, dim: int) -> ConvexBody:
    e = tuple(Fraction(int(j == 0)) for j in range(dim))
    return ConvexBody(name, (HalfSpace(e, -1), HalfSpace(tuple(-v for v in e), 0)), dim)


def project(body: ConvexBody, flat: Flat | ProjectionFrame) -> ConvexBody:
    """H-representation of the orthogonal projection along the flat's directions.

    The result lives in the coordinates of :class:`ProjectionFrame` (dimension
    d - m); it is empty exactly when the body is.
    """
    frame = flat if isinstance(flat, ProjectionFrame) else ProjectionFrame.along(flat.directions, flat.ambient_dim)
    if len(frame.change) != body.dim:
        raise DimensionError("flat and body dimensions differ")
    k = frame.target_dim
    change = frame.change
    rows = []
    for h in body.halfspaces:
        a = tuple(sum((h.normal[i] * change[i][j] for i in range(body.dim)), Fraction(0))
                  for j in range(body.dim))
        rows.append((a, h.offset))
    reduced, feasible = fourier_motzkin(rows, k)
    if not feasible:
        return _empty_body(body.name, k)
    hs = [HalfSpace(a, b) for a, b in reduced]
    if lp_feasible(hs, dim=k) is None:
        return _empty_body(body.name, k)
    return ConvexBody(body.name, remove_redundant(hs, k), k)


def project_point(p: Sequence, flat: Flat | ProjectionFrame) -> Point:
    frame = flat if isinstance(flat, ProjectionFrame) else ProjectionFrame.along(flat.directions, flat.ambient_dim)
    return frame.coords(as_point(p))


def clip_to_box(body: ConvexBody, lo: Sequence, hi: Sequence) -> ConvexBody:
    """Intersection with an axis-aligned box; box faces the body already respects are skipped."""
    lo, hi = as_point(lo), as_point(hi)
    if len(lo) != body.dim or len(hi) != body.dim:
        raise DimensionError("box dimension mismatch")
    if any(l > h for l, h in zip(lo, hi)):
        raise ValueError("empty box")
    extra = []
    for j in range(body.dim):
        for sgn, bound in ((1, hi[j]), (-1, -lo[j])):
            e = [0] * body.dim
            e[j] = sgn
            res = maximize(body, e)
            if res.status == INFEASIBLE:
                return _empty_body(body.name, body.dim)
            if res.status == UNBOUNDED or res.value > bound:
                extra.append(HalfSpace(tuple(e), bound))
    return ConvexBody(body.name, body.halfspaces + tuple(extra), body.dim)


def bounding_box(points: Iterable[Sequence], factor=2, dim: int | None = None) -> tuple[Point, Point]:
    """Axis box around the points, scaled by ``factor`` about its centre (width at least 2)."""
    pts = [as_point(p) for p in points]
    if not pts:
        if dim is None:
            raise ValueError("no points and no dimension")
        return tuple(Fraction(-1) for _ in range(dim)), tuple(Fraction(1) for _ in range(dim))
    d = len(pts[0])
    lo, hi = [], []
    for j in range(d):
        a = min(p[j] for p in pts)
        b = max(p[j] for p in pts)
        c = (a + b) / 2
        half = max((b - a) / 2 * factor, Fraction(1))
        lo.append(c - half)
        hi.append(c + half)
    return tuple(lo), tuple(hi)


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix x + translation."""

    matrix: tuple[tuple[Fraction, ...], ...]
    translation: Point

    def __post_init__(self):
        m = tuple(as_point(r) for r in self.matrix)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "translation", as_point(self.translation))
        if any(len(r) != len(m) for r in m) or len(self.translation) != len(m):
            raise DimensionError("affine map must be square and match its translation")

    @classmethod
    def identity(cls, d: int) -> "AffineMap":
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)), (0,) * d)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, p: Sequence) -> Point:
        return linalg.add(linalg.matvec(self.matrix, p), self.translation)


def apply_affine(T: AffineMap, obj):
    """Image of a point, half-space, body, flat or family under T.

    Half-spaces transform by the inverse transpose so that
    ``contains(X, x) == contains(T(X), T(x))`` holds exactly.
    """
    inv = linalg.inverse(T.matrix)
    if inv is None:
        raise ValueError("affine map is singular")
    inv_t = linalg.transpose(inv)

    def image_half(h: HalfSpace) -> HalfSpace:
        a = linalg.matvec(inv_t, h.normal)
        return HalfSpace(a, h.offset + dot(a, T.translation))

    if isinstance(obj, HalfSpace):
        return image_half(obj)
    if isinstance(obj, ConvexBody):
        return ConvexBody(obj.name, tuple(image_half(h) for h in obj.halfspaces), obj.dim)
    if isinstance(obj, Flat):
        return Flat(T(obj.basepoint), tuple(linalg.matvec(T.matrix, v) for v in obj.directions))
    if hasattr(obj, "bodies"):
        return type(obj)(obj.dimension, tuple(apply_affine(T, b) for b in obj.bodies))
    return T(as_point(obj))
