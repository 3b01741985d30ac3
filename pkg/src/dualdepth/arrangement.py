"""Face lattice of the arrangement of every facet hyperplane of a family.

Cells are the relatively open faces of every dimension, keyed by sign
vector over the deduplicated hyperplanes (``-`` below, ``0`` on, ``+``
above).  Enumeration recurses over the intersection lattice: the regions of
a k-flat are exactly the two sides of the regions of its (k-1)-subflats cut
out by one hyperplane, so no LP is needed and every representative is
produced by exact construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry import ConvexBody, Point, as_point
from .linalg import dot
from .lp import INFEASIBLE, OPTIMAL, UNBOUNDED, linprog

SIGN_CHARS = "-0+"
DEFAULT_MAX_HYPERPLANES = 14


class ArrangementCapError(RuntimeError):
    """Raised instead of truncating when the hyperplane cap is exceeded."""


def sign_string(sign: Sequence[int]) -> str:
    return "".join(SIGN_CHARS[s + 1] for s in sign)


def parse_sign(text: str) -> tuple[int, ...]:
    try:
        return tuple(SIGN_CHARS.index(ch) - 1 for ch in text)
    except ValueError as exc:
        raise ValueError(f"bad sign string {text!r}") from exc


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def normalize_hyperplane(a: Sequence[Fraction], b: Fraction):
    """Scale so the first nonzero normal entry is 1; also return the sign of the scale."""
    lead = next(v for v in a if v)
    return tuple(v / lead for v in a), b / lead, _sgn(lead)


@dataclass(frozen=True)
class Cell:
    index: int
    sign: tuple[int, ...]
    representative: Point
    dim: int
    unbounded: bool
    covered_by: frozenset[int]

    @property
    def label(self) -> str:
        return sign_string(self.sign)


class CellComplex:
    """All nonempty sign-vector cells with face-incidence adjacency."""

    def __init__(self, dim, hyperplanes, constraints, cells, adjacency):
        self.dim = dim
        self.hyperplanes: tuple[tuple[Point, Fraction], ...] = hyperplanes
        # per body: tuple of (hyperplane index, orientation); inside means sign*orientation <= 0
        self.constraints: tuple[tuple[tuple[int, int], ...], ...] = constraints
        self.cells: tuple[Cell, ...] = cells
        self.adjacency: tuple[tuple[int, ...], ...] = adjacency
        self._by_sign = {c.sign: c.index for c in cells}
        self.masks = tuple(sum(1 << i for i in c.covered_by) for c in cells)

    def __len__(self):
        return len(self.cells)

    @property
    def n_bodies(self) -> int:
        return len(self.constraints)

    def sign_of(self, p: Sequence) -> tuple[int, ...]:
        if len(p) != self.dim:
            raise ValueError(f"point of dimension {len(p)} in a {self.dim}-dimensional arrangement")
        return tuple(_sgn(dot(a, p) - b) for a, b in self.hyperplanes)

    def locate(self, p: Sequence) -> Cell:
        return self.cells[self._by_sign[self.sign_of(as_point(p))]]

    def cell(self, sign: Sequence[int] | str) -> Cell:
        if isinstance(sign, str):
            sign = parse_sign(sign)
        return self.cells[self._by_sign[tuple(sign)]]

    def has_sign(self, sign: Sequence[int]) -> bool:
        return tuple(sign) in self._by_sign

    def covers(self, body: int, sign: Sequence[int]) -> bool:
        return all(sign[h] * o <= 0 for h, o in self.constraints[body])


class _Builder:
    def __init__(self, dim: int, planes: list[tuple[Point, Fraction]]):
        self.dim = dim
        self.planes = planes
        self.reps: dict[tuple, Point] = {}
        self.dims: dict[tuple, int] = {}
        self.facets: dict[tuple, set] = {}
        self.unbounded: dict[tuple, bool] = {}
        self.memo: dict[frozenset, list] = {}

    def sign(self, p):
        return tuple(_sgn(dot(a, p) - b) for a, b in self.planes)

    def _new(self, sign, rep, k):
        if sign not in self.reps:
            self.reps[sign] = rep
            self.dims[sign] = k
            self.facets[sign] = set()

    def regions(self, p0: Point, basis: list[Point]) -> list[tuple]:
        k = len(basis)
        key = frozenset(i for i, (a, b) in enumerate(self.planes)
                        if dot(a, p0) == b and all(dot(a, v) == 0 for v in basis))
        if key in self.memo:
            return self.memo[key]
        groups = {}
        for i, (a, b) in enumerate(self.planes):
            if i in key:
                continue
            c = tuple(dot(a, v) for v in basis)
            if not any(c):
                continue
            e = b - dot(a, p0)
            lead = next(v for v in c if v)
            groups.setdefault((tuple(v / lead for v in c), e / lead), (c, e))
        if not groups:
            s = self.sign(p0)
            self._new(s, p0, k)
            self.unbounded[s] = k > 0
            self.memo[key] = [s]
            return [s]
        found = []
        for tkey in sorted(groups):
            c, e = groups[tkey]
            j = next(i for i, v in enumerate(c) if v)
            sub_p0 = tuple(x + (e / c[j]) * y for x, y in zip(p0, basis[j]))
            sub_basis = [tuple(x - (c[i] / c[j]) * y for x, y in zip(basis[i], basis[j]))
                         for i in range(k) if i != j]
            direction = [Fraction(0)] * self.dim
            for ci, v in zip(c, basis):
                if ci:
                    for t in range(self.dim):
                        direction[t] += ci * v[t]
            for f in self.regions(sub_p0, sub_basis):
                q = self.reps[f]
                eps = Fraction(1)
                for a, b in self.planes:
                    val = dot(a, q) - b
                    if val:
                        rate = dot(a, direction)
                        if rate:
                            bound = abs(val / rate) / 2
                            if bound < eps:
                                eps = bound
                for side in (-eps, eps):
                    p = tuple(x + side * y for x, y in zip(q, direction))
                    s = self.sign(p)
                    if s not in self.reps:
                        self._new(s, p, k)
                        found.append(s)
                    self.facets[s].add(f)
        for s in found:
            if k == 1:
                self.unbounded[s] = len(self.facets[s]) < 2
            else:
                self.unbounded[s] = any(self.unbounded[f] for f in self.facets[s])
        self.memo[key] = found
        return found


def _family_bodies(family) -> tuple[int, list[ConvexBody]]:
    if hasattr(family, "bodies"):
        return family.dimension, list(family.bodies)
    bodies = list(family)
    return bodies[0].dim, bodies


def collect_hyperplanes(bodies: Iterable[ConvexBody]):
    """Deduplicated hyperplanes and per-body (index, orientation) constraints."""
    planes: list[tuple[Point, Fraction]] = []
    index: dict[tuple, int] = {}
    constraints = []
    for body in bodies:
        cons = []
        for h in body.halfspaces:
            a, b, orient = normalize_hyperplane(h.normal, h.offset)
            key = (a, b)
            if key not in index:
                index[key] = len(planes)
                planes.append(key)
            cons.append((index[key], orient))
        constraints.append(tuple(sorted(set(cons))))
    return planes, constraints


def build_arrangement(family, max_hyperplanes: int = DEFAULT_MAX_HYPERPLANES, dim: int | None = None) -> CellComplex:
    """Cell complex of a Family (or a list of bodies with ``dim`` given)."""
    if dim is None:
        dim, bodies = _family_bodies(family)
    else:
        bodies = list(family.bodies) if hasattr(family, "bodies") else list(family)
    planes, constraints = collect_hyperplanes(bodies)
    if len(planes) > max_hyperplanes:
        raise ArrangementCapError(
            f"{len(planes)} distinct hyperplanes exceed the cap of {max_hyperplanes}")
    builder = _Builder(dim, planes)
    origin = tuple(Fraction(0) for _ in range(dim))
    basis = [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    builder.regions(origin, basis)

    signs = sorted(builder.reps)
    idx = {s: i for i, s in enumerate(signs)}
    down: dict[tuple, set] = {}
    for s in sorted(signs, key=lambda s: builder.dims[s]):
        acc = set()
        for f in builder.facets[s]:
            acc.add(f)
            acc |= down[f]
        down[s] = acc
    adj = [set() for _ in signs]
    for s, faces in down.items():
        i = idx[s]
        for f in faces:
            adj[i].add(idx[f])
            adj[idx[f]].add(i)
    cells = []
    for i, s in enumerate(signs):
        covered = frozenset(b for b, cons in enumerate(constraints)
                            if all(s[h] * o <= 0 for h, o in cons))
        cells.append(Cell(i, s, builder.reps[s], builder.dims[s], builder.unbounded[s], covered))
    return CellComplex(dim, tuple(planes), tuple(constraints), tuple(cells),
                       tuple(tuple(sorted(a)) for a in adj))


def locate(complex: CellComplex, p: Sequence) -> Cell:
    return complex.locate(p)


def blocked_cells(complex: CellComplex, sub: Iterable[int]) -> set[Cell]:
    """Cells lying inside at least one body listed in ``sub``."""
    sub = set(sub)
    for i in sub:
        if not 0 <= i < complex.n_bodies:
            raise IndexError(f"body index {i} out of range")
    return {c for c in complex.cells if c.covered_by & sub}


def _sign_system(sign: Sequence[int], hyperplanes: Sequence[tuple[Point, Fraction]]):
    strict, eqs = [], []
    for s, (a, b) in zip(sign, hyperplanes):
        if s == 0:
            eqs.append((a, b))
        else:
            strict.append((tuple(s * v for v in a), s * b))  # s*(a.x - b) > 0
    return strict, eqs


def cell_representative(sign: Sequence[int], hyperplanes: Sequence[tuple[Point, Fraction]]) -> Point:
    """Relative-interior point of the sign cell via the max-min-slack LP.

    Maximizes t subject to equalities on zero signs, s*(a.x - b) >= t on the
    others and t <= 1; the cell is nonempty iff the optimum is positive.
    """
    if len(sign) != len(hyperplanes):
        raise ValueError("sign vector length differs from the hyperplane count")
    d = len(hyperplanes[0][0])
    strict, eqs = _sign_system(sign, hyperplanes)
    A_eq = [tuple(a) + (0,) for a, _ in eqs]
    b_eq = [b for _, b in eqs]
    if not strict:
        res = linprog([0] * (d + 1), [(0,) * d + (1,)], [1], A_eq, b_eq)
        if res.status == INFEASIBLE:
            raise ValueError(f"infeasible sign vector {sign_string(sign)}")
        return res.x[:d]
    A_ub = [tuple(-v for v in a) + (1,) for a, _ in strict]
    b_ub = [-b for _, b in strict]
    A_ub.append((0,) * d + (1,))
    b_ub.append(1)
    res = linprog((0,) * d + (1,), A_ub, b_ub, A_eq, b_eq)
    if res.status != OPTIMAL or res.value <= 0:
        raise ValueError(f"infeasible sign vector {sign_string(sign)}")
    return res.x[:d]


def is_unbounded(cell: Cell, hyperplanes: Sequence[tuple[Point, Fraction]]) -> bool:
    """Nonzero recession direction of the cell closure, via 2d box-normalized LPs."""
    d = len(cell.representative)
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for s, (a, _) in zip(cell.sign, hyperplanes):
        if s == 0:
            A_eq.append(a)
            b_eq.append(0)
        else:
            A_ub.append(tuple(-s * v for v in a))
            b_ub.append(0)
    for j in range(d):
        for t in (1, -1):
            e = [0] * d
            e[j] = t
            A_ub.append(tuple(e))
            b_ub.append(1)
    for j in range(d):
        for t in (1, -1):
            c = [0] * d
            c[j] = t
            res = linprog(c, A_ub, b_ub, A_eq, b_eq)
            if res.value > 0:
                return True
    return False


def is_unbounded_by_extent(cell: Cell, hyperplanes: Sequence[tuple[Point, Fraction]]) -> bool:
    """Second route: is some coordinate unbounded over the closed cell itself?"""
    d = len(cell.representative)
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for s, (a, b) in zip(cell.sign, hyperplanes):
        if s == 0:
            A_eq.append(a)
            b_eq.append(b)
        else:
            A_ub.append(tuple(-s * v for v in a))
            b_ub.append(-s * b)
    for j in range(d):
        for t in (1, -1):
            c = [0] * d
            c[j] = t
            if linprog(c, A_ub, b_ub, A_eq, b_eq).status == UNBOUNDED:
                return True
    return False


def components(complex: CellComplex, avoid_mask: int, starts: Iterable[int]) -> set[int]:
    """Cells reachable from ``starts`` through cells not blocked by ``avoid_mask``."""
    masks, adj = complex.masks, complex.adjacency
    seen = {s for s in starts if not masks[s] & avoid_mask}
    queue = deque(seen)
    while queue:
        c = queue.popleft()
        for nb in adj[c]:
            if nb not in seen and not masks[nb] & avoid_mask:
                seen.add(nb)
                queue.append(nb)
    return seen
