"""Intersection properties, escape to infinity, dual depth and surrounding."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .arrangement import DEFAULT_MAX_HYPERPLANES, CellComplex, build_arrangement, components
from .geometry import ConvexBody, DimensionError, Flat, Point, ProjectionFrame, as_point, lp_feasible, project


@dataclass(frozen=True)
class Family:
    dimension: int
    bodies: tuple[ConvexBody, ...] = ()

    def __post_init__(self):
        bodies = tuple(self.bodies)
        object.__setattr__(self, "bodies", bodies)
        names = set()
        for b in bodies:
            if b.dim != self.dimension:
                raise DimensionError(f"body {b.name!r} has dimension {b.dim}, family has {self.dimension}")
            if b.name in names:
                raise ValueError(f"duplicate body name {b.name!r}")
            names.add(b.name)

    def __len__(self):
        return len(self.bodies)

    def __iter__(self):
        return iter(self.bodies)

    def __getitem__(self, i):
        return self.bodies[i]

    @property
    def names(self) -> list[str]:
        return [b.name for b in self.bodies]

    def index_of(self, name: str) -> int:
        for i, b in enumerate(self.bodies):
            if b.name == name:
                return i
        raise KeyError(name)

    def subfamily(self, indices: Iterable[int]) -> "Family":
        return Family(self.dimension, tuple(self.bodies[i] for i in indices))


def ceil_div(n: int, m: int) -> int:
    return -(-n // m)


@dataclass(frozen=True)
class PikVerdict:
    holds: bool
    k: int
    size_checked: int
    violating: tuple[int, ...] | None = None
    witnesses: tuple[tuple[tuple[int, ...], Point], ...] = ()

    def __bool__(self):
        return self.holds


def common_point(bodies: Sequence[ConvexBody], dim: int) -> Point | None:
    hs = [h for b in bodies for h in b.halfspaces]
    return lp_feasible(hs, dim=dim)


def check_pik(family: Family, k: int) -> PikVerdict:
    """Property Pi_k: every subfamily of size min(k, |F|) meets (smaller ones follow)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    size = min(k, len(family))
    witnesses = []
    if size == 0:
        return PikVerdict(True, k, 0)
    for combo in combinations(range(len(family)), size):
        p = common_point([family[i] for i in combo], family.dimension)
        if p is None:
            return PikVerdict(False, k, size, combo)
        witnesses.append((combo, p))
    return PikVerdict(True, k, size, None, tuple(witnesses))


def helly_point(family: Family) -> Point | None:
    if not len(family):
        return tuple(0 for _ in range(family.dimension))
    return common_point(family.bodies, family.dimension)


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class EscapeCertificate:
    """Face-adjacent chain of unblocked cells ending in an unbounded cell."""

    path: tuple[int, ...]
    avoided: frozenset[int]


@dataclass(frozen=True)
class EscapeResult:
    escaped: bool
    certificate: EscapeCertificate | None = None
    component: tuple[int, ...] = ()
    blocked_by: frozenset[int] = frozenset()

    def __bool__(self):
        return self.escaped


def escape(x: Sequence, avoid: Iterable[int], complex: CellComplex) -> EscapeResult:
    """Breadth-first search from x's cell to an unbounded cell avoiding the listed bodies."""
    avoid = frozenset(avoid)
    start = complex.locate(as_point(x))
    blocked_by = start.covered_by & avoid
    if blocked_by:
        return EscapeResult(False, blocked_by=blocked_by)
    amask = _mask(avoid)
    masks, adj, cells = complex.masks, complex.adjacency, complex.cells
    parent = {start.index: None}
    queue = deque([start.index])
    while queue:
        c = queue.popleft()
        if cells[c].unbounded:
            path = []
            while c is not None:
                path.append(c)
                c = parent[c]
            return EscapeResult(True, EscapeCertificate(tuple(reversed(path)), avoid))
        for nb in adj[c]:
            if nb not in parent and not masks[nb] & amask:
                parent[nb] = c
                queue.append(nb)
    return EscapeResult(False, component=tuple(sorted(parent)))


def check_escape_certificate(cert: EscapeCertificate, x: Sequence, complex: CellComplex) -> str | None:
    """None when valid, otherwise the name of the first failing check."""
    if not cert.path:
        return "empty path"
    if cert.path[0] != complex.locate(as_point(x)).index:
        return "path does not start at the cell of x"
    amask = _mask(cert.avoided)
    for a, b in zip(cert.path, cert.path[1:]):
        if b not in complex.adjacency[a]:
            return "consecutive cells are not face-adjacent"
    for c in cert.path:
        if complex.masks[c] & amask:
            return "path enters an avoided body"
    if not complex.cells[cert.path[-1]].unbounded:
        return "path does not end in an unbounded cell"
    return None


def body_classes(complex: CellComplex) -> list[tuple[int, ...]]:
    """Bodies grouped by identical cell coverage (equal as point sets); coverless bodies dropped."""
    groups: dict[frozenset, list[int]] = {}
    for b in range(complex.n_bodies):
        cells = frozenset(c.index for c in complex.cells if b in c.covered_by)
        if cells:
            groups.setdefault(cells, []).append(b)
    return sorted(tuple(g) for g in groups.values())


def _class_subsets(classes: list[tuple[int, ...]], mandatory: frozenset[int]):
    """Unions of whole classes containing the mandatory bodies, by increasing size."""
    req = [i for i, c in enumerate(classes) if mandatory & set(c)]
    opt = [i for i, c in enumerate(classes) if i not in req]
    subsets = []
    for mask in range(1 << len(opt)):
        chosen = req + [opt[j] for j in range(len(opt)) if mask >> j & 1]
        members = frozenset(b for i in chosen for b in classes[i])
        subsets.append(members)
    subsets.sort(key=lambda s: (len(s), sorted(s)))
    return subsets


@dataclass(frozen=True)
class DepthCertificate:
    point: Point
    value: int
    hit_set: frozenset[int]
    escape: EscapeCertificate
    lower_bound_proof: tuple[frozenset[int], ...]


def depth(x: Sequence, family: Family, complex: CellComplex | None = None,
          max_hyperplanes: int = DEFAULT_MAX_HYPERPLANES) -> DepthCertificate:
    """Fewest bodies an escape from x to infinity must touch, with certificate.

    Candidate hit sets are tried in increasing size; every body containing x
    is mandatory.  Bodies covering the same cells are interchangeable, so only
    unions of whole coverage classes need trying.
    """
    x = as_point(x)
    if complex is None:
        complex = build_arrangement(family, max_hyperplanes)
    n = complex.n_bodies
    start = complex.locate(x)
    failed = []
    for hit in _class_subsets(body_classes(complex), start.covered_by):
        avoid = frozenset(range(n)) - hit
        res = escape(x, avoid, complex)
        if res:
            return DepthCertificate(x, len(hit), hit, res.certificate, tuple(failed))
        failed.append(hit)
    raise AssertionError("escape avoiding nothing must succeed")


def depth_map(complex: CellComplex) -> list[int]:
    """Depth of every cell at once: one multi-source search per candidate hit set."""
    n = complex.n_bodies
    result = [None] * len(complex)
    remaining = len(complex)
    unbounded = [c.index for c in complex.cells if c.unbounded]
    full = (1 << n) - 1
    for hit in _class_subsets(body_classes(complex), frozenset()):
        reach = components(complex, full & ~_mask(hit), unbounded)
        for c in reach:
            if result[c] is None:
                result[c] = len(hit)
                remaining -= 1
        if not remaining:
            break
    return result


@dataclass(frozen=True)
class SurroundVerdict:
    subfamily: tuple[int, ...]
    point: Point
    surrounded: bool
    evidence: str  # "component", "escape" or "containment"
    component: tuple[int, ...] = ()
    escape: EscapeCertificate | None = None
    container: int | None = None
    standard_size: bool = True
    flat: Flat | None = None

    def __bool__(self):
        return self.surrounded


def surrounds(sub: Iterable[int], x: Sequence, complex: CellComplex) -> SurroundVerdict:
    """x lies outside the union of ``sub`` and in a bounded component of its complement."""
    sub = tuple(sorted(set(sub)))
    x = as_point(x)
    standard = len(sub) == complex.dim + 1
    cell = complex.locate(x)
    inside = sorted(cell.covered_by & set(sub))
    if inside:
        return SurroundVerdict(sub, x, False, "containment", container=inside[0], standard_size=standard)
    res = escape(x, sub, complex)
    if res:
        return SurroundVerdict(sub, x, False, "escape", escape=res.certificate, standard_size=standard)
    return SurroundVerdict(sub, x, True, "component", component=res.component, standard_size=standard)


def project_family(family: Family, frame: ProjectionFrame, indices: Iterable[int] | None = None) -> Family:
    idx = range(len(family)) if indices is None else indices
    return Family(frame.target_dim, tuple(project(family[i], frame) for i in idx))


def surrounds_flat(family: Family, sub: Iterable[int], flat: Flat,
                   max_hyperplanes: int = DEFAULT_MAX_HYPERPLANES) -> SurroundVerdict:
    """Surround test for an m-flat: project along it and test the projected point."""
    if flat.ambient_dim != family.dimension:
        raise DimensionError("flat and family dimensions differ")
    sub = tuple(sorted(set(sub)))
    frame = ProjectionFrame.along(flat.directions, flat.ambient_dim)
    projected = project_family(family, frame, sub)
    point = frame.coords(flat.basepoint)
    cx = build_arrangement(projected, max_hyperplanes)
    v = surrounds(range(len(sub)), point, cx)
    return SurroundVerdict(
        sub, point, v.surrounded, v.evidence, v.component, v.escape,
        None if v.container is None else sub[v.container], v.standard_size, flat)
