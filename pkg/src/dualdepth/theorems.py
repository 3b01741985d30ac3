"""Searches and certificates for central points, dual Tverberg partitions,
surrounding simplices, transversal flats and halfspace depth."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Sequence

from . import linalg
from .arrangement import DEFAULT_MAX_HYPERPLANES, ArrangementCapError, CellComplex, build_arrangement
from .family import (
    DepthCertificate, Family, SurroundVerdict, ceil_div, check_pik, common_point,
    depth, depth_map, escape, project_family, surrounds, surrounds_flat,
)
from .geometry import (
    ConvexBody, DimensionError, Flat, HalfSpace, Point, ProjectionFrame, as_point, closest_point,
    contains, lp_feasible, support_halfspace, vertices,
)

DEFAULT_MAX_BODIES = 9


class SearchCapError(RuntimeError):
    pass


@dataclass(frozen=True)
class Verification:
    ok: bool
    reason: str = "ok"

    def __bool__(self):
        return self.ok


def is_prime_power(r: int) -> bool:
    return prime_base(r) is not None


def prime_base(r: int) -> int | None:
    """The prime p with r = p^k (k >= 1), else None."""
    if r < 2:
        return None
    p = next(q for q in range(2, r + 1) if r % q == 0)
    while r % p == 0:
        r //= p
    return p if r == 1 else None


# -- central point ---------------------------------------------------------------

@dataclass(frozen=True)
class CentralPointReport:
    family: Family
    point: Point
    sign: tuple[int, ...]
    certificate: DepthCertificate
    required: int
    bound_met: bool
    pi_d_holds: bool


def central_point(family: Family, complex: CellComplex | None = None,
                  max_hyperplanes: int = DEFAULT_MAX_HYPERPLANES) -> CentralPointReport:
    """Deepest cell representative over every cell of every dimension.

    Ties go to the lexicographically least sign vector.
    """
    if complex is None:
        complex = build_arrangement(family, max_hyperplanes)
    depths = depth_map(complex)
    best = max(range(len(complex)), key=lambda i: (depths[i], [-s for s in complex.cells[i].sign]))
    cell = complex.cells[best]
    cert = depth(cell.representative, family, complex)
    assert cert.value == depths[best]
    required = ceil_div(len(family), family.dimension + 1)
    return CentralPointReport(family, cell.representative, cell.sign, cert, required,
                              cert.value >= required, bool(check_pik(family, family.dimension)))


# -- dual Tverberg partitions ------------------------------------------------------

@dataclass(frozen=True)
class GroupVerdict:
    members: tuple[int, ...]
    kind: str  # "contains" / "surrounds" for points, "intersects" / "surrounds" for flats
    witness: int | None = None
    surround: SurroundVerdict | None = None


@dataclass(frozen=True)
class PartitionCertificate:
    point: Point
    r: int
    groups: tuple[GroupVerdict, ...]
    r_is_prime_power: bool

    @property
    def subfamilies(self) -> list[tuple[int, ...]]:
        return [g.members for g in self.groups]


@dataclass(frozen=True)
class PartitionSearch:
    certificate: PartitionCertificate | None
    candidates_checked: int
    exhaustive: bool

    @property
    def refuted(self) -> bool:
        """True only when every cell and every assignment was covered without success."""
        return self.certificate is None and self.exhaustive


def _minimal_groups(complex: CellComplex, cell_index: int, pool: Sequence[int], memo: dict):
    """Minimal successful groups at a cell: singletons of containing bodies, then
    minimal surrounding subsets of the remaining bodies (surrounding is monotone
    once the point avoids the union)."""
    cell = complex.cells[cell_index]
    x = cell.representative
    inside = [b for b in pool if b in cell.covered_by]
    groups = [((b,), "contains") for b in inside]
    rest = [b for b in pool if b not in cell.covered_by]
    found: list[frozenset] = []
    for size in range(1, len(rest) + 1):
        for combo in combinations(rest, size):
            s = frozenset(combo)
            if any(f <= s for f in found):
                continue
            key = (cell_index, s)
            if key not in memo:
                memo[key] = not escape(x, s, complex)
            if memo[key]:
                found.append(s)
                groups.append((combo, "surrounds"))
    return groups


def _pack(groups, r):
    """First r pairwise disjoint groups in search order, or None."""
    chosen = []

    def rec(start, used):
        if len(chosen) == r:
            return True
        for i in range(start, len(groups)):
            members = set(groups[i][0])
            if members & used:
                continue
            chosen.append(groups[i])
            if rec(i + 1, used | members):
                return True
            chosen.pop()
        return False

    return list(chosen) if rec(0, set()) else None


def _partition_at(complex, cell_index, r, pool, memo):
    if r == 0:
        return []
    return _pack(_minimal_groups(complex, cell_index, pool, memo), r)


def _group_verdicts(complex, x, packed, surround_kind="surrounds", contain_kind="contains"):
    out = []
    for members, kind in packed:
        if kind == "contains":
            out.append(GroupVerdict(tuple(members), contain_kind, witness=members[0]))
        else:
            out.append(GroupVerdict(tuple(members), surround_kind, surround=surrounds(members, x, complex)))
    return tuple(out)


def partition_search(family: Family, r: int, x: Sequence | None = None,
                     complex: CellComplex | None = None,
                     max_bodies: int = DEFAULT_MAX_BODIES,
                     max_hyperplanes: int = DEFAULT_MAX_HYPERPLANES) -> PartitionSearch:
    """Look for r disjoint nonempty subfamilies each containing or surrounding a point.

    Without ``x`` every cell is a candidate, deepest first; a cell shallower
    than r cannot carry a certificate and is skipped.  ``exhaustive`` is set
    only when the whole candidate set was searched.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    if len(family) > max_bodies:
        raise SearchCapError(f"{len(family)} bodies exceed the partition search cap of {max_bodies}")
    if complex is None:
        complex = build_arrangement(family, max_hyperplanes)
    pool = list(range(len(family)))
    memo: dict = {}
    if x is not None:
        cell = complex.locate(as_point(x))
        packed = _partition_at(complex, cell.index, r, pool, memo) if r <= len(family) else None
        cert = None
        if packed is not None:
            px = as_point(x)
            cert = PartitionCertificate(px, r, _group_verdicts(complex, px, packed), is_prime_power(r))
        return PartitionSearch(cert, 1, False)
    depths = depth_map(complex)
    order = sorted(range(len(complex)), key=lambda i: (-depths[i], complex.cells[i].sign))
    checked = 0
    for i in order:
        if depths[i] < r:
            break
        checked += 1
        packed = _partition_at(complex, i, r, pool, memo)
        if packed is not None:
            px = complex.cells[i].representative
            cert = PartitionCertificate(px, r, _group_verdicts(complex, px, packed), is_prime_power(r))
            return PartitionSearch(cert, checked, False)
    return PartitionSearch(None, checked, True)


def dual_tverberg_partition(family: Family, r: int, x: Sequence | None = None, **kw) -> PartitionCertificate | None:
    return partition_search(family, r, x, **kw).certificate


def verify_partition(cert: PartitionCertificate, family: Family,
                     max_hyperplanes: int = DEFAULT_MAX_HYPERPLANES) -> Verification:
    """Re-check a partition certificate from scratch, including depth(x) >= r."""
    n = len(family)
    x = as_point(cert.point)
    if len(x) != family.dimension:
        return Verification(False, "dimension")
    if len(cert.groups) != cert.r:
        return Verification(False, "group count differs from r")
    used = set()
    for g in cert.groups:
        if not g.members:
            return Verification(False, "nonemptiness")
        if any(not 0 <= i < n for i in g.members):
            return Verification(False, "index out of range")
        if used & set(g.members) or len(set(g.members)) != len(g.members):
            return Verification(False, "disjointness")
        used |= set(g.members)
    complex = build_arrangement(family, max_hyperplanes)
    for g in cert.groups:
        if g.kind == "contains":
            if g.witness not in g.members or not contains(family[g.witness], x):
                return Verification(False, "containment witness")
        elif g.kind == "surrounds":
            if any(contains(family[i], x) for i in g.members):
                return Verification(False, "containment precludes surround")
            sub = build_arrangement(family.subfamily(g.members), max_hyperplanes)
            if not surrounds(range(len(g.members)), x, sub):
                return Verification(False, "surround")
        else:
            return Verification(False, f"unknown verdict {g.kind!r}")
    if depth(x, family, complex).value < cert.r:
        return Verification(False, "depth below r")
    return Verification(True)


# -- surrounding simplex -------------------------------------------------------------

@dataclass(frozen=True)
class SimplexCertificate:
    base: Point
    closest: tuple[Point, ...]
    halfspaces: tuple[HalfSpace, ...]
    vertices: tuple[Point, ...]
    closest_barycentric: tuple[Fraction, ...]
    simplex_barycentric: tuple[Fraction, ...]


@dataclass(frozen=True)
class Lemma5Result:
    certificate: SimplexCertificate | None
    reason: str
    surround: SurroundVerdict | None = None

    def __bool__(self):
        return self.certificate is not None


def barycentric(pts: Sequence[Point], b: Point) -> tuple[Fraction, ...] | None:
    """Affine coordinates of b in d+1 affinely independent points, else None."""
    d = len(b)
    m = [[p[j] for p in pts] for j in range(d)] + [[Fraction(1)] * len(pts)]
    return linalg.solve(m, list(b) + [Fraction(1)])


def lemma_surround_certificate(family: Family, b: Sequence,
                               max_hyperplanes: int = DEFAULT_MAX_HYPERPLANES) -> Lemma5Result:
    """Simplex certificate that d+1 compact Pi_d bodies surround b.

    Requires b strictly inside the hull of its nearest points g_i; picks
    x_i in the intersection of all bodies but the i-th, so the facet opposite
    x_i lies in body i and b sits strictly inside the simplex.
    """
    b = as_point(b)
    d = family.dimension
    if len(family) != d + 1:
        raise ValueError(f"need exactly {d + 1} bodies, got {len(family)}")
    if not check_pik(family, d):
        return Lemma5Result(None, "pi_d fails")
    if any(contains(body, b) for body in family):
        return Lemma5Result(None, "hypothesis fails: b lies in a body")
    gs = tuple(closest_point(body, b) for body in family)
    lam = barycentric(gs, b)
    if lam is None or any(v <= 0 for v in lam):
        return Lemma5Result(None, "hypothesis fails: b not interior to the hull of nearest points")
    hs = tuple(support_halfspace(body, b) for body in family)
    xs = []
    for i in range(d + 1):
        p = common_point([family[j] for j in range(d + 1) if j != i], d)
        xs.append(p)
    mu = barycentric(xs, b)
    cert = SimplexCertificate(b, gs, hs, tuple(xs), lam, mu)
    check = check_simplex_certificate(cert, family)
    if not check:
        raise AssertionError(f"simplex certificate failed its own check: {check.reason}")
    cx = build_arrangement(family, max_hyperplanes)
    verdict = surrounds(range(d + 1), b, cx)
    if not verdict:
        raise AssertionError("simplex certificate issued but the surround check disagrees")
    return Lemma5Result(cert, "ok", verdict)


def check_simplex_certificate(cert: SimplexCertificate, family: Family) -> Verification:
    d = family.dimension
    b = as_point(cert.base)
    if len(cert.closest) != d + 1 or len(cert.vertices) != d + 1:
        return Verification(False, "wrong number of points")
    for i, body in enumerate(family):
        if closest_point(body, b) != as_point(cert.closest[i]):
            return Verification(False, f"closest point {i}")
        h = cert.halfspaces[i]
        if h.contains(b) or not all(h.contains(v) for v in vertices(body)):
            return Verification(False, f"separating half-space {i}")
    if lp_feasible(list(cert.halfspaces), dim=d) is not None:
        return Verification(False, "separating half-spaces intersect")
    lam = barycentric([as_point(g) for g in cert.closest], b)
    if lam is None or any(v <= 0 for v in lam):
        return Verification(False, "b not interior to hull of nearest points")
    for i, x in enumerate(cert.vertices):
        for j, body in enumerate(family):
            if j != i and not contains(body, as_point(x)):
                return Verification(False, f"vertex {i} not in body {j}")
    mu = barycentric([as_point(x) for x in cert.vertices], b)
    if mu is None or any(v <= 0 for v in mu):
        return Verification(False, "b not strictly inside the simplex")
    return Verification(True)


# -- transversal flats ---------------------------------------------------------------

@dataclass(frozen=True)
class TransversalCertificate:
    flat: Flat
    partitions: tuple[tuple[GroupVerdict, ...], ...]
    r_values: tuple[int, ...]
    common_prime: int | None
    hypotheses: dict = field(default_factory=dict)


def common_prime(rs: Sequence[int]) -> int | None:
    """Least prime p with every r a power of p (r = 1 counts as p^0)."""
    bases = {prime_base(r) for r in rs if r > 1}
    if any(p is None for p in bases):
        return None
    if len(bases) > 1:
        return None
    return bases.pop() if bases else 2


def _hypotheses(rs, d, m):
    p = common_prime(rs)
    flags = {"p_is_2": p == 2, "codim_even": (d - m) % 2 == 0, "m_is_zero": m == 0}
    flags["guaranteed"] = p is not None and any(flags.values())
    return p, flags


def _primitive(v: Sequence[int]) -> tuple[int, ...] | None:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return None
    v = [x // g for x in v]
    lead = next(x for x in v if x)
    return tuple(-x for x in v) if lead < 0 else tuple(v)


def _integral(v: Sequence[Fraction]) -> tuple[int, ...] | None:
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return _primitive([int(x * den) for x in v])


def candidate_directions(families: Sequence[Family], farey_order: int = 3) -> list[tuple[int, ...]]:
    """Line directions for m = 1: facet-parallel ones, vertex differences and
    their perpendiculars, then a small integer grid."""
    d = families[0].dimension
    seen: dict[tuple, None] = {}

    def add(v):
        p = _integral(v)
        if p is not None:
            seen.setdefault(p, None)

    normals = [h.normal for fam in families for body in fam for h in body.halfspaces]
    if d == 2:
        for a in normals:
            add((-a[1], a[0]))
    else:
        for a, c in combinations(normals, 2):
            add(linalg_cross(a, c))
    verts = [v for fam in families for body in fam for v in vertices(body)]
    diffs = []
    for p, q in combinations(sorted(set(verts)), 2):
        diffs.append(linalg.sub(q, p))
    for v in diffs:
        add(v)
    if d == 2:
        for v in diffs:
            add((-v[1], v[0]))
    rng = range(-farey_order, farey_order + 1)
    for v in product(rng, repeat=d):
        add(v)
    return list(seen)


def linalg_cross(a, c):
    return (a[1] * c[2] - a[2] * c[1], a[2] * c[0] - a[0] * c[2], a[0] * c[1] - a[1] * c[0])


def transversal_search(families: Sequence[Family], m: int, *, directions=None, farey_order: int = 3,
                       max_bodies: int = DEFAULT_MAX_BODIES,
                       max_hyperplanes: int = DEFAULT_MAX_HYPERPLANES) -> TransversalCertificate | None:
    """Search for an m-flat with, per family i, r_i disjoint groups meeting or surrounding it.

    The flat search is incomplete (a finite direction menu and the cell
    representatives of the projected arrangement); any flat returned is
    verified exactly.  None means nothing was found, never a refutation.
    """
    families = list(families)
    if len(families) != m + 1:
        raise ValueError(f"need m + 1 = {m + 1} families, got {len(families)}")
    d = families[0].dimension
    if any(f.dimension != d for f in families):
        raise DimensionError("families of mixed dimension")
    if not 0 <= m < d:
        raise ValueError("need 0 <= m < d")
    k = d - m
    for f in families:
        if len(f) > max_bodies:
            raise SearchCapError(f"{len(f)} bodies exceed the partition search cap of {max_bodies}")
        if not check_pik(f, k):
            raise ValueError(f"a family fails the Pi_{k} hypothesis")
    rs = tuple(ceil_div(len(f), k + 1) for f in families)
    p, flags = _hypotheses(rs, d, m)
    if m == 0:
        search = partition_search(families[0], rs[0], max_bodies=max_bodies, max_hyperplanes=max_hyperplanes) \
            if rs[0] else None
        if rs[0] and search.certificate is None:
            return None
        x = search.certificate.point if rs[0] else tuple(Fraction(0) for _ in range(d))
        groups = search.certificate.groups if rs[0] else ()
        groups = tuple(GroupVerdict(g.members, "intersects" if g.kind == "contains" else g.kind,
                                    g.witness, g.surround) for g in groups)
        return TransversalCertificate(Flat(x, ()), (groups,), rs, p, flags)
    if (d, m) not in ((2, 1), (3, 1)):
        raise NotImplementedError(f"transversal search supports d=2,m=1 and d=3,m=1, not d={d},m={m}")
    if directions is None:
        directions = candidate_directions(families, farey_order)
    for direction in directions:
        frame = ProjectionFrame.along([direction], d)
        projected = [project_family(f, frame) for f in families]
        offsets, union_bodies = [], []
        for i, pf in enumerate(projected):
            offsets.append(len(union_bodies))
            union_bodies.extend(b.renamed(f"{i}:{b.name}") for b in pf)
        try:
            union = build_arrangement(Family(k, tuple(union_bodies)), max_hyperplanes)
            per = [build_arrangement(pf, max_hyperplanes) for pf in projected]
        except ArrangementCapError:
            continue
        per_depth = [depth_map(cx) for cx in per]
        order = sorted(union.cells, key=lambda c: (len(c.covered_by), c.sign))
        memos = [dict() for _ in families]
        for cell in order:
            u = cell.representative
            cells_i = [cx.locate(u) for cx in per]
            if any(per_depth[i][c.index] < rs[i] for i, c in enumerate(cells_i)):
                continue
            packs = []
            for i, (cx, c) in enumerate(zip(per, cells_i)):
                packed = _partition_at(cx, c.index, rs[i], list(range(len(families[i]))), memos[i])
                if packed is None:
                    break
                packs.append(packed)
            else:
                flat = Flat(frame.lift(u), (tuple(Fraction(v) for v in direction),))
                parts = []
                for i, packed in enumerate(packs):
                    gv = []
                    for members, kind in packed:
                        if kind == "contains":
                            gv.append(GroupVerdict(tuple(members), "intersects", witness=members[0]))
                        else:
                            gv.append(GroupVerdict(tuple(members), "surrounds",
                                                   surround=surrounds_flat(families[i], members, flat, max_hyperplanes)))
                    parts.append(tuple(gv))
                return TransversalCertificate(flat, tuple(parts), rs, p, flags)
    return None


def flat_meets(body: ConvexBody, flat: Flat) -> bool:
    """Exact test of body ∩ flat ≠ ∅ via an LP in the flat's parameters."""
    if not flat.directions:
        return contains(body, flat.basepoint)
    hs = []
    for h in body.halfspaces:
        a = tuple(linalg.dot(h.normal, v) for v in flat.directions)
        rhs = h.offset - linalg.dot(h.normal, flat.basepoint)
        if any(a):
            hs.append(HalfSpace(a, rhs))
        elif rhs < 0:
            return False
    return not hs or lp_feasible(hs) is not None


def verify_transversal(cert: TransversalCertificate, families: Sequence[Family],
                       max_hyperplanes: int = DEFAULT_MAX_HYPERPLANES) -> Verification:
    if len(families) != len(cert.partitions):
        return Verification(False, "family count")
    k = cert.flat.ambient_dim - cert.flat.dim
    for i, (fam, groups) in enumerate(zip(families, cert.partitions)):
        if len(groups) != ceil_div(len(fam), k + 1) or cert.r_values[i] != len(groups):
            return Verification(False, f"family {i}: group count")
        used = set()
        for g in groups:
            if not g.members or any(not 0 <= j < len(fam) for j in g.members):
                return Verification(False, f"family {i}: bad group")
            if used & set(g.members):
                return Verification(False, f"family {i}: disjointness")
            used |= set(g.members)
            if g.kind == "intersects":
                if g.witness not in g.members or not flat_meets(fam[g.witness], cert.flat):
                    return Verification(False, f"family {i}: intersection witness")
                v = surrounds_flat(fam, [g.witness], cert.flat, max_hyperplanes)
                if v.evidence != "containment":
                    return Verification(False, f"family {i}: projection disagrees with intersection")
            elif g.kind == "surrounds":
                if any(flat_meets(fam[j], cert.flat) for j in g.members):
                    return Verification(False, f"family {i}: containment precludes surround")
                if not surrounds_flat(fam, g.members, cert.flat, max_hyperplanes):
                    return Verification(False, f"family {i}: surround")
            else:
                return Verification(False, f"family {i}: unknown verdict {g.kind!r}")
    return Verification(True)


# -- halfspace (Tukey) depth ----------------------------------------------------------

def _lcm_den(values) -> int:
    den = 1
    for v in values:
        q = Fraction(v).denominator
        den = den * q // gcd(den, q)
    return den


def _cross_int(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _normals(vecs, dim):
    basis = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    pool = list(dict.fromkeys(list(vecs) + basis))
    out = {}
    if dim == 2:
        for v in pool:
            out.setdefault((-v[1], v[0]), None)
    else:
        for a, b in combinations(pool, 2):
            c = _cross_int(a, b)
            if any(c):
                out.setdefault(c, None)
    return list(out)


def _perp_basis(w, dim):
    if dim == 2:
        return [(-w[1], w[0])]
    cands = [_cross_int(w, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    cands = [c for c in cands if any(c)]
    first = cands[0]
    second = next(c for c in cands[1:] if any(_cross_int(first, c)))
    return [first, second]


def _min_closed_count(ys, dim) -> int:
    """min over generic directions u of #{y : u.y >= 0}, for integer vectors ys."""
    if dim == 1:
        pos = sum(1 for y in ys if y[0] > 0)
        neg = sum(1 for y in ys if y[0] < 0)
        return len(ys) - pos - neg + min(pos, neg)
    nonzero = [y for y in ys if any(y)]
    zeros = len(ys) - len(nonzero)
    if not nonzero:
        return len(ys)
    best = len(ys)
    for w in _normals(nonzero, dim):
        for s in (1, -1):
            pos, on = 0, []
            for y in nonzero:
                v = s * sum(a * b for a, b in zip(w, y))
                if v > 0:
                    pos += 1
                elif v == 0:
                    on.append(y)
            if zeros + pos >= best:
                continue
            basis = _perp_basis(w, dim)
            sub = [tuple(sum(a * b for a, b in zip(e, y)) for e in basis) for y in on]
            best = min(best, zeros + pos + _min_closed_count(sub, dim - 1))
    return best


def tukey_depth(points: Sequence[Sequence], x: Sequence) -> int:
    """Fewest points of the set in a closed half-space whose boundary passes through x."""
    x = as_point(x)
    pts = [as_point(p) for p in points]
    d = len(x)
    if d not in (1, 2, 3):
        raise DimensionError("halfspace depth supports dimensions 1 to 3")
    if any(len(p) != d for p in pts):
        raise DimensionError("point dimension mismatch")
    if not pts:
        return 0
    ys = [linalg.sub(p, x) for p in pts]
    den = _lcm_den(v for y in ys for v in y)
    ints = [tuple(int(v * den) for v in y) for y in ys]
    return _min_closed_count(ints, d)


@dataclass(frozen=True)
class TukeyReport:
    points: tuple[Point, ...]
    center: Point
    depth: int
    bound: int
    bound_met: bool


def _spanned_flats(pts, d):
    """Hyperplanes a.x = b through d affinely independent points, deduplicated."""
    out = {}
    for combo in combinations(pts, d):
        base = combo[0]
        rows = [linalg.sub(p, base) for p in combo[1:]]
        ns = linalg.nullspace(rows, d) if rows else []
        if len(ns) != 1:
            continue
        a = ns[0]
        lead = next(v for v in a if v)
        a = tuple(v / lead for v in a)
        out.setdefault((a, linalg.dot(a, base)), None)
    return list(out)


def discrete_central_point(points: Sequence[Sequence], max_candidates: int = 50000) -> TukeyReport:
    """Maximize halfspace depth over data points and intersections of spanned hyperplanes."""
    pts = [as_point(p) for p in points]
    if not pts:
        raise ValueError("empty point set")
    d = len(pts[0])
    if d not in (1, 2, 3):
        raise DimensionError("halfspace depth supports dimensions 1 to 3")
    cands = dict.fromkeys(pts)
    if d > 1:
        flats = _spanned_flats(sorted(set(pts)), d)
        for combo in combinations(flats, d):
            p = linalg.solve([a for a, _ in combo], [b for _, b in combo])
            if p is not None:
                cands.setdefault(p, None)
            if len(cands) > max_candidates:
                raise SearchCapError(f"more than {max_candidates} candidate centers")
    best, best_depth = None, -1
    for c in sorted(cands):
        t = tukey_depth(pts, c)
        if t > best_depth:
            best, best_depth = c, t
    bound = ceil_div(len(pts), d + 1)
    return TukeyReport(tuple(pts), best, best_depth, bound, best_depth >= bound)


# -- replication -------------------------------------------------------------------

def replicate_family(family: Family, k: int) -> Family:
    """Each body repeated k times (names suffixed ``#1..#k``); k = 1 returns the family."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k == 1:
        return family
    return Family(family.dimension,
                  tuple(b.renamed(f"{b.name}#{j + 1}") for b in family for j in range(k)))
