"""Grid flood-fill escape oracle for planar instances.

Independent of the arrangement code: a grid cell is blocked when its closed
square meets an avoided body (so segments and points block too), and a
4-neighbour search runs from the cell of x to the edge of the box.  It is only
trustworthy when every gap and every distance between features exceeds four
grid steps.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import Iterable, Sequence

from .geometry import ConvexBody, DimensionError, Point, as_point, as_rational, clip_to_box, vertices


@dataclass(frozen=True)
class GridOracleConfig:
    lo: Point
    hi: Point
    step: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_point(self.lo))
        object.__setattr__(self, "hi", as_point(self.hi))
        object.__setattr__(self, "step", as_rational(self.step))
        if self.step <= 0:
            raise ValueError("grid step must be positive")
        if len(self.lo) != 2 or len(self.hi) != 2:
            raise DimensionError("the grid oracle is planar")
        if any(h - l < 2 * self.step for l, h in zip(self.lo, self.hi)):
            raise ValueError("grid box is too small")

    @classmethod
    def covering(cls, bodies: Iterable[ConvexBody], points: Iterable[Sequence], step, margin: int = 4):
        """Smallest box holding every vertex and point, widened by ``margin`` steps."""
        step = as_rational(step)
        pts = [as_point(p) for p in points]
        for b in bodies:
            pts.extend(vertices(b))
        if not pts:
            pts = [(Fraction(0), Fraction(0))]
        lo = tuple(min(p[j] for p in pts) - margin * step for j in range(2))
        hi = tuple(max(p[j] for p in pts) + margin * step for j in range(2))
        return cls(lo, hi, step)

    def covers(self, points: Iterable[Sequence], margin: int = 2) -> bool:
        m = margin * self.step
        return all(self.lo[j] + m <= p[j] <= self.hi[j] - m for p in points for j in range(2))


def _shifted(config: GridOracleConfig, x: Point) -> GridOracleConfig:
    lo = list(config.lo)
    for j in range(2):
        if ((x[j] - lo[j]) / config.step).denominator == 1:
            lo[j] -= config.step / 3
    return GridOracleConfig(tuple(lo), config.hi, config.step)


def grid_escape_oracle(x: Sequence, avoid_bodies: Sequence[ConvexBody], config: GridOracleConfig) -> bool:
    x = as_point(x)
    if len(x) != 2:
        raise DimensionError("the grid oracle is planar")
    cfg = _shifted(config, x)
    step = cfg.step
    nx = [int(-(-(cfg.hi[j] - cfg.lo[j]) // step)) for j in range(2)]
    blocked = set()
    for body in avoid_bodies:
        blocked |= _blocked_cells(body, cfg, nx)

    def open_cell(i, j):
        return (i, j) not in blocked

    start = tuple(floor((x[j] - cfg.lo[j]) / step) for j in range(2))
    if not all(0 <= start[j] < nx[j] for j in range(2)):
        return True
    if not open_cell(*start):
        return False
    seen = {start}
    queue = deque([start])
    while queue:
        i, j = queue.popleft()
        if i in (0, nx[0] - 1) or j in (0, nx[1] - 1):
            return True
        for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if nb not in seen and open_cell(*nb):
                seen.add(nb)
                queue.append(nb)
    return False



def _scaled(values) -> list[int]:
    den = 1
    for v in values:
        den = den * v.denominator // gcd(den, v.denominator)
    return [int(v * den) for v in values]


def _blocked_cells(body: ConvexBody, cfg: GridOracleConfig, nx) -> set[tuple[int, int]]:
    """Cells whose closed square meets the body, by separating axes: the two
    coordinate axes (bounding ranges) and the body's own facet normals."""
    verts = vertices(clip_to_box(body, cfg.lo, cfg.hi))
    if not verts:
        return set()
    step = cfg.step
    rng = []
    for j in range(2):
        lo_v = min(v[j] for v in verts)
        hi_v = max(v[j] for v in verts)
        first = max(0, floor((lo_v - cfg.lo[j]) / step) - 1)
        last = min(nx[j] - 1, floor((hi_v - cfg.lo[j]) / step) + 1)
        rng.append([i for i in range(first, last + 1)
                    if cfg.lo[j] + i * step <= hi_v and cfg.lo[j] + (i + 1) * step >= lo_v])
    # square (i, j) misses {a.x <= b} iff a.(lo + step*(i, j)) + step*(min(a0,0) + min(a1,0)) > b
    rows = []
    for h in body.halfspaces:
        a0, a1 = h.normal
        c = (a0 * cfg.lo[0] + a1 * cfg.lo[1] - h.offset) / step + min(a0, 0) + min(a1, 0)
        rows.append(_scaled((a0, a1, c)))
    return {(i, j) for i in rng[0] for j in rng[1]
            if all(p * i + q * j + r <= 0 for p, q, r in rows)}
