"""Exact two-phase simplex over the rationals.

Pivoting follows Bland's rule (lowest eligible index enters, ties in the
ratio test broken by lowest basic index), so the method terminates on
degenerate problems without any perturbation.  Instances in this package
have a few dozen rows at most; the dense tableau is fine at that size.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _pivot(rows, z, basis, r, j):
    prow = rows[r]
    p = prow[j]
    if p != 1:
        prow = [v / p for v in prow]
        rows[r] = prow
    nz = [k for k, v in enumerate(prow) if v]
    for i, row in enumerate(rows):
        if i != r:
            f = row[j]
            if f:
                for k in nz:
                    row[k] -= f * prow[k]
    f = z[j]
    if f:
        for k in nz:
            z[k] -= f * prow[k]
    basis[r] = j


def _reduced_costs(rows, basis, cost, width):
    z = list(cost) + [_ZERO]
    for row, b in zip(rows, basis):
        cb = cost[b]
        if cb:
            for k in range(width + 1):
                if row[k]:
                    z[k] -= cb * row[k]
    return z


def _run(rows, z, basis, allowed):
    """Primal simplex on a feasible tableau; returns False if unbounded."""
    width = len(z) - 1
    while True:
        j = next((k for k in range(width) if allowed[k] and z[k] > 0), None)
        if j is None:
            return True
        best = None
        for i, row in enumerate(rows):
            a = row[j]
            if a > 0:
                ratio = row[width] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        _pivot(rows, z, basis, best[1], j)


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """Maximize ``c.x`` subject to ``A_ub x <= b_ub`` and ``A_eq x == b_eq``.

    Variables are free.  Returns an :class:`LPResult` whose ``x`` satisfies
    every constraint exactly when the status is not ``infeasible``.
    """
    n = len(c)
    m_ub, m_eq = len(A_ub), len(A_eq)
    if len(b_ub) != m_ub or len(b_eq) != m_eq:
        raise ValueError("constraint matrix and right-hand side lengths differ")
    for row in list(A_ub) + list(A_eq):
        if len(row) != n:
            raise ValueError("constraint dimension mismatch")

    nstruct = 2 * n
    nslack = m_ub
    rows = []
    basis = []
    needs_art = []
    for i in range(m_ub):
        row = [_ZERO] * (nstruct + nslack)
        for j, v in enumerate(A_ub[i]):
            v = Fraction(v)
            row[j] = v
            row[n + j] = -v
        row[nstruct + i] = _ONE
        rhs = Fraction(b_ub[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            needs_art.append(len(rows))
            basis.append(None)
        else:
            basis.append(nstruct + i)
        rows.append(row + [rhs])
    for i in range(m_eq):
        row = [_ZERO] * (nstruct + nslack)
        for j, v in enumerate(A_eq[i]):
            v = Fraction(v)
            row[j] = v
            row[n + j] = -v
        rhs = Fraction(b_eq[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        needs_art.append(len(rows))
        basis.append(None)
        rows.append(row + [rhs])

    base_width = nstruct + nslack
    nart = len(needs_art)
    width = base_width + nart
    for row in rows:
        rhs = row.pop()
        row.extend([_ZERO] * nart)
        row.append(rhs)
    for k, r in enumerate(needs_art):
        rows[r][base_width + k] = _ONE
        basis[r] = base_width + k

    if nart:
        cost1 = [_ZERO] * base_width + [-_ONE] * nart
        z = _reduced_costs(rows, basis, cost1, width)
        _run(rows, z, basis, [True] * width)
        if z[width] != 0:  # -(phase one optimum) != 0: artificials stay positive
            return LPResult(INFEASIBLE)
        # drive zero-valued artificials out of the basis
        r = 0
        while r < len(rows):
            if basis[r] >= base_width:
                j = next((k for k in range(base_width) if rows[r][k] != 0), None)
                if j is None:
                    del rows[r]
                    del basis[r]
                    continue
                dummy = [_ZERO] * (width + 1)
                _pivot(rows, dummy, basis, r, j)
            r += 1

    cost2 = [Fraction(v) for v in c] + [-Fraction(v) for v in c] + [_ZERO] * (nslack + nart)
    z = _reduced_costs(rows, basis, cost2, width)
    allowed = [k < base_width for k in range(width)]
    bounded = _run(rows, z, basis, allowed)

    values = [_ZERO] * width
    for row, b in zip(rows, basis):
        values[b] = row[width]
    x = tuple(values[j] - values[n + j] for j in range(n))
    if not bounded:
        return LPResult(UNBOUNDED, x, None)
    return LPResult(OPTIMAL, x, -z[width])
