"""Exact rational simplex with Bland's anti-cycling pivot rule.

Two entry points:

* :func:`solve_max_slack` -- maximize over ``Ax <= b, x >= 0`` with ``b >= 0``
  (slack basis is immediately feasible, no phase 1), returning primal and the
  dual multipliers read off the final reduced-cost row.
* :func:`solve_min_general` -- two-phase minimization over mixed
  ``<= / == / >=`` rows; value and primal only.

All data is :class:`fractions.Fraction`; every comparison is exact.  Bland's
rule (smallest eligible entering index, smallest basic variable among ratio
ties) guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class UnboundedError(ArithmeticError):
    """The linear program has unbounded objective."""


class InfeasibleError(ArithmeticError):
    """The linear program has no feasible point."""


@dataclass
class LPResult:
    objective: Fraction
    x: list[Fraction]
    duals: list[Fraction]
    pivots: int


def _pivot(rows, z, basis, pr, pc):
    piv = rows[pr][pc]
    inv = ONE / piv
    rows[pr] = [v * inv for v in rows[pr]]
    prow = rows[pr]
    for i in range(len(rows)):
        if i != pr:
            f = rows[i][pc]
            if f != 0:
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
    f = z[pc]
    if f != 0:
        z[:] = [a - f * b for a, b in zip(z, prow)]
    basis[pr] = pc


def _bland_min(rows, z, basis, ncols):
    """Run minimizing simplex to optimality; returns pivot count."""
    pivots = 0
    while True:
        pc = -1
        for j in range(ncols):
            if z[j] < 0:
                pc = j
                break
        if pc < 0:
            return pivots
        pr = -1
        best = None
        for i, row in enumerate(rows):
            a = row[pc]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[pr]):
                    best = ratio
                    pr = i
        if pr < 0:
            raise UnboundedError("objective unbounded below")
        _pivot(rows, z, basis, pr, pc)
        pivots += 1


def solve_max_slack(c: Sequence[Fraction], A: Sequence[Sequence[Fraction]],
                    b: Sequence[Fraction]) -> LPResult:
    """Maximize ``c.x`` subject to ``Ax <= b``, ``x >= 0``, requiring ``b >= 0``.

    ``duals[i]`` is the optimal multiplier of row i (``>= 0``, with
    ``duals . b == objective`` by strong duality).
    """
    m, n = len(A), len(c)
    if any(bi < 0 for bi in b):
        raise ValueError("slack start needs b >= 0")
    ncols = n + m
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]] + [ZERO] * m + [Fraction(b[i])]
        row[n + i] = ONE
        rows.append(row)
    basis = [n + i for i in range(m)]
    # minimize -c.x; slack costs are zero so the initial pricing is direct
    z = [-Fraction(v) for v in c] + [ZERO] * m + [ZERO]
    pivots = _bland_min(rows, z, basis, ncols)
    x = [ZERO] * ncols
    for i, bi in enumerate(basis):
        x[bi] = rows[i][-1]
    objective = sum((Fraction(ci) * xi for ci, xi in zip(c, x[:n])), ZERO)
    duals = [z[n + i] for i in range(m)]
    return LPResult(objective=objective, x=x[:n], duals=duals, pivots=pivots)


def solve_min_general(c: Sequence[Fraction],
                      constraints: Sequence[tuple[Sequence[Fraction], str, Fraction]]) -> LPResult:
    """Minimize ``c.x`` over rows ``(coeffs, sense, rhs)`` with ``x >= 0``.

    ``sense`` is one of ``"<=", ">=", "=="``.  Full two-phase method; the
    duals slot of the result is left empty.
    """
    n = len(c)
    norm = []
    for coeffs, sense, rhs in constraints:
        coeffs = [Fraction(v) for v in coeffs]
        rhs = Fraction(rhs)
        if sense not in ("<=", ">=", "=="):
            raise ValueError(f"bad sense {sense!r}")
        if rhs < 0:
            coeffs = [-v for v in coeffs]
            rhs = -rhs
            sense = {"<=": ">=", ">=": "<=", "==": "=="}[sense]
        norm.append((coeffs, sense, rhs))

    m = len(norm)
    n_slack = sum(1 for _, s, _ in norm if s == "<=")
    n_surplus = sum(1 for _, s, _ in norm if s == ">=")
    n_art = sum(1 for _, s, _ in norm if s in (">=", "=="))
    ncols = n + n_slack + n_surplus + n_art
    art_start = n + n_slack + n_surplus

    rows = []
    basis = []
    si = n
    ai = art_start
    art_rows = []
    for i, (coeffs, sense, rhs) in enumerate(norm):
        row = coeffs + [ZERO] * (ncols - n) + [rhs]
        if sense == "<=":
            row[si] = ONE
            basis.append(si)
            si += 1
        elif sense == ">=":
            row[si] = -ONE
            si += 1
            row[ai] = ONE
            basis.append(ai)
            art_rows.append(i)
            ai += 1
        else:
            row[ai] = ONE
            basis.append(ai)
            art_rows.append(i)
            ai += 1
        rows.append(row)

    pivots = 0
    if n_art:
        # phase 1: minimize the artificial total, priced out over the art basis
        z1 = [ZERO] * (ncols + 1)
        for j in range(art_start, ncols):
            z1[j] = ONE
        for i in art_rows:
            z1 = [a - b for a, b in zip(z1, rows[i])]
        pivots += _bland_min(rows, z1, basis, ncols)
        if -z1[-1] != 0:
            raise InfeasibleError("phase 1 ended with positive artificial mass")
        # clear any artificial still basic at zero level
        drop = []
        for i in range(m):
            if basis[i] >= art_start:
                pc = next((j for j in range(art_start) if rows[i][j] != 0), None)
                if pc is None:
                    drop.append(i)
                else:
                    _pivot(rows, z1, basis, i, pc)
                    pivots += 1
        for i in reversed(drop):
            del rows[i]
            del basis[i]
        rows = [row[:art_start] + row[-1:] for row in rows]
        ncols = art_start

    z = [Fraction(v) for v in c] + [ZERO] * (ncols - n) + [ZERO]
    for i, bi in enumerate(basis):
        if z[bi] != 0:
            f = z[bi]
            z = [a - f * b for a, b in zip(z, rows[i])]
    pivots += _bland_min(rows, z, basis, ncols)

    x = [ZERO] * ncols
    for i, bi in enumerate(basis):
        x[bi] = rows[i][-1]
    objective = sum((Fraction(ci) * xi for ci, xi in zip(c, x[:n])), ZERO)
    return LPResult(objective=objective, x=x[:n], duals=[], pivots=pivots)
