"""Exact covering LP / ILP solver used for rule synthesis.

minimize    sum_i cost_i * w_i
subject to  sum_{i covering r} w_i >= 1   for every requirement r
            0 <= w_i <= 1

All arithmetic is over Fractions: a primal two-phase simplex with Bland's
rule (terminating, deterministic), and for the integral variant a
depth-first branch and bound on fractional variables bounded by LP
relaxations, with plain exhaustive set-cover search when few branches
remain.  Costs are strictly positive, which makes the upper bounds w_i <= 1
vacuous at optimality: any optimal solution exceeding 1 could be capped and
improved, so the bounds are asserted rather than modeled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

EXHAUSTIVE_CAP = 20


@dataclass(frozen=True)
class CoverSolution:
    weights: tuple[Fraction, ...]
    objective: Fraction


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    tableau[row] = [x / piv for x in tableau[row]]
    pivot_row = tableau[row]
    for r, vals in enumerate(tableau):
        if r != row and vals[col] != 0:
            f = vals[col]
            tableau[r] = [a - f * b for a, b in zip(vals, pivot_row)]
    basis[row] = col


def _optimize(tableau: list[list[Fraction]], basis: list[int], n_cols: int) -> bool:
    """Run simplex to optimality (Bland's rule); False means unbounded."""
    m = len(tableau) - 1
    obj = tableau[m]
    while True:
        col = next((j for j in range(n_cols) if obj[j] < 0), None)
        if col is None:
            return True
        row = None
        best: Fraction | None = None
        for i in range(m):
            coeff = tableau[i][col]
            if coeff > 0:
                ratio = tableau[i][-1] / coeff
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best, row = ratio, i
        if row is None:
            return False
        _pivot(tableau, basis, row, col)
        obj = tableau[m]


def solve_cover_lp(
    costs: Sequence[Fraction], cover_masks: Sequence[int], n_reqs: int
) -> Optional[CoverSolution]:
    """LP relaxation optimum, or None when some requirement is uncoverable.

    cover_masks[i] has bit r set when branch i satisfies requirement r.
    """
    n = len(costs)
    covered = 0
    for mask in cover_masks:
        covered |= mask
    if covered & ((1 << n_reqs) - 1) != (1 << n_reqs) - 1:
        return None
    if n_reqs == 0:
        return CoverSolution(tuple(Fraction(0) for _ in range(n)), Fraction(0))

    # columns: w_0..w_{n-1}, surplus s_r, artificial t_r
    n_cols = n + 2 * n_reqs
    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    for r in range(n_reqs):
        row = [Fraction(0)] * (n_cols + 1)
        for i in range(n):
            if cover_masks[i] >> r & 1:
                row[i] = Fraction(1)
        row[n + r] = Fraction(-1)
        row[n + n_reqs + r] = Fraction(1)
        row[-1] = Fraction(1)
        tableau.append(row)
        basis.append(n + n_reqs + r)

    # phase 1: minimize the artificials
    obj = [Fraction(0)] * (n_cols + 1)
    for r in range(n_reqs):
        obj[n + n_reqs + r] = Fraction(1)
    tableau.append(obj)
    for r in range(n_reqs):
        tableau[-1] = [a - b for a, b in zip(tableau[-1], tableau[r])]
    if not _optimize(tableau, basis, n_cols):  # pragma: no cover - bounded by design
        raise AssertionError("phase-1 LP cannot be unbounded")
    if -tableau[-1][-1] != 0:
        return None  # infeasible; unreachable past the cover pre-check
    # drive leftover artificials out of the basis
    for i in range(n_reqs):
        if basis[i] >= n + n_reqs:
            col = next(
                (j for j in range(n + n_reqs) if tableau[i][j] != 0),
                None,
            )
            if col is not None:
                _pivot(tableau, basis, i, col)

    # phase 2: original objective over real + surplus columns
    n_cols2 = n + n_reqs
    obj = [Fraction(0)] * (n_cols + 1)
    for i in range(n):
        obj[i] = Fraction(costs[i])
    tableau[-1] = obj
    for i in range(n_reqs):
        if basis[i] < n and costs[basis[i]] != 0:
            f = Fraction(costs[basis[i]])
            tableau[-1] = [a - f * b for a, b in zip(tableau[-1], tableau[i])]
    if not _optimize(tableau, basis, n_cols2):  # pragma: no cover
        raise AssertionError("covering LP with positive costs cannot be unbounded")

    weights = [Fraction(0)] * n
    for i in range(n_reqs):
        if basis[i] < n:
            weights[basis[i]] = tableau[i][-1]
    objective = -tableau[-1][-1]
    assert all(0 <= w <= 1 for w in weights)
    assert objective == sum(c * w for c, w in zip(costs, weights))
    return CoverSolution(tuple(weights), objective)


def _exhaustive_cover(
    costs: Sequence[Fraction], cover_masks: Sequence[int], n_reqs: int
) -> tuple[tuple[int, ...], Fraction]:
    """Optimal 0/1 selection by set-cover DFS with cost pruning."""
    full = (1 << n_reqs) - 1
    coverers: list[list[int]] = [[] for _ in range(n_reqs)]
    for i, mask in enumerate(cover_masks):
        for r in range(n_reqs):
            if mask >> r & 1:
                coverers[r].append(i)
    best_cost: list[Fraction | None] = [None]
    best_pick: list[tuple[int, ...]] = [()]

    def rec(uncovered: int, banned: int, picked: tuple[int, ...], cost: Fraction):
        if best_cost[0] is not None and cost >= best_cost[0]:
            return
        if uncovered == 0:
            best_cost[0] = cost
            best_pick[0] = picked
            return
        r = (uncovered & -uncovered).bit_length() - 1
        for i in coverers[r]:
            if banned >> i & 1:
                continue
            rec(
                uncovered & ~cover_masks[i],
                banned | (1 << i),
                picked + (i,),
                cost + costs[i],
            )
            # once branch i is skipped for requirement r it stays excluded in
            # later alternatives of this frame, avoiding duplicate covers
            banned |= 1 << i

    rec(full, 0, (), Fraction(0))
    if best_cost[0] is None:
        return (), Fraction(-1)
    return best_pick[0], best_cost[0]


def solve_cover_ilp(
    costs: Sequence[Fraction], cover_masks: Sequence[int], n_reqs: int
) -> Optional[CoverSolution]:
    """Optimal binary cover, or None when infeasible."""
    n = len(costs)
    lp = solve_cover_lp(costs, cover_masks, n_reqs)
    if lp is None:
        return None
    if all(w in (0, 1) for w in lp.weights):
        return lp
    if n <= EXHAUSTIVE_CAP:
        pick, cost = _exhaustive_cover(costs, cover_masks, n_reqs)
        weights = [Fraction(0)] * n
        for i in pick:
            weights[i] = Fraction(1)
        return CoverSolution(tuple(weights), cost)

    best: list[Optional[CoverSolution]] = [None]

    def rec(fixed_one: frozenset[int], fixed_zero: frozenset[int]):
        free = [i for i in range(n) if i not in fixed_one and i not in fixed_zero]
        base_mask = 0
        base_cost = Fraction(0)
        for i in fixed_one:
            base_mask |= cover_masks[i]
            base_cost += costs[i]
        remaining = [r for r in range(n_reqs) if not (base_mask >> r & 1)]
        remap = {r: j for j, r in enumerate(remaining)}
        sub_masks = []
        for i in free:
            m = 0
            for r in remaining:
                if cover_masks[i] >> r & 1:
                    m |= 1 << remap[r]
            sub_masks.append(m)
        lp_sub = solve_cover_lp([costs[i] for i in free], sub_masks, len(remaining))
        if lp_sub is None:
            return
        bound = base_cost + lp_sub.objective
        if best[0] is not None and bound >= best[0].objective:
            return
        if all(w in (0, 1) for w in lp_sub.weights):
            weights = [Fraction(0)] * n
            for i in fixed_one:
                weights[i] = Fraction(1)
            for j, i in enumerate(free):
                weights[i] = lp_sub.weights[j]
            best[0] = CoverSolution(tuple(weights), bound)
            return
        frac = free[next(j for j, w in enumerate(lp_sub.weights) if w not in (0, 1))]
        rec(fixed_one | {frac}, fixed_zero)
        rec(fixed_one, fixed_zero | {frac})

    rec(frozenset(), frozenset())
    return best[0]
