"""Exact integer solvers: branch-and-bound over the simplex core, plus
ground-truth TSP oracles (exhaustive search and Held-Karp dynamic
programming over subsets).

The two oracle methods overlap on small sizes so they can cross-check
each other; both are exact. Budgets are hard: past n = 20 the oracle
raises BudgetExceededError rather than approximating, and branch-and-
bound returns a budget-exhausted status distinct from infeasible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional

import numpy as np

from .errors import BudgetExceededError, ValidationError
from .lp import (
    LinearProgram,
    LpOutcome,
    SolveStatus,
    solve_lp,
    validate_lp,
    with_bounds,
)
from .rationals import Rational
from .valleys import TspInstance

EXHAUSTIVE_CITY_LIMIT = 10
HELD_KARP_CITY_LIMIT = 20


@dataclass(frozen=True)
class IlpProblem:
    base: LinearProgram
    integer_vars: frozenset[int]


def ilp_problem(base: LinearProgram, integer_vars) -> IlpProblem:
    validate_lp(base)
    ints = frozenset(integer_vars)
    if any(not 0 <= j < base.num_vars for j in ints):
        raise ValidationError("integer_vars outside the variable range")
    return IlpProblem(base, ints)


def _fractional_part(value: Fraction) -> Fraction:
    return value - (value.numerator // value.denominator)


def solve_ilp(problem: IlpProblem, *, node_limit: int = 100_000) -> LpOutcome:
    """Depth-first branch-and-bound. Branches on the integer variable
    with the largest fractional part (ties to the lowest index), floor
    child explored first, so the search is deterministic. Exceeding
    node_limit yields BUDGET_EXHAUSTED with the incumbent so far."""
    if not isinstance(problem, IlpProblem):
        problem = ilp_problem(*problem)
    maximize = problem.base.sense == "max"

    def better(a: Rational, b: Rational) -> bool:
        return a > b if maximize else a < b

    best_point: Optional[tuple[Rational, ...]] = None
    best_value: Optional[Rational] = None
    stack = [problem.base]
    nodes = 0
    while stack:
        node = stack.pop()
        nodes += 1
        if nodes > node_limit:
            return LpOutcome(SolveStatus.BUDGET_EXHAUSTED, best_point, best_value)
        relaxed = solve_lp(node)
        if relaxed.status is SolveStatus.INFEASIBLE:
            continue
        if relaxed.status is SolveStatus.UNBOUNDED:
            # only reachable at the root: children are restrictions
            return LpOutcome(SolveStatus.UNBOUNDED)
        if best_value is not None and not better(relaxed.value, best_value):
            continue
        fractional = [
            (j, _fractional_part(relaxed.point[j]))
            for j in sorted(problem.integer_vars)
            if relaxed.point[j].denominator != 1
        ]
        if not fractional:
            best_point, best_value = relaxed.point, relaxed.value
            continue
        branch_var, _ = max(fractional, key=lambda item: (item[1], -item[0]))
        floor_val = Fraction(
            relaxed.point[branch_var].numerator
            // relaxed.point[branch_var].denominator
        )
        stack.append(with_bounds(node, branch_var, lower=floor_val + 1))
        stack.append(with_bounds(node, branch_var, upper=floor_val))
    if best_point is None:
        return LpOutcome(SolveStatus.INFEASIBLE)
    return LpOutcome(SolveStatus.OPTIMAL, best_point, best_value)


# ---------------------------------------------------------------------------
# TSP oracles

@dataclass(frozen=True)
class TourResult:
    tour: tuple[int, ...]
    cost: Rational


def _scaled_int_costs(inst: TspInstance) -> Optional[tuple[list[list[int]], int]]:
    """Scale the cost matrix to integers by the denominator lcm; None if
    the scaled magnitudes could overflow the int64 fast path."""
    scale = 1
    for row in inst.cost:
        for c in row:
            scale = lcm(scale, c.denominator)
    scaled = [
        [int(c.numerator * (scale // c.denominator)) for c in row]
        for row in inst.cost
    ]
    largest = max((abs(c) for row in scaled for c in row), default=0)
    if (largest + 1) * (inst.n + 1) >= 2**62:
        return None
    return scaled, scale


def _exhaustive_tour(cost, n: int) -> tuple[tuple[int, ...], object]:
    """Lexicographically first optimal tour by complete enumeration.
    Partial-cost pruning is sound only without negative arcs."""
    can_prune = all(cost[i][j] >= 0 for i in range(n) for j in range(n) if i != j)
    best = None
    best_tour = None
    for perm in itertools.permutations(range(1, n)):
        prev = 0
        total = 0
        abandoned = False
        for nxt in perm:
            total += cost[prev][nxt]
            if can_prune and best is not None and total >= best:
                abandoned = True
                break
            prev = nxt
        if abandoned:
            continue
        total += cost[prev][0]
        if best is None or total < best:
            best = total
            best_tour = (0,) + perm
    return best_tour, best


def _held_karp_tour(cost, n: int) -> tuple[tuple[int, ...], int]:
    """Subset dynamic programming on int64 costs (exact integer
    arithmetic; the caller guarantees no overflow)."""
    m = n - 1
    INF = 1 << 62
    between = np.array(
        [[cost[i + 1][j + 1] for j in range(m)] for i in range(m)], dtype=np.int64
    )
    from_start = np.array([cost[0][j + 1] for j in range(m)], dtype=np.int64)
    to_start = np.array([cost[j + 1][0] for j in range(m)], dtype=np.int64)
    size = 1 << m
    dp = np.full((size, m), INF, dtype=np.int64)
    for j in range(m):
        dp[1 << j][j] = from_start[j]
    full = size - 1
    for mask in range(1, size):
        row = dp[mask]
        candidates = (row[:, None] + between).min(axis=0)
        remaining = full ^ mask
        j = 0
        while remaining:
            if remaining & 1:
                nxt = mask | (1 << j)
                if candidates[j] < dp[nxt][j]:
                    dp[nxt][j] = candidates[j]
            remaining >>= 1
            j += 1
    totals = dp[full] + to_start
    last = int(np.argmin(totals))
    best = int(totals[last])
    # walk the table backwards; scanning predecessors in ascending order
    # keeps reconstruction deterministic
    order = [last]
    mask = full
    while mask != (1 << order[-1]):
        cur = order[-1]
        prev_mask = mask ^ (1 << cur)
        target = int(dp[mask][cur])
        for p in range(m):
            if prev_mask & (1 << p) and int(dp[prev_mask][p]) + cost[p + 1][cur + 1] == target:
                order.append(p)
                mask = prev_mask
                break
        else:  # pragma: no cover - dp table is self-consistent
            raise AssertionError("held-karp reconstruction failed")
    tour = (0,) + tuple(p + 1 for p in reversed(order))
    return tour, best


def _held_karp_fractions(cost, n: int) -> tuple[tuple[int, ...], Fraction]:
    """Pure-Fraction fallback for cost matrices too wide for int64."""
    m = n - 1
    dp: dict[tuple[int, int], Fraction] = {}
    for j in range(m):
        dp[(1 << j, j)] = cost[0][j + 1]
    full = (1 << m) - 1
    for mask in range(1, full + 1):
        for last in range(m):
            if not mask & (1 << last):
                continue
            key = (mask, last)
            if key not in dp:
                continue
            base = dp[key]
            for nxt in range(m):
                if mask & (1 << nxt):
                    continue
                cand = base + cost[last + 1][nxt + 1]
                nkey = (mask | (1 << nxt), nxt)
                if nkey not in dp or cand < dp[nkey]:
                    dp[nkey] = cand
    best = None
    best_last = None
    for last in range(m):
        total = dp[(full, last)] + cost[last + 1][0]
        if best is None or total < best:
            best = total
            best_last = last
    order = [best_last]
    mask = full
    while mask != (1 << order[-1]):
        cur = order[-1]
        prev_mask = mask ^ (1 << cur)
        target = dp[(mask, cur)]
        for p in range(m):
            if prev_mask & (1 << p) and dp[(prev_mask, p)] + cost[p + 1][cur + 1] == target:
                order.append(p)
                mask = prev_mask
                break
    tour = (0,) + tuple(p + 1 for p in reversed(order))
    return tour, best


def tsp_oracle(inst: TspInstance, method: str = "auto") -> TourResult:
    """Exact minimum-cost tour. Methods: exhaustive permutation search
    (n <= 10), Held-Karp subset DP (n <= 20), or auto. Larger n raises
    BudgetExceededError; no approximation is ever substituted."""
    n = inst.n
    if n < 2:
        raise ValidationError("a tour needs at least 2 cities")
    if method == "auto":
        method = "exhaustive" if n <= EXHAUSTIVE_CITY_LIMIT else "held-karp"
    if method == "exhaustive":
        if n > EXHAUSTIVE_CITY_LIMIT:
            raise BudgetExceededError(
                f"exhaustive search is budgeted for n <= {EXHAUSTIVE_CITY_LIMIT}, got {n}"
            )
    elif method == "held-karp":
        if n > HELD_KARP_CITY_LIMIT:
            raise BudgetExceededError(
                f"held-karp is budgeted for n <= {HELD_KARP_CITY_LIMIT}, got {n}"
            )
    else:
        raise ValidationError(f"unknown oracle method {method!r}")

    scaled = _scaled_int_costs(inst)
    if method == "exhaustive":
        if scaled is not None:
            matrix, scale = scaled
            tour, best = _exhaustive_tour(matrix, n)
            return TourResult(tour, Fraction(best, scale))
        tour, best = _exhaustive_tour(inst.cost, n)
        return TourResult(tour, best)
    if scaled is not None:
        matrix, scale = scaled
        tour, best = _held_karp_tour(matrix, n)
        return TourResult(tour, Fraction(best, scale))
    tour, best = _held_karp_fractions(inst.cost, n)
    return TourResult(tour, best)


def is_valid_tour(n: int, tour: tuple[int, ...]) -> bool:
    return len(tour) == n and sorted(tour) == list(range(n))
