"""Linear programs over exact rationals and a two-phase simplex solver.

Programs are stated in inequality form: an objective to maximize or
minimize, rows with <= / >= / = relations, and per-variable bounds
(lower defaults to 0, upper is optional). The solver is a dense tableau
simplex that handles variable bounds natively (bounded variables never
become extra rows) and uses Bland's smallest-index rule throughout, so
it terminates on every input. All pivots are exact Fraction arithmetic:
a returned status is a certainty, not a numerical verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import ValidationError
from .rationals import Rational, format_rational, parse_rational

LESS_EQ = "<="
GREATER_EQ = ">="
EQUAL = "="
_RELATIONS = (LESS_EQ, GREATER_EQ, EQUAL)

MAXIMIZE = "max"
MINIMIZE = "min"


class SolveStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Rational, ...]
    relation: str
    rhs: Rational


def constraint(coeffs: Iterable, relation: str, rhs) -> Constraint:
    """Build a constraint row, coercing ints/strings to exact rationals."""
    if relation not in _RELATIONS:
        raise ValidationError(f"unknown relation {relation!r}")
    return Constraint(tuple(Fraction(c) for c in coeffs), relation, Fraction(rhs))


@dataclass(frozen=True)
class LinearProgram:
    num_vars: int
    constraints: tuple[Constraint, ...]
    objective: tuple[Rational, ...]
    sense: str
    lower_bounds: tuple[Rational, ...]
    upper_bounds: tuple[Optional[Rational], ...]


def linear_program(
    objective: Iterable,
    sense: str,
    constraints: Iterable = (),
    *,
    lower_bounds: Optional[Iterable] = None,
    upper_bounds: Optional[Iterable] = None,
) -> LinearProgram:
    """Assemble and validate a program; num_vars is len(objective)."""
    obj = tuple(Fraction(c) for c in objective)
    n = len(obj)
    rows = tuple(
        c if isinstance(c, Constraint) else constraint(*c) for c in constraints
    )
    lo = (
        tuple(Fraction(0) for _ in range(n))
        if lower_bounds is None
        else tuple(Fraction(b) for b in lower_bounds)
    )
    hi = (
        tuple(None for _ in range(n))
        if upper_bounds is None
        else tuple(None if b is None else Fraction(b) for b in upper_bounds)
    )
    lp = LinearProgram(n, rows, obj, sense, lo, hi)
    validate_lp(lp)
    return lp


def validate_lp(lp: LinearProgram) -> None:
    if lp.num_vars < 1:
        raise ValidationError("a program needs at least one variable")
    if lp.sense not in (MAXIMIZE, MINIMIZE):
        raise ValidationError(f"unknown sense {lp.sense!r}")
    if len(lp.objective) != lp.num_vars:
        raise ValidationError("objective length differs from num_vars")
    if len(lp.lower_bounds) != lp.num_vars or len(lp.upper_bounds) != lp.num_vars:
        raise ValidationError("bound vectors must have one entry per variable")
    for idx, con in enumerate(lp.constraints):
        if con.relation not in _RELATIONS:
            raise ValidationError(f"constraint {idx}: unknown relation {con.relation!r}")
        if len(con.coeffs) != lp.num_vars:
            raise ValidationError(
                f"constraint {idx}: {len(con.coeffs)} coefficients for "
                f"{lp.num_vars} variables"
            )


def with_constraints(lp: LinearProgram, extra: Iterable[Constraint]) -> LinearProgram:
    out = replace(lp, constraints=lp.constraints + tuple(extra))
    validate_lp(out)
    return out


def with_bounds(
    lp: LinearProgram,
    var: int,
    lower: Optional[Rational] = None,
    upper: Optional[Rational] = None,
) -> LinearProgram:
    """Copy of lp with variable var's bounds replaced (None keeps current)."""
    if not 0 <= var < lp.num_vars:
        raise ValidationError(f"variable index {var} out of range")
    lo = list(lp.lower_bounds)
    hi = list(lp.upper_bounds)
    if lower is not None:
        lo[var] = Fraction(lower)
    if upper is not None:
        hi[var] = Fraction(upper)
    return replace(lp, lower_bounds=tuple(lo), upper_bounds=tuple(hi))


@dataclass(frozen=True)
class LpOutcome:
    status: SolveStatus
    point: Optional[tuple[Rational, ...]] = None
    value: Optional[Rational] = None


@dataclass(frozen=True)
class Violation:
    kind: str  # "row" | "lower" | "upper"
    index: int
    amount: Rational


@dataclass(frozen=True)
class FeasibilityReport:
    satisfied: bool
    violations: tuple[Violation, ...]


def check_feasible(lp: LinearProgram, point: Sequence) -> FeasibilityReport:
    """Substitute point into every row and bound; report exact violations."""
    if len(point) != lp.num_vars:
        raise ValidationError(
            f"point has {len(point)} coordinates for {lp.num_vars} variables"
        )
    x = [Fraction(v) for v in point]
    bad: list[Violation] = []
    for j in range(lp.num_vars):
        if x[j] < lp.lower_bounds[j]:
            bad.append(Violation("lower", j, lp.lower_bounds[j] - x[j]))
        ub = lp.upper_bounds[j]
        if ub is not None and x[j] > ub:
            bad.append(Violation("upper", j, x[j] - ub))
    for idx, con in enumerate(lp.constraints):
        lhs = sum((a * v for a, v in zip(con.coeffs, x)), Fraction(0))
        if con.relation == LESS_EQ and lhs > con.rhs:
            bad.append(Violation("row", idx, lhs - con.rhs))
        elif con.relation == GREATER_EQ and lhs < con.rhs:
            bad.append(Violation("row", idx, con.rhs - lhs))
        elif con.relation == EQUAL and lhs != con.rhs:
            bad.append(Violation("row", idx, abs(lhs - con.rhs)))
    return FeasibilityReport(not bad, tuple(bad))


def objective_value(lp: LinearProgram, point: Sequence[Rational]) -> Rational:
    return sum((c * v for c, v in zip(lp.objective, point)), Fraction(0))


def _fused_sub_mul(a: Fraction, f: Fraction, b: Fraction) -> Fraction:
    """a - f*b with a single Fraction construction; the solver's hottest
    operation, worth bypassing two rounds of operator dispatch."""
    fd_bd = f.denominator * b.denominator
    return Fraction(
        a.numerator * fd_bd - f.numerator * b.numerator * a.denominator,
        a.denominator * fd_bd,
    )


class _Tableau:
    """Bounded-variable simplex state.

    Column layout: structural variables (shifted to lower bound 0), then
    one slack/surplus column per inequality row, then artificials. ``v``
    holds current basic-variable values directly; nonbasic variables sit
    at 0 or at their upper bound (tracked in ``at_upper``).
    """

    def __init__(self, lp: LinearProgram):
        n = lp.num_vars
        lo, hi = lp.lower_bounds, lp.upper_bounds
        self.lp = lp
        self.n = n
        self.span: list[Optional[Fraction]] = [
            None if hi[j] is None else hi[j] - lo[j] for j in range(n)
        ]
        rows = []
        for con in lp.constraints:
            shift = sum((a * l for a, l in zip(con.coeffs, lo)), Fraction(0))
            rhs = con.rhs - shift
            coeffs = list(con.coeffs)
            rel = con.relation
            if rhs < 0:
                coeffs = [-a for a in coeffs]
                rhs = -rhs
                rel = {LESS_EQ: GREATER_EQ, GREATER_EQ: LESS_EQ, EQUAL: EQUAL}[rel]
            rows.append((coeffs, rel, rhs))
        m = len(rows)

        col = n
        slack_col = {}
        for i, (_, rel, _) in enumerate(rows):
            if rel != EQUAL:
                slack_col[i] = col
                col += 1
        art_col = {}
        for i, (_, rel, _) in enumerate(rows):
            if rel != LESS_EQ:
                art_col[i] = col
                col += 1
        self.ncols = col
        self.art_set = frozenset(art_col.values())

        zero = Fraction(0)
        one = Fraction(1)
        self.A: list[list[Fraction]] = []
        for i, (coeffs, rel, _) in enumerate(rows):
            row = [zero] * self.ncols
            row[:n] = coeffs
            if rel == LESS_EQ:
                row[slack_col[i]] = one
            elif rel == GREATER_EQ:
                row[slack_col[i]] = -one
            if i in art_col:
                row[art_col[i]] = one
            self.A.append(row)
        self.v: list[Fraction] = [rhs for (_, _, rhs) in rows]
        self.basis: list[int] = [
            slack_col[i] if rows[i][1] == LESS_EQ else art_col[i] for i in range(m)
        ]
        self.basis_set = set(self.basis)
        self.ub: list[Optional[Fraction]] = list(self.span) + [None] * (self.ncols - n)
        self.at_upper: set[int] = set()
        # fixed (zero-span) columns can never change value; keep them out
        self.never_enter = self.art_set | {
            j for j in range(n) if self.span[j] == 0
        }

    @property
    def m(self) -> int:
        return len(self.A)

    def reduced_costs(self, cost: list[Fraction]) -> list[Fraction]:
        r = list(cost)
        for i in range(self.m):
            cb = cost[self.basis[i]]
            if cb:
                row = self.A[i]
                for j, y in enumerate(row):
                    if y:
                        r[j] -= cb * y
        return r

    def _apply_step(self, enter: int, direction: int, t: Fraction) -> None:
        if not t.numerator:
            return
        step = t if direction > 0 else -t
        v = self.v
        for i in range(self.m):
            a = self.A[i][enter]
            if a.numerator:
                v[i] = _fused_sub_mul(v[i], step, a)

    def _pivot_rows(self, p: int, enter: int, r: list[Fraction]) -> None:
        A = self.A
        prow = A[p]
        piv = prow[enter]
        if piv != 1:
            inv = 1 / piv
            prow = A[p] = [x * inv if x else x for x in prow]
        # touching only the pivot row's nonzero columns keeps sparse
        # tableaus cheap
        nonzero = [j for j, y in enumerate(prow) if y]
        for i in range(self.m):
            if i == p:
                continue
            row = A[i]
            f = row[enter]
            if f:
                for j in nonzero:
                    row[j] = _fused_sub_mul(row[j], f, prow[j])
        f = r[enter]
        if f:
            for j in nonzero:
                r[j] = _fused_sub_mul(r[j], f, prow[j])

    def swap_in(self, p: int, enter: int, r: list[Fraction]) -> None:
        """Degenerate basis swap at step 0 (used to drive artificials out)."""
        if enter in self.at_upper:
            self.at_upper.discard(enter)
            new_val = self.ub[enter]
        else:
            new_val = Fraction(0)
        leave = self.basis[p]
        self.basis_set.discard(leave)
        self.basis_set.add(enter)
        self.basis[p] = enter
        self.v[p] = new_val
        self._pivot_rows(p, enter, r)

    def run(self, r: list[Fraction], banned: frozenset[int]) -> str:
        """Maximize the objective whose reduced costs are r. Bland's rule:
        smallest eligible entering index; ratio ties broken by smallest
        leaving-variable index (the entering variable's own bound counts
        as a candidate). Returns "optimal" or "unbounded"."""
        # Bland's rule terminates; the cap only turns a would-be hang on
        # a broken invariant into a loud failure
        pivots_left = 10_000 + 200 * (self.m + self.ncols)
        while True:
            pivots_left -= 1
            if pivots_left < 0:  # pragma: no cover
                raise AssertionError("pivot budget blown: anti-cycling broken")
            enter = -1
            direction = 0
            for j in range(self.ncols):
                if j in banned or j in self.never_enter or j in self.basis_set:
                    continue
                sign = r[j].numerator  # denominator > 0, so this is sgn(r[j])
                if j in self.at_upper:
                    if sign < 0:
                        enter, direction = j, -1
                        break
                elif sign > 0:
                    enter, direction = j, 1
                    break
            if enter < 0:
                return "optimal"

            # ratio test over unreduced numerator/denominator pairs; the
            # entering variable's own bound competes as candidate row -1
            own = self.ub[enter]
            if own is None:
                best_num, best_den = None, 1
            else:
                best_num, best_den = own.numerator, own.denominator
            best_var = enter
            best_row = -1
            best_hits_upper = False
            for i in range(self.m):
                raw = self.A[i][enter]
                rn = raw.numerator
                if rn == 0:
                    continue
                if (rn > 0) == (direction > 0):  # step drives v[i] down
                    vi = self.v[i]
                    tn = vi.numerator * raw.denominator
                    td = vi.denominator * abs(rn)
                    hits_upper = False
                else:  # step drives v[i] up toward its cap
                    cap = self.ub[self.basis[i]]
                    if cap is None:
                        continue
                    headroom = cap - self.v[i]
                    tn = headroom.numerator * raw.denominator
                    td = headroom.denominator * abs(rn)
                    hits_upper = True
                if best_num is not None:
                    lhs = tn * best_den
                    rhs = best_num * td
                    if lhs > rhs or (lhs == rhs and self.basis[i] > best_var):
                        continue
                best_num, best_den = tn, td
                best_var = self.basis[i]
                best_row = i
                best_hits_upper = hits_upper
            if best_num is None:
                return "unbounded"
            best_t = Fraction(best_num, best_den)

            if best_row < 0:
                # bound flip: enter crosses its whole span, basis unchanged
                self._apply_step(enter, direction, best_t)
                if enter in self.at_upper:
                    self.at_upper.discard(enter)
                else:
                    self.at_upper.add(enter)
                continue

            p = best_row
            leave = self.basis[p]
            self._apply_step(enter, direction, best_t)
            # the step also moved v[p]; overwrite it with the entering value
            if direction > 0:
                self.v[p] = best_t
            else:
                self.v[p] = self.ub[enter] - best_t
            if best_hits_upper:
                self.at_upper.add(leave)
            self.at_upper.discard(enter)
            self.basis_set.discard(leave)
            self.basis_set.add(enter)
            self.basis[p] = enter
            self._pivot_rows(p, enter, r)

    def drive_out_artificials(self, r: list[Fraction]) -> None:
        p = 0
        while p < self.m:
            if self.basis[p] not in self.art_set:
                p += 1
                continue
            enter = -1
            for j in range(self.ncols):
                if j in self.art_set or j in self.basis_set:
                    continue
                if self.A[p][j]:
                    enter = j
                    break
            if enter >= 0:
                self.swap_in(p, enter, r)
                p += 1
            else:
                # row is zero on every non-artificial column: redundant
                self.basis_set.discard(self.basis[p])
                del self.A[p], self.v[p], self.basis[p]

    def solution(self) -> list[Fraction]:
        z = [Fraction(0)] * self.n
        for j in range(self.n):
            if j in self.at_upper:
                z[j] = self.ub[j]
        for i in range(self.m):
            if self.basis[i] < self.n:
                z[self.basis[i]] = self.v[i]
        return z


def solve_lp(lp: LinearProgram) -> LpOutcome:
    """Exact two-phase simplex. The returned claims hold exactly:
    optimal points satisfy every constraint and no feasible point does
    strictly better; infeasible and unbounded are proven statuses."""
    validate_lp(lp)
    for j in range(lp.num_vars):
        ub = lp.upper_bounds[j]
        if ub is not None and ub < lp.lower_bounds[j]:
            return LpOutcome(SolveStatus.INFEASIBLE)

    tab = _Tableau(lp)
    zero = Fraction(0)

    if tab.art_set:
        phase1_cost = [zero] * tab.ncols
        for c in tab.art_set:
            phase1_cost[c] = Fraction(-1)
        r1 = tab.reduced_costs(phase1_cost)
        status = tab.run(r1, banned=frozenset())
        if status != "optimal":  # pragma: no cover - phase 1 is bounded above by 0
            raise AssertionError("phase 1 cannot be unbounded")
        infeasibility = sum(
            (tab.v[i] for i in range(tab.m) if tab.basis[i] in tab.art_set), zero
        )
        if infeasibility != 0:
            return LpOutcome(SolveStatus.INFEASIBLE)
        tab.drive_out_artificials(r1)

    sign = Fraction(1) if lp.sense == MAXIMIZE else Fraction(-1)
    phase2_cost = [zero] * tab.ncols
    for j in range(tab.n):
        phase2_cost[j] = sign * lp.objective[j]
    r2 = tab.reduced_costs(phase2_cost)
    status = tab.run(r2, banned=tab.art_set)
    if status == "unbounded":
        return LpOutcome(SolveStatus.UNBOUNDED)

    z = tab.solution()
    x = tuple(lp.lower_bounds[j] + z[j] for j in range(lp.num_vars))
    return LpOutcome(SolveStatus.OPTIMAL, x, objective_value(lp, x))


# ---------------------------------------------------------------------------
# Text serialization ("p/q" scalars throughout)

_INF_TOKENS = ("inf", "none", "*")


def lp_to_text(lp: LinearProgram) -> str:
    lines = ["lpgaps-lp 1"]
    lines.append(f"vars {lp.num_vars}")
    lines.append(f"sense {lp.sense}")
    lines.append("objective " + " ".join(format_rational(c) for c in lp.objective))
    lines.append("lower " + " ".join(format_rational(b) for b in lp.lower_bounds))
    lines.append(
        "upper "
        + " ".join("inf" if b is None else format_rational(b) for b in lp.upper_bounds)
    )
    for con in lp.constraints:
        lines.append(
            "constraint "
            + " ".join(format_rational(c) for c in con.coeffs)
            + f" {con.relation} "
            + format_rational(con.rhs)
        )
    return "\n".join(lines) + "\n"


def lp_from_text(text: str) -> LinearProgram:
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines or not lines[0].startswith("lpgaps-lp"):
        raise ValidationError("missing lpgaps-lp header")
    fields: dict[str, str] = {}
    rows: list[Constraint] = []
    for ln in lines[1:]:
        key, _, rest = ln.partition(" ")
        if key == "constraint":
            toks = rest.split()
            rel_positions = [i for i, t in enumerate(toks) if t in _RELATIONS]
            if len(rel_positions) != 1:
                raise ValidationError(f"bad constraint line: {ln!r}")
            k = rel_positions[0]
            if k != len(toks) - 2:
                raise ValidationError(f"bad constraint line: {ln!r}")
            rows.append(
                constraint(
                    [parse_rational(t) for t in toks[:k]],
                    toks[k],
                    parse_rational(toks[k + 1]),
                )
            )
        else:
            fields[key] = rest
    try:
        n = int(fields["vars"])
        sense = fields["sense"]
        objective = [parse_rational(t) for t in fields["objective"].split()]
        lower = [parse_rational(t) for t in fields["lower"].split()]
        upper = [
            None if t.lower() in _INF_TOKENS else parse_rational(t)
            for t in fields["upper"].split()
        ]
    except KeyError as exc:
        raise ValidationError(f"missing field {exc.args[0]!r}") from None
    if len(objective) != n:
        raise ValidationError("objective length differs from declared vars")
    return linear_program(
        objective, sense, rows, lower_bounds=lower, upper_bounds=upper
    )
