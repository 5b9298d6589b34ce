"""LP-vs-ILP comparison reports and the decision-form tour question.

A GapReport pins down, for one instance and one relaxation, the exact
relaxation value, the exact integer optimum from the tour oracle, their
gap, and the model size the relaxation paid (rows, variables, cutting
rounds). Decision answers record the YES/NO verdicts at thresholds: a
relaxation may say YES to a cost no tour achieves, and that recorded
disagreement is the artifact under study, never an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import ValidationError
from .ilp import tsp_oracle
from .lp import SolveStatus, solve_lp
from .rationals import Rational
from .valleys import (
    CuttingPlaneTrace,
    TspInstance,
    cutting_plane_loop,
    degree_lp,
    relaxation_with_cuts,
)

DEGREE = "degree"
DEGREE_WITH_CUTS = "degree+cuts"
CUTTING_PLANE = "cutting-plane"


@dataclass(frozen=True)
class RelaxationDesc:
    kind: str
    cut_subsets: tuple[tuple[int, ...], ...] = ()
    max_rounds: int = 0


def degree_relaxation() -> RelaxationDesc:
    return RelaxationDesc(DEGREE)


def cuts_relaxation(cut_subsets: Iterable[Iterable[int]]) -> RelaxationDesc:
    return RelaxationDesc(
        DEGREE_WITH_CUTS, tuple(tuple(sorted(s)) for s in cut_subsets)
    )


def cutting_plane_relaxation(max_rounds: int = 50) -> RelaxationDesc:
    return RelaxationDesc(CUTTING_PLANE, max_rounds=max_rounds)


@dataclass(frozen=True)
class InstanceInfo:
    n: int
    valleys: Optional[int]
    cities_per_valley: Optional[int]
    intra_cost: Optional[Rational]
    crossing_cost: Optional[Rational]


def instance_info(inst: TspInstance) -> InstanceInfo:
    if inst.params is None:
        return InstanceInfo(inst.n, None, None, None, None)
    p = inst.params
    return InstanceInfo(
        inst.n, p.valleys, p.cities_per_valley, p.intra_cost, p.crossing_cost
    )


# decisions ask "is there a tour of cost at most X" (the standard
# decision reduction), not "of cost exactly X"
DECISION_FORM = "cost-at-most"


@dataclass(frozen=True)
class DecisionAnswer:
    threshold: Rational
    lp_answer: bool
    ilp_answer: bool
    agree: bool


@dataclass(frozen=True)
class GapReport:
    instance: InstanceInfo
    relaxation: RelaxationDesc
    lp_value: Rational
    ilp_value: Rational
    gap: Rational  # ilp - lp; the relaxation bound keeps it >= 0
    gap_ratio: Optional[Rational]
    gap_ratio_note: Optional[str]
    constraints_used: int
    variables_used: int
    rounds: int
    decision_answers: tuple[DecisionAnswer, ...]
    decision_form: str = DECISION_FORM


def _solve_relaxation(
    inst: TspInstance, relaxation: RelaxationDesc
) -> tuple[Rational, int, int, Optional[CuttingPlaneTrace]]:
    """(lp value, constraint rows, rounds, trace-if-cutting-plane)."""
    if relaxation.kind == DEGREE:
        program = degree_lp(inst)
    elif relaxation.kind == DEGREE_WITH_CUTS:
        program = relaxation_with_cuts(inst, relaxation.cut_subsets)
    elif relaxation.kind == CUTTING_PLANE:
        trace = cutting_plane_loop(inst, relaxation.max_rounds or 50)
        last = trace.rounds[-1]
        return trace.final_value, last.constraint_count, len(trace.rounds), trace
    else:
        raise ValidationError(f"unknown relaxation kind {relaxation.kind!r}")
    outcome = solve_lp(program)
    if outcome.status is not SolveStatus.OPTIMAL:  # pragma: no cover
        raise AssertionError(f"relaxation solve came back {outcome.status}")
    return outcome.value, len(program.constraints), 0, None


def integrality_gap(
    inst: TspInstance,
    relaxation: RelaxationDesc = RelaxationDesc(DEGREE),
    thresholds: Iterable = (),
) -> GapReport:
    """Exact gap between the chosen relaxation and the tour oracle; each
    threshold X contributes a recorded (LP answer, ILP answer) pair for
    the question "is a tour of cost at most X possible"."""
    lp_value, rows_used, rounds, _ = _solve_relaxation(inst, relaxation)
    ilp_value = tsp_oracle(inst).cost
    gap = ilp_value - lp_value
    if lp_value > 0:
        ratio: Optional[Rational] = ilp_value / lp_value
        note = None
    elif ilp_value > 0:
        ratio = None
        note = "infinite: relaxation value is 0 with a positive integer optimum"
    else:
        ratio = None
        note = "indeterminate: both values are 0"
    answers = []
    for raw in thresholds:
        x = Fraction(raw)
        lp_yes = lp_value <= x
        ilp_yes = ilp_value <= x
        answers.append(DecisionAnswer(x, lp_yes, ilp_yes, lp_yes == ilp_yes))
    return GapReport(
        instance=instance_info(inst),
        relaxation=relaxation,
        lp_value=lp_value,
        ilp_value=ilp_value,
        gap=gap,
        gap_ratio=ratio,
        gap_ratio_note=note,
        constraints_used=rows_used,
        variables_used=inst.n * (inst.n - 1),
        rounds=rounds,
        decision_answers=tuple(answers),
    )


VIA_ILP = "ilp"
VIA_LP = "lp-relaxation"


def decide_tour_at_most(
    inst: TspInstance,
    threshold,
    via: str,
    relaxation: RelaxationDesc = RelaxationDesc(DEGREE),
) -> bool:
    """Decision form "is there a tour of cost <= X". The ilp route is
    exact truth; the lp-relaxation route may say YES to phantom values,
    but whenever it says NO the answer really is NO."""
    x = Fraction(threshold)
    if via == VIA_ILP:
        return tsp_oracle(inst).cost <= x
    if via == VIA_LP:
        value, _, _, _ = _solve_relaxation(inst, relaxation)
        return value <= x
    raise ValidationError(f"unknown decision route {via!r}")
