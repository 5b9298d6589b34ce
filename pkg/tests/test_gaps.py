from fractions import Fraction

import pytest

from lpgaps.errors import ValidationError
from lpgaps.gaps import (
    VIA_ILP,
    VIA_LP,
    RelaxationDesc,
    cuts_relaxation,
    cutting_plane_relaxation,
    decide_tour_at_most,
    degree_relaxation,
    integrality_gap,
)
from lpgaps.valleys import gen_valley_instance, valley_cut_subsets


def test_degree_gap_headline():
    inst = gen_valley_instance(10, 2)
    report = integrality_gap(inst, degree_relaxation())
    assert report.lp_value == 0
    assert report.ilp_value == 10
    assert report.gap == 10
    assert report.gap_ratio is None
    assert "infinite" in report.gap_ratio_note
    assert report.variables_used == 20 * 19
    assert report.constraints_used == 40
    assert report.rounds == 0


def test_full_valley_cuts_close_the_gap():
    inst = gen_valley_instance(4, 2)
    report = integrality_gap(inst, cuts_relaxation(valley_cut_subsets(inst)))
    assert report.lp_value == 4
    assert report.ilp_value == 4
    assert report.gap == 0
    assert report.gap_ratio == 1
    assert report.constraints_used == 16 + 4


def test_degenerate_valleys_have_no_gap():
    report = integrality_gap(gen_valley_instance(4, 1), degree_relaxation())
    assert report.lp_value == 4 and report.ilp_value == 4 and report.gap == 0


def test_cutting_plane_relaxation_reports_rounds():
    inst = gen_valley_instance(4, 2)
    report = integrality_gap(inst, cutting_plane_relaxation(50))
    assert report.lp_value == 4
    assert report.gap == 0
    assert report.rounds >= 2
    assert report.constraints_used == 16 + report.rounds - 1


def test_decision_disagreement_is_recorded():
    inst = gen_valley_instance(10, 2)
    report = integrality_gap(inst, degree_relaxation(), thresholds=[9])
    answer = report.decision_answers[0]
    assert answer.threshold == 9
    assert answer.lp_answer is True
    assert answer.ilp_answer is False
    assert answer.agree is False


def test_agreement_cases():
    inst = gen_valley_instance(4, 2)
    report = integrality_gap(
        inst, cuts_relaxation(valley_cut_subsets(inst)), thresholds=[3, 4, 5]
    )
    verdicts = [(a.lp_answer, a.ilp_answer, a.agree) for a in report.decision_answers]
    assert verdicts == [
        (False, False, True),
        (True, True, True),
        (True, True, True),
    ]


def test_lp_no_implies_ilp_no():
    for k, c in [(2, 1), (3, 1), (2, 2), (3, 2), (4, 2)]:
        inst = gen_valley_instance(k, c)
        thresholds = [Fraction(t, 2) for t in range(0, 2 * k + 3)]
        report = integrality_gap(inst, degree_relaxation(), thresholds=thresholds)
        for answer in report.decision_answers:
            if not answer.lp_answer:
                assert not answer.ilp_answer
            # disagreement happens exactly on phantom YES answers
            assert (not answer.agree) == (answer.lp_answer and not answer.ilp_answer)


def test_reports_carry_decision_form():
    report = integrality_gap(gen_valley_instance(2, 2), degree_relaxation())
    assert report.decision_form == "cost-at-most"


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_ratio_flagged_infinite_for_free_circulations(k):
    report = integrality_gap(gen_valley_instance(k, 2), degree_relaxation())
    assert report.lp_value == 0
    assert report.ilp_value == k
    assert report.gap_ratio is None
    assert "infinite" in report.gap_ratio_note


def test_decide_routes():
    inst10 = gen_valley_instance(10, 1)
    assert decide_tour_at_most(inst10, 10, VIA_ILP) is True
    assert decide_tour_at_most(inst10, 9, VIA_ILP) is False

    inst = gen_valley_instance(4, 2)
    assert decide_tour_at_most(inst, 3, VIA_LP) is True  # phantom YES
    assert decide_tour_at_most(inst, 3, VIA_ILP) is False
    assert (
        decide_tour_at_most(
            inst, 3, VIA_LP, cuts_relaxation(valley_cut_subsets(inst))
        )
        is False
    )


def test_decide_validation():
    with pytest.raises(ValidationError):
        decide_tour_at_most(gen_valley_instance(4, 2), 3, "oracle")
    with pytest.raises(ValidationError):
        integrality_gap(gen_valley_instance(4, 2), RelaxationDesc("bogus"))


def test_reports_are_deterministic():
    inst = gen_valley_instance(4, 2)
    a = integrality_gap(inst, cutting_plane_relaxation(50), thresholds=[3, 4])
    b = integrality_gap(inst, cutting_plane_relaxation(50), thresholds=[3, 4])
    assert a == b
