from fractions import Fraction

import pytest

from oracles import best_vertex_value, envelope_relaxed_max
from lpgaps.errors import ValidationError
from lpgaps.hull import (
    adversarial_objective,
    facet_gap,
    gen_arc,
    polytope_lp,
    subset_gap_scan,
)
from lpgaps.lp import solve_lp


def test_minimal_chain():
    poly = gen_arc(2)
    assert poly.vertices == ((0, 0), (1, 3))
    assert len(poly.facets) == 1
    assert (poly.facets[0].slope, poly.facets[0].intercept) == (3, 0)


def test_four_vertex_chain():
    poly = gen_arc(4)
    assert [(int(x), int(y)) for x, y in poly.vertices] == [
        (0, 0), (1, 7), (2, 12), (3, 15),
    ]
    assert [(int(f.slope), int(f.intercept)) for f in poly.facets] == [
        (7, 0), (5, 2), (3, 6),
    ]


def test_sixty_four_vertex_slopes():
    poly = gen_arc(64)
    slopes = [f.slope for f in poly.facets]
    assert slopes == [Fraction(2 * 64 - (2 * i + 1)) for i in range(63)]
    assert slopes[0] == 127 and slopes[-1] == 3
    assert all(a > b for a, b in zip(slopes, slopes[1:]))


@pytest.mark.parametrize("V", [2, 3, 5, 17, 64, 256])
def test_chain_invariants(V):
    poly = gen_arc(V)
    xs = [x for x, _ in poly.vertices]
    assert all(a < b for a, b in zip(xs, xs[1:]))
    slopes = [f.slope for f in poly.facets]
    assert all(a > b for a, b in zip(slopes, slopes[1:]))
    assert len(poly.facets) == len(poly.vertices) - 1
    for i, facet in enumerate(poly.facets):
        for (x, y) in (poly.vertices[i], poly.vertices[i + 1]):
            assert y == facet.slope * x + facet.intercept


def test_rejects_tiny_chain():
    with pytest.raises(ValidationError):
        gen_arc(1)


def test_box_is_derived_from_the_chain():
    poly = gen_arc(5)
    assert poly.box.x_min == 0
    assert poly.box.x_max == 4
    assert poly.box.y_min == 0


def test_adversarial_middle_facet_worked_case():
    poly = gen_arc(4)
    expected = envelope_relaxed_max(poly, 1, [0, 2])  # oracle first
    assert expected == 3
    adv = adversarial_objective(poly, 1)
    assert adv.objective == (-5, 1)
    assert adv.true_max == 2
    assert adv.relaxed_max == expected
    assert adv.witness == (Fraction(3, 2), Fraction(21, 2))
    assert adv.gap == 1
    assert adv.bounded


@pytest.mark.parametrize("V", [3, 4, 8, 16, 64])
def test_every_single_omission_has_positive_gap(V):
    poly = gen_arc(V)
    for j in range(poly.facet_count):
        adv = adversarial_objective(poly, j)
        assert adv.bounded, (V, j)
        assert adv.gap > 0, (V, j)
        assert adv.relaxed_max == envelope_relaxed_max(
            poly, j, [i for i in range(poly.facet_count) if i != j]
        )


def test_interior_omissions_positive_up_to_256():
    poly = gen_arc(256)
    sample = [1, 2, 3, 64, 127, 128, 129, 200, 251, 252, 253]
    for j in sample:
        assert 0 < j < poly.facet_count - 1
        assert adversarial_objective(poly, j).gap > 0


def test_witness_strictly_violates_omitted_facet():
    poly = gen_arc(8)
    for j in range(poly.facet_count):
        adv = adversarial_objective(poly, j)
        x, y = adv.witness
        facet = poly.facets[j]
        assert y > facet.slope * x + facet.intercept


@pytest.mark.parametrize(
    "objective",
    [(Fraction(-5), Fraction(1)), (Fraction(0), Fraction(1)),
     (Fraction(-126), Fraction(1)), (Fraction(2), Fraction(3))],
)
def test_complete_model_has_zero_gap(objective):
    poly = gen_arc(16)
    out = solve_lp(polytope_lp(poly, objective))
    assert out.value == best_vertex_value(poly, objective)


def test_single_facet_omission_on_minimal_chain_is_flagged():
    adv = adversarial_objective(gen_arc(2), 0)
    assert not adv.bounded
    assert adv.gap is None and adv.relaxed_max is None
    assert adv.positive_gap  # an unbounded phantom counts as a gap


def test_scan_one_short_enumerates_every_subset():
    report = subset_gap_scan(gen_arc(8), budget=6)
    assert report.enumerated
    assert len(report.rows) == 7
    assert report.all_gaps_positive
    omitted = [row.omitted for row in report.rows]
    assert omitted == sorted(omitted)
    assert all(len(o) == 1 for o in omitted)


def test_scan_complete_budget_reports_zero_gap():
    report = subset_gap_scan(gen_arc(8), budget=7)
    assert len(report.rows) == 1
    row = report.rows[0]
    assert row.omitted == () and row.gap == 0 and not row.positive_gap
    assert report.all_gaps_positive  # vacuous: no incomplete subset


def test_scan_sampling_is_deterministic_and_positive():
    poly = gen_arc(64)
    a = subset_gap_scan(poly, budget=32, sample_count=12, seed=5)
    b = subset_gap_scan(poly, budget=32, sample_count=12, seed=5)
    assert a == b
    assert not a.enumerated
    assert len(a.rows) == 12
    assert a.all_gaps_positive
    c = subset_gap_scan(poly, budget=32, sample_count=12, seed=6)
    assert c != a


def test_scan_validation():
    with pytest.raises(ValidationError):
        subset_gap_scan(gen_arc(8), budget=8)
    with pytest.raises(ValidationError):
        subset_gap_scan(gen_arc(8), budget=-1)


def test_facet_gap_argument_checks():
    poly = gen_arc(4)
    with pytest.raises(ValidationError):
        facet_gap(poly, 5, [0, 1])
    with pytest.raises(ValidationError):
        facet_gap(poly, 1, [0, 1, 2])
    with pytest.raises(ValidationError):
        adversarial_objective(poly, 3)
