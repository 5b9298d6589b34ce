import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lpgaps.bounds import (
    ceil_log2,
    min_symbols_single,
    min_symbols_subset,
    model_value,
    monotone_model_demo,
    subset_growth_table,
)
from lpgaps.errors import ValidationError


def test_single_solution_bounds():
    assert min_symbols_single(1).min_bits == 0
    assert min_symbols_single(2**20).min_bits == 20
    assert min_symbols_single(math.factorial(10)).min_bits == 22


def test_single_validation():
    with pytest.raises(ValidationError):
        min_symbols_single(0)


def test_subset_bounds():
    empty = min_symbols_subset(5, 0)
    assert empty.object_count == 1 and empty.min_bits == 0

    b42 = min_symbols_subset(4, 2)
    assert b42.object_count == 6 and b42.min_bits == 3

    b168 = min_symbols_subset(16, 8)
    assert b168.object_count == 12870 and b168.min_bits == 14
    assert b168.list_bits == 8 * 4


def test_subset_validation():
    with pytest.raises(ValidationError):
        min_symbols_subset(4, 5)
    with pytest.raises(ValidationError):
        min_symbols_subset(0, 0)


@given(st.integers(min_value=1, max_value=10**40))
def test_bracketing_invariant(count):
    bits = min_symbols_single(count).min_bits
    assert 2**bits >= count
    if count >= 2:
        assert count > 2 ** (bits - 1)
    else:
        assert bits == 0


@given(st.integers(min_value=1, max_value=60), st.integers(min_value=0, max_value=60))
def test_subset_bracketing(total, chosen):
    if chosen > total:
        chosen = total
    bound = min_symbols_subset(total, chosen)
    assert 2**bound.min_bits >= bound.object_count
    if bound.object_count >= 2:
        assert bound.object_count > 2 ** (bound.min_bits - 1)


def test_growth_doubles_per_step():
    table = subset_growth_table(4, 12)
    assert [n for n, _ in table] == list(range(4, 13))
    for (_, bits), (_, next_bits) in zip(table, table[1:]):
        assert next_bits >= 2 * bits


def test_ceil_log2_matches_bracketing():
    for k in [1, 2, 3, 4, 5, 127, 128, 129, 2**40 - 1, 2**40, 2**40 + 1]:
        b = ceil_log2(k)
        assert 2**b >= k and (k == 1 or 2 ** (b - 1) < k)


def test_integer_grid_is_exactly_monotone():
    scan = monotone_model_demo(0, 8, 1)
    assert scan.grid_monotone
    assert scan.witness is None
    # at integer x the sine term vanishes by identity: values are exact
    for x in scan.grid:
        value = model_value(x)
        assert isinstance(value, Fraction)
        assert value == x


def test_half_step_grid_finds_the_violation():
    scan = monotone_model_demo(0, 8, Fraction(1, 2))
    assert not scan.grid_monotone
    assert scan.witness == (Fraction(0), Fraction(1, 2))
    # f(1/2) = 1/2 + sin(sqrt(2) pi) which is about -0.4639
    low = float(scan.witness_values[1])
    assert -0.47 < low < -0.46


def test_single_point_grid_is_vacuously_monotone():
    scan = monotone_model_demo(0, 8, 100)
    assert scan.grid_monotone and scan.witness is None and len(scan.grid) == 1


def test_non_integer_values_are_high_precision():
    value = model_value(Fraction(1, 2))
    assert not isinstance(value, Fraction)
    assert abs(float(value) - (-0.46390253284987733)) < 1e-12


def test_demo_validation():
    with pytest.raises(ValidationError):
        monotone_model_demo(0, 8, 0)
    with pytest.raises(ValidationError):
        monotone_model_demo(8, 0, 1)
