"""Information-theoretic storage bounds and the model-fidelity demo.

Bit bounds are computed by exact big-integer bracketing, never by
floating-point logarithms: min_bits is the unique b with
2**b >= count > 2**(b-1). The demo evaluates sin(2**x * pi) + x on a
rational grid; at nonnegative integer x the sine term is zero by
identity and the value is returned as an exact Fraction, so the
integer-grid "monotone" verdict is forced symbolically rather than
being a rounding accident. Elsewhere guarded high precision is used
with an error budget many orders below the ~0.96 violation signal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Union

import mpmath

from .errors import ValidationError
from .rationals import Rational

# |f(x+step) - f(x)| below this is treated as equal; genuine violations
# of the demo function are ~0.96, twenty-five orders of magnitude away
COMPARISON_GUARD = Fraction(1, 10**30)
WORKING_DIGITS = 60


def ceil_log2(count: int) -> int:
    """Smallest b with 2**b >= count, by bit length (exact)."""
    if count < 1:
        raise ValidationError("count must be positive")
    return (count - 1).bit_length()


@dataclass(frozen=True)
class StorageBound:
    object_count: int
    min_bits: int
    derivation: str  # "single-solution" | "subset-of-solutions"
    list_bits: Optional[int] = None  # m * ceil(log2 N) list encoding, subsets only


def min_symbols_single(count: int) -> StorageBound:
    """Bits needed to point at one of `count` distinguishable objects."""
    if count < 1:
        raise ValidationError("there must be at least one object")
    return StorageBound(count, ceil_log2(count), "single-solution")


def min_symbols_subset(total: int, chosen: int) -> StorageBound:
    """Bits needed to point at one size-`chosen` subset of `total`
    objects: ceil(log2 C(total, chosen)). The list_bits field carries
    the naive list encoding (chosen entries, ceil(log2 total) bits each)
    for comparison."""
    if total < 1:
        raise ValidationError("total must be positive")
    if not 0 <= chosen <= total:
        raise ValidationError("chosen must be within 0..total")
    count = comb(total, chosen)
    return StorageBound(
        count,
        ceil_log2(count),
        "subset-of-solutions",
        list_bits=chosen * ceil_log2(total),
    )


def subset_growth_table(n_from: int = 4, n_to: int = 12) -> tuple[tuple[int, int], ...]:
    """(n, min_bits) for pointing at one size-2**n/4 subset of 2**n
    objects; the bit count at least doubles per unit n at these sizes."""
    if not 2 <= n_from <= n_to:
        raise ValidationError("need 2 <= n_from <= n_to")
    return tuple(
        (n, min_symbols_subset(2**n, 2**n // 4).min_bits)
        for n in range(n_from, n_to + 1)
    )


# ---------------------------------------------------------------------------
# Monotonicity demo: f(x) = sin(2**x * pi) + x

def model_value(x: Rational) -> Union[Fraction, mpmath.mpf]:
    """f(x) = sin(2**x * pi) + x. Exact Fraction at integer x >= 0
    (2**x is an integer, so the sine term is identically zero);
    high-precision mpf elsewhere."""
    x = Fraction(x)
    if x.denominator == 1 and x >= 0:
        return x
    with mpmath.workdps(WORKING_DIGITS):
        xf = mpmath.mpf(x.numerator) / x.denominator
        return mpmath.sin(mpmath.power(2, xf) * mpmath.pi) + xf


def _to_mpf(v) -> mpmath.mpf:
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return v


def _decreasing(a, b) -> bool:
    """Does the sampled function strictly decrease from a to b? Exact
    when both are Fractions; otherwise guarded high precision."""
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return b < a
    with mpmath.workdps(WORKING_DIGITS):
        diff = _to_mpf(b) - _to_mpf(a)
        guard = mpmath.mpf(COMPARISON_GUARD.numerator) / COMPARISON_GUARD.denominator
        return diff < -guard


@dataclass(frozen=True)
class MonotoneScan:
    grid: tuple[Rational, ...]
    grid_monotone: bool
    witness: Optional[tuple[Rational, Rational]]  # (x1, x2) with f(x1) > f(x2)
    witness_values: Optional[tuple[str, str]]


def monotone_model_demo(grid_start, grid_end, step) -> MonotoneScan:
    """Sample f on start, start+step, ... and report whether the samples
    are nondecreasing; if not, the first violating adjacent pair."""
    start = Fraction(grid_start)
    end = Fraction(grid_end)
    incr = Fraction(step)
    if incr <= 0:
        raise ValidationError("step must be positive")
    if start > end:
        raise ValidationError("grid start must not exceed grid end")
    grid = []
    x = start
    while x <= end:
        grid.append(x)
        x += incr
    values = [model_value(x) for x in grid]
    for i in range(len(grid) - 1):
        if _decreasing(values[i], values[i + 1]):
            return MonotoneScan(
                tuple(grid),
                grid_monotone=False,
                witness=(grid[i], grid[i + 1]),
                witness_values=(_render(values[i]), _render(values[i + 1])),
            )
    return MonotoneScan(tuple(grid), True, None, None)


def _render(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return mpmath.nstr(value, 20)
