"""Exact integer comparisons against thresholds of the form C * prod(base^exp).

Pipeline stage thresholds involve fractional powers such as N^(1/2 + eps).
Rather than trust floating point near a boundary, comparisons are cleared of
denominators and evaluated in exact integer arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Tuple

Factor = Tuple[int, Fraction]


def as_fraction(x) -> Fraction:
    """Coerce int, Fraction, 'a/b' string, or float literal to a Fraction.

    Floats go through their decimal repr, so 0.05 means 1/20.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational constant")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(str(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def fraction_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def meets_lower(value: int, coeff: Fraction, factors: Sequence[Factor]) -> bool:
    """Exact test of value >= coeff * prod(base_i ** exp_i), bases >= 1."""
    if value < 0:
        raise ValueError("value must be a count")
    if coeff <= 0:
        return True
    lcm = 1
    for _, e in factors:
        lcm = math.lcm(lcm, e.denominator)
    lhs = value**lcm * coeff.denominator**lcm
    rhs = coeff.numerator**lcm
    for base, e in factors:
        if base < 1:
            raise ValueError(f"threshold base must be >= 1, got {base}")
        n = e.numerator * (lcm // e.denominator)
        if n >= 0:
            rhs *= base**n
        else:
            lhs *= base**(-n)
    return lhs >= rhs


def ceil_threshold(coeff: Fraction, factors: Sequence[Factor]) -> int:
    """Smallest integer value with value >= coeff * prod(base^exp)."""
    if coeff <= 0:
        return 0
    hi = 1
    while not meets_lower(hi, coeff, factors):
        hi *= 2
    lo = 0  # 0 never meets a positive threshold unless threshold <= 0
    if meets_lower(0, coeff, factors):
        return 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if meets_lower(mid, coeff, factors):
            hi = mid
        else:
            lo = mid
    return hi


def floor_fraction(f: Fraction) -> int:
    return math.floor(f)


def float_power(coeff: Fraction, factors: Sequence[Factor]) -> float:
    """Floating approximation of coeff * prod(base^exp), for diagnostics."""
    out = float(coeff)
    for base, e in factors:
        out *= float(base) ** float(e)
    return out
