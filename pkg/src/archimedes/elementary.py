"""Enclosures of exp, sin and cos at rational arguments.

Only the arc-length oracle uses these.  Each function sums a Taylor series
in interval arithmetic and adds the Lagrange remainder as a symmetric pad.
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import DEFAULT_BITS, Interval

_HALF = Fraction(1, 2)


def _reduce(x: Fraction) -> tuple[Fraction, int]:
    """x / 2**s with |x / 2**s| <= 1/2."""
    s = 0
    while abs(x) > _HALF:
        x /= 2
        s += 1
    return x, s


def _pad(value: Interval, radius: Fraction) -> Interval:
    return Interval(value.lo - radius, value.hi + radius, value.bits)


def _series(x: Fraction, start: int, step: int, alternate: bool, bits: int, first: Fraction) -> Interval:
    """Sum first * x**(k - start) * start!/k! over k = start, start+step, ...

    Terms are carried at 16 guard bits; summation stops once the next term is
    below 2**-(bits + 4), and twice that term, which bounds the remainder for
    |x| <= 1/2, is added as a pad.
    """
    out_bits = bits
    bits += 16
    xi = Interval.point(x, bits)
    x2 = xi if step == 1 else xi.square()
    term = Interval.point(first, bits)
    total = term
    k = start
    eps = Fraction(1, 1 << (out_bits + 4))
    sign = 1
    while True:
        denom = (k + 1) if step == 1 else (k + 1) * (k + 2)
        term = (term * x2) / denom
        k += step
        mag = max(abs(term.lo), abs(term.hi))
        if mag < eps:
            return _pad(total, 2 * mag).with_bits(out_bits)
        sign = -sign if alternate else 1
        total = total + term if sign > 0 else total - term


def expm1_small(x: Fraction, bits: int = DEFAULT_BITS) -> Interval:
    """exp(x) - 1 for |x| <= 1/2, without cancellation."""
    x = Fraction(x)
    if abs(x) > _HALF:
        raise ValueError("expm1_small needs |x| <= 1/2")
    if x == 0:
        return Interval.point(0, bits)
    return _series(x, 1, 1, False, bits, x)


def exp_point(x, bits: int = DEFAULT_BITS) -> Interval:
    x = Fraction(x)
    if x < 0:
        return exp_point(-x, bits + 8).reciprocal().with_bits(bits)
    work = bits + 8 + 2 * x.numerator.bit_length()
    r, s = _reduce(x)
    value = expm1_small(r, work) + 1
    for _ in range(s):
        value = value.square()
    return value.with_bits(bits)


def exp_interval(x: Interval) -> Interval:
    return Interval(exp_point(x.lo, x.bits).lo, exp_point(x.hi, x.bits).hi, x.bits)


def _sin_cos_small(x: Fraction, bits: int) -> tuple[Interval, Interval]:
    s = _series(x, 1, 2, True, bits, x) if x else Interval.point(0, bits)
    c = _series(x, 0, 2, True, bits, Fraction(1))
    return s, c


def sin_cos_point(x, bits: int = DEFAULT_BITS) -> tuple[Interval, Interval]:
    """(sin x, cos x) enclosures, reduced by halving and rebuilt by doubling."""
    x = Fraction(x)
    r, s = _reduce(x)
    work = bits + 2 * s + 8
    sn, cs = _sin_cos_small(r, work)
    for _ in range(s):
        sn, cs = (sn * cs).scale(2), 1 - sn.square().scale(2)
    one = Interval(-1, 1, work)
    sn = sn.intersect(one) or sn
    cs = cs.intersect(one) or cs
    return sn.with_bits(bits), cs.with_bits(bits)


def sin_cos_interval(x: Interval) -> tuple[Interval, Interval]:
    """Enclosures over an interval argument via the Lipschitz bound 1."""
    mid = x.mid
    rad = x.width / 2
    sn, cs = sin_cos_point(mid, x.bits)
    return _pad(sn, rad), _pad(cs, rad)


def sin_cos_half_small(x: Fraction, bits: int = DEFAULT_BITS) -> tuple[Interval, Interval]:
    """(sin x, cos x) for |x| <= 1/2 directly from the series."""
    x = Fraction(x)
    if abs(x) > _HALF:
        raise ValueError("needs |x| <= 1/2")
    return _sin_cos_small(x, bits)
