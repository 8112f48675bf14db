"""Exact rationals and outward-rounded rational interval arithmetic.

Rationals are :class:`fractions.Fraction`.  An :class:`Interval` keeps two
Fraction endpoints; after every operation the endpoints are rounded outward
onto a fixed grid so that denominators stay bounded.  The grid for
``bits = p`` is the union of

* the dyadic rationals ``k / 2**p``, and
* every fraction whose denominator is at most ``2**min(p, 16)``.

Rounding onto a fixed set is monotone, leaves small exact values such as
``1/3`` or ``223/71`` untouched, and moves an endpoint by less than
``2**-p``.  Grids for larger ``p`` contain the grids for smaller ``p``, so
raising the precision never widens a result.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivisionByIntervalContainingZero, NegativeRadicand

RationalNumber = Fraction
Number = Union[int, Fraction]

DEFAULT_BITS = 128
_SMALL_DENOMINATOR_BITS = 16


class Ordering(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    OVERLAP = "overlap"


def rational_cmp(a: Number, b: Number) -> Ordering:
    """Exact trichotomy by cross-multiplication."""
    a, b = Fraction(a), Fraction(b)
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    if lhs < rhs:
        return Ordering.LESS
    if lhs > rhs:
        return Ordering.GREATER
    return Ordering.EQUAL


# -- directed rounding onto the grid ------------------------------------------


def _floor_bounded(num: int, den: int, limit: int) -> Fraction:
    """Largest fraction <= num/den whose denominator is at most ``limit``.

    Batched Stern-Brocot descent; ``den`` must be positive.
    """
    if den <= limit:
        return Fraction(num, den)
    a = num // den
    ln, ld, hn, hd = a, 1, a + 1, 1
    while True:
        moved = False
        gap_lo = num * ld - ln * den
        gap_hi = hn * den - num * hd
        if gap_lo == 0:
            break
        k = min(gap_lo // gap_hi, (limit - ld) // hd)
        if k > 0:
            ln += k * hn
            ld += k * hd
            gap_lo = num * ld - ln * den
            moved = True
            if gap_lo == 0:
                break
        j = min((gap_hi - 1) // gap_lo, (limit - hd) // ld)
        if j > 0:
            hn += j * ln
            hd += j * ld
            moved = True
        if not moved:
            break
    return Fraction(ln, ld)


def _small_limit(bits: int) -> int:
    return 1 << min(bits, _SMALL_DENOMINATOR_BITS)


def round_down(x: Fraction, bits: int) -> Fraction:
    """Largest grid point <= x."""
    num, den = x.numerator, x.denominator
    limit = _small_limit(bits)
    if den <= limit or den <= (1 << bits) and (1 << bits) % den == 0:
        return x
    dyadic = Fraction((num << bits) // den, 1 << bits)
    small = _floor_bounded(num, den, limit)
    return max(dyadic, small)


def round_up(x: Fraction, bits: int) -> Fraction:
    """Smallest grid point >= x."""
    return -round_down(-x, bits)


def _sqrt_down(x: Fraction, bits: int) -> Fraction:
    """Largest grid point <= sqrt(x), x >= 0."""
    if x == 0:
        return x
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        root = Fraction(rn, rd)
        return round_down(root, bits)
    dyadic = Fraction(math.isqrt((num << (2 * bits)) // den), 1 << bits)
    limit = _small_limit(bits)
    # Upper dyadic bound for sqrt(x), closer than half the minimal gap
    # between grid fractions of denominator <= limit.
    m = 2 * limit.bit_length() + 2
    y = -((-num << (2 * m)) // den)
    high = Fraction(math.isqrt(y - 1) + 1, 1 << m)
    cand = _floor_bounded(high.numerator, high.denominator, limit)
    if cand * cand > x:
        below = cand - Fraction(1, 2 * limit * limit)
        cand = _floor_bounded(below.numerator, below.denominator, limit)
    return max(dyadic, cand)


def _sqrt_up(x: Fraction, bits: int) -> Fraction:
    """Smallest grid point >= sqrt(x), x >= 0."""
    if x == 0:
        return x
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return round_up(Fraction(rn, rd), bits)
    y = -((-num << (2 * bits)) // den)
    dyadic = Fraction(math.isqrt(y - 1) + 1, 1 << bits)
    limit = _small_limit(bits)
    m = 2 * limit.bit_length() + 2
    low = Fraction(math.isqrt((num << (2 * m)) // den), 1 << m)
    cand = -_floor_bounded(-low.numerator, low.denominator, limit)
    if cand * cand < x:
        above = cand + Fraction(1, 2 * limit * limit)
        cand = -_floor_bounded(-above.numerator, above.denominator, limit)
    return min(dyadic, cand)


# -- intervals ----------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval ``[lo, hi]`` with exact rational endpoints.

    Constructing an interval never rounds; arithmetic results are rounded
    outward to ``bits`` of precision.  Binary operations use the larger of
    the two operands' precisions.
    """

    lo: Fraction
    hi: Fraction
    bits: int = DEFAULT_BITS

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval: lo={lo} > hi={hi}")
        if self.bits < 1:
            raise ValueError("bits must be positive")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, value: Number, bits: int = DEFAULT_BITS) -> Interval:
        value = Fraction(value)
        return cls(value, value, bits)

    @classmethod
    def hull(cls, *items: Interval) -> Interval:
        return cls(
            min(i.lo for i in items),
            max(i.hi for i in items),
            max(i.bits for i in items),
        )

    def _rounded(self, lo: Fraction, hi: Fraction, bits: int) -> Interval:
        return Interval(round_down(lo, bits), round_up(hi, bits), bits)

    def _coerce(self, other) -> Interval:
        if isinstance(other, Interval):
            return other
        if isinstance(other, (int, Fraction)):
            return Interval.point(other, self.bits)
        return NotImplemented

    # properties

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, item) -> bool:
        if isinstance(item, Interval):
            return self.lo <= item.lo and item.hi <= self.hi
        return self.lo <= item <= self.hi

    __contains__ = contains

    def overlaps(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: Interval) -> Interval | None:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return None
        return Interval(lo, hi, max(self.bits, other.bits))

    def compare(self, other) -> Ordering:
        """Three-valued comparison; overlap is never reported as equality."""
        other = self._coerce(other)
        if self.hi < other.lo:
            return Ordering.LESS
        if self.lo > other.hi:
            return Ordering.GREATER
        if self.is_point and other.is_point:
            return Ordering.EQUAL
        return Ordering.OVERLAP

    def certainly_lt(self, other) -> bool:
        return self.compare(other) is Ordering.LESS

    def certainly_gt(self, other) -> bool:
        return self.compare(other) is Ordering.GREATER

    def certainly_positive(self) -> bool:
        return self.lo > 0

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        bits = max(self.bits, other.bits)
        return self._rounded(self.lo + other.lo, self.hi + other.hi, bits)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        bits = max(self.bits, other.bits)
        return self._rounded(self.lo - other.hi, self.hi - other.lo, bits)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Interval(-self.hi, -self.lo, self.bits)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        bits = max(self.bits, other.bits)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        if a >= 0 and c >= 0:
            lo, hi = a * c, b * d
        elif b <= 0 and d <= 0:
            lo, hi = b * d, a * c
        elif a >= 0 and d <= 0:
            lo, hi = b * c, a * d
        elif b <= 0 and c >= 0:
            lo, hi = a * d, b * c
        else:
            products = (a * c, a * d, b * c, b * d)
            lo, hi = min(products), max(products)
        return self._rounded(lo, hi, bits)

    __rmul__ = __mul__

    def reciprocal(self) -> Interval:
        if self.lo <= 0 <= self.hi:
            raise DivisionByIntervalContainingZero(f"divisor {self!r} contains zero")
        return self._rounded(1 / self.hi, 1 / self.lo, self.bits)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.lo <= 0 <= other.hi:
            raise DivisionByIntervalContainingZero(f"divisor {other!r} contains zero")
        bits = max(self.bits, other.bits)
        inv = Interval(1 / other.hi, 1 / other.lo, bits)
        a, b, c, d = self.lo, self.hi, inv.lo, inv.hi
        products = (a * c, a * d, b * c, b * d)
        return self._rounded(min(products), max(products), bits)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def square(self) -> Interval:
        """x*x without the dependency blow-up of self * self."""
        a, b = abs(self.lo), abs(self.hi)
        hi = max(a, b) ** 2
        lo = Fraction(0) if self.lo <= 0 <= self.hi else min(a, b) ** 2
        return self._rounded(lo, hi, self.bits)

    def sqrt(self) -> Interval:
        if self.lo < 0:
            raise NegativeRadicand(f"sqrt of {self!r}: lower endpoint is negative")
        return Interval(_sqrt_down(self.lo, self.bits), _sqrt_up(self.hi, self.bits), self.bits)

    def scale(self, factor: Number) -> Interval:
        """Exact multiplication by a rational; no rounding is applied."""
        factor = Fraction(factor)
        lo, hi = self.lo * factor, self.hi * factor
        if factor < 0:
            lo, hi = hi, lo
        return Interval(lo, hi, self.bits)

    def with_bits(self, bits: int) -> Interval:
        return Interval(self.lo, self.hi, bits)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi), self.bits)

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi}, bits={self.bits})"


def interval_arith(op: str, x: Interval, y: Interval) -> Interval:
    """Apply one of ``add``, ``sub``, ``mul``, ``div`` to two intervals."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown interval operation {op!r}")


def interval_sqrt(x: Interval) -> Interval:
    return x.sqrt()


def _fixed(n: int, digits: int) -> str:
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def decimal_floor(x: Fraction, digits: int) -> str:
    scaled = x * 10**digits
    return _fixed(scaled.numerator // scaled.denominator, digits)


def decimal_ceil(x: Fraction, digits: int) -> str:
    scaled = x * 10**digits
    return _fixed(-(-scaled.numerator // scaled.denominator), digits)


def to_decimal(x: Interval, digits: int) -> tuple[str, str]:
    """Decimal strings for the endpoints, lo rounded down and hi rounded up.

    >>> to_decimal(Interval(Fraction(1, 3), Fraction(1, 3)), 4)
    ('0.3333', '0.3334')
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    return decimal_floor(x.lo, digits), decimal_ceil(x.hi, digits)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, an integer or an exact decimal literal."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc
