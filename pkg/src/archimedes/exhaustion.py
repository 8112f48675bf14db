"""Double-squeeze certificates for the area of a circle.

Every quantity is derived from a :class:`~archimedes.polygon_pi.PolygonPair`
with rational interval operations.  No trigonometric evaluation enters the
certified path: for the regular n-gon of the unit circle,
``sin(pi/n) = p_n / n``, ``tan(pi/n) = P_n / n`` and ``cos(pi/n) = p_n / P_n``.

Radius dependence is applied by exact rational scaling, so results for
radius ``r`` are exactly ``r`` (lengths) or ``r**2`` (areas) times the
unit-circle results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chains import SectorBounds
from .errors import ToleranceUnreachable, UnsupportedAngle
from .exactnum import DEFAULT_BITS, Interval
from .polygon_pi import PolygonPair, pi_enclosure, polygon_pair


@dataclass(frozen=True)
class SqueezeState:
    n: int
    r: Fraction
    apothem: Interval
    area_lo: Interval
    area_hi: Interval
    circ_lo: Interval
    circ_hi: Interval
    half_cr_lo: Interval
    half_cr_hi: Interval

    @property
    def area(self) -> Interval:
        """Enclosure of the circle's area A."""
        return Interval(self.area_lo.lo, self.area_hi.hi, self.area_lo.bits)

    @property
    def half_cr(self) -> Interval:
        """Enclosure of the triangle area Cr/2."""
        return Interval(self.half_cr_lo.lo, self.half_cr_hi.hi, self.half_cr_lo.bits)

    @property
    def circumference(self) -> Interval:
        return Interval(self.circ_lo.lo, self.circ_hi.hi, self.circ_lo.bits)

    def inscribed_area_identity(self) -> Interval:
        """Half the apothem times the inscribed perimeter."""
        return (self.apothem * self.circ_lo).scale(Fraction(1, 2))


def _unit_squeeze(pair: PolygonPair):
    p, P = pair.inscribed, pair.circumscribed
    ratio = p / P
    return ratio, p * ratio, P, p, P


def squeeze_state(doublings: int, r=1, bits: int = DEFAULT_BITS) -> SqueezeState:
    r = Fraction(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    pair = polygon_pair(doublings, bits)
    apothem, area_in, area_out, p, P = _unit_squeeze(pair)
    r2 = r * r
    return SqueezeState(
        n=pair.n,
        r=r,
        apothem=apothem.scale(r),
        area_lo=area_in.scale(r2),
        area_hi=area_out.scale(r2),
        circ_lo=p.scale(2 * r),
        circ_hi=P.scale(2 * r),
        half_cr_lo=p.scale(r2),
        half_cr_hi=P.scale(r2),
    )


@dataclass(frozen=True)
class Prop1Certificate:
    certified: bool
    gap: Fraction
    area: Interval
    half_cr: Interval
    state: SqueezeState


def verify_prop1(doublings: int, r=1, tolerance=Fraction(1, 10**6), bits: int = DEFAULT_BITS) -> Prop1Certificate:
    """Certify A = Cr/2 to within ``tolerance``.

    Both enclosures must overlap and be narrower than ``tolerance``.  ``gap``
    is the largest possible distance between A and Cr/2 that the enclosures
    allow.
    """
    tolerance = Fraction(tolerance)
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    state = squeeze_state(doublings, r, bits)
    area, half = state.area, state.half_cr
    widest = max(area.width, half.width)
    if widest >= tolerance:
        # width shrinks by ~4 per doubling
        extra = max(1, math.ceil(math.log(widest / tolerance, 4)) + 1)
        raise ToleranceUnreachable(
            f"enclosure width {float(widest):.3g} >= tolerance {float(tolerance):.3g} at k={doublings}",
            required_doublings=doublings + extra,
        )
    gap = max(area.hi, half.hi) - min(area.lo, half.lo)
    return Prop1Certificate(area.overlaps(half), gap, area, half, state)


def _doubling_index(n: int) -> int:
    if n < 6 or n % 6:
        return -1
    m = n // 6
    if m & (m - 1):
        return -1
    return m.bit_length() - 1


def verify_sector(theta_over_pi, k_ref: int | None = None, bits: int = DEFAULT_BITS) -> SectorBounds:
    """Bounds for the sector with half-angle ``theta = theta_over_pi * pi``.

    Only angles pi/n with n = 6 * 2**j are supported; sine and tangent then
    come straight from the polygon pair and the arc from a finer pi enclosure
    (``k_ref`` defaults to j + 6).
    """
    q = Fraction(theta_over_pi)
    j = _doubling_index(q.denominator) if q.numerator == 1 else -1
    if j < 0:
        raise UnsupportedAngle(f"theta = {q}*pi is not pi/(6*2^j)")
    if k_ref is None:
        k_ref = j + 6
    if k_ref <= j:
        raise ValueError("k_ref must exceed the angle's doubling index")
    pair = polygon_pair(j, bits)
    n = pair.n
    pi = pi_enclosure(k_ref, bits)
    theta = pi.scale(Fraction(1, n))
    return SectorBounds(
        theta=theta,
        chord_SU=pair.inscribed.scale(Fraction(2, n)),
        arc=theta.scale(2),
        tangent_PR=pair.circumscribed.scale(Fraction(2, n)),
    )


@dataclass(frozen=True)
class XII2Certificate:
    certified: bool
    ratio: Interval
    expected: Fraction
    gap: Fraction


def verify_euclid_xii2(r1, r2, doublings: int = 4, bits: int = DEFAULT_BITS) -> XII2Certificate:
    """Areas of circles are as the squares of their diameters.

    The area enclosures are exact rational multiples of the unit-circle
    enclosure, so the scaling identity is checked exactly and the ratio
    enclosure (formed without rounding) must contain (r1/r2)**2.
    """
    r1, r2 = Fraction(r1), Fraction(r2)
    if r1 <= 0 or r2 <= 0:
        raise ValueError("radii must be positive")
    a1 = squeeze_state(doublings, r1, bits).area
    a2 = squeeze_state(doublings, r2, bits).area
    expected = (r1 / r2) ** 2
    ratio = Interval(a1.lo / a2.hi, a1.hi / a2.lo, bits)
    exact = a1.lo * r2 * r2 == a2.lo * r1 * r1 and a1.hi * r2 * r2 == a2.hi * r1 * r1
    return XII2Certificate(exact and ratio.contains(expected), ratio, expected, Fraction(0))
