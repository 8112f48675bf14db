"""Inscribed/circumscribed polygon doubling for the unit circle.

The state carries the semiperimeters ``p_n = n sin(pi/n)`` and
``P_n = n tan(pi/n)`` of regular n-gons inscribed in and circumscribed about
the unit circle.  Doubling uses

    P_2n = 2 p_n P_n / (p_n + P_n)      (harmonic mean)
    p_2n = sqrt(p_n P_2n)               (geometric mean)

so the certified path needs only rational operations and one square root per
step.  Since C/d equals the unit-circle semiperimeter, ``[lo(p_n), hi(P_n)]``
encloses pi.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionExhausted
from .exactnum import DEFAULT_BITS, Interval

MIN_BITS = 16


@dataclass(frozen=True)
class PolygonPair:
    n: int
    inscribed: Interval
    circumscribed: Interval
    k: int = 0

    @property
    def enclosure(self) -> Interval:
        return Interval(self.inscribed.lo, self.circumscribed.hi, self.inscribed.bits)

    @property
    def sin(self) -> Interval:
        """Enclosure of sin(pi/n)."""
        return self.inscribed.scale(Fraction(1, self.n))

    @property
    def tan(self) -> Interval:
        """Enclosure of tan(pi/n)."""
        return self.circumscribed.scale(Fraction(1, self.n))

    @property
    def cos(self) -> Interval:
        """Enclosure of cos(pi/n) = p_n / P_n."""
        return self.inscribed / self.circumscribed


@dataclass(frozen=True)
class ConvergenceRow:
    k: int
    n: int
    lower: Fraction
    upper: Fraction
    width: Fraction
    width_ratio: Fraction | None = None


def hexagon_init(bits: int = DEFAULT_BITS) -> PolygonPair:
    if bits < MIN_BITS:
        raise ValueError(f"precision_bits must be >= {MIN_BITS}")
    inscribed = Interval.point(3, bits)
    circumscribed = Interval.point(12, bits).sqrt()  # 2*sqrt(3)
    return PolygonPair(6, inscribed, circumscribed, 0)


def double_step(state: PolygonPair) -> PolygonPair:
    p, P = state.inscribed, state.circumscribed
    # harmonic mean written so that each operand appears once
    P2 = 2 / (p.reciprocal() + P.reciprocal())
    p2 = (p * P2).sqrt()
    if not p2.hi < P2.lo:
        raise PrecisionExhausted(
            f"n={2 * state.n}: inscribed and circumscribed enclosures overlap at {p.bits} bits"
        )
    return PolygonPair(2 * state.n, p2, P2, state.k + 1)


def polygon_pair(doublings: int, bits: int = DEFAULT_BITS) -> PolygonPair:
    if doublings < 0:
        raise ValueError("doublings must be >= 0")
    state = hexagon_init(bits)
    for _ in range(doublings):
        state = double_step(state)
    return state


def iterate_pairs(doublings: int, bits: int = DEFAULT_BITS):
    """Yield the states for k = 0..doublings."""
    state = hexagon_init(bits)
    yield state
    for _ in range(doublings):
        state = double_step(state)
        yield state


def pi_enclosure(doublings: int, bits: int = DEFAULT_BITS) -> Interval:
    """Enclosure of pi from the 6*2**doublings-gon pair."""
    return polygon_pair(doublings, bits).enclosure


def convergence_report(max_doublings: int, bits: int = DEFAULT_BITS) -> list[ConvergenceRow]:
    if max_doublings < 1:
        raise ValueError("max_doublings must be >= 1")
    rows: list[ConvergenceRow] = []
    previous = None
    for state in iterate_pairs(max_doublings, bits):
        enc = state.enclosure
        ratio = None if previous is None else previous / enc.width
        rows.append(ConvergenceRow(state.k, state.n, enc.lo, enc.hi, enc.width, ratio))
        previous = enc.width
    return rows
