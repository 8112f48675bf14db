"""Piecewise-linear chains and the two length axioms for convex curves.

Positions are exact rationals, so every geometric predicate (orientation,
containment) is decided exactly.  Only lengths are irrational; they are
summed edge by edge as interval square roots, which is finite additivity
taken as the definition of a chain's length.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ChainsNotNested, EndpointMismatch, NotConcave, PointNotInterior
from .exactnum import DEFAULT_BITS, Interval

Point = tuple[Fraction, Fraction]


def as_point(p) -> Point:
    x, y = p
    return Fraction(x), Fraction(y)


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b - a) x (c - a): 1 left turn, -1 right, 0 collinear."""
    # integer cross-multiplication; every denominator is positive
    (axn, axd), (ayn, ayd) = _nd(a[0]), _nd(a[1])
    (bxn, bxd), (byn, byd) = _nd(b[0]), _nd(b[1])
    (cxn, cxd), (cyn, cyd) = _nd(c[0]), _nd(c[1])
    ux, ux_d = bxn * axd - axn * bxd, bxd * axd
    uy, uy_d = byn * ayd - ayn * byd, byd * ayd
    vx, vx_d = cxn * axd - axn * cxd, cxd * axd
    vy, vy_d = cyn * ayd - ayn * cyd, cyd * ayd
    d = ux * vy * uy_d * vx_d - uy * vx * ux_d * vy_d
    return (d > 0) - (d < 0)


def _nd(q) -> tuple[int, int]:
    return q.numerator, q.denominator


def squared_distance(a: Point, b: Point) -> Fraction:
    dx, dy = b[0] - a[0], b[1] - a[1]
    return dx * dx + dy * dy


def segment_length(a: Point, b: Point, bits: int = DEFAULT_BITS) -> Interval:
    return Interval.point(squared_distance(a, b), bits).sqrt()


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return (
        orient(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


@dataclass(frozen=True)
class Chain:
    vertices: tuple[Point, ...]

    def __init__(self, vertices: Iterable):
        pts = tuple(as_point(v) for v in vertices)
        if len(pts) < 2:
            raise ValueError("a chain needs at least two vertices")
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise ValueError(f"consecutive vertices coincide at {a}")
        object.__setattr__(self, "vertices", pts)

    @property
    def endpoints(self) -> tuple[Point, Point]:
        return self.vertices[0], self.vertices[-1]

    def chord(self) -> Chain:
        return Chain(self.endpoints)

    @property
    def edges(self):
        return zip(self.vertices, self.vertices[1:])

    def length(self, bits: int = DEFAULT_BITS) -> Interval:
        total = Interval.point(0, bits)
        for a, b in self.edges:
            total = total + segment_length(a, b, bits)
        return total

    def split(self, index: int) -> tuple[Chain, Chain]:
        """Split at an interior vertex; both parts share that vertex."""
        if not 0 < index < len(self.vertices) - 1:
            raise ValueError("split index must name an interior vertex")
        return Chain(self.vertices[: index + 1]), Chain(self.vertices[index:])

    def corners(self) -> tuple[Point, ...]:
        """Vertices with collinear pass-through points removed."""
        keep = [self.vertices[0]]
        for a, b, c in zip(self.vertices, self.vertices[1:], self.vertices[2:]):
            if orient(a, b, c) != 0:
                keep.append(b)
        keep.append(self.vertices[-1])
        return tuple(keep)

    def is_straight(self) -> bool:
        a, b = self.endpoints
        return all(orient(a, b, v) == 0 for v in self.vertices)

    def bulge(self) -> int:
        """Side of the chord the chain lies on: 1 left, -1 right, 0 on the chord."""
        a, b = self.endpoints
        for v in self.vertices:
            s = orient(a, b, v)
            if s:
                return s
        return 0


def is_concave_same_direction(chain: Chain) -> bool:
    """True if every segment joining two vertices lies on one side of the chain.

    For a polyline this means the closed polygon formed by the chain and its
    chord is convex, i.e. every vertex lies on one closed side of every edge
    (chord included).  A straight chain qualifies as long as it runs
    monotonically from one endpoint to the other.
    """
    pts = chain.vertices
    a, b = chain.endpoints
    if chain.is_straight():
        if a == b:
            return False
        return all(
            (v[0] - u[0]) * (b[0] - a[0]) + (v[1] - u[1]) * (b[1] - a[1]) > 0
            for u, v in chain.edges
        )
    if a == b:
        return False
    side = chain.bulge()
    ring = list(pts)
    # the closing edge runs b -> a; orientation of the closed ring is -side
    expected = -side
    n = len(ring)
    for i in range(n):
        u, v = ring[i], ring[(i + 1) % n]
        for w in ring:
            s = orient(u, v, w)
            if s and s != expected:
                return False
    # reject back-tracking along a straight stretch
    for u, v, w in zip(pts, pts[1:], pts[2:]):
        if orient(u, v, w) == 0:
            if (v[0] - u[0]) * (w[0] - v[0]) + (v[1] - u[1]) * (w[1] - v[1]) < 0:
                return False
    return True


def _inside_region(p: Point, outer: Chain) -> bool:
    """Closed point-in-region test for the convex region bounded by ``outer`` and its chord."""
    ring = outer.vertices
    if outer.is_straight():
        a, b = outer.endpoints
        return _on_segment(p, a, b)
    expected = -outer.bulge()
    n = len(ring)
    for i in range(n):
        u, v = ring[i], ring[(i + 1) % n]
        s = orient(u, v, p)
        if s and s != expected:
            return False
    return True


def chain_between(inner: Chain, outer: Chain) -> bool:
    """True if the region under ``inner`` lies within the region under ``outer``.

    Both chains must share endpoints and be concave in the same direction.
    Partial contact with the outer chain is allowed.
    """
    if inner.endpoints != outer.endpoints:
        raise EndpointMismatch(f"endpoints differ: {inner.endpoints} vs {outer.endpoints}")
    for c, name in ((inner, "inner"), (outer, "outer")):
        if not is_concave_same_direction(c):
            raise NotConcave(f"{name} chain is not concave in the same direction")
    return all(_inside_region(v, outer) for v in inner.vertices)


class ChainOrder(enum.Enum):
    INNER_SHORTER = "inner-shorter"
    EQUAL = "equal"
    OVERLAPPING = "overlapping"


def compare_chains(inner: Chain, outer: Chain, bits: int = DEFAULT_BITS) -> ChainOrder:
    """Certified comparison of two nested chains.

    Returns ``INNER_SHORTER`` only when the length enclosures are strictly
    separated, ``EQUAL`` when both chains trace the same polyline, and
    ``OVERLAPPING`` when the enclosures are too wide to decide.
    """
    if not chain_between(inner, outer):
        raise ChainsNotNested("inner chain is not included between the outer chain and the chord")
    if inner.corners() == outer.corners():
        return ChainOrder.EQUAL
    if inner.length(bits).certainly_lt(outer.length(bits)):
        return ChainOrder.INNER_SHORTER
    return ChainOrder.OVERLAPPING


def euclid_triangle_checks(E, F, G, H, bits: int = DEFAULT_BITS) -> tuple[bool, bool]:
    """Certify EF < EH + FH and EH + FH < EG + FG for H strictly inside EFG."""
    E, F, G, H = (as_point(p) for p in (E, F, G, H))
    o = orient(E, F, G)
    if o == 0 or not (orient(E, F, H) == o and orient(F, G, H) == o and orient(G, E, H) == o):
        raise PointNotInterior(f"{H} is not strictly inside triangle {E}, {F}, {G}")
    ef = segment_length(E, F, bits)
    inner = segment_length(E, H, bits) + segment_length(F, H, bits)
    outer = segment_length(E, G, bits) + segment_length(F, G, bits)
    return ef.certainly_lt(inner), inner.certainly_lt(outer)


@dataclass(frozen=True)
class SectorBounds:
    """Sector of half-angle theta in the unit circle.

    ``chord_SU = 2 sin(theta)``, ``arc = 2 theta``, ``tangent_PR = 2 tan(theta)``.
    """

    theta: Interval
    chord_SU: Interval
    arc: Interval
    tangent_PR: Interval

    @property
    def certified(self) -> bool:
        return self.chord_SU.certainly_lt(self.arc) and self.arc.certainly_lt(self.tangent_PR)


def polyline(points: Sequence) -> Chain:
    return Chain(points)
