"""Sphere and cylinder constants from the pi enclosure.

Volumes and surfaces are taken as their usual formulas in pi; what gets
certified are the identities among them:

    pi = C/d = A/r^2 = 6 V/d^3 = S/(4 r^2)

and the cylinder circumscribing a sphere having 3/2 of its volume and of
its total surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exactnum import DEFAULT_BITS, Interval
from .exhaustion import squeeze_state
from .polygon_pi import pi_enclosure

THREE_HALVES = Fraction(3, 2)


@dataclass(frozen=True)
class SolidReport:
    r: Fraction
    d: Fraction
    V: Interval
    S: Interval
    cyl_V: Interval
    cyl_S_total: Interval
    ratios: dict = field(default_factory=dict)


def sphere_constants(r=1, k_ref: int = 10, bits: int = DEFAULT_BITS) -> SolidReport:
    r = Fraction(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    d = 2 * r
    pi = pi_enclosure(k_ref, bits)
    V = pi.scale(Fraction(4, 3) * r**3)
    S = pi.scale(4 * r * r)
    cyl_V = pi.scale(2 * r**3)
    cyl_S = pi.scale(6 * r * r)
    state = squeeze_state(k_ref, r, bits)
    ratios = {
        "C/d": state.circumference / d,
        "A/r^2": state.area / (r * r),
        "6V/d^3": V * 6 / d**3,
        "S/4r^2": S / (4 * r * r),
        "pi": pi,
    }
    return SolidReport(r, d, V, S, cyl_V, cyl_S, ratios)


def identity_chain_intersects(report: SolidReport) -> bool:
    names = ("C/d", "A/r^2", "6V/d^3", "S/4r^2")
    return all(report.ratios[a].overlaps(report.ratios[b]) for a, b in combinations(names, 2))


@dataclass(frozen=True)
class CylinderRatios:
    volume: Interval
    surface: Interval

    @property
    def certified(self) -> bool:
        return self.volume.contains(THREE_HALVES) and self.surface.contains(THREE_HALVES)


def cylinder_sphere_ratios(r=1, k_ref: int = 10, bits: int = DEFAULT_BITS) -> CylinderRatios:
    """Cylinder-to-sphere ratios of volume and of total surface; both contain 3/2."""
    report = sphere_constants(r, k_ref, bits)
    return CylinderRatios(report.cyl_V / report.V, report.cyl_S_total / report.S)
