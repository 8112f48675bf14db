"""Classical rectifiable curves and an inscribed-polyline length oracle.

Each curve is described by a :class:`CurveSpec` over a normalized parameter:

==================== ============================== =========================
kind                 parameter                      point
==================== ============================== =========================
cycloid              u in [0, 1], t = 2 pi u        r (t - sin t, 1 - cos t)
semicubical          u in [0, 1]                    (a u^2, a u^3)
log_spiral           theta in [-T, 0]               a e^theta (cos, sin)
archimedean_spiral   u in [0, 1], theta = 2 pi u    h theta (cos, sin)
quadratrix           v in [0, 1], y = a v           (y cot(pi v / 2), y)
circle               u in [0, 1]                    r (cos 2 pi u, sin 2 pi u)
segment              u in [0, 1]                    linear interpolation
==================== ============================== =========================

The oracle sums chord lengths of an inscribed polyline (a certified lower
bound for the arc length) and adds an extrapolated error term built from
the difference between ``m`` and ``m/2`` segments.
"""

from __future__ import annotations

import csv
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .elementary import exp_point, expm1_small, sin_cos_half_small, sin_cos_interval, sin_cos_point
from .errors import NoClosedForm, NonConvergent, PrecisionExhausted
from .exactnum import DEFAULT_BITS, Interval, decimal_floor
from .polygon_pi import double_step, hexagon_init, iterate_pairs, pi_enclosure, polygon_pair

KINDS = (
    "cycloid",
    "semicubical",
    "log_spiral",
    "archimedean_spiral",
    "quadratrix",
    "circle",
    "segment",
)

_ROTATIONAL = {"cycloid", "circle", "archimedean_spiral"}
_SAFETY = 2
MAX_REFINEMENTS = 24


@functools.lru_cache(maxsize=None)
def deep_pi(bits: int = DEFAULT_BITS, max_doublings: int = 48) -> Interval:
    """Narrowest pi enclosure the polygon iteration reaches at ``bits``."""
    state = hexagon_init(bits)
    for _ in range(max_doublings):
        try:
            state = double_step(state)
        except PrecisionExhausted:
            break
    return state.enclosure


@dataclass(frozen=True)
class CurveSpec:
    kind: str
    params: Mapping[str, Fraction]
    domain: Interval = field(default_factory=lambda: Interval(0, 1))

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        params = {k: Fraction(v) for k, v in self.params.items()}
        if self.kind != "segment" and any(v <= 0 for v in params.values()):
            raise ValueError("curve parameters must be positive")
        object.__setattr__(self, "params", params)
        if self.domain.width == 0:
            raise ValueError("curve domain is empty")

    @classmethod
    def cycloid(cls, r=1):
        return cls("cycloid", {"r": r})

    @classmethod
    def semicubical(cls, a=1):
        return cls("semicubical", {"a": a})

    @classmethod
    def log_spiral(cls, a=1, T=40):
        return cls("log_spiral", {"a": a}, Interval(-Fraction(T), 0))

    @classmethod
    def archimedean_spiral(cls, h=1):
        return cls("archimedean_spiral", {"h": h})

    @classmethod
    def quadratrix(cls, a=1):
        return cls("quadratrix", {"a": a})

    @classmethod
    def circle(cls, r=1):
        return cls("circle", {"r": r})

    @classmethod
    def segment(cls, start, end):
        (x0, y0), (x1, y1) = start, end
        return cls("segment", {"x0": x0, "y0": y0, "x1": x1, "y1": y1})

    def point(self, u, bits: int = DEFAULT_BITS) -> tuple[Interval, Interval]:
        """Certified coordinates at parameter value ``u`` (rational)."""
        u = Fraction(u)
        p = self.params
        kind = self.kind
        if kind == "semicubical":
            a = p["a"]
            return Interval.point(a * u * u, bits), Interval.point(a * u**3, bits)
        if kind == "segment":
            x = p["x0"] + (p["x1"] - p["x0"]) * u
            y = p["y0"] + (p["y1"] - p["y0"]) * u
            return Interval.point(x, bits), Interval.point(y, bits)
        if kind == "log_spiral":
            rho = exp_point(u, bits).scale(p["a"])
            s, c = sin_cos_point(u, bits)
            return rho * c, rho * s
        pi = deep_pi(bits)
        if kind == "quadratrix":
            a = p["a"]
            if u == 0:
                return Interval.point(2 * a, bits) / pi, Interval.point(0, bits)
            s, c = sin_cos_interval(pi.scale(u / 2))
            return (c / s).scale(a * u), Interval.point(a * u, bits)
        t = pi.scale(2 * u)
        s, c = sin_cos_interval(t)
        return _rotational_point(kind, p, t, c, s)

    def sample(self, m: int, bits: int = DEFAULT_BITS) -> list[tuple[Interval, Interval]]:
        """Points at m + 1 equally spaced parameter values across the domain."""
        fast = _fast_sample(self, m, bits)
        if fast is not None:
            return fast
        lo, hi = self.domain.lo, self.domain.hi
        step = (hi - lo) / m
        return [self.point(lo + i * step, bits) for i in range(m + 1)]


def _rotational_point(kind, p, t, c, s):
    if kind == "cycloid":
        r = p["r"]
        return (t - s).scale(r), (1 - c).scale(r)
    if kind == "circle":
        r = p["r"]
        return c.scale(r), s.scale(r)
    rho = t.scale(p["h"])
    return rho * c, rho * s


def _power_of_two_multiple(m: int, base: int) -> int | None:
    if m < base or m % base:
        return None
    q = m // base
    if q & (q - 1):
        return None
    return q.bit_length() - 1


def rotation_table(j: int, count: int, bits: int = DEFAULT_BITS) -> list[tuple[Interval, Interval]]:
    """(cos, sin) of i*pi/n for i = 0..count, n = 6 * 2**j, by repeated rotation."""
    pair = polygon_pair(j, bits)
    c1, s1 = pair.cos, pair.sin
    c, s = Interval.point(1, bits), Interval.point(0, bits)
    table = [(c, s)]
    for _ in range(count):
        c, s = c * c1 - s * s1, s * c1 + c * s1
        table.append((c, s))
    return table


def _fast_sample(curve: CurveSpec, m: int, bits: int):
    kind, p = curve.kind, curve.params
    full = curve.domain.lo == 0 and curve.domain.hi == 1
    if kind in _ROTATIONAL and full:
        j = _power_of_two_multiple(m, 12)
        if j is None:
            return None
        pi = deep_pi(bits)
        step = pi.scale(Fraction(2, m))
        points = []
        for i, (c, s) in enumerate(rotation_table(j, m, bits)):
            points.append(_rotational_point(kind, p, step.scale(i), c, s))
        return points
    if kind == "quadratrix" and full:
        j = _power_of_two_multiple(m, 3)
        if j is None:
            return None
        a = p["a"]
        points = [curve.point(0, bits)]
        for i, (c, s) in enumerate(rotation_table(j, m, bits)[1:], start=1):
            v = Fraction(i, m)
            points.append(((c / s).scale(a * v), Interval.point(a * v, bits)))
        return points
    if kind == "log_spiral":
        # walk inward from the outer end so rounding errors shrink with the radius
        lo, hi = curve.domain.lo, curve.domain.hi
        h = (hi - lo) / m
        decay = exp_point(-h, bits)
        s, c = sin_cos_point(h, bits)
        wr, wi = decay * c, -(decay * s)
        x, y = curve.point(hi, bits)
        points = [(x, y)]
        for _ in range(m):
            x, y = x * wr - y * wi, x * wi + y * wr
            points.append((x, y))
        points.reverse()
        return points
    return None


def _polyline_length(points, stride: int = 1) -> Interval:
    pts = points[::stride]
    total = Interval.point(0, pts[0][0].bits)
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        total = total + ((x1 - x0).square() + (y1 - y0).square()).sqrt()
    return total


def _extrapolated(fine: Interval, coarse: Interval) -> Interval:
    # inscribed lengths converge like m**-2, so the error of the fine sum is
    # about a third of the fine/coarse difference
    diff = fine.hi - coarse.lo
    if diff < 0:
        diff = Fraction(0)
    return Interval(fine.lo, fine.hi + _SAFETY * diff / 3, fine.bits)


def inscribed_length(curve: CurveSpec, segments: int, bits: int = DEFAULT_BITS) -> Interval:
    """Length enclosure from an inscribed polyline with ``segments`` chords.

    The lower endpoint is the certified inscribed length; the upper endpoint
    adds twice the Richardson error estimate obtained from the polyline with
    half as many chords.
    """
    if segments < 2 or segments % 2:
        raise ValueError("segments must be an even integer >= 2")
    points = curve.sample(segments, bits)
    fine = _polyline_length(points)
    coarse = _polyline_length(points, 2)
    return _extrapolated(fine, coarse)


def default_segments(curve: CurveSpec) -> int:
    if curve.kind in _ROTATIONAL:
        return 96
    if curve.kind == "quadratrix":
        return 96
    return 64


def refine_length(
    curve: CurveSpec,
    tolerance=Fraction(1, 10**6),
    bits: int = DEFAULT_BITS,
    segments: int | None = None,
    max_doublings: int = MAX_REFINEMENTS,
) -> tuple[Interval, int]:
    """Double the segment count until the enclosure is narrower than ``tolerance``."""
    tolerance = Fraction(tolerance)
    m = segments or default_segments(curve)
    for _ in range(max_doublings + 1):
        enc = inscribed_length(curve, m, bits)
        if enc.width < tolerance:
            return enc, m
        m *= 2
    raise NonConvergent(f"{curve.kind}: no Cauchy convergence to {float(tolerance):.3g} after {max_doublings} doublings")


def _full_domain(curve: CurveSpec) -> bool:
    return curve.domain.lo == 0 and curve.domain.hi == 1


def analytic_length(curve: CurveSpec, bits: int = DEFAULT_BITS) -> Interval:
    p = curve.params
    kind = curve.kind
    if kind == "cycloid" and _full_domain(curve):
        return Interval.point(8 * p["r"], bits)
    if kind == "semicubical" and _full_domain(curve):
        root = Interval.point(13, bits).sqrt()
        return ((root * 13 - 8) / 27).scale(p["a"])
    if kind == "log_spiral":
        # the closed form covers the whole tail theta <= 0
        return Interval.point(2, bits).sqrt().scale(p["a"])
    if kind == "circle" and _full_domain(curve):
        return pi_enclosure_for(bits).scale(2 * p["r"])
    if kind == "segment":
        dx, dy = p["x1"] - p["x0"], p["y1"] - p["y0"]
        return Interval.point(dx * dx + dy * dy, bits).sqrt()
    raise NoClosedForm(f"no closed-form length for {kind} on {curve.domain!r}")


def pi_enclosure_for(bits: int) -> Interval:
    return deep_pi(bits)


def _rational_expr(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"(div {q.numerator} {q.denominator})"


def analytic_expression(curve: CurveSpec) -> str:
    """The closed-form length as a prefix s-expression over integers and sqrt."""
    p = curve.params
    if curve.kind == "cycloid" and _full_domain(curve):
        return f"(mul 8 {_rational_expr(p['r'])})"
    if curve.kind == "semicubical" and _full_domain(curve):
        return f"(mul {_rational_expr(p['a'])} (div (sub (mul 13 (sqrt 13)) 8) 27))"
    if curve.kind == "log_spiral":
        return f"(mul {_rational_expr(p['a'])} (sqrt 2))"
    if curve.kind == "segment":
        dx, dy = p["x1"] - p["x0"], p["y1"] - p["y0"]
        return f"(sqrt {_rational_expr(dx * dx + dy * dy)})"
    raise NoClosedForm(f"no constructible closed form for {curve.kind}")


@dataclass(frozen=True)
class RectifyResult:
    analytic: Interval
    oracle: Interval
    agree: bool
    detail: dict = field(default_factory=dict)
    segments: int | None = None


def rectify(curve: CurveSpec, tolerance=Fraction(1, 10**6), bits: int = DEFAULT_BITS, segments: int | None = None) -> RectifyResult:
    """Compare the closed-form length with the polyline oracle."""
    analytic = analytic_length(curve, bits)
    if curve.kind == "log_spiral":
        T = -curve.domain.lo
        oracle = log_spiral_tail(curve.params["a"], T, bits)
        return RectifyResult(analytic, oracle, analytic.overlaps(oracle))
    if segments is None:
        oracle, segments = refine_length(curve, tolerance, bits)
    else:
        oracle = inscribed_length(curve, segments, bits)
    return RectifyResult(analytic, oracle, analytic.overlaps(oracle), segments=segments)


# -- log spiral ---------------------------------------------------------------


def _log_spiral_polyline(a: Fraction, T: Fraction, m: int, bits: int) -> Interval:
    """Inscribed length over [-T, 0] with m equal angle steps, summed in closed form.

    Chords scale with e^theta, so the m chord lengths form a geometric series:
    L = a (1 - e^-T) |e^((1+i)h) - 1| / (e^h - 1), h = T/m.
    """
    h = T / m
    em1 = expm1_small(h, bits)
    sh, _ = sin_cos_half_small(h / 2, bits)
    # |w - 1|^2 = (e^h - 1)^2 + 4 e^h sin^2(h/2), w = e^((1+i)h)
    chord = (em1.square() + ((em1 + 1) * sh.square()).scale(4)).sqrt()
    decay = 1 - exp_point(-T, bits)
    return (decay * chord / em1).scale(a)


def log_spiral_tail(a=1, T=40, bits: int = DEFAULT_BITS, segments: int = 2**24) -> Interval:
    """Enclosure of the length of r = a e^theta over theta <= 0.

    Oracle length over [-T, 0] plus the exact tail a sqrt(2) e^-T.
    """
    a, T = Fraction(a), Fraction(T)
    if a <= 0 or T < 0:
        raise ValueError("need a > 0 and T >= 0")
    tail = Interval.point(2, bits).sqrt().scale(a) * exp_point(-T, bits)
    if T == 0:
        return Interval(0, tail.hi, bits)
    m = max(segments, 2 * int(T) + 2)
    m += m % 2
    fine = _log_spiral_polyline(a, T, m, bits)
    coarse = _log_spiral_polyline(a, T, m // 2, bits)
    partial = _extrapolated(fine, coarse)
    return Interval(partial.lo, partial.hi + tail.hi, bits)


# -- spiral of Archimedes -----------------------------------------------------


def spiral_subtangent(h=1, k_ref: int = 10, bits: int = DEFAULT_BITS, delta=Fraction(1, 2**32)) -> RectifyResult:
    """OB for the spiral r = h theta at the end of its first turn.

    The formula route evaluates the polar subtangent r^2/(dr/dtheta) = 4 pi^2 h
    with pi from ``pi_enclosure(k_ref)``.  The numeric route builds the
    tangent line at A from a central-difference slope (with its truncation
    error bound) and intersects it with the perpendicular to OA through O.
    """
    h, delta = Fraction(h), Fraction(delta)
    if h <= 0:
        raise ValueError("h must be positive")
    pi = pi_enclosure(k_ref, bits)
    formula = pi.square().scale(4 * h)
    first_radius = pi.scale(2 * h)
    circumference = pi.scale(2) * first_radius

    two_pi = deep_pi(bits).scale(2)
    sd, cd = sin_cos_point(delta, bits)

    def at(offset: Fraction, s: Interval, c: Interval):
        rho = (two_pi + offset).scale(h)
        return rho * c, rho * s

    xp, yp = at(delta, sd, cd)
    xm, ym = at(-delta, -sd, cd)
    xa = two_pi.scale(h)
    # |f'''| <= h (3 + theta) <= 10 h near theta = 2 pi
    trunc = delta * delta * 10 * h / 6
    dx = (xp - xm).scale(1 / (2 * delta))
    dy = (yp - ym).scale(1 / (2 * delta))
    dx = Interval(dx.lo - trunc, dx.hi + trunc, bits)
    dy = Interval(dy.lo - trunc, dy.hi + trunc, bits)
    numeric = abs(xa * dy / dx)
    return RectifyResult(
        analytic=formula,
        oracle=numeric,
        agree=formula.overlaps(numeric),
        detail={"OB": numeric, "OB_formula": formula, "circumference": circumference},
    )


# -- quadratrix ---------------------------------------------------------------


def quadratrix_base(a=1, k_ref: int = 20, bits: int = DEFAULT_BITS, first: int = 4, last: int = 20) -> RectifyResult:
    """The base point D of the quadratrix on the side CG = a.

    Route one is CD = 2a/pi.  Route two follows the curve x(y) = y cot(pi y / 2a)
    toward y = 0 along y = 2a/n, n = 6 * 2**j, where cot(pi/n) = n/P_n comes
    from the polygon pair.  x(y) increases as y falls, and since
    u cot u >= cos u >= 1 - u^2/2, the limit lies in
    [x(y), x(y) / (1 - tan(pi/n)^2 / 2)].
    """
    a = Fraction(a)
    if a <= 0:
        raise ValueError("a must be positive")
    formula = Interval.point(2 * a, bits) / pi_enclosure(k_ref, bits)
    samples = []
    for j, pair in enumerate(iterate_pairs(last, bits)):
        if j < first:
            continue
        y = Fraction(2 * a, pair.n)
        samples.append(pair.tan.reciprocal().scale(y))
    for x0, x1 in zip(samples, samples[1:]):
        if not x0.certainly_lt(x1):
            raise PrecisionExhausted("quadratrix samples not certified increasing")
    pair = polygon_pair(last, bits)
    u = pair.tan
    shrink = 1 - u.square().scale(Fraction(1, 2))
    limit = Interval(samples[-1].lo, (samples[-1] / shrink).hi, bits)
    cd = formula.intersect(limit) or formula
    ratio = Interval.point(a, bits) / cd
    return RectifyResult(
        analytic=formula,
        oracle=limit,
        agree=formula.overlaps(limit),
        detail={"CD": cd, "CG_over_CD": ratio, "samples": tuple(samples)},
    )


def emit_polyline(curve: CurveSpec, segments: int, path, bits: int = DEFAULT_BITS, digits: int = 12) -> None:
    """Write ``t,x,y`` rows (parameter and point midpoints) for plotting."""
    points = curve.sample(segments, bits)
    lo, hi = curve.domain.lo, curve.domain.hi
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "x", "y"])
        for i, (x, y) in enumerate(points):
            t = lo + (hi - lo) * i / segments
            writer.writerow([decimal_floor(t, digits), decimal_floor(x.mid, digits), decimal_floor(y.mid, digits)])
