import csv
import os
from fractions import Fraction

import mpmath
import pytest

from archimedes.constructible import eval_expr, is_constructible, parse
from archimedes.elementary import exp_point, expm1_small, sin_cos_interval, sin_cos_point
from archimedes.errors import NoClosedForm, NonConvergent
from archimedes.exactnum import Interval
from archimedes.polygon_pi import pi_enclosure
from archimedes.rectify import (
    CurveSpec,
    analytic_expression,
    analytic_length,
    emit_polyline,
    inscribed_length,
    log_spiral_tail,
    quadratrix_base,
    rectify,
    refine_length,
    rotation_table,
    spiral_subtangent,
)
from conftest import encloses, mpf

SEMICUBICAL = (13 * mpmath.sqrt(13) - 8) / 27


# -- elementary enclosures (oracle only) --------------------------------------------


@pytest.mark.parametrize("x", [Fraction(0), Fraction(1, 3), Fraction(-7, 2), Fraction(40), Fraction(-40), Fraction(1, 2**20)])
def test_exp_encloses(x):
    e = exp_point(x, 128)
    assert encloses(e, mpmath.exp(mpf(x)))
    assert e.width <= Fraction(1, 2**100) * max(1, abs(e.hi))


def test_expm1_small_relative_accuracy():
    h = Fraction(1, 10**7)
    e = expm1_small(h, 128)
    assert encloses(e, mpmath.expm1(mpf(h)))
    assert e.width < h * Fraction(1, 2**100)


@pytest.mark.parametrize("x", [Fraction(0), Fraction(1, 7), Fraction(22, 7), Fraction(-5), Fraction(100, 3)])
def test_sin_cos_enclose(x):
    s, c = sin_cos_point(x, 128)
    assert encloses(s, mpmath.sin(mpf(x)))
    assert encloses(c, mpmath.cos(mpf(x)))
    assert s.width < Fraction(1, 2**90) and c.width < Fraction(1, 2**90)


def test_sin_cos_interval_argument():
    pi = pi_enclosure(12, 128)
    s, c = sin_cos_interval(pi)
    assert 0 in s and -1 in c


def test_rotation_table_matches_trig():
    table = rotation_table(1, 24, 128)
    for i, (c, s) in enumerate(table):
        t = i * mpmath.pi / 12
        assert encloses(c, mpmath.cos(t)) and encloses(s, mpmath.sin(t))


# -- curve catalog ------------------------------------------------------------------------


def test_curve_validation():
    with pytest.raises(ValueError):
        CurveSpec.cycloid(0)
    with pytest.raises(ValueError):
        CurveSpec("hyperbola", {"a": 1})
    with pytest.raises(ValueError):
        CurveSpec("cycloid", {"r": 1}, Interval(Fraction(1, 2), Fraction(1, 2)))


def test_points_on_curves():
    cyc = CurveSpec.cycloid(2)
    x, y = cyc.point(Fraction(1, 4))  # t = pi/2
    assert encloses(x, 2 * (mpmath.pi / 2 - 1)) and encloses(y, mpmath.mpf(2))
    semi = CurveSpec.semicubical(3)
    x, y = semi.point(Fraction(1, 2))
    # a y^2 = x^3
    assert 3 * y.lo**2 == x.lo**3
    quad = CurveSpec.quadratrix(1)
    x, y = quad.point(Fraction(1, 2))
    assert encloses(x, mpmath.mpf(1) / 2 * mpmath.cot(mpmath.pi / 4))


def test_segment_exact_at_any_m():
    seg = CurveSpec.segment((0, 0), (3, 4))
    for m in (2, 6, 64):
        enc = inscribed_length(seg, m)
        assert enc.lo == enc.hi == 5
    assert rectify(seg, segments=8).agree


def test_inscribed_length_needs_even_segments():
    with pytest.raises(ValueError):
        inscribed_length(CurveSpec.cycloid(1), 7)
    with pytest.raises(ValueError):
        inscribed_length(CurveSpec.cycloid(1), 0)


def test_circle_matches_pi_enclosure():
    enc, m = refine_length(CurveSpec.circle(1), Fraction(1, 10**5))
    two_pi = pi_enclosure(16, 128).scale(2)
    assert enc.overlaps(two_pi)
    assert encloses(enc, 2 * mpmath.pi)
    assert enc.width < Fraction(1, 10**5)
    # the inscribed 96-gon gives the same lower bound as the polygon recurrence
    assert inscribed_length(CurveSpec.circle(1), 96).lo <= pi_enclosure(4, 128).scale(2).hi


def test_circle_at_96_segments():
    enc = inscribed_length(CurveSpec.circle(1), 96)
    assert encloses(enc, 2 * mpmath.pi)
    assert abs(float(enc.lo) - 2 * float(mpmath.pi) * float(mpmath.sin(mpmath.pi / 96) * 96 / mpmath.pi)) < 1e-12


@pytest.mark.parametrize(
    "curve",
    [
        CurveSpec("cycloid", {"r": 1}, Interval(0, Fraction(1, 2))),
        CurveSpec.log_spiral(1, 4),
        CurveSpec.circle(1),
        CurveSpec.semicubical(1),
    ],
    ids=["cycloid-half-arch", "log-spiral-segment", "circle", "semicubical"],
)
def test_lower_bounds_nondecreasing(curve):
    lows = [inscribed_length(curve, m, 64).lo for m in (12, 24, 48, 96)]
    assert all(a <= b for a, b in zip(lows, lows[1:]))


def test_analytic_lengths():
    assert analytic_length(CurveSpec.cycloid(1)) == Interval.point(8)
    assert analytic_length(CurveSpec.cycloid(Fraction(3, 2))).lo == 12
    assert encloses(analytic_length(CurveSpec.semicubical(1)), SEMICUBICAL)
    assert encloses(analytic_length(CurveSpec.log_spiral(1)), mpmath.sqrt(2))
    assert abs(float(analytic_length(CurveSpec.semicubical(1)).mid) - 1.4397099) < 1e-7


@pytest.mark.parametrize("curve", [CurveSpec.archimedean_spiral(1), CurveSpec.quadratrix(1)])
def test_no_closed_form(curve):
    with pytest.raises(NoClosedForm):
        analytic_length(curve)
    with pytest.raises(NoClosedForm):
        analytic_expression(curve)


def test_cycloid_agrees():
    res = rectify(CurveSpec.cycloid(1), Fraction(1, 10**6))
    assert res.agree
    assert res.analytic.lo == res.analytic.hi == 8
    assert 8 in res.oracle and res.oracle.width < Fraction(1, 10**6)
    assert res.segments <= 2**20


@pytest.mark.skipif(not os.environ.get("ARCHIMEDES_SLOW"), reason="several minutes; set ARCHIMEDES_SLOW=1")
def test_cycloid_nano_tolerance():
    enc, m = refine_length(CurveSpec.cycloid(1), Fraction(1, 10**9), segments=2**17)
    assert 8 in enc and enc.width < Fraction(1, 10**9)
    assert m <= 2**20


def test_cycloid_scales_with_radius():
    res = rectify(CurveSpec.cycloid(Fraction(1, 3)), segments=384)
    assert res.agree and Fraction(8, 3) in res.oracle


def test_semicubical_agrees():
    res = rectify(CurveSpec.semicubical(1), Fraction(1, 10**6))
    assert res.agree
    both = res.analytic.intersect(res.oracle)
    assert both is not None and both.width < Fraction(1, 10**6)
    assert encloses(res.oracle, SEMICUBICAL)


def test_refinement_gives_up():
    with pytest.raises(NonConvergent):
        refine_length(CurveSpec.cycloid(1), Fraction(1, 10**30), bits=64, max_doublings=2)


def test_constructible_hand_off():
    for curve, depth in ((CurveSpec.semicubical(1), 1), (CurveSpec.log_spiral(1), 1), (CurveSpec.cycloid(2), 0)):
        text = analytic_expression(curve)
        cert = is_constructible(text, 128)
        assert cert.constructible and cert.depth == depth
        assert cert.enclosure.overlaps(analytic_length(curve))


def test_no_submitted_expression_pins_down_pi():
    pi = mpmath.pi
    candidates = [
        analytic_expression(CurveSpec.semicubical(1)),
        analytic_expression(CurveSpec.log_spiral(1)),
        "(div 355 113)",
        "(div 22 7)",
        "(add 3 (div (sqrt 2) 10))",
        "(sqrt (add (sqrt 2) 8))",
    ]
    for text in candidates:
        enc = eval_expr(parse(text), 128)
        assert not (encloses(enc, pi, slack=0) and enc.width < Fraction(1, 10**20))


# -- log spiral ------------------------------------------------------------------------


def test_log_spiral_tail_encloses_sqrt2():
    enc = log_spiral_tail(1, 40)
    assert encloses(enc, mpmath.sqrt(2))
    assert enc.width < Fraction(1, 10**9)


def test_log_spiral_tail_at_zero_truncation():
    enc = log_spiral_tail(1, 0)
    assert enc.lo == 0
    assert encloses(Interval(enc.hi, enc.hi), mpmath.sqrt(2), slack=Fraction(1, 2**100))


def test_log_spiral_scaling():
    one, three = log_spiral_tail(1, 20, segments=2**16), log_spiral_tail(3, 20, segments=2**16)
    assert encloses(three, 3 * mpmath.sqrt(2))
    assert three.overlaps(one.scale(3))


def test_log_spiral_polyline_matches_sampled_polyline():
    # the closed-form geometric sum agrees with summing sampled chords
    curve = CurveSpec.log_spiral(1, 4)
    sampled = inscribed_length(curve, 64, 128)
    res = rectify(CurveSpec.log_spiral(1, 4))
    assert res.agree
    tail = mpmath.sqrt(2) * (1 - mpmath.exp(-4))
    assert encloses(Interval(sampled.lo, sampled.hi + Fraction(1, 10**3)), tail)


def test_log_spiral_rejects_bad_input():
    with pytest.raises(ValueError):
        log_spiral_tail(0, 4)


# -- spiral of Archimedes ---------------------------------------------------------------


def test_spiral_subtangent_h1():
    res = spiral_subtangent(1, 10)
    four_pi2 = 4 * mpmath.pi**2
    assert res.agree
    assert encloses(res.detail["OB"], four_pi2)
    assert encloses(res.detail["OB_formula"], four_pi2)
    assert encloses(res.detail["circumference"], four_pi2)
    assert abs(float(res.detail["OB"].mid) - 39.4784) < 1e-4


def test_spiral_subtangent_linear_in_h():
    full, half = spiral_subtangent(1, 10), spiral_subtangent(Fraction(1, 2), 10)
    assert half.detail["OB_formula"] == full.detail["OB_formula"].scale(Fraction(1, 2))
    assert encloses(half.detail["OB"], 2 * mpmath.pi**2)


def test_subtangent_over_circumference_contains_one():
    res = spiral_subtangent(1, 10)
    assert 1 in res.detail["OB"] / res.detail["circumference"]
    assert 1 in res.detail["OB_formula"] / res.detail["circumference"]


# -- quadratrix ---------------------------------------------------------------------------


def test_quadratrix_base():
    res = quadratrix_base(1)
    assert res.agree
    assert encloses(res.detail["CD"], 2 / mpmath.pi)
    ratio = res.detail["CG_over_CD"]
    assert encloses(ratio, mpmath.pi / 2)
    assert ratio.width < Fraction(1, 10**4)
    # the limit route alone also pins down pi/2
    alone = Interval.point(1) / res.oracle
    assert encloses(alone, mpmath.pi / 2) and alone.width < Fraction(1, 10**4)


def test_quadratrix_samples_increase_towards_limit():
    res = quadratrix_base(1, first=2, last=10)
    xs = res.detail["samples"]
    assert all(a.hi < b.lo for a, b in zip(xs, xs[1:]))
    assert all(mpf(x.hi) < 2 / mpmath.pi for x in xs)


def test_quadratrix_scales():
    one, two = quadratrix_base(1, 12, last=12), quadratrix_base(2, 12, last=12)
    assert two.analytic.overlaps(one.analytic.scale(2))
    assert two.detail["CD"].overlaps(one.detail["CD"].scale(2))
    assert encloses(two.detail["CD"], 4 / mpmath.pi)


def test_quadratrix_polyline_reaches_base():
    enc = inscribed_length(CurveSpec.quadratrix(1), 96)
    assert enc.lo > 0


# -- polyline export ------------------------------------------------------------------------


def test_emit_polyline(tmp_path):
    path = tmp_path / "cyc.csv"
    emit_polyline(CurveSpec.cycloid(1), 24, path, digits=8)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["t", "x", "y"]
    assert len(rows) == 26
    assert rows[1] == ["0.00000000", "0.00000000", "0.00000000"]
    assert abs(float(rows[13][1]) - float(mpmath.pi)) < 1e-7 and abs(float(rows[13][2]) - 2) < 1e-7
