"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed in the
"acceptance criteria" section at the end of the pytest run.  Run alone with

    pytest tests/test_acceptance.py -v
"""

import io
import json
import random
import time
from fractions import Fraction

import mpmath

from archimedes.chains import ChainOrder, chain_between, compare_chains
from archimedes.cli import run
from archimedes.exhaustion import verify_euclid_xii2, verify_sector
from archimedes.polygon_pi import convergence_report
from archimedes.rectify import CurveSpec, log_spiral_tail, quadratrix_base, rectify, spiral_subtangent
from archimedes.solids import THREE_HALVES, cylinder_sphere_ratios, identity_chain_intersects, sphere_constants
from chaingen import axiom1_case, axiom2_case, squared_edges
from conftest import encloses

MICRO = Fraction(1, 10**6)


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, (json.loads(out.getvalue()) if out.getvalue() else None)


def exact(rec, key):
    return Fraction(rec[key])


def test_criterion_01_archimedes_bounds(criterion):
    run(["pi", "--doublings", "1"], io.StringIO(), io.StringIO())  # warm imports
    t0 = time.perf_counter()
    code, doc = cli("pi", "--doublings", "4", "--bits", "128")
    elapsed = time.perf_counter() - t0
    pi = doc["enclosures"]["pi"]
    lo, hi = exact(pi, "lo_exact"), exact(pi, "hi_exact")
    ok = code == 0 and Fraction(223, 71) < lo and hi < Fraction(22, 7) and elapsed < 0.1
    criterion(1, ok, f"[{pi['lo'][:12]}, {pi['hi'][:12]}] inside (223/71, 22/7) in {elapsed * 1e3:.1f} ms")
    assert ok


def test_criterion_02_convergence_law(criterion):
    rows = convergence_report(16, 256)
    ratios = [r.width_ratio for r in rows if 6 <= r.k <= 16]
    in_band = all(Fraction(7, 2) <= q <= Fraction(9, 2) for q in ratios)
    t0 = time.perf_counter()
    code, _ = cli("pi", "--doublings", "16")
    elapsed = time.perf_counter() - t0
    ok = in_band and len(ratios) == 11 and code == 0 and elapsed < 1.0
    span = f"{float(min(ratios)):.4f}..{float(max(ratios)):.4f}"
    criterion(2, ok, f"width ratios k=6..16 in {span}; pi --doublings 16 in {elapsed * 1e3:.1f} ms")
    assert ok


def test_criterion_03_prop1_squeeze(criterion):
    code, doc = cli("squeeze", "--doublings", "12", "--radius", "1", "--tolerance", "1e-6")
    area, half = doc["enclosures"]["area"], doc["enclosures"]["half_cr"]
    wa = exact(area, "hi_exact") - exact(area, "lo_exact")
    wh = exact(half, "hi_exact") - exact(half, "lo_exact")
    overlap = exact(area, "lo_exact") <= exact(half, "hi_exact") and exact(half, "lo_exact") <= exact(area, "hi_exact")
    ok = code == 0 and doc["certified"] and overlap and wa < MICRO and wh < MICRO
    criterion(3, ok, f"A and Cr/2 overlap; widths {float(wa):.2e}, {float(wh):.2e}")
    assert ok


def test_criterion_04_sector_inequality(criterion):
    results = []
    for n in (6, 12, 24, 48, 96):
        b = verify_sector(Fraction(1, n))
        strict = b.chord_SU.hi < b.arc.lo and b.arc.hi < b.tangent_PR.lo
        theta = mpmath.pi / n
        truth = encloses(b.chord_SU, 2 * mpmath.sin(theta)) and encloses(b.arc, 2 * theta) and encloses(b.tangent_PR, 2 * mpmath.tan(theta))
        results.append(strict and truth)
    ok = all(results)
    criterion(4, ok, "chord < arc < tangent certified for pi/6, pi/12, pi/24, pi/48, pi/96")
    assert ok


def test_criterion_05_cycloid(criterion):
    res = rectify(CurveSpec.cycloid(1), MICRO)
    both = res.analytic.intersect(res.oracle)
    ok = res.agree and both is not None and res.oracle.width < MICRO and res.segments <= 2**20
    criterion(5, ok, f"8 in oracle of width {float(res.oracle.width):.2e} at m = {res.segments}")
    assert ok


def test_criterion_06_semicubical(criterion):
    res = rectify(CurveSpec.semicubical(1), MICRO)
    both = res.analytic.intersect(res.oracle)
    truth = encloses(res.analytic, (13 * mpmath.sqrt(13) - 8) / 27)
    ok = res.agree and truth and both is not None and both.width < MICRO
    criterion(6, ok, f"oracle meets (13 sqrt13 - 8)/27; oracle width {float(res.oracle.width):.2e} at m = {res.segments}")
    assert ok


def test_criterion_07_log_spiral(criterion):
    enc = log_spiral_tail(1, 40)
    ok = enc.width < Fraction(1, 10**9) and encloses(enc, mpmath.sqrt(2))
    criterion(7, ok, f"tail length contains sqrt 2 with width {float(enc.width):.2e}")
    assert ok


def test_criterion_08_spiral_subtangent(criterion):
    res = spiral_subtangent(1)
    target = 4 * mpmath.pi**2
    ob, formula = res.detail["OB"], res.detail["OB_formula"]
    ok = encloses(ob, target) and encloses(formula, target) and ob.overlaps(formula)
    criterion(8, ok, f"numeric OB width {float(ob.width):.2e}, formula width {float(formula.width):.2e}, both contain 4 pi^2")
    assert ok


def test_criterion_09_quadratrix(criterion):
    res = quadratrix_base(1)
    ratio = res.detail["CG_over_CD"]
    ok = res.agree and encloses(ratio, mpmath.pi / 2) and ratio.width < Fraction(1, 10**4)
    criterion(9, ok, f"CG/CD contains pi/2 with width {float(ratio.width):.2e}; routes agree")
    assert ok


def test_criterion_10_solids(criterion):
    cyl = cylinder_sphere_ratios(1, 10)
    widths_ok = cyl.volume.width < MICRO and cyl.surface.width < MICRO
    chains_ok = all(identity_chain_intersects(sphere_constants(1, k)) for k in range(17))
    ok = cyl.certified and THREE_HALVES in cyl.volume and THREE_HALVES in cyl.surface and widths_ok and chains_ok
    criterion(10, ok, f"3/2 ratios certified, width {float(cyl.volume.width):.2e}; identity chain intersects for k <= 16")
    assert ok


def test_criterion_11_axiom_suite(criterion):
    rnd = random.Random(20250101)
    t0 = time.perf_counter()
    certified = false_orderings = 0
    for _ in range(10**4):
        chain, length = axiom1_case(rnd)
        chord = chain.chord()
        order = compare_chains(chord, chain)
        brute_shorter = squared_edges(chord)[0] < length * length
        if order is ChainOrder.INNER_SHORTER:
            certified += 1
            false_orderings += not brute_shorter
    for _ in range(10**3):
        inner, outer = axiom2_case(rnd)
        order = compare_chains(inner, outer)
        pairs = list(zip(squared_edges(inner), squared_edges(outer)))
        brute_shorter = all(a <= b for a, b in pairs) and any(a < b for a, b in pairs)
        if order is ChainOrder.INNER_SHORTER and chain_between(inner, outer):
            certified += 1
            false_orderings += not brute_shorter
    elapsed = time.perf_counter() - t0
    ok = certified == 11000 and false_orderings == 0 and elapsed < 30
    criterion(11, ok, f"{certified}/11000 certified, {false_orderings} false orderings, {elapsed:.1f} s")
    assert ok


def test_criterion_12_euclid_xii2(criterion):
    rnd = random.Random(12)
    good = 0
    for _ in range(100):
        r1 = Fraction(rnd.randint(1, 10**6), rnd.randint(1, 10**4))
        r2 = Fraction(rnd.randint(1, 10**6), rnd.randint(1, 10**4))
        cert = verify_euclid_xii2(r1, r2, rnd.randint(0, 12))
        good += cert.certified and cert.ratio.contains((r1 / r2) ** 2)
    ok = good == 100
    criterion(12, ok, f"{good}/100 ratio enclosures contain (r1/r2)^2")
    assert ok
