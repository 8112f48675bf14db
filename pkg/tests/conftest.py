from fractions import Fraction

import mpmath
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from archimedes.exactnum import Interval

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

mpmath.mp.prec = 400


def mpf(q):
    """Exact conversion of a Fraction to an mpmath number."""
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


ORACLE_SLACK = mpmath.mpf(10) ** -100


def encloses(iv: Interval, value, slack=ORACLE_SLACK) -> bool:
    """True when the mpmath value lies in the interval.

    ``slack`` absorbs the oracle's own rounding error (400-bit arithmetic,
    far below any enclosure width under test).
    """
    return mpf(iv.lo) - slack <= value <= mpf(iv.hi) + slack


rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)
nonneg_rationals = st.fractions(min_value=0, max_value=1000, max_denominator=10**6)
precisions = st.sampled_from([16, 24, 32, 53, 64, 128])


@st.composite
def intervals(draw, elements=rationals, bits=precisions):
    a, b = draw(elements), draw(elements)
    return Interval(min(a, b), max(a, b), draw(bits))


@st.composite
def nested_intervals(draw, elements=rationals, nonneg=False):
    """(inner, outer) with inner contained in outer."""
    inner = draw(intervals(elements))
    lo = inner.lo - draw(st.fractions(min_value=0, max_value=10, max_denominator=1000))
    hi = inner.hi + draw(st.fractions(min_value=0, max_value=10, max_denominator=1000))
    if nonneg:
        lo = max(lo, Fraction(0))
    return inner, Interval(lo, hi, inner.bits)


@pytest.fixture
def rng():
    import random

    return random.Random(20240611)


@pytest.fixture
def criterion(request):
    """Record one acceptance line: criterion(number, ok, detail)."""
    results = request.config.__dict__.setdefault("acceptance_results", {})

    def record(number: int, ok: bool, detail: str) -> bool:
        results[number] = (bool(ok), detail)
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.__dict__.get("acceptance_results")
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
