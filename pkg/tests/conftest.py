import math
from fractions import Fraction

import pytest
from hypothesis import settings

from macdonald_mop.numerics import Params

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

EXACT_GRID = [Params(nu, alpha) for nu in (0, 1) for alpha in (0, 1)]


def gamma_moment(k, alpha, nu):
    """Oracle: Gamma(k+alpha+nu+1) Gamma(k+alpha+1) from math.factorial (integer case)."""
    return math.factorial(k + alpha + nu) * math.factorial(k + alpha)


def cramer2(a, b, c, d, e, f):
    """Solve [[a, b], [c, d]] x = [e, f] by Cramer's rule."""
    det = Fraction(a * d - b * c)
    return (e * d - b * f) / det, (a * f - e * c) / det


@pytest.fixture(params=EXACT_GRID, ids=lambda p: f"nu{p.nu}-a{p.alpha}")
def exact_params(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, elapsed, budget, text = RESULTS[number]
        terminalreporter.write_line(
            f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s / {budget:g}s) {text}")
