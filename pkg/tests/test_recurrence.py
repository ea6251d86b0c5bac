import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from macdonald_mop.errors import IdentityViolation
from macdonald_mop.mop import type2
from macdonald_mop.numerics import Params, Poly
from macdonald_mop.recurrence import (a_diag, a_offdiag, asymptotic_ratios, check_top_coefficients,
                                      coeffs_from_moments, generate_sequence, hessenberg_matrix,
                                      interlace, rec_coeffs, sequence_index, top_coeff,
                                      transfer_check, zero_report, zeros)


def closed_forms(n, a, nu):
    """Closed forms, written independently of the package."""
    b = (n + a + 1) * (3 * n + a + 2 * nu) - (a + 1) * (nu - 1)
    c = n * (n + a) * (n + a + nu) * (3 * n + 2 * a + nu)
    d = n * (n - 1) * (n + a - 1) * (n + a) * (n + a + nu - 1) * (n + a + nu)
    return b, c, d


def test_rec_coeffs_examples():
    rc = rec_coeffs(Params(0, 0), 3)
    assert rc.b[0] == 1
    assert (rc.b[1], rc.c[1], rc.d[1]) == (7, 3, 0)
    assert (rc.b[2], rc.c[2], rc.d[2]) == (19, 48, 8)


@given(st.integers(0, 4), st.integers(0, 4))
def test_rec_coeffs_closed_form_and_signs(nu, alpha):
    rc = rec_coeffs(Params(nu, alpha), 12)
    assert rc.c[0] == 0 and rc.d[0] == 0 and rc.d[1] == 0
    for n in range(12):
        assert (rc.b[n], rc.c[n], rc.d[n]) == closed_forms(n, alpha, nu)
        assert rc.b[n] > 0
        assert n < 1 or rc.c[n] > 0
        assert n < 2 or rc.d[n] > 0


def test_rec_coeffs_fractional():
    p = Params("1/2", "-1/2")
    rc = rec_coeffs(p, 5)
    for n in range(5):
        want = closed_forms(n, Fraction(-1, 2), Fraction(1, 2))
        assert all(abs(got - w) < 1e-40 for got, w in zip((rc.b[n], rc.c[n], rc.d[n]), want))


def test_sequence_index():
    assert [sequence_index(j) for j in range(5)] == [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)]


def test_generate_sequence_examples():
    seq = generate_sequence(Params(0, 0), 3)
    assert seq[0] == Poly([1])
    assert seq[1] == Poly([-1, 1])
    assert seq[2] == Poly([4, -8, 1])
    assert seq[3] == type2(2, 1, Params(0, 0)).p and seq[3].coeff(0) == -36


@pytest.mark.parametrize("nu", [0, 1])
@pytest.mark.parametrize("alpha", [0, 1])
def test_sequence_equals_moment_solve(nu, alpha):
    p = Params(nu, alpha)
    for j, P in enumerate(generate_sequence(p, 12)):
        assert P.degree == j and P.lead == 1
        assert P == type2(*sequence_index(j), p).p


@pytest.mark.parametrize("nu", [0, 1])
@pytest.mark.parametrize("alpha", [0, 1])
def test_coeffs_from_moments(nu, alpha):
    p = Params(nu, alpha)
    got = coeffs_from_moments(p, 10)
    want = rec_coeffs(p, 10)
    assert (got.b, got.c, got.d) == (want.b, want.c, want.d)


def test_coeffs_from_moments_float():
    p = Params("1/2", "1/2")
    got, want = coeffs_from_moments(p, 6), rec_coeffs(p, 6)
    for x, y in zip(got.b + got.c + got.d, want.b + want.c + want.d):
        assert abs(x - y) <= 1e-15 * max(1, abs(y))


def test_top_coefficient_examples():
    p = Params(0, 0)
    assert a_diag(1, 2, p) == -64 == top_coeff(type2(2, 2, p).p, 1)
    assert a_offdiag(1, 1, p) == -27 == top_coeff(type2(2, 1, p).p, 1)
    assert top_coeff(type2(1, 1, p).p, 1) - top_coeff(type2(2, 1, p).p, 1) == rec_coeffs(p, 3).b[2]


@pytest.mark.parametrize("nu", [0, 1, 2])
@pytest.mark.parametrize("alpha", [0, 1, 2])
def test_intermediate_formulas(nu, alpha):
    p = Params(nu, alpha)
    a = alpha
    for n in range(1, 6):
        N = 2 * n
        pnn, pn1 = type2(n, n, p).p, type2(n + 1, n, p).p
        assert top_coeff(pnn, 1) == -2 * n * (a + N) * (a + N + nu)
        assert top_coeff(pn1, 1) == -(N + 1) * (a + N + 1) * (a + N + nu + 1)
        assert top_coeff(pnn, 2) == n * (N - 1) * (a + N - 1) * (a + N) * (a + N + nu - 1) * (a + N + nu)
        assert top_coeff(pn1, 2) == n * (N + 1) * (a + N) * (a + N + 1) * (a + N + nu) * (a + N + nu + 1)
        assert top_coeff(pn1, 3) == -Fraction((N + 1) * N * (N - 1), 6) * (
            (a + N + nu + 1) * (a + N + nu) * (a + N + nu - 1) * (a + N + 1) * (a + N) * (a + N - 1))
        assert top_coeff(pnn, 3) == -Fraction(N * (N - 1) * (N - 2), 6) * (
            (a + N + nu) * (a + N + nu - 1) * (a + N + nu - 2) * (a + N) * (a + N - 1) * (a + N - 2))
        assert check_top_coefficients(n, p)
        assert transfer_check(n, p)


# ---------------------------------------------------------------- zeros

def test_zeros_examples():
    p = Params(0, 0)
    assert zeros(p, 0) == []
    assert zeros(p, 1) == pytest.approx([1.0], abs=1e-14)
    assert zeros(p, 2) == pytest.approx([4 - 2 * math.sqrt(3), 4 + 2 * math.sqrt(3)], rel=1e-14)


@pytest.mark.parametrize("params", [Params(0, 0), Params(1, 1), Params("1/2", "-1/2")],
                         ids=str)
def test_zeros_positive_simple(params):
    for n in range(1, 13):
        rep = zero_report(params, n)
        assert len(rep.roots) == n
        assert max(rep.residuals) < 1e-10
        assert rep.margin > 1e-6
        assert n == 1 or rep.min_gap > 0


def test_zeros_against_numpy():
    p = Params(1, 0)
    for n in range(1, 9):
        want = np.sort(np.roots([float(c) for c in generate_sequence(p, n)[n].descending()]).real)
        assert np.allclose(zeros(p, n), want, rtol=1e-8)


def test_zeros_match_hessenberg_eigenvalues():
    p = Params(0, 1)
    H = hessenberg_matrix(rec_coeffs(p, 6), 6)
    assert np.allclose(np.sort(np.linalg.eigvals(H).real), zeros(p, 6), rtol=1e-8)


def test_zeros_large_n():
    rep = zero_report(Params(0, 0), 30)
    assert len(rep.roots) == 30 and max(rep.residuals) < 1e-10


def test_interlacing_observed():
    # observation only: consecutive P_n have interlacing zeros on this range
    p = Params(0, 0)
    zs = [zeros(p, n) for n in range(1, 11)]
    assert all(interlace(a, b) for a, b in zip(zs, zs[1:]))
    assert not interlace([1.0], [2.0, 3.0])


# ---------------------------------------------------------------- asymptotics

@pytest.mark.parametrize("nu", [0, 1])
@pytest.mark.parametrize("alpha", [0, 1])
def test_asymptotic_ratios(nu, alpha):
    for r in asymptotic_ratios(Params(nu, alpha), 500):
        assert abs(r - 1) < 0.01


def test_asymptotic_ratio_examples():
    rb, rc, rd = asymptotic_ratios(Params(0, 0), 2)
    assert rd == 0.125
    assert asymptotic_ratios(Params(0, 0), 1)[0] == pytest.approx(7 / 3)
    with pytest.raises(ValueError):
        asymptotic_ratios(Params(0, 0), 0)
