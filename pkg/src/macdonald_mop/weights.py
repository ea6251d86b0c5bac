"""Numerical evaluation of K_nu, the weights rho_nu and their moments.

``rho_nu(x) = 2 x^(nu/2) K_nu(2 sqrt(x))`` on x > 0.

Two independent routes to K_nu are kept: :func:`bessel_k` (mpmath's
``besselk``) and :func:`sommerfeld_k`, a double-exponential trapezoidal rule
applied to ``K_nu(z) = 1/2 (z/2)^nu int_0^oo exp(-t - z^2/(4t)) t^(-nu-1) dt``.
Moments are integrated with an adaptive Gauss-Legendre panel rule after the
substitution ``x = t^2``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import special

from .errors import DomainError, QuadratureError
from .numerics import Params, moment_table

DEFAULT_DIGITS = 30


@functools.lru_cache(maxsize=16)
def _ctx(digits: int):
    ctx = mpmath.MPContext()
    ctx.dps = digits
    return ctx


def _check_positive(name, v):
    if not v > 0:
        raise DomainError(f"{name} must be > 0, got {v}")


def bessel_k(nu, z, digits: int = DEFAULT_DIGITS):
    """Macdonald function ``K_nu(z)`` for real ``nu >= 0`` and ``z > 0``.

    The result is an mpmath number carrying ``digits`` decimal digits; it
    does not underflow for large z.
    """
    _check_positive("z", z)
    if nu < 0:
        raise DomainError(f"nu must be >= 0, got {nu}")
    ctx = _ctx(digits)
    return ctx.besselk(ctx.mpf(nu), ctx.mpf(z))


def sommerfeld_k(nu, z, digits: int = DEFAULT_DIGITS):
    """``K_nu(z)`` from the exp(-t - z^2/4t) integral, by trapezoidal DE quadrature.

    With ``t = (z/2) e^u`` the integral becomes
    ``K_nu(z) = 1/2 int_R exp(-z cosh u - nu u) du``, whose integrand decays
    double exponentially in both directions; the trapezoidal rule then
    converges geometrically in the number of step halvings.
    """
    _check_positive("z", z)
    ctx = _ctx(digits + 10)
    nu = ctx.mpf(nu)
    z = ctx.mpf(z)
    eps = ctx.mpf(10) ** (-(digits + 5))
    center = -ctx.asinh(nu / z)

    def g(u):
        return ctx.exp(-z * ctx.cosh(u) - nu * u)

    peak = g(center)

    def lattice_sum(h, offset):
        total = ctx.mpf(0)
        for sign in (1, -1):
            j = 0 if sign == 1 else 1
            while True:
                v = g(center + offset + sign * j * h)
                total += v
                if v < eps * peak and j * h > 1:
                    break
                j += 1
        return total

    h = ctx.mpf(1) / 2
    s = lattice_sum(h, 0)
    est = h * s
    for _ in range(24):
        s += lattice_sum(h, h / 2)
        h /= 2
        new = h * s
        converged = abs(new - est) <= eps * abs(new)
        est = new
        if converged:
            break
    else:
        raise QuadratureError("Sommerfeld quadrature did not converge", est, None)
    return _ctx(digits).mpf(est / 2)


def rho(nu, x, digits: int = DEFAULT_DIGITS):
    """Scaled Macdonald weight ``2 x^(nu/2) K_nu(2 sqrt x)``."""
    _check_positive("x", x)
    ctx = _ctx(digits)
    x = ctx.mpf(x)
    nu = ctx.mpf(nu)
    return 2 * x ** (nu / 2) * ctx.besselk(nu, 2 * ctx.sqrt(x))


def q_eval(pair, x, digits: int = DEFAULT_DIGITS):
    """``A(x) rho_nu(x) + B(x) rho_{nu+1}(x)`` for a type 1 pair."""
    _check_positive("x", x)
    ctx = _ctx(digits)
    nu = pair.params.nu
    X = ctx.mpf(x)
    conv = lambda c: ctx.mpf(c.numerator) / c.denominator if hasattr(c, "denominator") else ctx.mpf(c)
    A = pair.A.map(conv)(X)
    B = pair.B.map(conv)(X)
    nu_mp = ctx.mpf(nu.numerator) / nu.denominator
    return A * rho(nu_mp, X, digits) + B * rho(nu_mp + 1, X, digits)


# ---------------------------------------------------------------------------
# quadrature


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _gl(f, a, b):
    mid, rad = (a + b) / 2, (b - a) / 2
    return rad * float(np.dot(_GL_WEIGHTS, f(mid + rad * _GL_NODES)))


def adaptive_gl(f, a: float, b: float, tol: float, max_depth: int = 40):
    """Adaptive 16-point Gauss-Legendre on [a, b]; returns (value, error estimate).

    ``f`` must accept numpy arrays.
    """
    total, err = 0.0, 0.0
    stack = [(a, b, _gl(f, a, b), 0)]
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = (lo + hi) / 2
        left, right = _gl(f, lo, mid), _gl(f, mid, hi)
        diff = abs(left + right - whole)
        if diff <= tol * max(abs(left + right), 1e-300) or depth >= max_depth:
            total += left + right
            err += diff
        else:
            stack.append((lo, mid, left, depth + 1))
            stack.append((mid, hi, right, depth + 1))
    return total, err


def _graded_panels(T: float, levels: int = 30) -> list[float]:
    """Break points 0 < T 2^-levels < ... < T/2 < T, graded toward zero."""
    return [0.0] + [T * 2.0 ** (-j) for j in range(levels, -1, -1)]


def _rho_t_integrand(nu: float, power: float):
    """``x^power rho_nu(x) dx`` written in t with x = t^2 (numpy, float64)."""
    def f(t):
        z = 2.0 * t
        # kve(nu, z) = K_nu(z) e^z keeps the large-t tail representable
        return 4.0 * t ** (2.0 * power + nu + 1.0) * special.kve(nu, z) * np.exp(-z)
    return f


def _integrate_tail_truncated(f, exponent: float, tol: float):
    """Integrate f on [0, T], growing T until exp(-2T) T^exponent < 1e-20 * estimate."""
    T = 16.0
    total, err = 0.0, 0.0
    pts = _graded_panels(T)
    for a, b in zip(pts[:-1], pts[1:]):
        v, e = adaptive_gl(f, a, b, tol)
        total += v
        err += e
    while math.exp(-2 * T) * T ** exponent >= 1e-20 * abs(total):
        v, e = adaptive_gl(f, T, T + 16.0, tol)
        total += v
        err += e
        T += 16.0
        if T > 4000:
            raise QuadratureError("tail does not decay", total, err)
    return total, err


def quad_moment(params: Params, k: int, tol: float = 1e-11) -> float:
    """Numerical ``int_0^oo x^(k+alpha) rho_nu(x) dx`` (float64).

    Raises QuadratureError if the achieved error estimate exceeds
    ``1e3 * tol`` relative to the result.
    """
    if k < 0 or int(k) != k:
        raise ValueError("k must be a nonnegative integer")
    nu, alpha = float(params.nu), float(params.alpha)
    power = k + alpha
    f = _rho_t_integrand(nu, power)
    total, err = _integrate_tail_truncated(f, 2 * power + nu + 2, tol)
    if err > 1e3 * tol * abs(total):
        raise QuadratureError("moment quadrature did not converge", total, err)
    return total


def markov_f(which: int, params: Params, z: float, tol: float = 1e-11) -> float:
    """Numerical ``f_which(z) = int x^alpha rho / (z - x) dx`` for real ``z < 0``.

    Off the support only; diagnostic counterpart of the formal series.
    """
    if not z < 0:
        raise DomainError("markov_f is evaluated on the negative axis only")
    nu = float(params.nu) + (which - 1)
    alpha = float(params.alpha)
    base = _rho_t_integrand(nu, alpha)
    total, _ = _integrate_tail_truncated(lambda t: base(t) / (z - t * t), 2 * alpha + nu + 2, tol)
    return total


def asymptotic_f(which: int, params: Params, z: float) -> float:
    """Optimally truncated formal series ``sum m_k z^(-k-1)`` (stops at the smallest term)."""
    mt = moment_table(params)
    total, prev = 0.0, math.inf
    for k in range(200):
        term = float(mt.moment(k, which - 1)) / z ** (k + 1)
        if abs(term) >= prev:
            break
        total += term
        prev = abs(term)
    return total


@dataclass(frozen=True)
class WeightEval:
    """Bound evaluator for one parameter pair."""

    params: Params
    digits: int = DEFAULT_DIGITS
    tol: float = 1e-11

    def rho(self, x, shift: int = 0):
        ctx = _ctx(self.digits)
        nu = self.params.nu + shift
        return rho(ctx.mpf(nu.numerator) / nu.denominator, x, self.digits)

    def q(self, pair, x):
        return q_eval(pair, x, self.digits)

    def moment(self, k: int) -> float:
        return quad_moment(self.params, k, self.tol)
