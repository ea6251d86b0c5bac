"""Third order recurrence for the near-diagonal type 2 polynomials.

With ``P_{2n} = p_{n,n}`` and ``P_{2n+1} = p_{n+1,n}``,

    x P_n = P_{n+1} + b_n P_n + c_n P_{n-1} + d_n P_{n-2}

where

    b_n = (n+a+1)(3n+a+2v) - (a+1)(v-1)
    c_n = n (n+a)(n+a+v)(3n+2a+v)
    d_n = n (n-1)(n+a-1)(n+a)(n+a+v-1)(n+a+v)

(a = alpha, v = nu).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import IdentityViolation, ZeroLocationError
from .mop import type2
from .numerics import Params, Poly


@dataclass(frozen=True)
class RecCoeffs:
    b: tuple
    c: tuple
    d: tuple
    params: Params

    def __len__(self):
        return len(self.b)

    def rows(self):
        for n in range(len(self.b)):
            yield n, self.b[n], self.c[n], self.d[n]


def sequence_index(j: int) -> tuple[int, int]:
    """``P_j = p_{n,m}``: returns (n, m)."""
    return (j + 1) // 2, j // 2


def rec_coeffs(params: Params, N: int) -> RecCoeffs:
    """Closed-form b_n, c_n, d_n for n = 0..N-1."""
    if N < 1:
        raise ValueError("N must be >= 1")
    F = params.field
    a, v = F(params.alpha), F(params.nu)
    b, c, d = [], [], []
    for n in range(N):
        b.append((n + a + 1) * (3 * n + a + 2 * v) - (a + 1) * (v - 1))
        c.append(n * (n + a) * (n + a + v) * (3 * n + 2 * a + v))
        d.append(n * (n - 1) * (n + a - 1) * (n + a) * (n + a + v - 1) * (n + a + v))
    return RecCoeffs(tuple(b), tuple(c), tuple(d), params)


def generate_sequence(params: Params, N: int) -> list[Poly]:
    """Monic ``P_0, ..., P_N`` from one forward pass of the recurrence."""
    F = params.field
    one = F.one
    x = Poly.x(one)
    seq = [Poly((one,))]
    if N == 0:
        return seq
    rc = rec_coeffs(params, N)
    zero = Poly()
    for n in range(N):
        prev1 = seq[n - 1] if n >= 1 else zero
        prev2 = seq[n - 2] if n >= 2 else zero
        Pn = seq[n]
        seq.append(x * Pn - Pn * rc.b[n] - prev1 * rc.c[n] - prev2 * rc.d[n])
    return seq


def top_coeff(p: Poly, j: int):
    """``a(j)``: coefficient of ``x^(deg p - j)``; zero when out of range."""
    if p.is_zero():
        return 0
    k = p.degree - j
    return p.coeff(k) if k >= 0 else 0


def coeffs_from_moments(params: Params, N: int, *, check: bool = True) -> RecCoeffs:
    """Recover b_n, c_n, d_n (n < N) from moment-solved type 2 polynomials.

    Comparing the top coefficients of ``x P_n - P_{n+1}`` with the right side
    gives

        b_n = a_n(1) - a_{n+1}(1)
        c_n = a_n(2) - a_{n+1}(2) - b_n a_n(1)
        d_n = a_n(3) - a_{n+1}(3) - b_n a_n(2) - c_n a_{n-1}(1)

    for even n (index (n,n)) and odd n (index (n+1,n)) alike. With ``check``
    the full recurrence residual must vanish and the result must equal
    :func:`rec_coeffs`; otherwise IdentityViolation is raised.
    """
    F = params.field
    P = [type2(*sequence_index(j), params).p for j in range(N + 1)]
    zero = Poly()
    x = Poly.x(F.one)
    b, c, d = [], [], []
    for n in range(N):
        Pm1 = P[n - 1] if n >= 1 else zero
        Pm2 = P[n - 2] if n >= 2 else zero
        bn = top_coeff(P[n], 1) - top_coeff(P[n + 1], 1)
        cn = top_coeff(P[n], 2) - top_coeff(P[n + 1], 2) - bn * top_coeff(P[n], 1)
        dn = (top_coeff(P[n], 3) - top_coeff(P[n + 1], 3) - bn * top_coeff(P[n], 2)
              - cn * top_coeff(Pm1, 1))
        b.append(bn)
        c.append(cn)
        d.append(dn)
        if check:
            resid = x * P[n] - P[n + 1] - P[n] * bn - Pm1 * cn - Pm2 * dn
            scale = max([abs(v) for v in P[n + 1].coeffs] or [1])
            if not all(F.is_zero(v, scale) for v in resid.coeffs):
                raise IdentityViolation(f"P_{n} does not satisfy a three-term-plus-one "
                                        f"recurrence", resid)
    got = RecCoeffs(tuple(b), tuple(c), tuple(d), params)
    if check:
        want = rec_coeffs(params, N)
        for name in ("b", "c", "d"):
            for n, (g, w) in enumerate(zip(getattr(got, name), getattr(want, name))):
                if not F.close(g, w):
                    raise IdentityViolation(f"{name}_{n} from moments differs from closed form",
                                            (g, w))
    return got


# ---------------------------------------------------------------------------
# closed forms for the top coefficients a_{n,m}(j)


def a_diag(j: int, n: int, params: Params):
    """Closed form of ``a_{n,n}(j)`` for j in 1..3."""
    F = params.field
    a, v = F(params.alpha), F(params.nu)
    if j == 1:
        return -2 * n * (a + 2 * n) * (a + 2 * n + v)
    if j == 2:
        return n * (2 * n - 1) * (a + 2 * n - 1) * (a + 2 * n) * (a + 2 * n + v - 1) * (a + 2 * n + v)
    if j == 3:
        return (-F(Fraction(2 * n * (2 * n - 1) * (2 * n - 2), 6))
                * (a + 2 * n + v) * (a + 2 * n + v - 1) * (a + 2 * n + v - 2)
                * (a + 2 * n) * (a + 2 * n - 1) * (a + 2 * n - 2))
    raise ValueError("closed forms exist for j = 1, 2, 3")


def a_offdiag(j: int, n: int, params: Params):
    """Closed form of ``a_{n+1,n}(j)`` for j in 1..3."""
    F = params.field
    a, v = F(params.alpha), F(params.nu)
    if j == 1:
        return -(2 * n + 1) * (a + 2 * n + 1) * (a + 2 * n + v + 1)
    if j == 2:
        return n * (2 * n + 1) * (a + 2 * n) * (a + 2 * n + 1) * (a + 2 * n + v) * (a + 2 * n + v + 1)
    if j == 3:
        return (-F(Fraction((2 * n + 1) * (2 * n) * (2 * n - 1), 6))
                * (a + 2 * n + v + 1) * (a + 2 * n + v) * (a + 2 * n + v - 1)
                * (a + 2 * n + 1) * (a + 2 * n) * (a + 2 * n - 1))
    raise ValueError("closed forms exist for j = 1, 2, 3")


def check_top_coefficients(n: int, params: Params) -> bool:
    """Closed-form a_{n,n}(j), a_{n+1,n}(j), j=1..3, against solved polynomials."""
    F = params.field
    for j in (1, 2, 3):
        for (i, k), closed in (((n, n), a_diag(j, n, params)),
                               ((n + 1, n), a_offdiag(j, n, params))):
            got = top_coeff(type2(i, k, params).p, j)
            if not F.close(got, closed):
                raise IdentityViolation(f"a_{{{i},{k}}}({j}) mismatch", (got, closed))
    return True


def transfer_check(n: int, params: Params) -> bool:
    """Derivative-transfer shortcut across alpha, from independent solves.

    a_{n,n}^a(1) = n a_{1,1}^{a+2n-2}(1),
    a_{n,n}^a(2) = n(2n-1) a_{1,1}^{a+2n-2}(2),
    a_{n+1,n}^a(3) = (2n+1)(2n)(2n-1)/6 a_{2,1}^{a+2n-2}(3).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    F = params.field
    shifted = params.with_alpha(params.alpha + 2 * n - 2)
    p11 = type2(1, 1, shifted).p
    p21 = type2(2, 1, shifted).p
    pnn = type2(n, n, params).p
    pn1n = type2(n + 1, n, params).p
    pairs = [
        (top_coeff(pnn, 1), n * top_coeff(p11, 1)),
        (top_coeff(pnn, 2), n * (2 * n - 1) * top_coeff(p11, 2)),
        (top_coeff(pn1n, 3),
         F(Fraction((2 * n + 1) * (2 * n) * (2 * n - 1), 6)) * top_coeff(p21, 3)),
    ]
    for got, want in pairs:
        if not F.close(got, want):
            raise IdentityViolation(f"derivative transfer fails at n={n}", (got, want))
    return True


# ---------------------------------------------------------------------------
# zeros


@dataclass(frozen=True)
class ZeroReport:
    n: int
    roots: tuple          # mpmath values, ascending
    residuals: tuple      # |P(r)| / sum |a_k| |r|^k
    min_gap: object
    margin: object        # smallest root

    def as_floats(self) -> list[float]:
        return [float(r) for r in self.roots]


def _to_fraction(x) -> Fraction:
    p, q = mpmath.libmp.to_rational(mpmath.mpf(x)._mpf_)
    return Fraction(p, q)


def hessenberg_matrix(rc: RecCoeffs, n: int) -> np.ndarray:
    """Banded lower Hessenberg matrix whose characteristic polynomial is P_n."""
    H = np.zeros((n, n))
    for i in range(n):
        H[i, i] = float(rc.b[i])
        if i + 1 < n:
            H[i, i + 1] = 1.0
        if i >= 1:
            H[i, i - 1] = float(rc.c[i])
        if i >= 2:
            H[i, i - 2] = float(rc.d[i])
    return H


def _newton(ctx, coeffs, deriv, x, steps=100):
    for _ in range(steps):
        fx = ctx.polyval(coeffs, x)
        dfx = ctx.polyval(deriv, x)
        if dfx == 0:
            break
        dx = fx / dfx
        x -= dx
        if abs(dx) <= ctx.eps * abs(x) * 4:
            break
    return x


def zero_report(params: Params, n: int) -> ZeroReport:
    """Zeros of P_n: float eigenvalue isolation, Newton in high precision, sign verification.

    Raises ZeroLocationError unless there are exactly n real, simple,
    positive zeros.
    """
    if n < 0 or n > 60:
        raise ValueError("n must be in 0..60")
    if n == 0:
        return ZeroReport(0, (), (), None, None)
    F = params.field
    Pn = generate_sequence(params, n)[n]
    desc = Pn.descending()
    abs_desc = [abs(c) for c in desc]
    guess = np.linalg.eigvals(hessenberg_matrix(rec_coeffs(params, n), n))
    R = max(1.0, float(np.max(np.abs(guess))))
    # digits lost to cancellation when evaluating P_n near its largest zero
    magnitude = math.log10(max(float(sum(abs_desc[k] * R ** (n - k) for k in range(n + 1))), 1.0))
    ctx = mpmath.MPContext()
    ctx.dps = 30 + int(magnitude) + (F.digits or 0) // 2
    coeffs = [ctx.mpf(c) if not isinstance(c, Fraction) else ctx.mpf(c.numerator) / c.denominator
              for c in desc]
    deriv = [coeffs[k] * (n - k) for k in range(n)]
    roots = [_newton(ctx, coeffs, deriv, ctx.mpf(float(g.real))) for g in guess]
    roots.sort()
    distinct = all(roots[i + 1] - roots[i] > ctx.mpf(10) ** (-ctx.dps // 2) * max(1, abs(roots[i + 1]))
                   for i in range(n - 1))
    if not distinct or np.max(np.abs(guess.imag)) > 1e-6 * R:
        raw = ctx.polyroots(coeffs, maxsteps=500, extraprec=ctx.prec)
        if any(abs(ctx.im(r)) > ctx.mpf(10) ** (-10) * max(1, abs(r)) for r in raw):
            raise ZeroLocationError(f"P_{n} has non-real zeros", raw)
        roots = sorted(_newton(ctx, coeffs, deriv, ctx.re(r)) for r in raw)

    # certify by sign changes at separating points
    pts = [ctx.mpf(0)] + [(roots[i] + roots[i + 1]) / 2 for i in range(n - 1)] + [2 * roots[-1] + 1]
    if F.exact:
        signs = [Pn(_to_fraction(t)) for t in pts]
    else:
        signs = [ctx.polyval(coeffs, t) for t in pts]
    changes = sum(1 for i in range(n) if signs[i] * signs[i + 1] < 0)
    if changes != n or any(s == 0 for s in signs):
        raise ZeroLocationError(f"P_{n}: expected {n} sign changes on (0, oo), found {changes}")
    if roots[0] <= 0 or any(not (pts[i] < roots[i] < pts[i + 1]) for i in range(n)):
        raise ZeroLocationError(f"P_{n}: refined zeros escaped their isolating intervals", roots)
    abs_coeffs = [abs(c) for c in coeffs]
    residuals = tuple(abs(ctx.polyval(coeffs, r)) / ctx.polyval(abs_coeffs, abs(r)) for r in roots)
    gaps = [roots[i + 1] - roots[i] for i in range(n - 1)]
    return ZeroReport(n, tuple(roots), residuals, min(gaps) if gaps else None, roots[0])


def zeros(params: Params, n: int) -> list[float]:
    """All n zeros of P_n as floats (ascending)."""
    return zero_report(params, n).as_floats()


def interlace(lower: list, upper: list) -> bool:
    """Strict interlacing of zeros of consecutive P_n, P_{n+1}."""
    if len(upper) != len(lower) + 1:
        return False
    return all(upper[i] < lower[i] < upper[i + 1] for i in range(len(lower)))


def asymptotic_ratios(params: Params, n: int) -> tuple[float, float, float]:
    """``(b_n / 3n^2, c_n / 3n^4, d_n / n^6)``; each tends to 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rc = rec_coeffs(params, n + 1)
    return (float(rc.b[n] / (3 * n ** 2)), float(rc.c[n] / (3 * n ** 4)),
            float(rc.d[n] / n ** 6))
