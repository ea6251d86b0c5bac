"""Exact calculus on expressions ``x^beta (P rho_nu + Q rho_{nu+1})``.

With ``(x^-nu rho_nu)' = -x^-(nu+1) rho_{nu+1}`` and ``rho_{nu+1}' = -rho_nu``
the derivative of such an expression is again of the same shape:

    d/dx x^b (P rho_nu + Q rho_{nu+1})
        = x^(b-1) ([(b+nu) P + x P' - x Q] rho_nu + [b Q - P + x Q'] rho_{nu+1})

Repeated application gives the Rodrigues formula for the type 1 pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IdentityViolation, UnsupportedIndexError
from .mop import Type1Pair
from .numerics import Params, Poly


@dataclass(frozen=True)
class WeightCombo:
    """``x^beta (P(x) rho_nu(x) + Q(x) rho_{nu+1}(x))`` in normal form.

    Normal form: unless the combination is zero, P(0) and Q(0) are not both
    zero; common factors of x are pulled into ``beta``.
    """

    beta: object
    P: Poly
    Q: Poly
    params: Params

    @classmethod
    def make(cls, beta, P: Poly, Q: Poly, params: Params) -> "WeightCombo":
        F = params.field
        beta = F(beta)
        if P.is_zero() and Q.is_zero():
            return cls(beta, P, Q, params)
        while P.coeff(0) == 0 and Q.coeff(0) == 0:
            P = Poly(P.coeffs[1:])
            Q = Poly(Q.coeffs[1:])
            beta += 1
        return cls(beta, P, Q, params)

    def is_zero(self) -> bool:
        return self.P.is_zero() and self.Q.is_zero()

    def times_power(self, k) -> "WeightCombo":
        """Multiply by ``x^k``."""
        return WeightCombo(self.beta + k, self.P, self.Q, self.params)

    def at_beta(self, beta) -> tuple[Poly, Poly]:
        """(P, Q) re-expressed with prefactor ``x^beta``; beta may not exceed ``self.beta``."""
        d = self.beta - beta
        if d != int(d) or d < 0:
            raise IdentityViolation("cannot express combination at requested exponent",
                                    (self.beta, beta))
        d = int(d)
        return self.P.shift(d), self.Q.shift(d)


def differentiate(w: WeightCombo) -> WeightCombo:
    """Exact derivative of ``w``, returned in normal form."""
    b = w.beta
    nu = w.params.field(w.params.nu)
    P, Q = w.P, w.Q
    x = Poly.x(w.params.field.one)
    newP = P * (b + nu) + x * P.derivative() - x * Q
    newQ = Q * b - P + x * Q.derivative()
    return WeightCombo.make(b - 1, newP, newQ, w.params)


def _start(params: Params, power) -> WeightCombo:
    F = params.field
    return WeightCombo.make(F(params.alpha) + power, Poly((F.one,)), Poly(), params)


def rodrigues_combo(n: int, diagonal: bool, params: Params) -> WeightCombo:
    steps = 2 * n + bool(diagonal)
    w = _start(params, steps)
    for _ in range(steps):
        w = differentiate(w)
    return w


def rodrigues_type1(n: int, diagonal: bool, params: Params) -> Type1Pair:
    """Type 1 pair from ``d^k/dx^k (x^(k+alpha) rho_nu) = x^alpha q``.

    ``k = 2n`` gives ``q_{n,n-1}``, ``k = 2n+1`` gives ``q_{n,n}``. The result
    defines the canonical ("paper") normalization.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    w = rodrigues_combo(n, diagonal, params)
    A, B = w.at_beta(params.field(params.alpha))
    m = n if diagonal else n - 1
    return Type1Pair(A, B, n, m, params, "paper")


def ladder_step(pair: Type1Pair) -> Type1Pair:
    """One differentiation ``d/dx [x^alpha q_{n,m}^alpha] = x^(alpha-1) q^(alpha-1)``.

    ``(n, n) -> (n+1, n)`` and ``(n, n-1) -> (n, n)``, alpha lowered by one.
    """
    n, m, params = pair.n, pair.m, pair.params
    if m == n:
        target = (n + 1, n)
    elif m == n - 1:
        target = (n, n)
    else:
        raise UnsupportedIndexError(f"no ladder relation for index ({n}, {m})")
    F = params.field
    a = F(params.alpha)
    nu = F(params.nu)
    x = Poly.x(F.one)
    A, B = pair.A, pair.B
    newA = A * (a + nu) + x * A.derivative() - x * B
    newB = B * a - A + x * B.derivative()
    return Type1Pair(newA, newB, *target, params.with_alpha(params.alpha - 1), pair.normalization)


def weight_ode_check(params: Params) -> bool:
    """Symbolically confirm ``[x^(nu+1) (x^-nu rho_nu)']' = rho_nu``."""
    F = params.field
    w = WeightCombo.make(-F(params.nu), Poly((F.one,)), Poly(), params)
    w = differentiate(w).times_power(F(params.nu) + 1)
    w = differentiate(w)
    return w == WeightCombo.make(F.zero, Poly((F.one,)), Poly(), params)


def type2_from_rodrigues(n: int, m: int, params: Params) -> Poly:
    """Monic ``p_{n,m}`` for ``m in {n, n-1}`` from Rodrigues pairs only.

    ``A_{n,n} B_{n,n-1} - A_{n,n-1} B_{n,n}`` is proportional to ``p_{n,n}``
    and ``A_{n,n-1} B_{n-1,n-1} - A_{n-1,n-1} B_{n,n-1}`` to ``p_{n,n-1}``.
    """
    if m == n and n >= 0:
        first, second = rodrigues_type1(n, True, params), rodrigues_type1(n, False, params)
    elif m == n - 1 and n >= 1:
        first, second = rodrigues_type1(n, False, params), rodrigues_type1(n - 1, True, params)
    else:
        raise UnsupportedIndexError(f"Rodrigues route covers m in {{n, n-1}} only, got ({n}, {m})")
    D = first.A * second.B - second.A * first.B
    if D.degree != n + m:
        raise IdentityViolation(f"determinant has degree {D.degree}, expected {n + m}", D.degree)
    return D.map(lambda c: c / D.lead)
