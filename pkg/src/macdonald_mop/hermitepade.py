"""Formal expansions at infinity for the Hermite-Pade picture.

``f_1(z) = int x^alpha rho_nu(x) / (z - x) dx`` and ``f_2`` (same with
``rho_{nu+1}``) have the formal expansions ``sum_k m_k z^(-k-1)`` with the
corresponding moments. Everything here is computed from moments only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import OrderViolation
from .mop import Type1Pair, Type2Poly
from .numerics import Params, Poly, moment_table, scalar_to_str


@dataclass(frozen=True)
class LaurentSeries:
    """Truncated series ``sum_{k<K} coeffs[k] z^(-k-1)``.

    Coefficients at and beyond index ``K`` are unknown.
    """

    coeffs: tuple

    @property
    def K(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        K = min(self.K, other.K)
        return LaurentSeries(tuple(self.coeffs[k] + other.coeffs[k] for k in range(K)))

    def __neg__(self):
        return LaurentSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def mul_poly(self, p: Poly) -> tuple[Poly, "LaurentSeries"]:
        """``p(z) * self`` split into polynomial part and negative-power part.

        Coefficient k of the negative part needs ``coeffs[k + deg p]``, so the
        result is truncated to ``K - deg p`` terms.
        """
        if p.is_zero():
            zero = 0 * self.coeffs[0] if self.coeffs else 0
            return Poly(), LaurentSeries((zero,) * self.K)
        d = p.degree
        a = p.coeffs
        f = self.coeffs
        # z^i part, i >= 0: sum_j a_j f_{j-i-1}
        poly = [sum(a[j] * f[j - i - 1] for j in range(i + 1, d + 1)) for i in range(d)]
        series = tuple(sum(a[j] * f[k + j] for j in range(d + 1)) for k in range(self.K - d))
        return Poly(poly), LaurentSeries(series)


def laurent_f(which: int, params: Params, K: int) -> LaurentSeries:
    """First K coefficients of f_1 (which=1) or f_2 (which=2)."""
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    if K < 1:
        raise ValueError("K must be >= 1")
    return LaurentSeries(tuple(moment_table(params).moments(K, shift=which - 1)))


def _divided_difference(p: Poly, mom) -> Poly:
    """``int (p(z) - p(x)) / (z - x) w(x) dx`` for a weight with moments ``mom``."""
    d = p.degree
    if d is None or d == 0:
        return Poly()
    a = p.coeffs
    return Poly(sum(a[j] * mom(j - 1 - i) for j in range(i + 1, d + 1)) for i in range(d))


def numerator_R_S(p: Type2Poly | Poly, params: Params | None = None) -> tuple[Poly, Poly]:
    """Type 2 numerators R (weight rho_nu) and S (weight rho_{nu+1})."""
    if isinstance(p, Type2Poly):
        params, p = p.params, p.p
    mt = moment_table(params)
    return (_divided_difference(p, lambda k: mt.moment(k, 0)),
            _divided_difference(p, lambda k: mt.moment(k, 1)))


def numerator_C(pair: Type1Pair) -> Poly:
    """Type 1 numerator ``C = int [(A(z)-A(x)) rho_nu + (B(z)-B(x)) rho_{nu+1}] / (z-x) x^alpha dx``."""
    mt = moment_table(pair.params)
    return (_divided_difference(pair.A, lambda k: mt.moment(k, 0))
            + _divided_difference(pair.B, lambda k: mt.moment(k, 1)))


class OrderReport(NamedTuple):
    """``order``: exponent e of the first nonzero term ``c z^(-e)``.

    When every available coefficient vanishes, ``order`` is a lower bound
    (``exhausted`` True) and ``first_nonzero`` is None.
    """

    order: int
    required: int
    first_nonzero: object
    exhausted: bool

    @property
    def ok(self) -> bool:
        return self.order >= self.required

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "required": self.required,
            "first_nonzero": None if self.first_nonzero is None else scalar_to_str(self.first_nonzero),
            "lower_bound": self.exhausted,
            "ok": self.ok,
        }


def _residual_order(poly_part: Poly, numerator: Poly, series: LaurentSeries, required: int,
                    field) -> OrderReport:
    diff = poly_part - numerator
    scale = max([abs(c) for c in series.coeffs] + [1])
    if any(not field.is_zero(c, scale) for c in diff.coeffs):
        # a surviving nonnegative power: order <= 0
        top = max(k for k, c in enumerate(diff.coeffs) if not field.is_zero(c, scale))
        return OrderReport(-top, required, diff.coeffs[top], False)
    for k, c in enumerate(series.coeffs):
        if not field.is_zero(c, scale):
            return OrderReport(k + 1, required, c, False)
    return OrderReport(series.K + 1, required, None, True)


def order_check(kind: str, obj, K: int, *, strict: bool = True):
    """Orders of the Hermite-Pade residuals.

    ``kind="type2"``: ``obj`` a Type2Poly; returns the pair of reports for
    ``p f_1 - R`` (needs order >= n+1) and ``p f_2 - S`` (needs >= m+1).
    ``kind="type1"``: ``obj`` a Type1Pair; returns the report for
    ``A f_1 + B f_2 - C`` (needs >= n+m+2).

    K is raised when needed so that the coefficient at the required order is
    actually available. With ``strict`` an insufficient order raises
    OrderViolation.
    """
    params = obj.params
    F = params.field
    n, m = obj.n, obj.m
    if K < n + m + 3:
        raise ValueError(f"K must be >= n+m+3 = {n + m + 3}")
    # multiplying by a degree-d polynomial consumes d coefficients
    K = max(K, n + m + 3 + max(n, m, 0))
    f1, f2 = laurent_f(1, params, K), laurent_f(2, params, K)
    if kind == "type2":
        R, S = numerator_R_S(obj)
        pp1, s1 = f1.mul_poly(obj.p)
        pp2, s2 = f2.mul_poly(obj.p)
        reports = (_residual_order(pp1, R, s1, n + 1, F), _residual_order(pp2, S, s2, m + 1, F))
    elif kind == "type1":
        C = numerator_C(obj)
        pa, sa = f1.mul_poly(obj.A)
        pb, sb = f2.mul_poly(obj.B)
        reports = (_residual_order(pa + pb, C, sa + sb, n + m + 2, F),)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if strict:
        for r in reports:
            if not r.ok:
                raise OrderViolation(f"{kind} ({n},{m}): order {r.order} < {r.required}",
                                     r.first_nonzero)
    return reports if kind == "type2" else reports[0]
