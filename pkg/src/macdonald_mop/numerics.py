"""Coefficient fields, dense polynomials, moments and the moment-system solver.

Everything else in the package is built on three things defined here:

* :class:`Params` -- the pair (nu, alpha) plus the choice of arithmetic.
  Integer parameters give an exact rational field (``fractions.Fraction``);
  anything else gives an mpmath float field with a fixed number of digits.
* :class:`Poly` -- an immutable dense polynomial over whichever field.
* :class:`MomentTable` -- cached moments ``m_k = Gamma(k+alpha+nu+1) Gamma(k+alpha+1)``
  of ``x^alpha rho_nu`` and the shifted weight ``x^alpha rho_{nu+1}``.
"""

from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational
from typing import Iterable, NamedTuple, Sequence

import mpmath

from .errors import DegenerateSystemError

DEFAULT_DIGITS = 50

# ---------------------------------------------------------------------------
# fields


class RationalField:
    """Exact arithmetic over the rationals."""

    exact = True
    digits = None

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (Integral, Rational)):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, float):
            return Fraction(x)
        raise TypeError(f"cannot represent {x!r} exactly")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def is_zero(self, x, scale=None) -> bool:
        return x == 0

    def close(self, a, b, scale=None) -> bool:
        return a == b

    def to_str(self, x) -> str:
        return str(Fraction(x))

    def to_float(self, x) -> float:
        return float(x)

    def __repr__(self):
        return "RationalField()"


class FloatField:
    """Binary floating point with ``digits`` significant decimal digits.

    Each instance owns a private mpmath context, so changing the global
    ``mpmath.mp.dps`` elsewhere has no effect here.
    """

    exact = False

    def __init__(self, digits: int = DEFAULT_DIGITS):
        if digits < 16:
            raise ValueError("float mode needs at least 16 digits")
        self.digits = digits
        self.ctx = mpmath.MPContext()
        self.ctx.dps = digits
        # comparisons allow for cancellation in ill-conditioned moment systems
        self.tol = self.ctx.mpf(10) ** (-(digits // 2))

    def __call__(self, x):
        if isinstance(x, Fraction):
            return self.ctx.mpf(x.numerator) / x.denominator
        return self.ctx.mpf(x)

    @property
    def zero(self):
        return self.ctx.mpf(0)

    @property
    def one(self):
        return self.ctx.mpf(1)

    def is_zero(self, x, scale=None) -> bool:
        scale = abs(scale) if scale else 1
        return abs(x) <= self.tol * scale

    def close(self, a, b, scale=None) -> bool:
        if scale is None:
            scale = max(abs(a), abs(b), 1)
        return abs(a - b) <= self.tol * scale

    def to_str(self, x) -> str:
        return self.ctx.nstr(self(x), self.digits)

    def to_float(self, x) -> float:
        return float(x)

    def __repr__(self):
        return f"FloatField(digits={self.digits})"


RATIONALS = RationalField()


@functools.lru_cache(maxsize=None)
def float_field(digits: int = DEFAULT_DIGITS) -> FloatField:
    return FloatField(digits)


def scalar_to_str(x) -> str:
    """Serialize a scalar: ``"p/q"`` (or ``"p"``) for rationals, shortest decimal for floats."""
    if isinstance(x, (Fraction, Integral)):
        return str(Fraction(x))
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, mpmath.ctx_mp_python.mpf):
        return mpmath.nstr(x, int(x.context.dps))
    return str(x)


# ---------------------------------------------------------------------------
# parameters


def _parse_number(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("boolean is not a parameter value")
    if isinstance(value, (Integral, Rational, str)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"parameter must be finite, got {value}")
        return Fraction(value)
    raise TypeError(f"unsupported parameter type {type(value).__name__}")


@dataclass(frozen=True)
class Params:
    """Order ``nu >= 0`` of the Macdonald weight and exponent ``alpha > -1``.

    ``mode`` is ``"auto"`` (exact iff both values are nonnegative integers),
    ``"exact"`` (error unless they are) or ``"float"`` (mpmath with ``digits``
    decimal digits).
    """

    nu: Fraction
    alpha: Fraction = Fraction(0)
    mode: str = "auto"
    digits: int = DEFAULT_DIGITS

    def __post_init__(self):
        nu = _parse_number(self.nu)
        alpha = _parse_number(self.alpha)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "alpha", alpha)
        if nu < 0:
            raise ValueError(f"nu must be >= 0, got {nu}")
        if alpha <= -1:
            raise ValueError(f"alpha must be > -1, got {alpha}")
        if self.mode not in ("auto", "exact", "float"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "exact" and not self.integral:
            raise ValueError("exact mode requires nonnegative integer nu and alpha")
        if self.mode != "exact" and self.digits < 16:
            raise ValueError("float mode needs at least 16 digits")

    @property
    def integral(self) -> bool:
        return (self.nu.denominator == 1 and self.alpha.denominator == 1
                and self.alpha >= 0)

    @property
    def exact_mode(self) -> bool:
        return self.mode == "exact" or (self.mode == "auto" and self.integral)

    @property
    def field(self):
        return RATIONALS if self.exact_mode else float_field(self.digits)

    def with_alpha(self, alpha) -> "Params":
        return Params(self.nu, alpha, self.mode, self.digits)

    def with_nu(self, nu) -> "Params":
        return Params(nu, self.alpha, self.mode, self.digits)

    def as_dict(self) -> dict:
        return {
            "nu": str(self.nu),
            "alpha": str(self.alpha),
            "mode": "exact" if self.exact_mode else "float",
            "digits": None if self.exact_mode else self.digits,
        }


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Dense univariate polynomial, ``coeffs[k]`` is the coefficient of ``x**k``.

    Trailing exact zeros are stripped, so the zero polynomial has no
    coefficients and ``degree`` None.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls, one=1) -> "Poly":
        return cls((0 * one, one))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def descending(self) -> list:
        return list(reversed(self.coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(terms).replace("+ -", "- ")

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([a[k] + b[k] for k in range(len(b))] + list(a[len(b):]))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly((other,))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0 * a[0]] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Poly(out)

    def __rmul__(self, other):
        return self * other

    def scale(self, c) -> "Poly":
        return self * c

    def shift(self, k: int = 1) -> "Poly":
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Poly([0 * self.coeffs[0]] * k + list(self.coeffs))

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map(self, f) -> "Poly":
        return Poly(f(c) for c in self.coeffs)

    def divmod(self, divisor: "Poly"):
        """Long division; exact over the rationals."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = divisor.degree
        lead = divisor.lead
        if len(rem) <= dq:
            return Poly(), Poly(rem)
        quot = [0] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            q = rem[k + dq] / lead if not isinstance(lead, int) else Fraction(rem[k + dq], lead)
            quot[k] = q
            for j, d in enumerate(divisor.coeffs):
                rem[k + j] -= q * d
        return Poly(quot), Poly(rem[:dq])

    def to_json(self) -> list[str]:
        return [scalar_to_str(c) for c in self.coeffs]


def poly_derivative(p: Poly) -> Poly:
    return p.derivative()


# ---------------------------------------------------------------------------
# moments


class MomentTable:
    """Moments of ``x^alpha rho_nu`` (shift 0) and ``x^alpha rho_{nu+1}`` (shift 1).

    ``m_k = Gamma(k+alpha+nu+1) Gamma(k+alpha+1)`` is generated by the product
    recurrence ``m_{k+1} = (k+alpha+nu+1)(k+alpha+1) m_k``; the shifted
    moments are ``(k+alpha+nu+1) m_k``. The cache only grows and is guarded by
    a lock, so one table may be shared between threads.
    """

    def __init__(self, params: Params):
        self.params = params
        self.field = F = params.field
        self._nu = F(params.nu)
        self._alpha = F(params.alpha)
        self._lock = threading.Lock()
        self._cache = [self._m0()]

    def _m0(self):
        p, F = self.params, self.field
        if F.exact:
            return Fraction(math.factorial(int(p.alpha + p.nu)) * math.factorial(int(p.alpha)))
        ctx = F.ctx
        return ctx.exp(ctx.loggamma(self._alpha + self._nu + 1) + ctx.loggamma(self._alpha + 1))

    def moment(self, k: int, shift: int = 0):
        if isinstance(k, bool) or not isinstance(k, Integral):
            raise TypeError(f"moment index must be an integer, got {k!r}")
        if k < 0:
            raise ValueError(f"moment index must be >= 0, got {k}")
        cache = self._cache
        if k >= len(cache):
            with self._lock:
                a, nu = self._alpha, self._nu
                while len(cache) <= k:
                    j = len(cache) - 1
                    cache.append(cache[j] * (j + a + nu + 1) * (j + a + 1))
        m = cache[k]
        if shift == 0:
            return m
        if shift == 1:
            return m * (k + self._alpha + self._nu + 1)
        raise ValueError("shift must be 0 or 1")

    def __getitem__(self, k):
        return self.moment(k)

    def moments(self, K: int, shift: int = 0) -> list:
        return [self.moment(k, shift) for k in range(K)]


@functools.lru_cache(maxsize=256)
def moment_table(params: Params) -> MomentTable:
    return MomentTable(params)


def moment(params: Params, k: int, shift: int = 0):
    """``int_0^oo x^(k+alpha) rho_{nu+shift}(x) dx``; an exact integer in exact mode."""
    return moment_table(params).moment(k, shift)


# ---------------------------------------------------------------------------
# linear solves


class SolveResult(NamedTuple):
    x: list
    condition: object = None  # None for exact solves


def _as_integer_rows(matrix, rhs):
    rows = []
    for row, b in zip(matrix, rhs):
        vals = [Fraction(v) for v in row] + [Fraction(b)]
        lcm = 1
        for v in vals:
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        rows.append([int(v * lcm) for v in vals])
    return rows


def bareiss_solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly by fraction-free elimination.

    Raises ZeroDivisionError if the matrix is singular.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("bareiss_solve needs a square system")
    M = _as_integer_rows(matrix, rhs)
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        pk = M[k]
        akk = pk[k]
        for i in range(k + 1, n):
            row = M[i]
            aik = row[k]
            for j in range(k + 1, n + 1):
                row[j] = (row[j] * akk - aik * pk[j]) // prev
            row[k] = 0
        prev = akk
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(M[i][n])
        for j in range(i + 1, n):
            if M[i][j]:
                s -= M[i][j] * x[j]
        x[i] = s / M[i][i]
    return x


def float_solve(field: FloatField, matrix, rhs) -> SolveResult:
    ctx = field.ctx
    A = ctx.matrix([[field(v) for v in row] for row in matrix])
    b = ctx.matrix([field(v) for v in rhs])
    x = ctx.lu_solve(A, b)  # ZeroDivisionError when numerically singular
    return SolveResult([x[i] for i in range(len(rhs))], ctx.cond(A))


def hankel_solve(mt: MomentTable, rows: Sequence[Sequence[tuple[int, int]]], rhs: Sequence,
                 *, indices: dict | None = None) -> SolveResult:
    """Solve a square system whose entries are moments.

    Parameters
    ----------
    mt : MomentTable
    rows : list of rows, each a list of ``(shift, k)`` pairs; the entry is
        ``mt.moment(k, shift)``.
    rhs : right-hand side scalars.
    indices : optional ``dict(n=..., m=...)`` naming the polynomial being
        built, used in the error message.

    Returns
    -------
    SolveResult
        ``x`` exact Fractions in exact mode; mpmath floats plus a condition
        number estimate in float mode.
    """
    matrix = [[mt.moment(k, s) for (s, k) in row] for row in rows]
    F = mt.field
    try:
        if F.exact:
            return SolveResult(bareiss_solve(matrix, rhs), None)
        return float_solve(F, matrix, rhs)
    except ZeroDivisionError:
        idx = indices or {}
        raise DegenerateSystemError("degenerate system", n=idx.get("n"), m=idx.get("m"),
                                    alpha=mt.params.alpha, nu=mt.params.nu) from None
