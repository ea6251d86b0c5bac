"""Type 1 and type 2 multiple orthogonal polynomials from the moment systems.

Type 2: ``p_{n,m}`` monic of degree n+m with

    int p(x) x^(k+alpha) rho_nu(x) dx = 0       k < n
    int p(x) x^(k+alpha) rho_{nu+1}(x) dx = 0   k < m

Type 1: ``(A_{n,m}, B_{n,m})`` of degrees n, m with

    int [A rho_nu + B rho_{nu+1}] x^(k+alpha) dx = 0,   k = 0..n+m.

Near the diagonal (m = n or m = n-1) type 1 pairs are scaled to the
normalization fixed by the Rodrigues formula: ``A_{0,-1} = 1`` and each
differentiation ``d/dx [x^alpha q]`` lands on the next pair with factor one.
"""

from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass, field as dc_field

from .errors import DegenerateSystemError, IdentityViolation
from .numerics import Params, Poly, hankel_solve, moment_table, scalar_to_str

NORMALIZATIONS = ("paper", "monic_B", "monic_A", "raw")


@dataclass(frozen=True)
class Type1Pair:
    A: Poly
    B: Poly
    n: int
    m: int
    params: Params
    normalization: str = "paper"

    def q_coeffs(self):
        return self.A, self.B

    def scaled(self, c) -> "Type1Pair":
        return Type1Pair(self.A * c, self.B * c, self.n, self.m, self.params, self.normalization)

    def to_dict(self) -> dict:
        return {
            "kind": "type1",
            "n": self.n,
            "m": self.m,
            "params": self.params.as_dict(),
            "normalization": self.normalization,
            "A": self.A.to_json(),
            "B": self.B.to_json(),
        }


@dataclass(frozen=True)
class Type2Poly:
    p: Poly
    n: int
    m: int
    params: Params
    condition: object = dc_field(default=None, compare=False)

    @property
    def degree(self) -> int:
        return self.n + self.m

    def to_dict(self) -> dict:
        d = {
            "kind": "type2",
            "n": self.n,
            "m": self.m,
            "params": self.params.as_dict(),
            "coefficients": self.p.to_json(),
        }
        if self.condition is not None:
            d["condition"] = scalar_to_str(self.condition)
        return d


def is_near_diagonal(n: int, m: int) -> bool:
    return m == n or m == n - 1


# ---------------------------------------------------------------------------
# orthogonality sums


def type2_orthogonality_sums(p: Poly, n: int, m: int, params: Params) -> list:
    """The n + m defining sums, in order (rho_nu, k<n) then (rho_{nu+1}, k<m)."""
    mt = moment_table(params)
    sums = []
    for shift, count in ((0, n), (1, m)):
        for k in range(count):
            sums.append(sum((a * mt.moment(k + j, shift) for j, a in enumerate(p.coeffs)),
                            mt.field.zero))
    return sums


def type1_orthogonality_sums(A: Poly, B: Poly, count: int, params: Params) -> list:
    """``int (A rho_nu + B rho_{nu+1}) x^(k+alpha) dx`` for k < count, via moments."""
    mt = moment_table(params)
    out = []
    for k in range(count):
        s = mt.field.zero
        for j, a in enumerate(A.coeffs):
            s += a * mt.moment(k + j, 0)
        for j, b in enumerate(B.coeffs):
            s += b * mt.moment(k + j, 1)
        out.append(s)
    return out


def _sum_scale(p: Poly, params: Params, count: int, shift: int):
    mt = moment_table(params)
    return max((sum(abs(a * mt.moment(k + j, shift)) for j, a in enumerate(p.coeffs))
                for k in range(count)), default=1)


# ---------------------------------------------------------------------------
# type 2


@functools.lru_cache(maxsize=1024)
def type2(n: int, m: int, params: Params) -> Type2Poly:
    """Monic type 2 polynomial ``p_{n,m}`` of degree n + m.

    Raises DegenerateSystemError if the moment system is singular.
    """
    if n < 0 or m < 0:
        raise ValueError(f"type 2 indices must be nonnegative, got ({n}, {m})")
    N = n + m
    mt = moment_table(params)
    F = mt.field
    if N == 0:
        return Type2Poly(Poly((F.one,)), n, m, params)
    rows, rhs = [], []
    for shift, count in ((0, n), (1, m)):
        for k in range(count):
            rows.append([(shift, k + j) for j in range(N)])
            rhs.append(-mt.moment(k + N, shift))
    sol = hankel_solve(mt, rows, rhs, indices={"n": n, "m": m})
    return Type2Poly(Poly(list(sol.x) + [F.one]), n, m, params, sol.condition)


# ---------------------------------------------------------------------------
# type 1


def rodrigues_leading(n: int, m: int, params: Params):
    """Leading coefficients (of A and B) of the Rodrigues-normalized pair.

    Follows only the top coefficients through the differentiation chain that
    starts from ``A_{0,-1} = 1`` at exponent ``alpha + 2n`` (m = n-1) or
    ``alpha + 2n + 1`` (m = n).
    """
    if not is_near_diagonal(n, m):
        raise ValueError(f"Rodrigues normalization only defined for m in {{n, n-1}}, got ({n}, {m})")
    F = params.field
    nu = F(params.nu)
    steps = 2 * n + (m == n)
    beta = F(params.alpha) + steps
    a, b = F.one, F.zero
    k, diagonal = 0, False  # current pair is (k, k-1)
    for _ in range(steps):
        if diagonal:
            a, b = -b, (beta + k) * b - a
            k += 1
        else:
            a, b = (beta + nu + k) * a - b, -a
        diagonal = not diagonal
        beta -= 1
    return a, b


def _solve_type1(n: int, m: int, params: Params, monic: str):
    """Solve the homogeneous system with the leading coefficient of A or B set to one."""
    mt = moment_table(params)
    F = mt.field
    size = n + m + 1
    free_a = n if monic == "A" else n + 1
    free_b = m + 1 if monic == "A" else m
    rows, rhs = [], []
    for k in range(size):
        row = [(0, k + j) for j in range(free_a)] + [(1, k + j) for j in range(free_b)]
        rows.append(row)
        rhs.append(-(mt.moment(k + n, 0) if monic == "A" else mt.moment(k + m, 1)))
    x = hankel_solve(mt, rows, rhs, indices={"n": n, "m": m}).x if size else []
    A = list(x[:free_a])
    B = list(x[free_a:])
    if monic == "A":
        A.append(F.one)
    else:
        B.append(F.one)
    return Poly(A), Poly(B)


@functools.lru_cache(maxsize=1024)
def type1(n: int, m: int, params: Params, normalization: str | None = None) -> Type1Pair:
    """Type 1 pair ``(A_{n,m}, B_{n,m})``.

    Near-diagonal indices default to the Rodrigues ("paper") normalization, anything else
    to ``monic_B`` (falling back to ``monic_A`` with a warning when B's top
    coefficient vanishes).
    """
    if n < 0 or m < -1:
        raise ValueError(f"type 1 indices out of range: ({n}, {m})")
    if normalization is None:
        normalization = "paper" if is_near_diagonal(n, m) else "monic_B"
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization {normalization!r}")
    if normalization == "paper" and not is_near_diagonal(n, m):
        raise ValueError("\"paper\" normalization requires m in {n, n-1}")

    def degenerate(exc=None):
        raise DegenerateSystemError("type 1 nullspace is not one-dimensional", n=n, m=m,
                                    alpha=params.alpha, nu=params.nu) from exc

    if normalization in ("monic_B", "raw") and m >= 0:
        try:
            A, B = _solve_type1(n, m, params, "B")
            return Type1Pair(A, B, n, m, params, "monic_B")
        except DegenerateSystemError:
            if normalization == "monic_B":
                warnings.warn(f"B_{{{n},{m}}} has vanishing top coefficient; using monic_A",
                              RuntimeWarning, stacklevel=2)
        normalization = "monic_A"
    try:
        A, B = _solve_type1(n, m, params, "A")
    except DegenerateSystemError as exc:
        degenerate(exc)
    if normalization == "paper":
        lead_a, lead_b = rodrigues_leading(n, m, params)
        if lead_a == 0:
            degenerate()
        pair = Type1Pair(A * lead_a, B * lead_a, n, m, params, "paper")
        if m >= 0 and not params.field.close(pair.B.lead if pair.B.degree == m else 0, lead_b):
            raise IdentityViolation(f"B_{{{n},{m}}} leading coefficient disagrees with the "
                                    f"Rodrigues chain", (pair.B.lead, lead_b))
        return pair
    return Type1Pair(A, B, n, m, params, "monic_A")


# ---------------------------------------------------------------------------
# identities


def poly_close(p: Poly, q: Poly, field) -> bool:
    if field.exact:
        return p == q
    n = max(len(p), len(q))
    scale = max([abs(c) for c in p.coeffs + q.coeffs] or [1])
    return all(field.close(p.coeff(k), q.coeff(k), scale) for k in range(n))


def _proportional(D: Poly, p: Poly, field):
    c = D.lead
    return c, poly_close(D, p * c, field)


def companion_identity(n: int, params: Params):
    """``A_{n+1,n} B_{n,n} - A_{n,n} B_{n+1,n} = c p_{n+1,n}``; returns (c, ok)."""
    up, diag = type1(n + 1, n, params), type1(n, n, params)
    D = up.A * diag.B - diag.A * up.B
    return _proportional(D, type2(n + 1, n, params).p, params.field)


def determinant_identity(n: int, params: Params, *, strict: bool = True):
    """Check ``A_{n,n} B_{n,n-1} - A_{n,n-1} B_{n,n} = c p_{n,n}``.

    The companion identity for ``p_{n+1,n}`` is checked as well. Returns
    ``(c, ok)`` where ``c`` is the leading coefficient of the combination;
    with ``strict`` a failure raises IdentityViolation instead.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    diag, off = type1(n, n, params), type1(n, n - 1, params)
    D = diag.A * off.B - off.A * diag.B
    c, ok = _proportional(D, type2(n, n, params).p, params.field)
    c2, ok2 = companion_identity(n, params)
    ok = ok and ok2 and c != 0 and c2 != 0
    if strict and not ok:
        raise IdentityViolation(f"determinant identity fails at n={n}", (c, c2))
    return c, ok


def verify_type2_derivative(n: int, params: Params) -> bool:
    """``p_{n,n}' = 2n p_{n,n-1}^{alpha+1}`` and ``p_{n,n-1}' = (2n-1) p_{n-1,n-1}^{alpha+1}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    up = params.with_alpha(params.alpha + 1)
    F = params.field
    lhs = type2(n, n, params).p.derivative()
    rhs = type2(n, n - 1, up).p * (2 * n)
    if not poly_close(lhs, rhs, F):
        raise IdentityViolation(f"d/dx p_{{{n},{n}}} != {2 * n} p_{{{n},{n - 1}}}^(alpha+1)",
                                lhs - rhs)
    lhs = type2(n, n - 1, params).p.derivative()
    rhs = type2(n - 1, n - 1, up).p * (2 * n - 1)
    if not poly_close(lhs, rhs, F):
        raise IdentityViolation(f"d/dx p_{{{n},{n - 1}}} != {2 * n - 1} p_{{{n - 1},{n - 1}}}^(alpha+1)",
                                lhs - rhs)
    return True
