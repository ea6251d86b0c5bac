"""Verification batteries shared by the CLI and the test suite.

Each suite yields :class:`Check` records; a check fails either by returning
False or by raising one of the package's identity errors, in which case the
offending value is kept in ``detail``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from . import hermitepade, kernelcalc, mop, recurrence, weights
from .errors import MacdonaldError
from .numerics import Params, moment, scalar_to_str

SUITES = ("orthogonality", "derivative", "rodrigues", "determinant", "recurrence", "orders",
          "numeric")


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: str | None = None

    def to_dict(self) -> dict:
        d = {"suite": self.suite, "check": self.name, "ok": self.ok}
        if self.detail is not None:
            d["detail"] = self.detail
        return d


def _run(suite: str, name: str, fn: Callable[[], object]) -> Check:
    try:
        result = fn()
    except MacdonaldError as exc:
        value = getattr(exc, "value", None)
        detail = str(exc) if value is None else f"{exc} [value={_fmt(value)}]"
        return Check(suite, name, False, detail)
    if result is True or result is None:
        return Check(suite, name, True)
    if result is False:
        return Check(suite, name, False, "returned False")
    ok, detail = result
    return Check(suite, name, bool(ok), detail)


def _fmt(v) -> str:
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    try:
        return scalar_to_str(v)
    except Exception:  # pragma: no cover - display only
        return str(v)


def near_diagonal(N: int):
    """Index pairs (n, n-1) and (n, n) for n <= N, skipping (0, -1)."""
    for n in range(N + 1):
        if n >= 1:
            yield n, n - 1
        yield n, n


# ---------------------------------------------------------------------------
# individual checks


def _type2_ortho(n, m, params):
    p = mop.type2(n, m, params).p
    if p.degree != n + m:
        return False, f"degree {p.degree} != {n + m}"
    F = params.field
    sums = mop.type2_orthogonality_sums(p, n, m, params)
    scale = max(mop._sum_scale(p, params, max(n, m), 0), 1)
    bad = [s for s in sums if not F.is_zero(s, scale)]
    return (not bad), (f"nonzero sums {_fmt(bad)}" if bad else None)


def _type1_ortho(pair):
    F = pair.params.field
    n, m = pair.n, pair.m
    if pair.A.degree != n or (m >= 0 and pair.B.degree != m):
        return False, f"degrees ({pair.A.degree}, {pair.B.degree}) != ({n}, {m})"
    sums = mop.type1_orthogonality_sums(pair.A, pair.B, n + m + 1, pair.params)
    scale = max(mop._sum_scale(pair.A, pair.params, n + m + 1, 0), 1)
    bad = [s for s in sums if not F.is_zero(s, scale)]
    return (not bad), (f"nonzero sums {_fmt(bad)}" if bad else None)


def _recurrence_ortho(params, N):
    seq = recurrence.generate_sequence(params, N)
    for j, p in enumerate(seq):
        n, m = recurrence.sequence_index(j)
        F = params.field
        sums = mop.type2_orthogonality_sums(p, n, m, params)
        scale = max(mop._sum_scale(p, params, max(n, m), 0), 1)
        if not all(F.is_zero(s, scale) for s in sums):
            return False, f"P_{j} fails orthogonality"
    return True


def _rodrigues_equal(n, diagonal, params):
    r = kernelcalc.rodrigues_type1(n, diagonal, params)
    t = mop.type1(n, n if diagonal else n - 1, params)
    F = params.field
    if not (mop.poly_close(r.A, t.A, F) and mop.poly_close(r.B, t.B, F)):
        return False, "Rodrigues pair differs from moment-system pair"
    return _type1_ortho(r)


def _ladder(n, m, params):
    """d/dx [x^(alpha+1) q_{n,m}^(alpha+1)] must be exactly x^alpha q^(alpha)."""
    up = params.with_alpha(params.alpha + 1)
    stepped = kernelcalc.ladder_step(mop.type1(n, m, up))
    target = mop.type1(stepped.n, stepped.m, params)
    F = params.field
    ok = mop.poly_close(stepped.A, target.A, F) and mop.poly_close(stepped.B, target.B, F)
    return ok, None if ok else "ladder step differs from the next pair (constant != 1)"


def _sequence_equals_solve(params, N):
    seq = recurrence.generate_sequence(params, N)
    F = params.field
    for j, p in enumerate(seq):
        if not mop.poly_close(p, mop.type2(*recurrence.sequence_index(j), params).p, F):
            return False, f"P_{j} from recurrence differs from the moment solve"
    return True


def _zeros(params, n):
    rep = recurrence.zero_report(params, n)
    worst = max(rep.residuals)
    if worst >= 1e-10:
        return False, f"residual {float(worst):.3e}"
    if not rep.margin > 1e-6:
        return False, f"smallest zero {float(rep.margin):.3e}"
    return True


def _numeric_moment(params, k, tol=1e-8):
    got = weights.quad_moment(params, k)
    want = float(moment(params, k))
    rel = abs(got - want) / abs(want)
    return rel <= tol, f"relative error {rel:.3e}"


def _bessel_routes(nu, z, tol=1e-12):
    a = weights.bessel_k(nu, z)
    b = weights.sommerfeld_k(nu, z)
    rel = float(abs(a - b) / abs(b))
    return rel <= tol, f"relative difference {rel:.3e}"


def _k_half(z, tol=1e-10):
    got = weights.bessel_k(0.5, z)
    want = math.sqrt(math.pi / (2 * z)) * math.exp(-z)
    rel = float(abs(got - want)) / want
    return rel <= tol, f"relative error {rel:.3e}"


def _large_z_ratio(nu, z=500, tol=1e-2):
    ctx = weights._ctx(weights.DEFAULT_DIGITS)
    ratio = float(weights.bessel_k(nu, z) * ctx.sqrt(2 * z / ctx.pi) * ctx.exp(z))
    return abs(ratio - 1) <= tol, f"ratio {ratio:.6f}"


# ---------------------------------------------------------------------------
# suites


def suite_checks(suite: str, params: Params, N: int) -> list[tuple[str, Callable]]:
    """(name, thunk) pairs of one suite; N bounds the indices involved."""
    out = []
    add = lambda name, fn: out.append((name, fn))
    if suite == "orthogonality":
        for n, m in near_diagonal(N):
            add(f"type2({n},{m})", lambda n=n, m=m: _type2_ortho(n, m, params))
        for n, m in near_diagonal(N):
            add(f"type1({n},{m})", lambda n=n, m=m: _type1_ortho(mop.type1(n, m, params)))
        add(f"recurrence P_0..P_{2 * N}", lambda: _recurrence_ortho(params, 2 * N))
    elif suite == "derivative":
        for n in range(1, N + 1):
            add(f"type2 derivative n={n}", lambda n=n: mop.verify_type2_derivative(n, params))
    elif suite == "rodrigues":
        add("weight ODE", lambda: kernelcalc.weight_ode_check(params))
        for n in range(N + 1):
            for diag in (False, True):
                add(f"rodrigues n={n} {'diag' if diag else 'off'}",
                    lambda n=n, d=diag: _rodrigues_equal(n, d, params))
        for n, m in [(0, -1)] + list(near_diagonal(N - 1 if N else 0)):
            add(f"ladder ({n},{m})", lambda n=n, m=m: _ladder(n, m, params))
    elif suite == "determinant":
        for n in range(N + 1):
            add(f"determinant n={n}", lambda n=n: mop.determinant_identity(n, params)[1])
    elif suite == "recurrence":
        add(f"coeffs_from_moments N={N}", lambda: bool(recurrence.coeffs_from_moments(params, N)))
        add(f"sequence == solve P_0..P_{N}", lambda: _sequence_equals_solve(params, N))
        for n in range(N // 2 + 1):
            add(f"top coefficients n={n}", lambda n=n: recurrence.check_top_coefficients(n, params))
        for n in range(1, N // 2 + 1):
            add(f"derivative transfer n={n}", lambda n=n: recurrence.transfer_check(n, params))
        for n in range(1, N + 1):
            add(f"zeros P_{n}", lambda n=n: _zeros(params, n))
    elif suite == "orders":
        for n, m in near_diagonal(N):
            K = 2 * (n + m) + 3
            add(f"type2 orders ({n},{m})",
                lambda n=n, m=m, K=K: bool(hermitepade.order_check("type2", mop.type2(n, m, params), K)))
            add(f"type1 order ({n},{m})",
                lambda n=n, m=m, K=K: bool(hermitepade.order_check("type1", mop.type1(n, m, params), K)))
    elif suite == "numeric":
        for k in range(6):
            add(f"quad_moment k={k}", lambda k=k: _numeric_moment(params, k))
        nu = float(params.nu)
        for z in (0.1, 1.0, 10.0):
            add(f"bessel_k vs sommerfeld nu={nu} z={z}", lambda z=z: _bessel_routes(nu, z))
            add(f"K_1/2 closed form z={z}", lambda z=z: _k_half(z))
        add("large-z ratio z=500", lambda: _large_z_ratio(nu))
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return out


def run_suites(suites, params: Params, N: int, jobs: int = 1) -> list[Check]:
    """Run the named suites; output order is deterministic whatever ``jobs`` is."""
    if "all" in suites:
        suites = SUITES
    tasks = [(s, name, fn) for s in suites for name, fn in suite_checks(s, params, N)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda t: _run(*t), tasks))
    return [_run(*t) for t in tasks]
