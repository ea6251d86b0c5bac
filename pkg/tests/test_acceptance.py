"""Acceptance gate: ten criteria, each at its stated tolerance and time budget.

Every criterion starts from cold caches. One PASS/FAIL line per criterion is
printed in the pytest terminal summary (and directly when run as a script).
"""

import math
import time
from fractions import Fraction

import pytest

import macdonald_mop
from macdonald_mop import hermitepade, kernelcalc, mop, recurrence, weights
from macdonald_mop.numerics import Params, moment

pytestmark = pytest.mark.acceptance

RESULTS: dict[int, tuple[bool, float, float, str]] = {}

GRID = [Params(nu, alpha) for nu in (0, 1) for alpha in (0, 1)]


def near_diagonal(N):
    for n in range(N + 1):
        if n:
            yield n, n - 1
        yield n, n


def criterion(number: int, budget: float, title: str):
    def wrap(body):
        def test():
            macdonald_mop.clear_caches()
            t0 = time.perf_counter()
            try:
                ok, detail = body()
            except Exception as exc:  # report, then fail
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            elapsed = time.perf_counter() - t0
            within = elapsed < budget
            RESULTS[number] = (ok and within, elapsed, budget, f"{title}; {detail}")
            print(f"criterion {number:2d}: {'PASS' if ok and within else 'FAIL'} "
                  f"({elapsed:.2f}s / {budget:g}s) {title}; {detail}")
            assert ok, detail
            assert within, f"took {elapsed:.2f}s, budget {budget}s"
        test.__name__ = f"test_criterion_{number:02d}"
        return test
    return wrap


@criterion(1, 1.0, "moment identity")
def _c1():
    count = 0
    for nu in range(4):
        for alpha in range(3):
            p = Params(nu, alpha)
            for k in range(21):
                want = math.factorial(k + alpha + nu) * math.factorial(k + alpha)
                if moment(p, k) != want:
                    return False, f"m_{k} at nu={nu}, alpha={alpha}"
                count += 1
    p = Params(0, 0)
    if any(moment(p, k) != math.factorial(k) ** 2 for k in range(21)):
        return False, "(k!)^2 fails"
    return True, f"{count} exact equalities"


@criterion(2, 5.0, "type 2 orthogonality of P_0..P_12")
def _c2():
    sums = 0
    for p in GRID:
        for j, P in enumerate(recurrence.generate_sequence(p, 12)):
            n, m = recurrence.sequence_index(j)
            s = mop.type2_orthogonality_sums(P, n, m, p)
            if any(x != 0 or not isinstance(x, (int, Fraction)) for x in s):
                return False, f"P_{j} at {p}"
            sums += len(s)
    return True, f"{sums} sums exactly 0"


@criterion(3, 10.0, "recurrence coefficients from moments")
def _c3():
    for p in GRID:
        got = recurrence.coeffs_from_moments(p, 11)
        want = recurrence.rec_coeffs(p, 11)
        if (got.b, got.c, got.d) != (want.b, want.c, want.d):
            return False, f"mismatch at {p}"
        for n in range(1, 6):
            recurrence.check_top_coefficients(n, p)
    return True, "b, c, d equal for n <= 10; a(1..3) formulas exact"


@criterion(4, 5.0, "type 2 derivative identities")
def _c4():
    for p in GRID:
        for n in range(1, 7):
            mop.verify_type2_derivative(n, p)
    return True, "n <= 6"


@criterion(5, 5.0, "Rodrigues type 1 and differentiation step")
def _c5():
    for p in GRID:
        for n in range(7):
            for diag in (False, True):
                r = kernelcalc.rodrigues_type1(n, diag, p)
                m = n if diag else n - 1
                if any(s != 0 for s in mop.type1_orthogonality_sums(r.A, r.B, n + m + 1, p)):
                    return False, f"orthogonality ({n},{m}) at {p}"
                t = mop.type1(n, m, p)
                if (t.A, t.B) != (r.A, r.B):
                    return False, f"moment solution differs ({n},{m}) at {p}"
            up = p.with_alpha(p.alpha + 1)
            stepped = kernelcalc.ladder_step(kernelcalc.rodrigues_type1(n, True, up))
            target = kernelcalc.rodrigues_type1(n + 1, False, p)
            if (stepped.n, stepped.m) != (n + 1, n) or (stepped.A, stepped.B) != (target.A, target.B):
                return False, f"ladder ({n},{n}) at alpha={up.alpha}"
    return True, "n <= 6, ladder constant 1"


@criterion(6, 5.0, "determinant identity")
def _c6():
    consts = []
    for p in GRID:
        for n in range(6):
            diag, off = mop.type1(n, n, p), mop.type1(n, n - 1, p)
            D = diag.A * off.B - off.A * diag.B
            q, r = D.divmod(mop.type2(n, n, p).p)
            if not r.is_zero() or q.degree != 0 or q.coeff(0) != D.lead:
                return False, f"n={n} at {p}"
            c, ok = mop.determinant_identity(n, p)
            if not ok or c != D.lead:
                return False, f"n={n} at {p}"
            consts.append(c)
    return True, f"n <= 5, distinct constants {sorted({str(c) for c in consts})}"


@criterion(7, 5.0, "Hermite-Pade orders")
def _c7():
    for p in GRID:
        for n, m in near_diagonal(8):
            r1, r2 = hermitepade.order_check("type2", mop.type2(n, m, p), n + m + 3)
            r = hermitepade.order_check("type1", mop.type1(n, m, p), n + m + 3)
            if not (r1.order >= n + 1 and r2.order >= m + 1 and r.order >= n + m + 2):
                return False, f"({n},{m}) at {p}"
    return True, "n <= 8 near-diagonal"


@criterion(8, 5.0, "zeros of P_1..P_12")
def _c8():
    worst, margin = 0.0, math.inf
    for p in GRID:
        for n in range(1, 13):
            rep = recurrence.zero_report(p, n)
            if len(rep.roots) != n:
                return False, f"P_{n}: {len(rep.roots)} zeros"
            worst = max(worst, float(max(rep.residuals)))
            margin = min(margin, float(rep.margin))
    ok = worst < 1e-10 and margin > 1e-6
    return ok, f"max residual {worst:.1e}, min zero {margin:.3e}"


@criterion(9, 10.0, "numeric bridge")
def _c9():
    worst = 0.0
    for nu in (0, "1/2", 1):
        p = Params(nu, 0)
        for k in range(6):
            rel = abs(weights.quad_moment(p, k) / float(moment(p, k)) - 1)
            worst = max(worst, rel)
    if worst > 1e-8:
        return False, f"quad_moment relative error {worst:.1e}"
    for z in (0.1, 1, 10):
        got = float(weights.bessel_k(0.5, z))
        if abs(got / (math.sqrt(math.pi / (2 * z)) * math.exp(-z)) - 1) > 1e-10:
            return False, f"K_1/2({z})"
    ctx = weights._ctx(30)
    ratio = float(weights.bessel_k(0, 500) * ctx.sqrt(1000 / ctx.pi) * ctx.exp(500))
    if abs(ratio - 1) > 1e-2:
        return False, f"large-z ratio {ratio}"
    return True, f"quad error {worst:.1e}, z=500 ratio {ratio:.5f}"


@criterion(10, 1.0, "recurrence asymptotics")
def _c10():
    out = []
    for p in GRID:
        ratios = recurrence.asymptotic_ratios(p, 500)
        if any(abs(r - 1) > 0.01 for r in ratios):
            return False, f"{ratios} at {p}"
        out.append(max(abs(r - 1) for r in ratios))
    return True, f"max |ratio - 1| = {max(out):.4f}"


test_criterion_01, test_criterion_02, test_criterion_03, test_criterion_04, test_criterion_05 = (
    _c1, _c2, _c3, _c4, _c5)
test_criterion_06, test_criterion_07, test_criterion_08, test_criterion_09, test_criterion_10 = (
    _c6, _c7, _c8, _c9, _c10)


if __name__ == "__main__":
    failed = 0
    for fn in (_c1, _c2, _c3, _c4, _c5, _c6, _c7, _c8, _c9, _c10):
        try:
            fn()
        except AssertionError:
            failed += 1
    raise SystemExit(1 if failed else 0)
